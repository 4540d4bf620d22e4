#include "doctest.h"

#include "clab/boolean_classes.hpp"
#include "clab/core.hpp"
#include "clab/metrics.hpp"
#include "clab/oracles.hpp"
#include "clab/protocol.hpp"
#include "clab/learners.hpp"
#include "helpers.hpp"

using namespace clab;

TEST_CASE("delta") {
    const auto a = Concept::from_string("0001");
    const auto b = Concept::from_string("0111");
    CHECK(delta(a, a) == Rational(0));
    CHECK(delta(a, b) == Rational(2, 4));
    Concept c = a;
    c.labels.flip_all();
    CHECK(delta(a, c) == Rational(1));
    CHECK_THROWS_AS(delta(a, Concept::from_string("01")), Error);
}

TEST_CASE("concept class validation") {
    CHECK_THROWS_AS(from_rows(2, {"01", "01"}), Error);
    CHECK_THROWS_AS(from_rows(2, {"011"}), Error);
    CHECK_THROWS_AS(ConceptClass(FiniteDomain(2), {}), Error);
    CHECK_THROWS_AS(FiniteDomain(2, {"a", "a"}), Error);
    CHECK_THROWS_AS(FiniteDomain(0), Error);
}

TEST_CASE("restrict_version_space under minimum Hamming distance") {
    const auto cls = gen_pmon(2);  // 1111 0101 0011 0001
    const MinDistanceCs cs(Metric::hamming(2));
    const auto full = VersionSpace::full(cls);

    auto vs = restrict_version_space(full, Query{0, {}}, OracleAnswer{true, std::nullopt}, cs);
    REQUIRE(vs.size() == 1);
    CHECK(cls[vs.members()[0]].to_string() == "1111");

    vs = restrict_version_space(full, Query{0, {}}, OracleAnswer{false, Contrast{3, true}}, cs);
    REQUIRE(vs.size() == 1);
    CHECK(cls[vs.members()[0]].to_string() == "0001");

    // a vacuous answer: label 0 at 00 with no contrast check, under the null rule
    const NullCs none;
    vs = restrict_version_space(full, Query{0, {}}, OracleAnswer{false, std::nullopt}, none);
    CHECK(vs.size() == 3);
    vs = restrict_version_space(full, Query{3, {}}, OracleAnswer{true, std::nullopt}, none);
    CHECK(vs == full);
}

TEST_CASE("restriction matches a direct filter") {
    // property: the engine keeps exactly the concepts the reference rule admits
    XorShift64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(4);
        std::vector<Concept> cs;
        std::set<std::string> seen;
        const std::size_t k = 2 + rng.below(6);
        while (cs.size() < k && seen.size() < (1u << n)) {
            Bits b(n);
            for (std::size_t i = 0; i < n; ++i)
                if (rng.below(2)) b.set(i);
            if (seen.insert(b.to_string()).second) cs.push_back(Concept(b));
        }
        const ConceptClass cls(FiniteDomain(n), cs);
        const auto r = to_ref(cls);
        const MinDistanceCs rule(Metric::discrete(n));
        const Instance x = rng.below(n);
        const std::size_t t = rng.below(cls.size());
        const auto near = ref::nearest_opposite(r[t], static_cast<int>(x), ref::d0);
        OracleAnswer a{cls[t](x), std::nullopt};
        if (!near.empty()) a.contrast = Contrast{static_cast<Instance>(near[rng.below(near.size())]), !cls[t](x)};
        const auto vs = restrict_version_space(VersionSpace::full(cls), Query{x, {}}, a, rule);
        for (std::size_t i = 0; i < cls.size(); ++i) {
            const auto ni = ref::nearest_opposite(r[i], static_cast<int>(x), ref::d0);
            bool keep = r[i][x] == static_cast<int>(a.label);
            if (a.contrast) keep = keep && std::count(ni.begin(), ni.end(), static_cast<int>(a.contrast->x)) > 0;
            else keep = keep && ni.empty();
            CHECK(vs.contains(i) == keep);
        }
        CHECK(vs.contains(t));
    }
}

TEST_CASE("epsilon_approximates") {
    const auto cls = from_rows(4, {"0001", "0111", "1111"});
    const auto t = cls[0];
    CHECK(epsilon_approximates(VersionSpace(cls, Bits::from_string("100")), t, Rational(0)));
    CHECK_FALSE(epsilon_approximates(VersionSpace::full(cls), t, Rational(0)));
    CHECK(epsilon_approximates(VersionSpace(cls, Bits::from_string("110")), t, Rational(1, 2)));
    const auto pm = gen_pmon(2);
    CHECK_FALSE(epsilon_approximates(VersionSpace::full(pm), pm[0], Rational(0)));
}

TEST_CASE("run_protocol basics") {
    const auto cls = gen_pmon(3);
    const MinDistanceCs cs(Metric::hamming(3));
    FirstOracle o;
    PmonLearner l;
    const auto target = monomial_concept(3, 0b101, 0);
    auto res = run_protocol(l, o, target, cs, cls);
    CHECK(res.rounds() == 1);
    CHECK(res.outcome == Outcome::Identified);
    REQUIRE(res.hypothesis);
    CHECK(*res.hypothesis == target);
    CHECK(res.records[0].answer == OracleAnswer{false, Contrast{0b101, true}});
    replay(res.records, cls, cs);
    check_trace(res.records, target, cls);

    const auto single = from_rows(3, {"010"});
    HalvingLearner h(std::make_shared<MinDistanceCs>(Metric::hamming(1)));
    res = run_protocol(h, o, single[0], cs, single);
    CHECK(res.rounds() == 0);
    CHECK(res.outcome == Outcome::Identified);
}

namespace {
// Answers with the wrong label.
class LyingOracle : public OracleStrategy {
public:
    OracleAnswer answer(const Query& q, const Concept& t, const VersionSpace&, const Bits&, std::size_t) override {
        return OracleAnswer{!t(q.x), std::nullopt};
    }
    std::string name() const override { return "liar"; }
    std::unique_ptr<OracleStrategy> clone() const override { return std::make_unique<LyingOracle>(); }
};
}  // namespace

TEST_CASE("protocol errors") {
    const auto cls = gen_pmon(2);
    const MinDistanceCs cs(Metric::hamming(2));
    LyingOracle liar;
    PmonLearner l;
    try {
        run_protocol(l, liar, cls[1], cs, cls);
        FAIL("expected DishonestOracle");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DishonestOracle);
    }
    FirstOracle o;
    PmonLearner l2;
    CHECK_THROWS_AS(run_protocol(l2, o, Concept::from_string("1000"), cs, cls), Error);

    // a learner that never asks anything useful hits the round limit
    HalvingLearner h(std::make_shared<NullCs>(), {Query{3, {}}});
    ProtocolOptions opts;
    opts.max_rounds = 3;
    opts.fail_on_round_limit = true;
    const auto r = run_protocol(h, o, cls[0], NullCs{}, cls, opts);
    CHECK(r.outcome == Outcome::NonLearnable);
}

TEST_CASE("query repetition is allowed") {
    const auto cls = gen_pmon(2);
    const NullCs cs;
    HalvingLearner h(std::make_shared<NullCs>(), {Query{2, {}}, Query{2, {}}, Query{1, {}}});
    FirstOracle o;
    const auto r = run_protocol(h, o, cls[3], cs, cls);
    CHECK(r.outcome == Outcome::Identified);
}
