#include "clab/verify.hpp"

#include <algorithm>
#include <bit>

#include "clab/boolean_classes.hpp"
#include "clab/exact.hpp"

namespace clab {

ConceptClass random_class(XorShift64& rng, std::size_t n, std::size_t max_size) {
    const std::size_t want = 1 + rng.below(max_size);
    std::vector<Concept> rows;
    for (std::size_t tries = 0; rows.size() < want && tries < 64 * want; ++tries) {
        Bits b(n);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.below(2)) b.set(i);
        Concept c(std::move(b));
        if (std::find(rows.begin(), rows.end(), c) == rows.end()) rows.push_back(std::move(c));
    }
    return ConceptClass(FiniteDomain(n), std::move(rows), "random");
}

std::vector<Metric> metric_pool(std::size_t n, XorShift64& rng) {
    std::vector<Metric> pool;
    std::vector<Rational> ham(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) ham[x * n + y] = Rational(std::popcount(x ^ y));
    pool.push_back(Metric::matrix(n, ham, "index-hamming"));
    pool.push_back(Metric::grid_l1({n}));
    for (int k = 0; k < 3; ++k) {
        std::vector<Rational> t(n * n, Rational(0));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y < n; ++y) {
                t[x * n + y] = t[y * n + x] = Rational(static_cast<std::int64_t>(1 + rng.below(4)));
            }
        }
        pool.push_back(Metric::matrix(n, t, "random" + std::to_string(k)));
    }
    return pool;
}

std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.ok; }));
}

std::size_t VerifyReport::count(const std::string& suite) const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [&](const CheckLine& l) { return l.suite == suite; }));
}

std::vector<std::string> verify_suite_names() { return {"thm13", "cor12", "thm14", "thm14_dynamic", "sandwich", "chain"}; }

namespace {

std::string show(const GameValue& g) { return g.unbounded ? "unbounded" : std::to_string(g.value); }

// a <= b as values, unbounded above everything
bool leq(const GameValue& a, const GameValue& b) { return b.unbounded || (!a.unbounded && a.value <= b.value); }

std::string class_label(std::size_t t, const ConceptClass& cls) {
    return "class " + std::to_string(t) + " (n=" + std::to_string(cls.domain_size()) +
           ",|C|=" + std::to_string(cls.size()) + ")";
}

void run_class_suite(const std::string& suite, std::size_t trials, std::uint64_t seed, VerifyReport& rep) {
    XorShift64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 2 + rng.below(4);
        const ConceptClass cls = random_class(rng, n, 8);
        const auto pool = metric_pool(n, rng);
        const std::string label = class_label(t, cls);
        const auto d0 = exact_contrast_complexity(cls, std::make_shared<MinDistanceCs>(Metric::discrete(n)));
        if (suite == "thm13") {
            const auto ex = exact_exmq_complexity(cls);
            const bool ok = !d0.unbounded && !ex.unbounded && d0.value <= ex.value && ex.value <= d0.value + 2;
            rep.lines.push_back({suite, label, ok, "exmq=" + show(ex) + " d0=" + show(d0)});
        } else if (suite == "cor12") {
            for (const auto& d : pool) {
                const auto v = exact_contrast_complexity(cls, std::make_shared<MinDistanceCs>(d));
                rep.lines.push_back({suite, label + " " + d.name(), leq(v, d0), "d=" + show(v) + " d0=" + show(d0)});
            }
        } else if (suite == "thm14") {
            const auto sd = exact_sd(cls);
            for (const auto& d : pool) {
                const auto v = exact_contrast_complexity(cls, std::make_shared<MinDistanceCs>(d));
                const bool ok = v.unbounded || 2 * v.value >= sd.value;
                rep.lines.push_back({suite, label + " " + d.name(), ok, "min=" + show(v) + " sd=" + show(sd)});
            }
        } else if (suite == "thm14_dynamic") {
            const auto sd = exact_sd(cls);
            for (int s = 0; s < 3; ++s) {
                std::vector<Metric> seq;
                std::string names;
                for (int r = 0; r < 3; ++r) {
                    seq.push_back(pool[rng.below(pool.size())]);
                    names += (r ? "," : "") + seq.back().name();
                }
                const auto v = exact_contrast_complexity(cls, MinDistanceCs::sequence(seq));
                const bool ok = v.unbounded || 2 * v.value >= sd.value;
                rep.lines.push_back({suite, label + " seq[" + names + "]", ok, "min=" + show(v) + " sd=" + show(sd)});
            }
        } else if (suite == "sandwich") {
            const auto mq = exact_mq_complexity(cls);
            for (const auto& d : pool) {
                const auto mn = exact_contrast_complexity(cls, std::make_shared<MinDistanceCs>(d));
                const auto px = exact_contrast_complexity(cls, std::make_shared<ProximityCs>(d));
                const bool ok = leq(mn, px) && leq(px, mq);
                rep.lines.push_back({suite, label + " " + d.name(), ok,
                                     "min=" + show(mn) + " prox=" + show(px) + " mq=" + show(mq)});
            }
        }
    }
}

void run_chain_suite(std::size_t trials, std::uint64_t seed, VerifyReport& rep) {
    const ConceptClass cls = gen_mdnf(4, 2, 2);
    XorShift64 rng(seed);
    const std::size_t n = cls.domain_size();
    std::size_t bad = 0;
    std::string first_bad;
    for (std::size_t t = 0; t < trials; ++t) {
        Bits mask(cls.size());
        while (mask.none()) {
            for (std::size_t i = 0; i < cls.size(); ++i)
                if (rng.below(2)) mask.set(i);
        }
        const VersionSpace vs(cls, mask);
        // a <= b <= c as bit masks
        const Instance c = rng.below(n);
        Instance b = c & rng.below(n);
        Instance a = b & rng.below(n);
        if (!(vs_distance(vs, a, b) <= vs_distance(vs, a, c))) {
            if (!bad++) first_bad = std::to_string(a) + "<=" + std::to_string(b) + "<=" + std::to_string(c);
        }
    }
    rep.lines.push_back({"chain", "gen_mdnf(4,2,2) x " + std::to_string(trials) + " chains", bad == 0,
                         bad ? "first violation " + first_bad : "monotone"});
}

}  // namespace

VerifyReport verify_suite(const std::string& suite, std::size_t trials, std::uint64_t seed) {
    VerifyReport rep;
    const auto names = verify_suite_names();
    if (suite == "all") {
        for (const auto& s : names) {
            auto r = verify_suite(s, trials, seed);
            rep.lines.insert(rep.lines.end(), r.lines.begin(), r.lines.end());
        }
        return rep;
    }
    if (std::find(names.begin(), names.end(), suite) == names.end()) fail(Errc::ConfigError, "unknown suite '" + suite + "'");
    if (suite == "chain") run_chain_suite(trials, seed, rep);
    else run_class_suite(suite, trials, seed, rep);
    return rep;
}

}  // namespace clab
