#include "clab/protocol.hpp"

#include <unordered_map>

#include "clab/exact.hpp"

namespace clab {

Concept Learner::hypothesis() const {
    if (!last_vs_ || last_vs_->size() != 1) {
        fail(Errc::InconsistentOracle, name() + ": no unique hypothesis");
    }
    return last_vs_->cls()[last_vs_->mask().find_first()];
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Identified: return "Identified";
        case Outcome::Approximated: return "Approximated";
        case Outcome::Exhausted: return "Exhausted";
        case Outcome::NonLearnable: return "NonLearnable";
    }
    return "?";
}

bool has_informative_query(const VersionSpace& vs, const ContrastSet& cs, std::size_t round) {
    const std::size_t n = vs.cls().domain_size();
    for (Instance x = 0; x < n; ++x) {
        std::vector<Query> qs;
        if (cs.takes_radius()) {
            for (const auto& r : cs.radii(x)) qs.push_back(Query{x, r});
        } else {
            qs.push_back(Query{x, std::nullopt});
        }
        for (const auto& q : qs) {
            for (const auto& g : answer_groups(vs, q, cs, round)) {
                if (g.members != vs.mask()) return true;
            }
        }
    }
    return false;
}

RunResult run_protocol(Learner& learner, OracleStrategy& oracle, const Concept& target, const ContrastSet& cs,
                       const ConceptClass& cls, const ProtocolOptions& opts) {
    const auto tidx = cls.index_of(target);
    if (!tidx) fail(Errc::InvalidArgument, "target is not a member of the class");
    const std::size_t max_rounds = opts.max_rounds.value_or(cls.size() * cls.domain_size());
    RunResult res;
    VersionSpace vs = VersionSpace::full(cls);
    learner.start(vs);
    for (std::size_t round = 0;; ++round) {
        if (!opts.epsilon && vs.size() == 1) {
            res.outcome = Outcome::Identified;
            break;
        }
        if (opts.epsilon && epsilon_approximates(vs, target, *opts.epsilon)) {
            res.outcome = Outcome::Approximated;
            break;
        }
        if (round >= max_rounds) {
            if (opts.fail_on_round_limit) fail(Errc::RoundLimit, "no identification within " + std::to_string(max_rounds) + " rounds");
            res.outcome = Outcome::Exhausted;
            break;
        }
        const auto q = learner.next_query(vs);
        if (!q) {
            res.outcome = Outcome::NonLearnable;
            break;
        }
        if (q->x >= cls.domain_size()) fail(Errc::OutOfRange, "query outside the domain");
        if (cs.takes_radius() != q->radius.has_value()) {
            fail(Errc::InvalidArgument, cs.takes_radius() ? "query needs a radius" : "query must not carry a radius");
        }
        const Bits set = cs(*q, target, vs, round);
        const OracleAnswer a = oracle.answer(*q, target, vs, set, round);
        if (!admissible(*q, a, target, set)) {
            fail(Errc::DishonestOracle, oracle.name() + " gave an answer outside the contrast set");
        }
        VersionSpace post = restrict_version_space(vs, *q, a, cs, round);
        if (post.empty()) fail(Errc::EmptyVersionSpace, "answer is inconsistent with every concept");
        if (!post.contains(*tidx)) fail(Errc::PropertyViolation, "target dropped from the version space");
        learner.observe(*q, a, post);
        const bool stalled = post == vs;
        res.records.push_back(InteractionRecord{*q, a, post});
        vs = std::move(post);
        if (stalled && !has_informative_query(vs, cs, round + 1)) {
            res.outcome = Outcome::NonLearnable;
            break;
        }
    }
    if (res.outcome == Outcome::Identified) res.hypothesis = learner.hypothesis();
    return res;
}

void replay(const std::vector<InteractionRecord>& records, const ConceptClass& cls, const ContrastSet& cs) {
    VersionSpace vs = VersionSpace::full(cls);
    for (std::size_t r = 0; r < records.size(); ++r) {
        VersionSpace next = restrict_version_space(vs, records[r].query, records[r].answer, cs, r);
        if (!(next == records[r].post)) {
            fail(Errc::PropertyViolation, "replay diverges at round " + std::to_string(r));
        }
        vs = std::move(next);
    }
}

void check_trace(const std::vector<InteractionRecord>& records, const Concept& target, const ConceptClass& cls) {
    const auto tidx = cls.index_of(target);
    if (!tidx) fail(Errc::InvalidArgument, "target is not a member of the class");
    VersionSpace prev = VersionSpace::full(cls);
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (!records[r].post.is_subset_of(prev)) {
            fail(Errc::PropertyViolation, "version space grew at round " + std::to_string(r));
        }
        if (!records[r].post.contains(*tidx)) {
            fail(Errc::PropertyViolation, "target missing at round " + std::to_string(r));
        }
        prev = records[r].post;
    }
}

namespace {

struct Evaluator {
    const ConceptClass& cls;
    const ContrastSet& cs;
    std::size_t depth_limit;
    WorstCase wc;
    std::unordered_map<std::string, std::size_t> memo;

    std::size_t run(Learner& l, const VersionSpace& vs, std::size_t round) {
        if (vs.size() == 1) {
            ++wc.leaves;
            try {
                if (!(l.hypothesis() == vs.cls()[vs.mask().find_first()])) wc.hypotheses_ok = false;
            } catch (const Error&) {
                wc.hypotheses_ok = false;
            }
            return 0;
        }
        if (round >= depth_limit) {
            ++wc.max_depth_hit;
            wc.all_identified = false;
            return 0;
        }
        std::optional<std::string> key;
        if (auto sk = l.state_key()) {
            key = *sk + "|" + vs.mask().to_string() + "|" + std::to_string(cs.round_dependent() ? round : 0);
            if (auto it = memo.find(*key); it != memo.end()) return it->second;
        }
        const auto q = l.next_query(vs);
        if (!q) {
            wc.all_identified = false;
            return 0;
        }
        std::size_t worst = 0;
        for (const auto& g : answer_groups(vs, *q, cs, round)) {
            VersionSpace post(cls, g.members);
            auto child = l.clone();
            child->observe(*q, g.answer, post);
            if (post == vs && !has_informative_query(post, cs, round + 1)) {
                wc.all_identified = false;
                worst = std::max<std::size_t>(worst, 1);
                continue;
            }
            worst = std::max(worst, 1 + run(*child, post, round + 1));
        }
        if (key) memo.emplace(*key, worst);
        return worst;
    }
};

}  // namespace

WorstCase evaluate_worst_case(const Learner& learner, const ConceptClass& cls, const ContrastSet& cs,
                              std::size_t depth_limit) {
    Evaluator ev{cls, cs, depth_limit, {}, {}};
    auto l = learner.clone();
    const VersionSpace full = VersionSpace::full(cls);
    l->start(full);
    ev.wc.max_queries = ev.run(*l, full, 0);
    return ev.wc;
}

}  // namespace clab
