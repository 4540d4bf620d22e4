#include "clab/learners.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "clab/boolean_classes.hpp"

namespace clab {

namespace {

std::size_t bool_dim_of(const VersionSpace& vs, const std::string& who) {
    const auto& d = vs.cls().domain();
    if (!d.bool_dim) fail(Errc::InvalidArgument, who + " needs a Boolean domain");
    return *d.bool_dim;
}

std::string answer_str(const OracleAnswer& a) {
    std::string s = a.label ? "1" : "0";
    if (a.contrast) s += "," + std::to_string(a.contrast->x) + (a.contrast->y ? "+" : "-");
    else s += ",w";
    return s;
}

}  // namespace

// --- pmon -------------------------------------------------------------------

void PmonLearner::start(const VersionSpace& vs) {
    Learner::start(vs);
    m_ = bool_dim_of(vs, "pmon learner");
}

std::optional<Query> PmonLearner::next_query(const VersionSpace&) {
    if (asked_) return std::nullopt;
    return Query{0, std::nullopt};
}

void PmonLearner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    asked_ = true;
    answer_ = a;
}

Concept PmonLearner::hypothesis() const {
    if (!answer_) return Learner::hypothesis();
    const auto& a = *answer_;
    if (a.label && a.is_omega()) return monomial_concept(m_, 0, 0);
    if (!a.label && a.contrast && a.contrast->y) return monomial_concept(m_, a.contrast->x, 0);
    fail(Errc::InconsistentOracle, "pmon learner: answer " + answer_str(a) + " fits no monotone monomial");
}

// --- monomials and clauses ----------------------------------------------------

void MonClausLearner::MonoSim::feed(bool at_zero_point, const OracleAnswer& a, std::size_t m) {
    if (inconsistent) return;
    const Instance full = (Instance{1} << m) - 1;
    if (a.contrast && a.contrast->y == a.label) {
        inconsistent = true;
        return;
    }
    if (at_zero_point) {
        at_zero = a;
        if (a.label && a.is_omega()) {
            pos = 0;
            neg = 0;
        } else if (a.label) {
            if (std::popcount(a.contrast->x) != 1) inconsistent = true;
            else {
                pos = 0;
                if (m == 1) neg = a.contrast->x;
            }
        } else if (a.contrast) {
            pos = a.contrast->x;
            if (a.contrast->x == full) neg = 0;
        } else {
            inconsistent = true;
        }
    } else {
        at_one = a;
        if (a.label && a.is_omega()) {
            pos = 0;
            neg = 0;
        } else if (a.label) {
            if (static_cast<std::size_t>(std::popcount(a.contrast->x)) + 1 != m) inconsistent = true;
            else {
                neg = 0;
                if (m == 1) pos = full;
            }
        } else if (a.contrast) {
            neg = full & ~a.contrast->x;
        } else {
            inconsistent = true;
        }
    }
    if (pos && neg && (*pos & *neg) != 0) inconsistent = true;
}

std::optional<std::pair<Instance, Instance>> MonClausLearner::MonoSim::result(std::size_t) const {
    if (inconsistent || !pos || !neg) return std::nullopt;
    return std::pair{*pos, *neg};
}

void MonClausLearner::start(const VersionSpace& vs) {
    Learner::start(vs);
    m_ = bool_dim_of(vs, "monclaus learner");
}

std::optional<Query> MonClausLearner::next_query(const VersionSpace&) {
    const Instance full = (Instance{1} << m_) - 1;
    if (history_.empty()) return Query{0, std::nullopt};
    if (history_.size() == 1) return Query{full, std::nullopt};
    return std::nullopt;
}

void MonClausLearner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    history_.emplace_back(q, a);
    const Instance full = (Instance{1} << m_) - 1;
    mono_.feed(q.x == 0, a, m_);
    OracleAnswer d;
    d.label = !a.label;
    if (a.contrast) d.contrast = Contrast{a.contrast->x ^ full, !a.contrast->y};
    dual_.feed(q.x == full, d, m_);
}

bool MonClausLearner::consistent(const Concept& h) const {
    const Metric d = Metric::hamming(m_);
    for (const auto& [q, a] : history_) {
        if (!admissible(q, a, h, cs_min(q.x, h, d))) return false;
    }
    return true;
}

std::optional<Concept> MonClausLearner::decided() const {
    if (auto r = mono_.result(m_)) {
        Concept h = monomial_concept(m_, r->first, r->second);
        if (consistent(h)) return h;
    }
    if (auto r = dual_.result(m_)) {
        Concept h = clause_concept(m_, r->first, r->second);
        if (consistent(h)) return h;
    }
    return std::nullopt;
}

Concept MonClausLearner::hypothesis() const {
    if (auto h = decided()) return *h;
    const bool pending = (!mono_.inconsistent && !mono_.result(m_)) || (!dual_.inconsistent && !dual_.result(m_));
    if (pending && last_vs_ && last_vs_->size() == 1) return Learner::hypothesis();
    fail(Errc::InconsistentOracle, "monclaus learner: both simulations are inconsistent");
}

std::optional<std::string> MonClausLearner::state_key() const {
    std::string s;
    for (const auto& [q, a] : history_) s += std::to_string(q.x) + ":" + answer_str(a) + ";";
    return s;
}

// --- proximity from minimum distance ------------------------------------------

ProxFromMin::ProxFromMin(std::unique_ptr<Learner> inner, Metric d)
    : inner_(std::move(inner)),
      d_(std::move(d)),
      inner_cs_(std::make_shared<MinDistanceCs>(d_)),
      prox_cs_(std::make_shared<ProximityCs>(d_)),
      plan_(std::make_shared<std::unordered_map<std::string, std::size_t>>()) {}

ProxFromMin::ProxFromMin(const ProxFromMin& o)
    : Learner(o),
      inner_(o.inner_->clone()),
      d_(o.d_),
      inner_cs_(o.inner_cs_),
      prox_cs_(o.prox_cs_),
      plan_(o.plan_),
      inner_vs_(o.inner_vs_),
      pending_(o.pending_),
      inner_done_(o.inner_done_),
      inner_round_(o.inner_round_),
      outer_round_(o.outer_round_),
      spent_(o.spent_),
      max_per_inner_(o.max_per_inner_) {}

void ProxFromMin::start(const VersionSpace& vs) {
    Learner::start(vs);
    inner_->start(vs);
    inner_vs_.emplace(vs);
    advance(vs);
}

std::optional<std::string> ProxFromMin::state_key() const {
    auto inner = inner_->state_key();
    if (!inner) return std::nullopt;
    std::string s = *inner + "#" + std::to_string(inner_round_) + (inner_done_ ? "d" : "");
    if (inner_vs_) s += "#" + inner_vs_->mask().to_string();
    if (pending_) s += "#q" + std::to_string(pending_->x);
    return s;
}

std::optional<OracleAnswer> ProxFromMin::common_answer(const VersionSpace& outer, Instance x) const {
    const auto members = outer.members();
    const Query q{x, std::nullopt};
    const Concept& c0 = outer.cls()[members.front()];
    const Bits first = (*inner_cs_)(q, c0, outer, inner_round_);
    std::vector<OracleAnswer> candidates;
    if (first.none()) {
        candidates.push_back(make_answer(q, c0, std::nullopt));
    } else {
        first.for_each_set([&](Instance y) { candidates.push_back(make_answer(q, c0, y)); });
    }
    for (std::size_t k = 1; k < members.size() && !candidates.empty(); ++k) {
        const Concept& c = outer.cls()[members[k]];
        const Bits set = (*inner_cs_)(q, c, outer, inner_round_);
        std::erase_if(candidates, [&](const OracleAnswer& a) { return !admissible(q, a, c, set); });
    }
    if (candidates.empty()) return std::nullopt;
    return candidates.front();
}

void ProxFromMin::advance(const VersionSpace& outer) {
    while (!inner_done_) {
        if (!pending_) {
            if (inner_vs_->size() == 1) {
                inner_done_ = true;
                return;
            }
            pending_ = inner_->next_query(*inner_vs_);
            spent_ = 0;
            if (!pending_) {
                inner_done_ = true;
                return;
            }
        }
        const auto a = common_answer(outer, pending_->x);
        if (!a) return;
        VersionSpace post = restrict_version_space(*inner_vs_, *pending_, *a, *inner_cs_, inner_round_);
        if (post.empty()) fail(Errc::InconsistentOracle, "forwarded answer empties the inner version space");
        inner_->observe(*pending_, *a, post);
        inner_vs_.emplace(std::move(post));
        ++inner_round_;
        max_per_inner_ = std::max(max_per_inner_, spent_);
        pending_.reset();
    }
}

std::size_t ProxFromMin::serve_cost(const Bits& mask, Instance x, std::size_t bound) const {
    const VersionSpace vs(inner_vs_->cls(), mask);
    if (common_answer(vs, x)) return 0;
    if (bound == 0) return SIZE_MAX;
    const std::string key = std::to_string(x) + ":" + mask.to_string();
    if (auto it = plan_->find(key); it != plan_->end()) return it->second <= bound ? it->second : SIZE_MAX;
    std::size_t best = SIZE_MAX;
    for (const auto& r : prox_cs_->radii(x)) {
        const auto groups = answer_groups(vs, Query{x, r}, *prox_cs_);
        std::size_t worst = 0;
        const std::size_t limit = std::min(bound, best == SIZE_MAX ? bound : best - 1);
        if (limit == 0) break;
        for (const auto& g : groups) {
            if (g.members == mask) {
                worst = SIZE_MAX;
                break;
            }
            const std::size_t c = serve_cost(g.members, x, limit - 1);
            if (c == SIZE_MAX) {
                worst = SIZE_MAX;
                break;
            }
            worst = std::max(worst, 1 + c);
        }
        if (worst < best) best = worst;
    }
    // only exact answers are cached: a miss under a bound is not final
    if (best != SIZE_MAX) plan_->emplace(key, best);
    return best;
}

Rational ProxFromMin::choose_radius(const VersionSpace& outer, Instance x) const {
    const Bits& mask = outer.mask();
    const std::size_t cap = 2 * d_.s_d() + 2;
    std::optional<Rational> best_r;
    std::size_t best = SIZE_MAX;
    for (const auto& r : prox_cs_->radii(x)) {
        std::size_t worst = 0;
        for (const auto& g : answer_groups(outer, Query{x, r}, *prox_cs_)) {
            if (g.members == mask) {
                worst = SIZE_MAX;
                break;
            }
            const std::size_t limit = best == SIZE_MAX ? cap : best - 1;
            const std::size_t c = serve_cost(g.members, x, limit);
            if (c == SIZE_MAX) {
                worst = SIZE_MAX;
                break;
            }
            worst = std::max(worst, c);
        }
        if (worst < best) {
            best = worst;
            best_r = r;
        }
    }
    if (!best_r) fail(Errc::PropertyViolation, "no radius makes progress at the pending query");
    return *best_r;
}

std::optional<Query> ProxFromMin::next_query(const VersionSpace& vs) {
    advance(vs);
    if (inner_done_ || !pending_) return std::nullopt;
    ++outer_round_;
    ++spent_;
    return Query{pending_->x, choose_radius(vs, pending_->x)};
}

void ProxFromMin::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    advance(post);
}

Concept ProxFromMin::hypothesis() const { return inner_->hypothesis(); }

// --- VC dimension one ---------------------------------------------------------

Vcd1Learner::Vcd1Learner(Vcd1Construction c) : c_(std::move(c)) {
    pos_of_.assign(c_.ordering.size(), 0);
    for (std::size_t i = 0; i < c_.ordering.size(); ++i) {
        (c_.ordering[i].second ? plus_ : minus_).push_back(i);
        pos_of_[c_.ordering[i].first] = i;
    }
}

std::optional<Query> Vcd1Learner::next_query(const VersionSpace&) {
    if (!plus_.empty() && !plus_answer_) return Query{c_.ordering[plus_.front()].first, std::nullopt};
    if (!minus_.empty() && !minus_answer_) return Query{c_.ordering[minus_.front()].first, std::nullopt};
    return std::nullopt;
}

void Vcd1Learner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    if (!plus_.empty() && q.x == c_.ordering[plus_.front()].first) plus_answer_ = a;
    else if (!minus_.empty() && q.x == c_.ordering[minus_.front()].first) minus_answer_ = a;
}

std::optional<std::size_t> Vcd1Learner::decode() const {
    if ((!plus_.empty() && !plus_answer_) || (!minus_.empty() && !minus_answer_)) return std::nullopt;
    // first position on each chain where the target leaves the chain's bit
    auto first_on_chain = [&](const std::optional<OracleAnswer>& a, bool chain_bit) -> std::optional<std::size_t> {
        if (!a) return std::nullopt;
        const auto& front = chain_bit ? plus_.front() : minus_.front();
        if (a->label == chain_bit) return front;
        if (!a->contrast) return std::nullopt;
        if (a->contrast->y != chain_bit) fail(Errc::InconsistentOracle, "vcd1 learner: contrast has the query's label");
        const std::size_t p = pos_of_[a->contrast->x];
        if (c_.ordering[p].second == chain_bit) return p;
        return std::nullopt;
    };
    const auto jp = first_on_chain(plus_answer_, true);
    const auto jm = first_on_chain(minus_answer_, false);
    if (!jp && !jm) return c_.ordering.size();
    if (!jp) return *jm;
    if (!jm) return *jp;
    return std::min(*jp, *jm);
}

Concept Vcd1Learner::hypothesis() const {
    if (auto k = decode()) return c_.extended[*k];
    return Learner::hypothesis();
}

std::optional<std::string> Vcd1Learner::state_key() const {
    std::string s = plus_answer_ ? answer_str(*plus_answer_) : "-";
    s += "|";
    s += minus_answer_ ? answer_str(*minus_answer_) : "-";
    return s;
}

// --- monotone DNF, version-space distance -------------------------------------

void MdnfDynamicLearner::start(const VersionSpace& vs) {
    Learner::start(vs);
    m_ = bool_dim_of(vs, "mdnf learner");
}

std::optional<Query> MdnfDynamicLearner::next_query(const VersionSpace&) {
    if (saw_omega_ || terms_.size() >= s_) return std::nullopt;
    return Query{0, std::nullopt};
}

void MdnfDynamicLearner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    if (a.label) {
        inconsistent_ = true;
        return;
    }
    if (!a.contrast) {
        saw_omega_ = true;
        return;
    }
    const Instance t = a.contrast->x;
    terms_.push_back(t);
    if (post.size() == 1) return;
    bool minimal_somewhere = false;
    post.mask().for_each_set([&](std::size_t i) {
        const Concept& c = post.cls()[i];
        if (minimal_somewhere || !c(t)) return;
        bool minimal = true;
        for (std::size_t b = 0; b < m_ && minimal; ++b) {
            const Instance bit = Instance{1} << b;
            if ((t & bit) && c(t & ~bit)) minimal = false;
        }
        minimal_somewhere = minimal;
    });
    if (!minimal_somewhere) inconsistent_ = true;
}

Concept MdnfDynamicLearner::hypothesis() const {
    // a short target can be pinned down by a non-minimal contrast
    if (last_vs_ && last_vs_->size() == 1) return Learner::hypothesis();
    if (inconsistent_) fail(Errc::InconsistentOracle, "mdnf learner: contrast is not a minimal true point");
    if (saw_omega_ || terms_.size() >= s_) return mdnf_concept(m_, terms_);
    return Learner::hypothesis();
}

std::optional<std::string> MdnfDynamicLearner::state_key() const {
    std::string s = saw_omega_ ? "w" : "";
    for (auto t : terms_) s += std::to_string(t) + ",";
    return s;
}

// --- injective ---------------------------------------------------------------

void InjectiveLearner::start(const VersionSpace& vs) {
    Learner::start(vs);
    cls_ = &vs.cls();
    seen_ = Bits(vs.cls().domain_size());
    next_pos_ = 0;
}

std::optional<Query> InjectiveLearner::next_query(const VersionSpace&) {
    if (next_pos_ >= cs_->enumeration().size()) return std::nullopt;
    return Query{cs_->enumeration()[next_pos_], std::nullopt};
}

void InjectiveLearner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    if (a.contrast) {
        seen_.set(a.contrast->x);
        next_pos_ = cs_->position(a.contrast->x) + 1;
    } else {
        next_pos_ = cs_->enumeration().size();
    }
}

Concept InjectiveLearner::hypothesis() const {
    if (next_pos_ >= cs_->enumeration().size()) {
        for (const auto& c : cls_->concepts()) {
            if (cs_->image(c) == seen_) return c;
        }
        fail(Errc::InconsistentOracle, "injective learner: no concept has the observed image");
    }
    // Images of remaining candidates agree with what was seen so far.
    return Learner::hypothesis();
}

std::optional<std::string> InjectiveLearner::state_key() const {
    return seen_.to_string() + "@" + std::to_string(next_pos_);
}

// --- halving -----------------------------------------------------------------

std::optional<Query> HalvingLearner::next_query(const VersionSpace& vs) {
    std::vector<Query> moves = pool_;
    if (moves.empty()) {
        for (Instance x = 0; x < vs.cls().domain_size(); ++x) {
            if (cs_->takes_radius()) {
                for (const auto& r : cs_->radii(x)) moves.push_back(Query{x, r});
            } else {
                moves.push_back(Query{x, std::nullopt});
            }
        }
    }
    std::optional<Query> best;
    std::size_t best_worst = SIZE_MAX;
    for (const auto& q : moves) {
        std::size_t worst = 0;
        for (const auto& g : answer_groups(vs, q, *cs_, round_)) worst = std::max(worst, g.members.count());
        if (worst < best_worst) {
            best_worst = worst;
            best = q;
        }
    }
    if (!best || best_worst >= vs.size()) return std::nullopt;
    return best;
}

void HalvingLearner::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    ++round_;
}

// --- membership and example oracles ------------------------------------------

VersionSpace restrict_exmq(const VersionSpace& vs, const ExMqAction& act, const ExMqReply& r) {
    const auto& cls = vs.cls();
    Bits keep = vs.mask();
    if (act.kind == ExMqAction::MQ) {
        keep &= r.label ? cls.positives_at(act.x) : ~cls.positives_at(act.x);
    } else {
        const bool positive = act.kind == ExMqAction::EXPos;
        if (r.example) {
            keep &= positive ? cls.positives_at(*r.example) : ~cls.positives_at(*r.example);
        } else {
            Bits none(cls.size());
            keep.for_each_set([&](std::size_t i) {
                const auto cnt = cls[i].labels.count();
                if ((positive && cnt == 0) || (!positive && cnt == cls.domain_size())) none.set(i);
            });
            keep = none;
        }
    }
    return VersionSpace(cls, std::move(keep));
}

ExMqRun run_exmq_protocol(ExMqLearner& l, const Concept& target, const ConceptClass& cls,
                          std::optional<std::uint64_t> seed, std::size_t max_calls) {
    const auto tidx = cls.index_of(target);
    if (!tidx) fail(Errc::InvalidArgument, "target is not a member of the class");
    std::optional<XorShift64> rng;
    if (seed) rng.emplace(*seed);
    VersionSpace vs = VersionSpace::full(cls);
    ExMqRun run;
    l.start(vs);
    while (run.calls < max_calls) {
        if (vs.size() == 1) {
            run.identified = true;
            break;
        }
        const auto act = l.next_action(vs);
        if (!act) break;
        ExMqReply r;
        if (act->kind == ExMqAction::MQ) {
            if (act->x >= cls.domain_size()) fail(Errc::OutOfRange, "query outside the domain");
            r.label = target(act->x);
        } else {
            const bool positive = act->kind == ExMqAction::EXPos;
            std::vector<Instance> options;
            for (Instance x = 0; x < cls.domain_size(); ++x) {
                if (target(x) == positive) options.push_back(x);
            }
            if (!options.empty()) r.example = rng ? options[rng->below(options.size())] : options.front();
            r.label = positive;
        }
        VersionSpace post = restrict_exmq(vs, *act, r);
        if (!post.contains(*tidx)) fail(Errc::PropertyViolation, "target dropped from the version space");
        l.observe(*act, r, post);
        vs = std::move(post);
        ++run.calls;
    }
    if (run.identified) run.hypothesis = l.hypothesis();
    return run;
}

std::optional<ExMqAction> ExMqCertificateLearner::next_action(const VersionSpace& vs) {
    if (!last_) last_.emplace(vs);
    const auto mv = game_->best_move(vs.mask());
    if (!mv) return std::nullopt;
    if (*mv == game_->ex_pos_move()) return ExMqAction{ExMqAction::EXPos, 0};
    if (*mv == game_->ex_neg_move()) return ExMqAction{ExMqAction::EXNeg, 0};
    return ExMqAction{ExMqAction::MQ, *mv};
}

Concept ExMqCertificateLearner::hypothesis() const {
    if (!last_ || last_->size() != 1) fail(Errc::InconsistentOracle, "no unique hypothesis");
    return last_->cls()[last_->mask().find_first()];
}

ContrastFromExMq::ContrastFromExMq(std::unique_ptr<ExMqLearner> inner, Instance probe)
    : inner_(std::move(inner)), probe_(probe) {}

ContrastFromExMq::ContrastFromExMq(const ContrastFromExMq& o)
    : Learner(o), inner_(o.inner_->clone()), probe_(o.probe_), inner_vs_(o.inner_vs_), pending_(o.pending_) {}

void ContrastFromExMq::start(const VersionSpace& vs) {
    Learner::start(vs);
    inner_vs_.emplace(vs);
    inner_->start(vs);
}

std::optional<Query> ContrastFromExMq::next_query(const VersionSpace&) {
    if (!pending_) pending_ = inner_->next_action(*inner_vs_);
    if (!pending_) return std::nullopt;
    if (pending_->kind == ExMqAction::MQ) return Query{pending_->x, std::nullopt};
    return Query{probe_, std::nullopt};
}

// the contrasts can pin the target before the simulated learner knows it
Concept ContrastFromExMq::hypothesis() const {
    if (last_vs_ && last_vs_->size() == 1) return Learner::hypothesis();
    return inner_->hypothesis();
}

void ContrastFromExMq::observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
    Learner::observe(q, a, post);
    if (!pending_) fail(Errc::InvalidArgument, "answer without a pending call");
    ExMqReply r;
    if (pending_->kind == ExMqAction::MQ) {
        r.label = a.label;
    } else {
        const bool positive = pending_->kind == ExMqAction::EXPos;
        r.label = positive;
        if (a.label == positive) r.example = q.x;
        else if (a.contrast) r.example = a.contrast->x;
    }
    inner_vs_.emplace(restrict_exmq(*inner_vs_, *pending_, r));
    inner_->observe(*pending_, r, *inner_vs_);
    pending_.reset();
}

ExMqFromContrast::ExMqFromContrast(std::unique_ptr<Learner> inner) : inner_(std::move(inner)) {}

ExMqFromContrast::ExMqFromContrast(const ExMqFromContrast& o)
    : inner_(o.inner_->clone()),
      cs_(o.cs_),
      inner_vs_(o.inner_vs_),
      outer_vs_(o.outer_vs_),
      asked_neg_(o.asked_neg_),
      asked_pos_(o.asked_pos_),
      negative_(o.negative_),
      positive_(o.positive_),
      pending_(o.pending_),
      round_(o.round_),
      started_(o.started_) {}

std::optional<ExMqAction> ExMqFromContrast::next_action(const VersionSpace& vs) {
    if (!started_) {
        const VersionSpace full = VersionSpace::full(vs.cls());
        inner_->start(full);
        inner_vs_.emplace(full);
        cs_ = std::make_shared<MinDistanceCs>(Metric::discrete(vs.cls().domain_size()));
        started_ = true;
    }
    if (!asked_neg_) return ExMqAction{ExMqAction::EXNeg, 0};
    if (!asked_pos_) return ExMqAction{ExMqAction::EXPos, 0};
    if (!pending_) {
        if (inner_vs_->size() == 1) return std::nullopt;
        pending_ = inner_->next_query(*inner_vs_);
        if (!pending_) return std::nullopt;
    }
    return ExMqAction{ExMqAction::MQ, pending_->x};
}

Concept ExMqFromContrast::hypothesis() const {
    for (const auto* v : {&outer_vs_, &inner_vs_}) {
        if (*v && (*v)->size() == 1) return (*v)->cls()[(*v)->mask().find_first()];
    }
    return inner_->hypothesis();
}

void ExMqFromContrast::observe(const ExMqAction& act, const ExMqReply& r, const VersionSpace& outer) {
    outer_vs_.emplace(outer);
    if (act.kind == ExMqAction::EXNeg) {
        asked_neg_ = true;
        negative_ = r.example;
        return;
    }
    if (act.kind == ExMqAction::EXPos) {
        asked_pos_ = true;
        positive_ = r.example;
        return;
    }
    OracleAnswer a;
    a.label = r.label;
    const auto& other = r.label ? negative_ : positive_;
    if (other) a.contrast = Contrast{*other, !r.label};
    VersionSpace post = restrict_version_space(*inner_vs_, *pending_, a, *cs_, round_);
    inner_->observe(*pending_, a, post);
    inner_vs_.emplace(std::move(post));
    ++round_;
    pending_.reset();
}

}  // namespace clab
