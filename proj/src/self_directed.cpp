#include "clab/self_directed.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "clab/metrics.hpp"

namespace clab {

SdRun run_sd(SdLearner& l, const Concept& target) {
    const std::size_t n = target.size();
    l.start(n);
    Bits seen(n);
    SdRun run;
    while (run.steps.size() < n) {
        const auto step = l.next();
        if (!step) fail(Errc::PropertyViolation, "self-directed learner stopped with unlabelled instances");
        const auto [x, pred] = *step;
        if (x >= n) fail(Errc::OutOfRange, "instance out of range");
        if (seen.test(x)) fail(Errc::PropertyViolation, "instance " + std::to_string(x) + " chosen twice");
        seen.set(x);
        const bool truth = target(x);
        run.steps.push_back(SdStep{x, pred, truth});
        if (pred != truth) ++run.mistakes;
        l.observe(truth);
    }
    return run;
}

// --- from a contrast learner ---------------------------------------------------

SdFromContrast::SdFromContrast(std::unique_ptr<Learner> inner, std::shared_ptr<const MinDistanceCs> cs,
                               const ConceptClass& cls)
    : inner_(std::move(inner)), cs_(std::move(cs)), cls_(&cls) {}

SdFromContrast::SdFromContrast(const SdFromContrast& o)
    : inner_(o.inner_->clone()),
      cs_(o.cs_),
      cls_(o.cls_),
      vs_(o.vs_),
      round_(o.round_),
      known_(o.known_),
      query_(o.query_),
      query_label_(o.query_label_),
      awaiting_query_label_(o.awaiting_query_label_),
      walk_(o.walk_),
      walk_pos_(o.walk_pos_),
      inner_done_(o.inner_done_),
      hypothesis_(o.hypothesis_),
      pending_(o.pending_) {}

void SdFromContrast::start(std::size_t n) {
    if (n != cls_->domain_size()) fail(Errc::DomainMismatch, "target size differs from the class domain");
    vs_.emplace(VersionSpace::full(*cls_));
    inner_->start(*vs_);
    known_.assign(n, -1);
    round_ = 0;
    query_.reset();
    inner_done_ = false;
}

void SdFromContrast::begin_walk(Instance x, bool label) {
    query_label_ = label;
    const std::size_t n = known_.size();
    walk_.clear();
    for (Instance y = 0; y < n; ++y)
        if (y != x) walk_.push_back(y);
    std::vector<Rational> dist(n);
    for (auto y : walk_) dist[y] = cs_->distance(x, y, *vs_, round_);
    std::stable_sort(walk_.begin(), walk_.end(), [&](Instance a, Instance b) { return dist[a] < dist[b]; });
    walk_pos_ = 0;
}

void SdFromContrast::finish_query(std::optional<Instance> contrast) {
    OracleAnswer a;
    a.label = query_label_;
    if (contrast) a.contrast = Contrast{*contrast, known_[*contrast] == 1};
    VersionSpace post = restrict_version_space(*vs_, *query_, a, *cs_, round_);
    if (post.empty()) fail(Errc::InconsistentOracle, "labels contradict the class");
    inner_->observe(*query_, a, post);
    vs_.emplace(std::move(post));
    ++round_;
    query_.reset();
}

std::optional<std::pair<Instance, bool>> SdFromContrast::next() {
    for (;;) {
        if (pending_) return pending_;
        if (std::find(known_.begin(), known_.end(), -1) == known_.end()) return std::nullopt;
        if (!query_ && !inner_done_) {
            std::optional<Query> q;
            if (vs_->size() > 1) q = inner_->next_query(*vs_);
            if (!q) {
                inner_done_ = true;
                if (vs_->size() == 1) hypothesis_ = (*cls_)[vs_->mask().find_first()];
                else hypothesis_ = inner_->hypothesis();
                continue;
            }
            query_ = q;
            if (known_[q->x] < 0) {
                awaiting_query_label_ = true;
                pending_ = std::pair{q->x, false};
                continue;
            }
            begin_walk(q->x, known_[q->x] == 1);
        }
        if (inner_done_) {
            for (Instance y = 0; y < known_.size(); ++y) {
                if (known_[y] < 0) {
                    pending_ = std::pair{y, (*hypothesis_)(y)};
                    break;
                }
            }
            continue;
        }
        // walking outward from the query
        while (walk_pos_ < walk_.size() && known_[walk_[walk_pos_]] >= 0) {
            const Instance y = walk_[walk_pos_];
            if ((known_[y] == 1) != query_label_) break;
            ++walk_pos_;
        }
        if (walk_pos_ == walk_.size()) {
            finish_query(std::nullopt);
            continue;
        }
        const Instance y = walk_[walk_pos_];
        if (known_[y] >= 0) {
            finish_query(y);
            continue;
        }
        pending_ = std::pair{y, query_label_};
    }
}

void SdFromContrast::observe(bool truth) {
    if (!pending_) fail(Errc::InvalidArgument, "label without a pending prediction");
    const Instance x = pending_->first;
    pending_.reset();
    known_[x] = truth ? 1 : 0;
    if (awaiting_query_label_) {
        awaiting_query_label_ = false;
        begin_walk(x, truth);
    }
}

// --- decision lists -------------------------------------------------------------

void SdDlLearner::start(std::size_t n) {
    if (n != (std::size_t{1} << m_)) fail(Errc::DomainMismatch, "decision-list learner needs 2^m instances");
    known_.assign(n, -1);
    processed_ = 0;
    rules_.clear();
    pending_.reset();
    new_phase();
}

bool SdDlLearner::in_cube(Instance x) const {
    for (const auto& r : rules_) {
        if (var_value(x, m_, r.var) != r.negated) return false;
    }
    return true;
}

void SdDlLearner::new_phase() {
    lits_.clear();
    pure_.clear();
    for (std::size_t v = 1; v <= m_; ++v) {
        bool fixed = false;
        for (const auto& r : rules_) fixed = fixed || r.var == v;
        if (fixed) continue;
        lits_.push_back(Lit{v, false});
        lits_.push_back(Lit{v, true});
    }
    lit_idx_ = 0;
    test_bit_.reset();
    test_failed_ = false;
}

void SdDlLearner::close_phase() {
    if (pure_.empty()) {
        lits_.clear();
        return;
    }
    const bool b = pure_.front().second;
    for (const auto& [l, bit] : pure_) {
        if (bit == b) rules_.push_back(DlItem{l.var, l.negated, b});
    }
    new_phase();
}

std::optional<std::pair<Instance, bool>> SdDlLearner::next() {
    const std::size_t n = known_.size();
    for (;;) {
        if (pending_) return pending_;
        if (processed_ == n) return std::nullopt;
        if (lit_idx_ >= lits_.size()) {
            if (!lits_.empty()) {
                close_phase();
                if (!lits_.empty()) continue;
            }
            // no free literal or no pure one: label what is left directly
            for (Instance x = 0; x < n; ++x) {
                if (known_[x] >= 0) continue;
                bool pred = false;
                bool absorbed = false;
                for (const auto& r : rules_) {
                    if (var_value(x, m_, r.var) != r.negated) {
                        pred = r.label;
                        absorbed = true;
                        break;
                    }
                }
                if (!absorbed) {
                    for (Instance y = 0; y < n; ++y) {
                        if (known_[y] >= 0 && in_cube(y)) {
                            pred = known_[y] == 1;
                            break;
                        }
                    }
                }
                pending_ = std::pair{x, pred};
                break;
            }
            continue;
        }
        const Lit& l = lits_[lit_idx_];
        if (test_failed_) {
            ++lit_idx_;
            test_bit_.reset();
            test_failed_ = false;
            continue;
        }
        // points of the cube where the literal holds
        std::optional<Instance> fresh;
        std::optional<bool> seen_label;
        bool mixed = false;
        for (Instance x = 0; x < n; ++x) {
            if (!in_cube(x) || !lit_true(l, x)) continue;
            if (known_[x] < 0) {
                if (!fresh) fresh = x;
            } else {
                const bool lab = known_[x] == 1;
                if (seen_label && *seen_label != lab) mixed = true;
                if (!seen_label) seen_label = lab;
            }
        }
        if (!test_bit_ && seen_label) test_bit_ = seen_label;
        if (mixed || (test_bit_ && seen_label && *seen_label != *test_bit_)) {
            test_failed_ = true;
            continue;
        }
        if (!fresh) {
            if (test_bit_) pure_.emplace_back(l, *test_bit_);
            ++lit_idx_;
            test_bit_.reset();
            continue;
        }
        if (test_bit_) {
            pending_ = std::pair{*fresh, *test_bit_};
            continue;
        }
        // first point of this test: guess from anything known in the cube
        bool guess = false;
        for (Instance y = 0; y < n; ++y) {
            if (known_[y] >= 0 && in_cube(y)) {
                guess = known_[y] == 1;
                break;
            }
        }
        pending_ = std::pair{*fresh, guess};
    }
}

void SdDlLearner::observe(bool truth) {
    if (!pending_) fail(Errc::InvalidArgument, "label without a pending prediction");
    known_[pending_->first] = truth ? 1 : 0;
    ++processed_;
    if (lit_idx_ < lits_.size() && test_bit_ && truth != *test_bit_) test_failed_ = true;
    if (lit_idx_ < lits_.size() && !test_bit_) test_bit_ = truth;
    pending_.reset();
}

// --- monotone DNF -----------------------------------------------------------------

void SdMdnfLearner::start(std::size_t n) {
    if (n != (std::size_t{1} << m_)) fail(Errc::DomainMismatch, "mdnf learner needs 2^m instances");
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Instance{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [](Instance a, Instance b) { return std::popcount(a) < std::popcount(b); });
    pos_ = 0;
    terms_.clear();
}

std::optional<std::pair<Instance, bool>> SdMdnfLearner::next() {
    if (pos_ >= order_.size()) return std::nullopt;
    const Instance x = order_[pos_];
    const bool pred = std::any_of(terms_.begin(), terms_.end(), [&](Instance t) { return (x & t) == t; });
    return std::pair{x, pred};
}

void SdMdnfLearner::observe(bool truth) {
    const Instance x = order_[pos_++];
    const bool pred = std::any_of(terms_.begin(), terms_.end(), [&](Instance t) { return (x & t) == t; });
    if (truth && !pred) terms_.push_back(x);
}

}  // namespace clab
