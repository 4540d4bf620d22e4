#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clab/boolean_classes.hpp"
#include "clab/core.hpp"
#include "clab/oracles.hpp"
#include "clab/protocol.hpp"

namespace clab {

struct SdStep {
    Instance x = 0;
    bool predicted = false;
    bool truth = false;
};

struct SdRun {
    std::vector<SdStep> steps;
    std::size_t mistakes = 0;
};

/// Self-directed learner: picks the next instance and a prediction, then
/// sees the true label. Every instance is labelled exactly once.
class SdLearner {
public:
    virtual ~SdLearner() = default;
    virtual void start(std::size_t n) = 0;
    virtual std::optional<std::pair<Instance, bool>> next() = 0;
    virtual void observe(bool truth) = 0;
    virtual std::unique_ptr<SdLearner> clone() const = 0;
    virtual std::string name() const = 0;
};

/// Throws PropertyViolation if the learner repeats or skips an instance.
SdRun run_sd(SdLearner& l, const Concept& target);

/// Turns a minimum-distance contrast learner into a self-directed one:
/// predict 0 at each query, then walk outward in distance order predicting
/// the query's label until the first opposite label (the contrast).
class SdFromContrast : public SdLearner {
public:
    SdFromContrast(std::unique_ptr<Learner> inner, std::shared_ptr<const MinDistanceCs> cs, const ConceptClass& cls);
    SdFromContrast(const SdFromContrast& o);

    void start(std::size_t n) override;
    std::optional<std::pair<Instance, bool>> next() override;
    void observe(bool truth) override;
    std::unique_ptr<SdLearner> clone() const override { return std::make_unique<SdFromContrast>(*this); }
    std::string name() const override { return "sd(" + inner_->name() + ")"; }

    std::size_t inner_queries() const { return round_; }

private:
    void begin_walk(Instance x, bool label);
    void finish_query(std::optional<Instance> contrast);

    std::unique_ptr<Learner> inner_;
    std::shared_ptr<const MinDistanceCs> cs_;
    const ConceptClass* cls_;
    std::optional<VersionSpace> vs_;
    std::size_t round_ = 0;
    std::vector<int> known_;  // -1 unknown
    std::optional<Query> query_;
    bool query_label_ = false;
    bool awaiting_query_label_ = false;
    std::vector<Instance> walk_;
    std::size_t walk_pos_ = 0;
    bool inner_done_ = false;
    std::optional<Concept> hypothesis_;
    std::optional<std::pair<Instance, bool>> pending_;
};

/// Block-by-block purity testing for 1-decision lists.
class SdDlLearner : public SdLearner {
public:
    explicit SdDlLearner(std::size_t m) : m_(m) {}
    void start(std::size_t n) override;
    std::optional<std::pair<Instance, bool>> next() override;
    void observe(bool truth) override;
    std::unique_ptr<SdLearner> clone() const override { return std::make_unique<SdDlLearner>(*this); }
    std::string name() const override { return "sd_dl"; }

    /// Items learned so far, in order.
    const std::vector<DlItem>& learned() const { return rules_; }

private:
    struct Lit {
        std::size_t var;
        bool negated;
    };
    bool lit_true(const Lit& l, Instance x) const { return var_value(x, m_, l.var) != l.negated; }
    bool in_cube(Instance x) const;
    void new_phase();
    void close_phase();

    std::size_t m_;
    std::vector<int> known_;
    std::size_t processed_ = 0;
    std::vector<DlItem> rules_;  // peeled items; the cube is where all are false
    std::vector<Lit> lits_;
    std::size_t lit_idx_ = 0;
    std::optional<bool> test_bit_;
    bool test_failed_ = false;
    std::vector<std::pair<Lit, bool>> pure_;
    std::optional<std::pair<Instance, bool>> pending_;
};

/// Hamming-weight order; predicts the OR of the true points found so far.
class SdMdnfLearner : public SdLearner {
public:
    explicit SdMdnfLearner(std::size_t m) : m_(m) {}
    void start(std::size_t n) override;
    std::optional<std::pair<Instance, bool>> next() override;
    void observe(bool truth) override;
    std::unique_ptr<SdLearner> clone() const override { return std::make_unique<SdMdnfLearner>(*this); }
    std::string name() const override { return "sd_mdnf"; }

    const std::vector<Instance>& terms() const { return terms_; }

private:
    std::size_t m_;
    std::vector<Instance> order_;
    std::size_t pos_ = 0;
    std::vector<Instance> terms_;
};

}  // namespace clab
