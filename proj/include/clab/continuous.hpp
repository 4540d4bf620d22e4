#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clab/oracles.hpp"

namespace clab {

/// 1{x <= theta} on [0,1].
struct Threshold {
    double theta = 0;
    bool contains(double x) const { return x <= theta; }
};

using Point = std::vector<double>;

/// Closed axis-aligned box inside [0,1]^k.
struct Rectangle {
    Point low, high;
    std::size_t dim() const { return low.size(); }
    bool contains(const Point& x) const;
    double volume() const;
    void validate() const;
};

double l1(const Point& a, const Point& b);
/// Uniform-measure error: |theta_a - theta_b| and the volume of the symmetric difference.
double threshold_error(const Threshold& a, const Threshold& b);
double rect_error(const Rectangle& a, const Rectangle& b);

/// Which admissible contrastive point a target-driven oracle returns.
enum class PickRule { Nearest, Farthest, Random };
PickRule parse_pick_rule(const std::string& s);

struct Answer1 {
    bool label = false;
    std::optional<double> contrast;
};

struct AnswerK {
    bool label = false;
    std::optional<Point> contrast;
};

class ThresholdOracle {
public:
    virtual ~ThresholdOracle() = default;
    virtual Answer1 min_query(double x) = 0;
    virtual Answer1 prox_query(double x, double r) = 0;
    virtual bool member(double x) = 0;
    std::size_t queries() const { return queries_; }

protected:
    std::size_t queries_ = 0;
};

/// Answers from a fixed target. Contrast sets are closures of the opposite
/// region, so boundary points may carry the query's own label.
class TargetThresholdOracle : public ThresholdOracle {
public:
    TargetThresholdOracle(Threshold t, PickRule pick = PickRule::Nearest, std::uint64_t seed = 1)
        : t_(t), pick_(pick), rng_(seed) {}
    Answer1 min_query(double x) override;
    Answer1 prox_query(double x, double r) override;
    bool member(double x) override;

private:
    Threshold t_;
    PickRule pick_;
    XorShift64 rng_;
};

/// Adaptive adversary: keeps the set of consistent thresholds as wide as
/// possible and returns the least informative admissible point.
class HalvingThresholdOracle : public ThresholdOracle {
public:
    Answer1 min_query(double x) override;
    Answer1 prox_query(double x, double r) override;
    bool member(double x) override;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_ = 0, hi_ = 1;
};

class RectOracle {
public:
    RectOracle(Rectangle t, PickRule pick = PickRule::Nearest, std::uint64_t seed = 1);
    std::size_t dim() const { return t_.dim(); }
    AnswerK min_query(const Point& x);
    AnswerK prox_query(const Point& x, double r);
    bool member(const Point& x);
    std::size_t queries() const { return queries_; }

private:
    std::optional<std::pair<Point, double>> nearest_outside(const Point& x) const;
    Rectangle t_;
    PickRule pick_;
    XorShift64 rng_;
    std::size_t queries_ = 0;
};

struct ThresholdRun {
    Threshold estimate;
    std::size_t queries = 0;
};

struct RectRun {
    Rectangle estimate;
    std::size_t queries = 0;
};

/// One query at `at` (0 or 1); exact.
ThresholdRun threshold_min_learner(ThresholdOracle& o, double at = 0);
/// Radius bisection around 0 until the window is at most eps.
ThresholdRun threshold_prox_learner(ThresholdOracle& o, double eps);
/// Membership bisection, no contrast.
ThresholdRun threshold_mq_learner(ThresholdOracle& o, double eps);

RectRun rect_min_learner(RectOracle& o);
RectRun rect_prox_learner(RectOracle& o, double eps);
RectRun rect_mq_learner(RectOracle& o, double eps);

std::size_t threshold_prox_budget(double eps);
std::size_t rect_prox_budget(std::size_t k, double eps);

/// Dyadic targets on a 2^-bits grid.
Threshold random_threshold(XorShift64& rng, unsigned bits = 12);
Rectangle random_rectangle(XorShift64& rng, std::size_t k, unsigned bits = 12);

struct ContinuousTrial {
    std::size_t trial = 0;
    std::size_t queries = 0;
    double error = 0;
};

struct ContinuousConfig {
    std::string shape = "threshold";  // threshold | rect
    std::size_t k = 1;
    std::string model = "min";  // min | prox | mq
    double eps = 1.0 / 64;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    PickRule pick = PickRule::Farthest;
};

std::vector<ContinuousTrial> run_continuous(const ContinuousConfig& cfg);

struct Table1Row {
    std::string shape;
    std::string model;
    double eps = 0;
    std::size_t max_queries = 0;
    double mean_queries = 0;
    double max_error = 0;
    std::optional<std::size_t> budget;
};

/// Desk-scale analogue of the epsilon table: thresholds and k-rectangles
/// under no contrast, proximity, and minimum distance, plus the halving
/// adversary's forced count for thresholds.
std::vector<Table1Row> table1(const std::vector<double>& eps, std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace clab
