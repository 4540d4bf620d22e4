#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clab/core.hpp"
#include "clab/metrics.hpp"

namespace clab {

/// argmin over opposite-label points of d(x, .); empty iff c is constant.
Bits cs_min(Instance x, const Concept& c, const Metric& d);
/// Opposite-label points within distance r of x.
Bits cs_prox(Instance x, const Rational& r, const Concept& c, const Metric& d);

/// Minimum-distance contrast sets. The metric is either fixed, induced by
/// the live version space, or a per-round sequence (the last entry repeats).
class MinDistanceCs : public ContrastSet {
public:
    explicit MinDistanceCs(Metric d);
    static std::shared_ptr<MinDistanceCs> version_space_induced();
    static std::shared_ptr<MinDistanceCs> sequence(std::vector<Metric> per_round);

    Bits operator()(const Query& q, const Concept& c, const VersionSpace& vs, std::size_t round) const override;
    bool dynamic() const override { return vs_induced_; }
    bool round_dependent() const override { return seq_.size() > 1; }
    std::string name() const override;

    std::size_t round_horizon() const override { return seq_.empty() ? 1 : seq_.size(); }
    bool version_space_induced_rule() const { return vs_induced_; }
    /// The distance the rule uses in this round against this version space.
    Rational distance(Instance x, Instance y, const VersionSpace& vs, std::size_t round) const;
    const Metric* static_metric() const { return seq_.size() == 1 ? &seq_.front() : nullptr; }

private:
    MinDistanceCs() = default;
    struct Order {
        std::vector<Instance> points;      // sorted by distance, then index
        std::vector<std::size_t> starts;  // group boundaries by equal distance
    };
    const Order& order_for(std::size_t metric_idx, Instance x) const;

    bool vs_induced_ = false;
    std::vector<Metric> seq_;
    mutable std::mutex mu_;
    mutable std::vector<std::unordered_map<Instance, Order>> orders_;
};

class ProximityCs : public ContrastSet {
public:
    explicit ProximityCs(Metric d) : d_(std::move(d)) {}
    Bits operator()(const Query& q, const Concept& c, const VersionSpace& vs, std::size_t round) const override;
    bool takes_radius() const override { return true; }
    std::string name() const override { return "prox:" + d_.name(); }
    std::vector<Rational> radii(Instance x) const override;
    const Metric& metric() const { return d_; }

private:
    struct Ball {
        std::vector<Instance> points;   // sorted by distance from the centre
        std::vector<Rational> radius;   // distance of each group
        std::vector<std::size_t> ends;  // end of each equal-distance group
    };
    const Ball& ball(Instance x) const;

    Metric d_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Instance, Ball> balls_;
};

/// CS(x_i, C) = {first element of T(C) at or after position i of the
/// enumeration}, or empty.
class InjectiveCs : public ContrastSet {
public:
    /// images[k] is T of cls[k]; enumeration is a permutation of the domain
    /// (identity when empty). Throws NotInjective.
    InjectiveCs(const ConceptClass& cls, std::vector<Bits> images, std::vector<Instance> enumeration = {});

    Bits operator()(const Query& q, const Concept& c, const VersionSpace& vs, std::size_t round) const override;
    std::string name() const override { return "injective"; }

    const Bits& image(const Concept& c) const;
    const std::vector<Instance>& enumeration() const { return enumeration_; }
    std::size_t position(Instance x) const { return position_[x]; }

private:
    std::unordered_map<Bits, Bits, BitsHash> images_;
    std::vector<Instance> enumeration_;
    std::vector<std::size_t> position_;
};

/// Always empty: every answer is the dummy response. Turns the contrast game
/// into the plain membership-query game.
class NullCs : public ContrastSet {
public:
    Bits operator()(const Query&, const Concept& c, const VersionSpace&, std::size_t) const override {
        return Bits(c.size());
    }
    std::string name() const override { return "none"; }
};

/// Decides the oracle's reply. The protocol engine checks the result for
/// honesty, so a strategy may lie (useful in tests).
class OracleStrategy {
public:
    virtual ~OracleStrategy() = default;
    virtual OracleAnswer answer(const Query& q, const Concept& target, const VersionSpace& vs,
                                const Bits& admissible, std::size_t round) = 0;
    virtual std::string name() const = 0;
    virtual std::unique_ptr<OracleStrategy> clone() const = 0;
};

class FirstOracle : public OracleStrategy {
public:
    OracleAnswer answer(const Query& q, const Concept& target, const VersionSpace& vs, const Bits& admissible,
                        std::size_t round) override;
    std::string name() const override { return "first"; }
    std::unique_ptr<OracleStrategy> clone() const override { return std::make_unique<FirstOracle>(*this); }
};

/// xorshift64* generator; identical sequences on every platform.
class XorShift64 {
public:
    explicit XorShift64(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 2685821657736338717ull;
    }
    /// uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
    double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::uint64_t state_;
};

class RandomOracle : public OracleStrategy {
public:
    explicit RandomOracle(std::uint64_t seed) : seed_(seed), rng_(seed) {}
    OracleAnswer answer(const Query& q, const Concept& target, const VersionSpace& vs, const Bits& admissible,
                        std::size_t round) override;
    std::string name() const override { return "random:seed=" + std::to_string(seed_); }
    std::unique_ptr<OracleStrategy> clone() const override { return std::make_unique<RandomOracle>(seed_); }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    XorShift64 rng_;
};

class ContrastGame;

/// Picks the admissible example whose resulting version space has the
/// largest exact game value; ties go to the lowest instance index.
class MinimaxOracle : public OracleStrategy {
public:
    explicit MinimaxOracle(std::shared_ptr<ContrastGame> game) : game_(std::move(game)) {}
    OracleAnswer answer(const Query& q, const Concept& target, const VersionSpace& vs, const Bits& admissible,
                        std::size_t round) override;
    std::string name() const override { return "minimax"; }
    std::unique_ptr<OracleStrategy> clone() const override { return std::make_unique<MinimaxOracle>(game_); }

private:
    std::shared_ptr<ContrastGame> game_;
};

/// Picks the admissible example farthest from the query under a metric,
/// ties to the lowest index. A cheap adversary for large classes.
class FarthestOracle : public OracleStrategy {
public:
    explicit FarthestOracle(Metric d) : d_(std::move(d)) {}
    OracleAnswer answer(const Query& q, const Concept& target, const VersionSpace& vs, const Bits& admissible,
                        std::size_t round) override;
    std::string name() const override { return "farthest"; }
    std::unique_ptr<OracleStrategy> clone() const override { return std::make_unique<FarthestOracle>(*this); }

private:
    Metric d_;
};

OracleAnswer make_answer(const Query& q, const Concept& target, std::optional<Instance> pick);

}  // namespace clab
