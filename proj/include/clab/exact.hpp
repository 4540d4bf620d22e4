#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clab/core.hpp"

namespace clab {

struct AnswerGroup {
    OracleAnswer answer;
    Bits members;  // concepts of the version space for which the answer is legal
};

/// All answers some member of vs could legally receive for q, each with the
/// version space it leads to. Sorted by answer (label, omega first, x').
std::vector<AnswerGroup> answer_groups(const VersionSpace& vs, const Query& q, const ContrastSet& cs,
                                       std::size_t round = 0);

struct GameValue {
    bool unbounded = false;
    std::size_t value = 0;
    std::vector<std::string> optimal_first_moves;
    std::size_t memo_entries = 0;
    /// Optimal move for each reachable state, keyed by "mask" or "mask@round".
    std::map<std::string, std::string> strategy;
};

/// Minimax search over version spaces. Learner picks a move, adversary picks
/// any group the move can lead to. Memoised on (mask, round) with bounds and
/// solved by iterative deepening.
class BoundedGame {
public:
    static constexpr std::uint32_t kInf = UINT32_MAX;

    explicit BoundedGame(const ConceptClass& cls) : cls_(cls) {}
    virtual ~BoundedGame() = default;

    const ConceptClass& cls() const { return cls_; }

    /// nullopt means unbounded.
    std::optional<std::size_t> value(const Bits& mask, std::size_t round = 0);
    bool feasible(const Bits& mask, std::size_t round, std::uint32_t k);

    /// Lowest-numbered move achieving the value, or nullopt if the state is
    /// terminal or unbounded.
    std::optional<std::size_t> best_move(const Bits& mask, std::size_t round = 0);
    std::vector<std::size_t> optimal_moves(const Bits& mask, std::size_t round = 0);

    GameValue solve(bool with_strategy = false, std::size_t strategy_limit = 20000);

    std::size_t memo_entries() const { return memo_.size(); }

    virtual std::size_t move_count() const = 0;
    virtual std::string move_name(std::size_t move) const = 0;
    /// Successor masks of (mask, round) under a move. May contain duplicates.
    virtual void successors(const Bits& mask, std::size_t round, std::size_t move, std::vector<Bits>& out) = 0;
    /// Round after `round`, saturated where the game stops depending on it.
    virtual std::size_t next_round(std::size_t round) const { return round; }
    virtual std::size_t round_horizon() const { return 1; }

protected:
    struct Key {
        Bits mask;
        std::size_t round;
        bool operator==(const Key& o) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return k.mask.hash() ^ (k.round * 0x9E3779B97F4A7C15ull); }
    };
    struct Bounds {
        std::uint32_t lo = 1;
        std::uint32_t hi = kInf;
    };

    std::size_t canon_round(std::size_t round) const;
    bool move_works(const Bits& mask, std::size_t round, std::size_t move, std::uint32_t k);
    std::uint32_t depth_bound(const Bits& mask, std::size_t round) const;
    std::string state_name(const Bits& mask, std::size_t round) const;

    const ConceptClass& cls_;
    std::unordered_map<Key, Bounds, KeyHash> memo_;
};

/// The contrast game for one contrast-set rule. Moves are queries; for
/// radius-taking rules the radii are restricted to radii(x).
class ContrastGame : public BoundedGame {
public:
    ContrastGame(const ConceptClass& cls, std::shared_ptr<const ContrastSet> cs);

    const ContrastSet& contrast_set() const { return *cs_; }
    const std::vector<Query>& moves() const { return moves_; }
    const Query& move(std::size_t i) const { return moves_[i]; }

    std::size_t move_count() const override { return moves_.size(); }
    std::string move_name(std::size_t move) const override;
    void successors(const Bits& mask, std::size_t round, std::size_t move, std::vector<Bits>& out) override;
    std::size_t next_round(std::size_t round) const override;
    std::size_t round_horizon() const override;

    std::optional<std::size_t> value_of(const VersionSpace& vs, std::size_t round = 0) {
        return value(vs.mask(), round);
    }
    std::optional<Query> best_query(const VersionSpace& vs, std::size_t round = 0);

private:
    std::shared_ptr<const ContrastSet> cs_;
    std::vector<Query> moves_;
    // Static rules: answer keys per move and concept.
    std::vector<std::vector<std::vector<std::uint32_t>>> keys_;
    std::vector<std::vector<std::uint32_t>> keys_for_dynamic(const Bits& mask, std::size_t round, std::size_t move);
};

/// Membership queries plus the two example oracles (positive and negative).
class ExMqGame : public BoundedGame {
public:
    explicit ExMqGame(const ConceptClass& cls) : BoundedGame(cls) {}
    std::size_t move_count() const override { return cls_.domain_size() + 2; }
    std::string move_name(std::size_t move) const override;
    void successors(const Bits& mask, std::size_t round, std::size_t move, std::vector<Bits>& out) override;

    std::size_t ex_pos_move() const { return cls_.domain_size(); }
    std::size_t ex_neg_move() const { return cls_.domain_size() + 1; }
};

GameValue exact_contrast_complexity(const ConceptClass& cls, std::shared_ptr<const ContrastSet> cs,
                                    bool with_strategy = false);
GameValue exact_mq_complexity(const ConceptClass& cls);
GameValue exact_exmq_complexity(const ConceptClass& cls);

/// Optimal self-directed mistake count.
GameValue exact_sd(const ConceptClass& cls);

class SdSolver {
public:
    explicit SdSolver(const ConceptClass& cls) : cls_(cls) {}
    std::size_t value(const Bits& mask);
    /// Optimal (instance, prediction) for a state with more than one member.
    std::pair<Instance, bool> best_move(const Bits& mask);
    std::size_t memo_entries() const { return memo_.size(); }

private:
    const ConceptClass& cls_;
    std::unordered_map<Bits, std::size_t, BitsHash> memo_;
};

std::size_t vcd(const ConceptClass& cls);

}  // namespace clab
