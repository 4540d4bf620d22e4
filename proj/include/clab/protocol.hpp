#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clab/core.hpp"
#include "clab/oracles.hpp"

namespace clab {

/// A resumable learner: the engine asks for a query, then reports the answer
/// together with the version space it produced.
class Learner {
public:
    virtual ~Learner() = default;

    /// Called once before the first round.
    virtual void start(const VersionSpace& vs) { last_vs_.emplace(vs); }
    /// nullopt means the learner gives up.
    virtual std::optional<Query> next_query(const VersionSpace& vs) = 0;
    virtual void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) {
        (void)q;
        (void)a;
        last_vs_.emplace(post);
    }
    /// Default: the sole member of the last version space seen.
    virtual Concept hypothesis() const;
    virtual std::unique_ptr<Learner> clone() const = 0;
    /// Identifies the learner's internal state beyond the version space and
    /// round. nullopt disables memoisation in the worst-case evaluator.
    virtual std::optional<std::string> state_key() const { return std::nullopt; }
    virtual std::string name() const = 0;

protected:
    std::optional<VersionSpace> last_vs_;
};

enum class Outcome { Identified, Approximated, Exhausted, NonLearnable };
std::string outcome_name(Outcome o);

struct ProtocolOptions {
    std::optional<Rational> epsilon;  // unset: exact identification
    std::optional<std::size_t> max_rounds;  // default |C| * |X|
    bool fail_on_round_limit = false;
};

struct RunResult {
    std::vector<InteractionRecord> records;
    Outcome outcome = Outcome::Exhausted;
    std::size_t rounds() const { return records.size(); }
    std::optional<Concept> hypothesis;
};

RunResult run_protocol(Learner& learner, OracleStrategy& oracle, const Concept& target, const ContrastSet& cs,
                       const ConceptClass& cls, const ProtocolOptions& opts = {});

/// Re-applies every record to the full version space; throws
/// PropertyViolation on the first mismatch.
void replay(const std::vector<InteractionRecord>& records, const ConceptClass& cls, const ContrastSet& cs);

/// Checks monotonicity and soundness of a trace.
void check_trace(const std::vector<InteractionRecord>& records, const Concept& target, const ConceptClass& cls);

/// True if some query can lead to a strictly smaller version space.
bool has_informative_query(const VersionSpace& vs, const ContrastSet& cs, std::size_t round);

struct WorstCase {
    std::size_t max_queries = 0;
    bool all_identified = true;   // every branch ended with a singleton
    bool hypotheses_ok = true;    // learner's hypothesis matched it
    std::size_t leaves = 0;
    std::size_t max_depth_hit = 0;  // branches cut at the depth limit
};

/// Plays a deterministic learner against every answer any target could
/// receive. Memoised on (state_key, mask, round) when the learner has one.
WorstCase evaluate_worst_case(const Learner& learner, const ConceptClass& cls, const ContrastSet& cs,
                              std::size_t depth_limit = 64);

}  // namespace clab
