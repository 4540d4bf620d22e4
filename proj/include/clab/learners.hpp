#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "clab/exact.hpp"
#include "clab/metrics.hpp"
#include "clab/oracles.hpp"
#include "clab/protocol.hpp"

namespace clab {

/// Positive monomials under minimum Hamming distance: one query at 0...0.
class PmonLearner : public Learner {
public:
    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<PmonLearner>(*this); }
    std::optional<std::string> state_key() const override { return asked_ ? "1" : "0"; }
    std::string name() const override { return "pmon"; }

private:
    std::size_t m_ = 0;
    bool asked_ = false;
    std::optional<OracleAnswer> answer_;
};

/// Monomials and clauses under minimum Hamming distance. Runs a monomial
/// learner and its dual on the same answers and keeps whichever survives.
class MonClausLearner : public Learner {
public:
    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<MonClausLearner>(*this); }
    std::optional<std::string> state_key() const override;
    std::string name() const override { return "monclaus"; }

    /// Monomial simulation: answers at 0...0 and 1...1 in its own frame.
    struct MonoSim {
        std::optional<OracleAnswer> at_zero;
        std::optional<OracleAnswer> at_one;
        bool inconsistent = false;
        // decoded parts
        std::optional<Instance> pos;
        std::optional<Instance> neg;

        void feed(bool at_zero_point, const OracleAnswer& a, std::size_t m);
        /// (pos, neg) masks once determined.
        std::optional<std::pair<Instance, Instance>> result(std::size_t m) const;
    };

private:
    bool consistent(const Concept& h) const;
    std::optional<Concept> decided() const;

    std::size_t m_ = 0;
    std::vector<std::pair<Query, OracleAnswer>> history_;
    MonoSim mono_;
    MonoSim dual_;
};

/// Proximity-model learner built from a minimum-distance learner. Each inner
/// query is served by proximity queries at the same point until some
/// minimum-distance answer is legal for every concept still possible.
class ProxFromMin : public Learner {
public:
    ProxFromMin(std::unique_ptr<Learner> inner, Metric d);
    ProxFromMin(const ProxFromMin& o);

    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<ProxFromMin>(*this); }
    std::string name() const override { return "prox(" + inner_->name() + ")"; }
    std::optional<std::string> state_key() const override;

    std::size_t inner_queries() const { return inner_round_; }
    std::size_t outer_queries() const { return outer_round_; }
    /// Most proximity queries spent on one inner query so far.
    std::size_t max_per_inner() const { return max_per_inner_; }

private:
    /// Forwards answers that need no further proximity queries.
    void advance(const VersionSpace& outer);
    std::optional<OracleAnswer> common_answer(const VersionSpace& outer, Instance x) const;
    /// Fewest proximity queries at x after which some minimum-distance
    /// answer is legal for every survivor. SIZE_MAX if impossible.
    std::size_t serve_cost(const Bits& mask, Instance x, std::size_t bound) const;
    Rational choose_radius(const VersionSpace& outer, Instance x) const;

    std::unique_ptr<Learner> inner_;
    Metric d_;
    std::shared_ptr<MinDistanceCs> inner_cs_;
    std::shared_ptr<ProximityCs> prox_cs_;
    // shared by clones: (x, mask) -> serve_cost, exact values only
    std::shared_ptr<std::unordered_map<std::string, std::size_t>> plan_;
    std::optional<VersionSpace> inner_vs_;
    std::optional<Query> pending_;
    bool inner_done_ = false;
    std::size_t inner_round_ = 0;
    std::size_t outer_round_ = 0;
    std::size_t spent_ = 0;
    std::size_t max_per_inner_ = 0;
};

/// Two-query learner for classes of VC dimension one, paired with the
/// metric from vcd1_metric.
class Vcd1Learner : public Learner {
public:
    explicit Vcd1Learner(Vcd1Construction c);
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<Vcd1Learner>(*this); }
    std::optional<std::string> state_key() const override;
    std::string name() const override { return "vcd1"; }

private:
    std::optional<std::size_t> decode() const;

    Vcd1Construction c_;
    std::vector<std::size_t> plus_;   // ordering positions with b = 1
    std::vector<std::size_t> minus_;  // ordering positions with b = 0
    std::vector<std::size_t> pos_of_;  // instance -> ordering position
    std::optional<OracleAnswer> plus_answer_;
    std::optional<OracleAnswer> minus_answer_;
};

/// Monotone DNF under the version-space distance: ask 0...0 up to s times.
class MdnfDynamicLearner : public Learner {
public:
    explicit MdnfDynamicLearner(std::size_t s) : s_(s) {}
    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<MdnfDynamicLearner>(*this); }
    std::optional<std::string> state_key() const override;
    std::string name() const override { return "mdnf"; }

private:
    std::size_t s_;
    std::size_t m_ = 0;
    std::vector<Instance> terms_;
    bool saw_omega_ = false;
    bool inconsistent_ = false;
};

/// Walks the enumeration of an injective contrast rule.
class InjectiveLearner : public Learner {
public:
    explicit InjectiveLearner(std::shared_ptr<const InjectiveCs> cs) : cs_(std::move(cs)) {}
    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<InjectiveLearner>(*this); }
    std::optional<std::string> state_key() const override;
    std::string name() const override { return "injective"; }

private:
    std::shared_ptr<const InjectiveCs> cs_;
    const ConceptClass* cls_ = nullptr;
    std::size_t next_pos_ = 0;
    Bits seen_;
};

/// Greedy: the query minimising the largest possible surviving version space.
class HalvingLearner : public Learner {
public:
    explicit HalvingLearner(std::shared_ptr<const ContrastSet> cs, std::vector<Query> pool = {})
        : cs_(std::move(cs)), pool_(std::move(pool)) {}
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<HalvingLearner>(*this); }
    std::optional<std::string> state_key() const override { return std::string{}; }
    std::string name() const override { return "halving"; }

private:
    std::shared_ptr<const ContrastSet> cs_;
    std::vector<Query> pool_;
    std::size_t round_ = 0;
};

/// Plays the optimal move from an exact game.
class CertificateLearner : public Learner {
public:
    explicit CertificateLearner(std::shared_ptr<ContrastGame> game) : game_(std::move(game)) {}
    std::optional<Query> next_query(const VersionSpace& vs) override { return game_->best_query(vs, round_); }
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override {
        Learner::observe(q, a, post);
        ++round_;
    }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<CertificateLearner>(*this); }
    std::optional<std::string> state_key() const override { return std::string{}; }
    std::string name() const override { return "certificate"; }

private:
    std::shared_ptr<ContrastGame> game_;
    std::size_t round_ = 0;
};

// --- membership and example oracles --------------------------------------

struct ExMqAction {
    enum Kind { MQ, EXPos, EXNeg } kind = MQ;
    Instance x = 0;
};

/// Reply to an action: a label for MQ, an instance (or nothing, the dummy
/// reply) for the example oracles.
struct ExMqReply {
    bool label = false;
    std::optional<Instance> example;
};

class ExMqLearner {
public:
    virtual ~ExMqLearner() = default;
    virtual void start(const VersionSpace&) {}
    virtual std::optional<ExMqAction> next_action(const VersionSpace& vs) = 0;
    virtual void observe(const ExMqAction& act, const ExMqReply& r, const VersionSpace& post) = 0;
    virtual Concept hypothesis() const = 0;
    virtual std::unique_ptr<ExMqLearner> clone() const = 0;
};

VersionSpace restrict_exmq(const VersionSpace& vs, const ExMqAction& act, const ExMqReply& r);

struct ExMqRun {
    std::size_t calls = 0;
    bool identified = false;
    std::optional<Concept> hypothesis;
};

/// Example oracles return the lowest-index admissible instance, or a random
/// one when a seed is given.
ExMqRun run_exmq_protocol(ExMqLearner& l, const Concept& target, const ConceptClass& cls,
                          std::optional<std::uint64_t> seed = std::nullopt, std::size_t max_calls = 1000);

/// Optimal learner from the exact EX+/EX-/MQ game.
class ExMqCertificateLearner : public ExMqLearner {
public:
    explicit ExMqCertificateLearner(std::shared_ptr<ExMqGame> g) : game_(std::move(g)) {}
    void start(const VersionSpace& vs) override { last_.emplace(vs); }
    std::optional<ExMqAction> next_action(const VersionSpace& vs) override;
    void observe(const ExMqAction&, const ExMqReply&, const VersionSpace& post) override { last_.emplace(post); }
    Concept hypothesis() const override;
    std::unique_ptr<ExMqLearner> clone() const override { return std::make_unique<ExMqCertificateLearner>(*this); }

private:
    std::shared_ptr<ExMqGame> game_;
    std::optional<VersionSpace> last_;
};

/// Contrast learner (discrete metric) simulating an EX+/EX-/MQ learner one
/// call per query. Example calls are answered from a query at `probe`.
class ContrastFromExMq : public Learner {
public:
    explicit ContrastFromExMq(std::unique_ptr<ExMqLearner> inner, Instance probe = 0);
    ContrastFromExMq(const ContrastFromExMq& o);
    void start(const VersionSpace& vs) override;
    std::optional<Query> next_query(const VersionSpace& vs) override;
    void observe(const Query& q, const OracleAnswer& a, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<Learner> clone() const override { return std::make_unique<ContrastFromExMq>(*this); }
    std::string name() const override { return "from_exmq"; }

private:
    std::unique_ptr<ExMqLearner> inner_;
    Instance probe_;
    std::optional<VersionSpace> inner_vs_;
    std::optional<ExMqAction> pending_;
};

/// EX+/EX-/MQ learner simulating a discrete-metric contrast learner: one
/// EX- and one EX+ up front, then one MQ per contrast query.
class ExMqFromContrast : public ExMqLearner {
public:
    explicit ExMqFromContrast(std::unique_ptr<Learner> inner);
    ExMqFromContrast(const ExMqFromContrast& o);
    void start(const VersionSpace& vs) override { outer_vs_.emplace(vs); }
    std::optional<ExMqAction> next_action(const VersionSpace& vs) override;
    void observe(const ExMqAction& act, const ExMqReply& r, const VersionSpace& post) override;
    Concept hypothesis() const override;
    std::unique_ptr<ExMqLearner> clone() const override { return std::make_unique<ExMqFromContrast>(*this); }

private:
    std::unique_ptr<Learner> inner_;
    std::shared_ptr<MinDistanceCs> cs_;
    std::optional<VersionSpace> inner_vs_;
    std::optional<VersionSpace> outer_vs_;
    bool asked_neg_ = false;
    bool asked_pos_ = false;
    std::optional<Instance> negative_;
    std::optional<Instance> positive_;
    std::optional<Query> pending_;
    std::size_t round_ = 0;
    bool started_ = false;
};

}  // namespace clab
