#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clab/bits.hpp"
#include "clab/errors.hpp"
#include "clab/rational.hpp"

namespace clab {

using Instance = std::size_t;

struct FiniteDomain {
    std::size_t size = 1;
    std::vector<std::string> names;  // empty, or exactly `size` unique names
    std::optional<std::size_t> bool_dim;  // set for B_m domains

    FiniteDomain() = default;
    explicit FiniteDomain(std::size_t n, std::vector<std::string> names = {});
    static FiniteDomain boolean(std::size_t m);

    std::string name_of(Instance x) const;
    bool operator==(const FiniteDomain& o) const { return size == o.size && names == o.names; }
};

struct Concept {
    Bits labels;

    Concept() = default;
    explicit Concept(Bits b) : labels(std::move(b)) {}
    static Concept from_string(std::string_view s) { return Concept(Bits::from_string(s)); }

    bool operator()(Instance x) const { return labels.test(x); }
    std::size_t size() const { return labels.size(); }
    bool is_constant() const { return labels.none() || labels.count() == labels.size(); }
    bool operator==(const Concept& o) const = default;
    std::string to_string() const { return labels.to_string(); }
};

class ConceptClass {
public:
    ConceptClass(FiniteDomain domain, std::vector<Concept> concepts, std::string name = "custom");

    const FiniteDomain& domain() const { return domain_; }
    std::size_t domain_size() const { return domain_.size; }
    std::size_t size() const { return concepts_.size(); }
    const Concept& operator[](std::size_t i) const { return concepts_[i]; }
    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::string& name() const { return name_; }

    std::optional<std::size_t> index_of(const Concept& c) const;
    bool contains(const Concept& c) const { return index_of(c).has_value(); }

    /// Concepts (as a mask over concept indices) labelling x positively.
    const Bits& positives_at(Instance x) const { return columns_[x]; }

private:
    FiniteDomain domain_;
    std::vector<Concept> concepts_;
    std::string name_;
    std::unordered_map<Bits, std::size_t, BitsHash> index_;
    std::vector<Bits> columns_;
};

class VersionSpace {
public:
    VersionSpace(const ConceptClass& cls, Bits mask);
    static VersionSpace full(const ConceptClass& cls);

    const ConceptClass& cls() const { return *cls_; }
    const Bits& mask() const { return mask_; }
    std::size_t size() const { return mask_.count(); }
    bool empty() const { return mask_.none(); }
    bool contains(std::size_t i) const { return mask_.test(i); }
    std::vector<std::size_t> members() const { return mask_.indices(); }
    bool is_subset_of(const VersionSpace& o) const { return mask_.is_subset_of(o.mask_); }
    bool operator==(const VersionSpace& o) const { return cls_ == o.cls_ && mask_ == o.mask_; }

private:
    const ConceptClass* cls_;
    Bits mask_;
};

struct Query {
    Instance x = 0;
    std::optional<Rational> radius;

    bool operator==(const Query& o) const = default;
};

struct Contrast {
    Instance x = 0;
    bool y = false;
    bool operator==(const Contrast& o) const = default;
};

struct OracleAnswer {
    bool label = false;
    std::optional<Contrast> contrast;  // nullopt is the dummy response omega

    bool is_omega() const { return !contrast.has_value(); }
    bool operator==(const OracleAnswer& o) const = default;
};

/// The rule the oracle must respect when choosing contrastive examples.
/// Implementations are deterministic in their inputs.
class ContrastSet {
public:
    virtual ~ContrastSet() = default;

    virtual Bits operator()(const Query& q, const Concept& c, const VersionSpace& vs,
                            std::size_t round) const = 0;

    virtual bool dynamic() const { return false; }
    virtual bool round_dependent() const { return false; }
    virtual bool takes_radius() const { return false; }
    virtual std::string name() const = 0;

    /// Rounds at or beyond horizon-1 behave identically.
    virtual std::size_t round_horizon() const { return 1; }

    /// Radii worth trying at x for radius-taking models.
    virtual std::vector<Rational> radii(Instance) const { return {}; }
};

struct InteractionRecord {
    Query query;
    OracleAnswer answer;
    VersionSpace post;
};

Rational delta(const Concept& a, const Concept& b);

/// Keeps the concepts of vs that agree with the label and for which the
/// answer is admissible under cs (evaluated against vs itself).
VersionSpace restrict_version_space(const VersionSpace& vs, const Query& q, const OracleAnswer& a,
                                    const ContrastSet& cs, std::size_t round = 0);

/// True iff `a` is a legal answer for concept c.
bool admissible(const Query& q, const OracleAnswer& a, const Concept& c, const Bits& cs_set);

bool epsilon_approximates(const VersionSpace& vs, const Concept& target, const Rational& eps);

}  // namespace clab
