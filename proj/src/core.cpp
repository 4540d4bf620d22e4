#include "clab/core.hpp"

#include <unordered_set>

#include "clab/caps.hpp"

namespace clab {

FiniteDomain::FiniteDomain(std::size_t n, std::vector<std::string> nm) : size(n), names(std::move(nm)) {
    if (n == 0) fail(Errc::InvalidArgument, "domain size must be positive");
    if (!names.empty()) {
        if (names.size() != n) fail(Errc::InvalidArgument, "instance name count differs from domain size");
        std::unordered_set<std::string> seen(names.begin(), names.end());
        if (seen.size() != n) fail(Errc::InvalidArgument, "instance names must be unique");
    }
}

FiniteDomain FiniteDomain::boolean(std::size_t m) {
    if (m == 0 || m > 30) fail(Errc::OutOfRange, "boolean dimension out of range");
    const std::size_t n = std::size_t{1} << m;
    std::vector<std::string> names(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string s(m, '0');
        for (std::size_t i = 0; i < m; ++i) {
            if ((x >> (m - 1 - i)) & 1u) s[i] = '1';
        }
        names[x] = std::move(s);
    }
    FiniteDomain d;
    d.size = n;
    d.names = std::move(names);
    d.bool_dim = m;
    return d;
}

std::string FiniteDomain::name_of(Instance x) const {
    if (!names.empty()) return names.at(x);
    return std::to_string(x);
}

ConceptClass::ConceptClass(FiniteDomain domain, std::vector<Concept> concepts, std::string name)
    : domain_(std::move(domain)), concepts_(std::move(concepts)), name_(std::move(name)) {
    if (concepts_.empty()) fail(Errc::InvalidArgument, "concept class must be non-empty");
    if (concepts_.size() * domain_.size > caps().class_bits) {
        fail(Errc::CapExceeded, "concept class too large (" + std::to_string(concepts_.size()) + " concepts)");
    }
    index_.reserve(concepts_.size());
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
        if (concepts_[i].size() != domain_.size) {
            fail(Errc::DomainMismatch, "concept " + std::to_string(i) + " has the wrong length");
        }
        if (!index_.emplace(concepts_[i].labels, i).second) {
            fail(Errc::DuplicateConcept, "duplicate concept " + concepts_[i].to_string());
        }
    }
    columns_.assign(domain_.size, Bits(concepts_.size()));
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
        concepts_[i].labels.for_each_set([&](std::size_t x) { columns_[x].set(i); });
    }
}

std::optional<std::size_t> ConceptClass::index_of(const Concept& c) const {
    auto it = index_.find(c.labels);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VersionSpace::VersionSpace(const ConceptClass& cls, Bits mask) : cls_(&cls), mask_(std::move(mask)) {
    if (mask_.size() != cls.size()) fail(Errc::DomainMismatch, "mask length differs from class size");
}

VersionSpace VersionSpace::full(const ConceptClass& cls) { return VersionSpace(cls, Bits(cls.size(), true)); }

Rational delta(const Concept& a, const Concept& b) {
    if (a.size() != b.size()) fail(Errc::DomainMismatch, "concepts over different domains");
    if (a.size() == 0) return Rational(0);
    const auto diff = (a.labels ^ b.labels).count();
    return Rational(static_cast<std::int64_t>(diff), static_cast<std::int64_t>(a.size()));
}

bool admissible(const Query& q, const OracleAnswer& a, const Concept& c, const Bits& cs_set) {
    if (c(q.x) != a.label) return false;
    if (a.is_omega()) return cs_set.none();
    return c(a.contrast->x) == a.contrast->y && cs_set.test(a.contrast->x);
}

VersionSpace restrict_version_space(const VersionSpace& vs, const Query& q, const OracleAnswer& a,
                                    const ContrastSet& cs, std::size_t round) {
    const auto& cls = vs.cls();
    Bits keep = vs.mask();
    // cheap label filter first
    if (a.label) keep &= cls.positives_at(q.x);
    else keep &= ~cls.positives_at(q.x);
    if (a.contrast) {
        if (a.contrast->y) keep &= cls.positives_at(a.contrast->x);
        else keep &= ~cls.positives_at(a.contrast->x);
    }
    Bits out(cls.size());
    keep.for_each_set([&](std::size_t i) {
        const Bits set = cs(q, cls[i], vs, round);
        if (admissible(q, a, cls[i], set)) out.set(i);
    });
    return VersionSpace(cls, std::move(out));
}

bool epsilon_approximates(const VersionSpace& vs, const Concept& target, const Rational& eps) {
    bool ok = true;
    vs.mask().for_each_set([&](std::size_t i) {
        if (ok && delta(vs.cls()[i], target) > eps) ok = false;
    });
    return ok;
}

}  // namespace clab
