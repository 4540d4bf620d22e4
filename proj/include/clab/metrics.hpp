#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "clab/core.hpp"
#include "clab/rational.hpp"

namespace clab {

enum class MetricKind { Hamming, Discrete, GridL1, Matrix };

/// Non-negative symmetric distance with zero diagonal on a finite domain.
/// The triangle inequality is not required.
class Metric {
public:
    static Metric hamming(std::size_t m);
    static Metric discrete(std::size_t n);
    /// L1 distance on a grid with the given side lengths; instance index is
    /// row-major with the first coordinate most significant.
    static Metric grid_l1(std::vector<std::size_t> sides);
    /// Row-major n*n table. Checks symmetry, zero diagonal, non-negativity.
    static Metric matrix(std::size_t n, std::vector<Rational> table, std::string name = "matrix");

    MetricKind kind() const { return kind_; }
    std::size_t size() const { return n_; }
    const std::string& name() const { return name_; }

    Rational operator()(Instance x, Instance y) const;

    /// Sorted distinct distances from x to the other points.
    std::vector<Rational> spectrum(Instance x) const;
    /// max over x of |spectrum(x)|
    std::size_t s_d() const;

private:
    MetricKind kind_ = MetricKind::Discrete;
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::size_t> sides_;
    std::vector<Rational> table_;
    std::string name_;
};

std::size_t hamming(Instance x, Instance y);
int discrete(Instance x, Instance y);

/// Fraction of version-space members disagreeing on x and y.
Rational vs_distance(const VersionSpace& vs, Instance x, Instance y);
/// Numerator of vs_distance (denominator |vs| is shared by all pairs).
std::size_t vs_disagreements(const VersionSpace& vs, Instance x, Instance y);

/// CSV of n rows and n columns; entries are integers or p/q.
Metric load_matrix_csv(const std::string& path);
Metric parse_matrix_csv(const std::string& text, std::string name = "csv");

struct Vcd1Construction {
    Metric metric;
    /// Elimination order (x_i, b_i), i = 1..n, as pairs (instance, bit).
    std::vector<std::pair<Instance, bool>> ordering;
    /// Extended class of n+1 concepts in elimination order C_1..C_{n+1}.
    std::vector<Concept> extended;
};

/// Builds the two-chain metric for a class of VC dimension one.
/// Throws NotVcdOne or OrderingNotFound.
Vcd1Construction vcd1_metric(const ConceptClass& cls);

/// Adds concepts until the class has n+1 members with VC dimension still 1.
/// Returns nullopt when no such extension exists.
std::optional<std::vector<Concept>> extend_vcd1(const ConceptClass& cls);

}  // namespace clab
