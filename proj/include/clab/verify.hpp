#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clab/core.hpp"
#include "clab/metrics.hpp"
#include "clab/oracles.hpp"

namespace clab {

/// Distinct random rows over n instances, between 1 and max_size of them.
ConceptClass random_class(XorShift64& rng, std::size_t n, std::size_t max_size);

/// Five metrics on n points: Hamming distance of the indices' binary codes,
/// |x - y|, and three random symmetric matrices with entries in 1..4.
std::vector<Metric> metric_pool(std::size_t n, XorShift64& rng);

struct CheckLine {
    std::string suite;
    std::string item;
    bool ok = true;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> lines;
    std::size_t failures() const;
    std::size_t count(const std::string& suite) const;
};

/// Suites: thm13, cor12, thm14, thm14_dynamic, sandwich, chain, all.
/// Each trial draws a random class (n <= 5, |C| <= 8) from the seed.
VerifyReport verify_suite(const std::string& suite, std::size_t trials, std::uint64_t seed);

std::vector<std::string> verify_suite_names();

}  // namespace clab
