#pragma once

#include <cstddef>
#include <string>

namespace clab {

/// Enumeration and search limits. Defaults are safe for a laptop; the
/// CLAB_CAPS environment variable ("key=value,key=value") overrides them.
struct Caps {
    std::size_t bool_m = 12;          // generators over B_m
    std::size_t class_bits = std::size_t{1} << 28;  // |C| * |X| label bits
    std::size_t dl_m = 5;
    std::size_t mdnf_m = 6;
    std::size_t mdnf_s = 3;
    std::size_t mdnf_z = 3;
    std::size_t memo_entries = 4'000'000;
    std::size_t exact_concepts = 512;

    /// Applies "k=v,k=v" overrides. Unknown keys throw ConfigError.
    void apply(const std::string& spec);

    static Caps from_env();
};

/// Process-wide caps, initialised from CLAB_CAPS on first use.
Caps& caps();

}  // namespace clab
