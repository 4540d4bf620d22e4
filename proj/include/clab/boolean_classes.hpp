#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "clab/core.hpp"

namespace clab {

// Points of B_m are indexed by sum b_i 2^(m-i), so v_1 is the most
// significant bit. Variables are numbered from 1.

inline bool var_value(Instance x, std::size_t m, std::size_t var) { return ((x >> (m - var)) & 1u) != 0; }

struct DlItem {
    std::size_t var = 1;
    bool negated = false;
    bool label = false;
    bool operator==(const DlItem& o) const = default;
};

struct DecisionList {
    std::vector<DlItem> items;
    bool default_label = false;

    /// Number of i in [z] with b_{i+1} != b_i, the default counting as b_{z+1}.
    std::size_t alternations() const;
    std::string to_string() const;
    bool operator==(const DecisionList& o) const = default;
};

bool eval_decision_list(const DecisionList& dl, Instance x, std::size_t m);
Concept dl_concept(const DecisionList& dl, std::size_t m);
/// Throws InvalidArgument when a variable repeats or is out of range.
void validate(const DecisionList& dl, std::size_t m);
/// Lexicographic order on (var, negated, label) items, then the default.
bool dl_less(const DecisionList& a, const DecisionList& b);

using Block = std::vector<DlItem>;
std::vector<Block> blocks_of(const DecisionList& dl);

ConceptClass gen_pmon(std::size_t m);
ConceptClass gen_mon(std::size_t m);
ConceptClass gen_claus(std::size_t m);
ConceptClass gen_parity(std::size_t m);
ConceptClass gen_dl(std::size_t m, std::size_t k_alt);
/// gen_dl together with the representative list of every concept.
std::pair<ConceptClass, std::vector<DecisionList>> gen_dl_with_lists(std::size_t m, std::size_t k_alt);
ConceptClass gen_mdnf(std::size_t m, std::size_t s, std::size_t z);
ConceptClass gen_primed_pmon(std::size_t m);
ConceptClass gen_singletons(std::size_t n);
ConceptClass vcd1_example();

/// Union of monomials and clauses over B_m as one class (monomials first).
ConceptClass gen_mon_claus(std::size_t m);
/// Lists [(v_m,1),(v_{m-1},0)] followed by any list of at most one
/// alternation over v_1..v_{m-2}. Requires m >= 3.
ConceptClass gen_dl2_embedding(std::size_t m);

/// Monomial as variable mask: bit (m - i) stands for v_i.
Concept monomial_concept(std::size_t m, Instance pos_mask, Instance neg_mask);
Concept clause_concept(std::size_t m, Instance pos_mask, Instance neg_mask);
Concept mdnf_concept(std::size_t m, const std::vector<Instance>& terms);

bool is_monotone(const Concept& c, std::size_t m);

}  // namespace clab
