#pragma once

#include <string>
#include <vector>

#include "clab/core.hpp"
#include "reference.hpp"

inline ref::Cls to_ref(const clab::ConceptClass& cls) {
    ref::Cls out;
    for (const auto& c : cls.concepts()) {
        ref::Labels l(c.size());
        for (std::size_t x = 0; x < c.size(); ++x) l[x] = c(x) ? 1 : 0;
        out.push_back(l);
    }
    return out;
}

inline clab::ConceptClass from_rows(std::size_t n, const std::vector<std::string>& rows) {
    std::vector<clab::Concept> cs;
    for (const auto& r : rows) cs.push_back(clab::Concept::from_string(r));
    return clab::ConceptClass(clab::FiniteDomain(n), std::move(cs));
}
