#include "clab/boolean_classes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "clab/caps.hpp"

namespace clab {

namespace {

void check_m(std::size_t m) {
    if (m == 0 || m > 20) fail(Errc::OutOfRange, "m=" + std::to_string(m) + " outside 1..20");
    if (m > caps().bool_m) {
        fail(Errc::CapExceeded, "m=" + std::to_string(m) + " above the cap bool_m=" + std::to_string(caps().bool_m));
    }
}

std::string label_of(const std::string& base, std::size_t m) { return base + ":m=" + std::to_string(m); }

// Keeps first occurrence of each function.
class Dedup {
public:
    bool add(Concept c) {
        if (!seen_.insert(c.labels).second) return false;
        out_.push_back(std::move(c));
        return true;
    }
    std::vector<Concept> take() { return std::move(out_); }

private:
    std::unordered_set<Bits, BitsHash> seen_;
    std::vector<Concept> out_;
};

}  // namespace

std::size_t DecisionList::alternations() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const bool next = i + 1 < items.size() ? items[i + 1].label : default_label;
        if (next != items[i].label) ++k;
    }
    return k;
}

std::string DecisionList::to_string() const {
    std::string s = "[";
    for (const auto& it : items) {
        s += "(";
        s += it.negated ? "~v" : "v";
        s += std::to_string(it.var) + "," + (it.label ? "1" : "0") + "),";
    }
    s += default_label ? "1]" : "0]";
    return s;
}

bool eval_decision_list(const DecisionList& dl, Instance x, std::size_t m) {
    for (const auto& it : dl.items) {
        if (var_value(x, m, it.var) != it.negated) return it.label;
    }
    return dl.default_label;
}

Concept dl_concept(const DecisionList& dl, std::size_t m) {
    const std::size_t n = std::size_t{1} << m;
    Bits b(n);
    for (Instance x = 0; x < n; ++x) {
        if (eval_decision_list(dl, x, m)) b.set(x);
    }
    return Concept(std::move(b));
}

void validate(const DecisionList& dl, std::size_t m) {
    std::vector<bool> used(m + 1, false);
    for (const auto& it : dl.items) {
        if (it.var == 0 || it.var > m) fail(Errc::InvalidArgument, "decision list variable out of range");
        if (used[it.var]) fail(Errc::InvalidArgument, "variable v" + std::to_string(it.var) + " used twice");
        used[it.var] = true;
    }
}

bool dl_less(const DecisionList& a, const DecisionList& b) {
    const std::size_t n = std::min(a.items.size(), b.items.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ta = std::tuple(a.items[i].var, a.items[i].negated, a.items[i].label);
        const auto tb = std::tuple(b.items[i].var, b.items[i].negated, b.items[i].label);
        if (ta != tb) return ta < tb;
    }
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.default_label < b.default_label;
}

std::vector<Block> blocks_of(const DecisionList& dl) {
    std::vector<Block> out;
    for (const auto& it : dl.items) {
        if (out.empty() || out.back().back().label != it.label) out.emplace_back();
        out.back().push_back(it);
    }
    return out;
}

Concept monomial_concept(std::size_t m, Instance pos, Instance neg) {
    const std::size_t n = std::size_t{1} << m;
    Bits b(n);
    for (Instance x = 0; x < n; ++x) {
        if ((x & pos) == pos && (x & neg) == 0) b.set(x);
    }
    return Concept(std::move(b));
}

Concept clause_concept(std::size_t m, Instance pos, Instance neg) {
    Concept c = monomial_concept(m, pos, neg);
    const std::size_t n = std::size_t{1} << m;
    // f(x) = 1 - M(complement of x)
    Bits b(n);
    for (Instance x = 0; x < n; ++x) {
        if (!c(x ^ (n - 1))) b.set(x);
    }
    return Concept(std::move(b));
}

Concept mdnf_concept(std::size_t m, const std::vector<Instance>& terms) {
    const std::size_t n = std::size_t{1} << m;
    Bits b(n);
    for (Instance x = 0; x < n; ++x) {
        for (auto t : terms) {
            if ((x & t) == t) {
                b.set(x);
                break;
            }
        }
    }
    return Concept(std::move(b));
}

bool is_monotone(const Concept& c, std::size_t m) {
    const std::size_t n = std::size_t{1} << m;
    for (Instance x = 0; x < n; ++x) {
        if (!c(x)) continue;
        for (std::size_t i = 0; i < m; ++i) {
            if (!c(x | (Instance{1} << i))) return false;
        }
    }
    return true;
}

ConceptClass gen_pmon(std::size_t m) {
    check_m(m);
    const std::size_t n = std::size_t{1} << m;
    std::vector<Concept> cs;
    cs.reserve(n);
    for (Instance s = 0; s < n; ++s) cs.push_back(monomial_concept(m, s, 0));
    return ConceptClass(FiniteDomain::boolean(m), std::move(cs), label_of("pmon", m));
}

namespace {

template <typename F>
void for_each_signed_mask(std::size_t m, F&& f) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        Instance pos = 0;
        Instance neg = 0;
        std::size_t c = code;
        for (std::size_t bit = 0; bit < m; ++bit) {
            const auto t = c % 3;
            c /= 3;
            if (t == 1) pos |= Instance{1} << bit;
            if (t == 2) neg |= Instance{1} << bit;
        }
        f(pos, neg);
    }
}

}  // namespace

ConceptClass gen_mon(std::size_t m) {
    check_m(m);
    std::vector<Concept> cs;
    for_each_signed_mask(m, [&](Instance p, Instance q) { cs.push_back(monomial_concept(m, p, q)); });
    return ConceptClass(FiniteDomain::boolean(m), std::move(cs), label_of("mon", m));
}

ConceptClass gen_claus(std::size_t m) {
    check_m(m);
    std::vector<Concept> cs;
    for_each_signed_mask(m, [&](Instance p, Instance q) { cs.push_back(clause_concept(m, p, q)); });
    return ConceptClass(FiniteDomain::boolean(m), std::move(cs), label_of("claus", m));
}

ConceptClass gen_mon_claus(std::size_t m) {
    check_m(m);
    Dedup d;
    for_each_signed_mask(m, [&](Instance p, Instance q) { d.add(monomial_concept(m, p, q)); });
    for_each_signed_mask(m, [&](Instance p, Instance q) { d.add(clause_concept(m, p, q)); });
    return ConceptClass(FiniteDomain::boolean(m), d.take(), label_of("monclaus", m));
}

ConceptClass gen_parity(std::size_t m) {
    check_m(m);
    const std::size_t n = std::size_t{1} << m;
    std::vector<Concept> cs;
    for (Instance s = 0; s < n; ++s) {
        Bits b(n);
        for (Instance x = 0; x < n; ++x) {
            if (std::popcount(x & s) & 1) b.set(x);
        }
        cs.emplace_back(std::move(b));
    }
    return ConceptClass(FiniteDomain::boolean(m), std::move(cs), label_of("parity", m));
}

namespace {

void enumerate_lists(std::size_t m, std::size_t k_alt, DecisionList& cur, std::vector<bool>& used,
                     std::unordered_map<Bits, std::size_t, BitsHash>& where, std::vector<Concept>& concepts,
                     std::vector<DecisionList>& reps) {
    for (int def = 0; def <= 1; ++def) {
        cur.default_label = def == 1;
        if (cur.alternations() > k_alt) continue;
        Concept c = dl_concept(cur, m);
        auto [it, fresh] = where.emplace(c.labels, concepts.size());
        if (fresh) {
            concepts.push_back(std::move(c));
            reps.push_back(cur);
        } else if (dl_less(cur, reps[it->second])) {
            reps[it->second] = cur;
        }
    }
    // Alternations among items only grow as the list is extended, so prune there.
    std::size_t inner = 0;
    for (std::size_t i = 0; i + 1 < cur.items.size(); ++i) inner += cur.items[i].label != cur.items[i + 1].label;
    if (inner > k_alt) return;
    for (std::size_t v = 1; v <= m; ++v) {
        if (used[v]) continue;
        used[v] = true;
        for (int neg = 0; neg <= 1; ++neg) {
            for (int lab = 0; lab <= 1; ++lab) {
                cur.items.push_back(DlItem{v, neg == 1, lab == 1});
                enumerate_lists(m, k_alt, cur, used, where, concepts, reps);
                cur.items.pop_back();
            }
        }
        used[v] = false;
    }
}

}  // namespace

std::pair<ConceptClass, std::vector<DecisionList>> gen_dl_with_lists(std::size_t m, std::size_t k_alt) {
    check_m(m);
    if (m > caps().dl_m) fail(Errc::CapExceeded, "decision list enumeration capped at m=" + std::to_string(caps().dl_m));
    DecisionList cur;
    std::vector<bool> used(m + 1, false);
    std::unordered_map<Bits, std::size_t, BitsHash> where;
    std::vector<Concept> concepts;
    std::vector<DecisionList> reps;
    enumerate_lists(m, k_alt, cur, used, where, concepts, reps);
    // order by representative list
    std::vector<std::size_t> order(concepts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dl_less(reps[a], reps[b]); });
    std::vector<Concept> cs;
    std::vector<DecisionList> ls;
    for (auto i : order) {
        cs.push_back(concepts[i]);
        ls.push_back(reps[i]);
    }
    ConceptClass cls(FiniteDomain::boolean(m), std::move(cs),
                     "dl:m=" + std::to_string(m) + ",k=" + std::to_string(k_alt));
    return {std::move(cls), std::move(ls)};
}

ConceptClass gen_dl(std::size_t m, std::size_t k_alt) { return gen_dl_with_lists(m, k_alt).first; }

ConceptClass gen_mdnf(std::size_t m, std::size_t s, std::size_t z) {
    check_m(m);
    if (m > caps().mdnf_m || s > caps().mdnf_s || z > caps().mdnf_z) {
        fail(Errc::CapExceeded, "MDNF enumeration beyond caps");
    }
    std::vector<Instance> monomials;
    const std::size_t n = std::size_t{1} << m;
    for (Instance t = 1; t < n; ++t) {
        if (static_cast<std::size_t>(std::popcount(t)) <= z) monomials.push_back(t);
    }
    // stable order: fewer variables first, then by mask value
    std::stable_sort(monomials.begin(), monomials.end(),
                     [](Instance a, Instance b) { return std::popcount(a) < std::popcount(b); });
    Dedup d;
    std::vector<Instance> chosen;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        d.add(mdnf_concept(m, chosen));
        if (chosen.size() == s) return;
        for (std::size_t i = start; i < monomials.size(); ++i) {
            chosen.push_back(monomials[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return ConceptClass(FiniteDomain::boolean(m), d.take(),
                        "mdnf:m=" + std::to_string(m) + ",s=" + std::to_string(s) + ",z=" + std::to_string(z));
}

ConceptClass gen_primed_pmon(std::size_t m) {
    check_m(m);
    check_m(m + 1);
    const std::size_t half = std::size_t{1} << m;
    std::vector<Concept> cs;
    for (Instance s = 0; s < half; ++s) {
        const Concept base = monomial_concept(m, s, 0);
        Bits b(2 * half);
        for (Instance x = 0; x < half; ++x) {
            if (base(x)) b.set(2 * x);
            else b.set(2 * x + 1);
        }
        cs.emplace_back(std::move(b));
    }
    return ConceptClass(FiniteDomain::boolean(m + 1), std::move(cs), label_of("primed_pmon", m));
}

ConceptClass gen_singletons(std::size_t n) {
    if (n == 0) fail(Errc::OutOfRange, "singleton class needs n >= 1");
    std::vector<Concept> cs;
    for (Instance i = 0; i < n; ++i) {
        Bits b(n);
        b.set(i);
        cs.emplace_back(std::move(b));
    }
    return ConceptClass(FiniteDomain(n), std::move(cs), "singletons:n=" + std::to_string(n));
}

ConceptClass vcd1_example() {
    std::vector<Concept> cs{Concept::from_string("101"), Concept::from_string("001"), Concept::from_string("011"),
                            Concept::from_string("010")};
    return ConceptClass(FiniteDomain(3, {"x1", "x2", "x3"}), std::move(cs), "vcd1_example");
}

ConceptClass gen_dl2_embedding(std::size_t m) {
    if (m < 3) fail(Errc::OutOfRange, "embedding needs m >= 3");
    check_m(m);
    const ConceptClass inner = gen_mon_claus(m - 2);
    const std::size_t n = std::size_t{1} << m;
    std::vector<Concept> cs;
    for (const auto& f : inner.concepts()) {
        Bits b(n);
        for (Instance x = 0; x < n; ++x) {
            const bool vm = (x & 1u) != 0;
            const bool vm1 = (x & 2u) != 0;
            const bool lab = vm ? true : (vm1 ? false : f(x >> 2));
            if (lab) b.set(x);
        }
        cs.emplace_back(std::move(b));
    }
    return ConceptClass(FiniteDomain::boolean(m), std::move(cs), label_of("dl2_embedding", m));
}

}  // namespace clab
