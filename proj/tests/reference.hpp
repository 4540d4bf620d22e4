#pragma once
// Slow, independent re-implementations used as test oracles.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ref {

using Labels = std::vector<int>;             // one concept
using Cls = std::vector<Labels>;             // a class
using Dist = std::function<long(int, int)>;  // integer-valued distance

inline long ham(int a, int b) { return std::popcount(static_cast<unsigned>(a ^ b)); }
inline long d0(int a, int b) { return a == b ? 0 : 1; }

// Points of opposite label at minimal distance.
inline std::vector<int> nearest_opposite(const Labels& c, int x, const Dist& d) {
    std::vector<int> out;
    long best = -1;
    for (int y = 0; y < static_cast<int>(c.size()); ++y) {
        if (c[y] == c[x]) continue;
        const long dy = d(x, y);
        if (best < 0 || dy < best) {
            best = dy;
            out.clear();
        }
        if (dy == best) out.push_back(y);
    }
    return out;
}

inline std::vector<int> within_radius(const Labels& c, int x, long r, const Dist& d) {
    std::vector<int> out;
    for (int y = 0; y < static_cast<int>(c.size()); ++y)
        if (c[y] != c[x] && d(x, y) <= r) out.push_back(y);
    return out;
}

// A "rule" maps (concept, query point, radius) to its contrast set.
using Rule = std::function<std::vector<int>(const Labels&, int, long)>;

// Answer = (label, contrast point or -1). Returns each answer with the
// subset (as sorted indices) that could legally produce it.
inline std::map<std::pair<int, int>, std::vector<int>> groups(const Cls& cls, const std::vector<int>& vs, int x,
                                                               long r, const Rule& rule) {
    std::map<std::pair<int, int>, std::vector<int>> g;
    for (int i : vs) {
        const auto set = rule(cls[i], x, r);
        if (set.empty()) g[{cls[i][x], -1}].push_back(i);
        for (int y : set) g[{cls[i][x], y}].push_back(i);
    }
    return g;
}

// Plain minimax, recursion only on strictly smaller version spaces.
// Returns -1 for unbounded.
class Minimax {
public:
    Minimax(Cls cls, Rule rule, std::vector<long> radii = {0}) : cls_(std::move(cls)), rule_(std::move(rule)), radii_(std::move(radii)) {}

    int value(const std::vector<int>& vs) {
        if (vs.size() <= 1) return 0;
        if (auto it = memo_.find(vs); it != memo_.end()) return it->second;
        int best = -1;
        const int n = static_cast<int>(cls_[0].size());
        for (int x = 0; x < n; ++x) {
            for (long r : radii_) {
                int worst = 0;
                bool ok = true;
                for (const auto& [ans, sub] : groups(cls_, vs, x, r, rule_)) {
                    if (sub.size() == vs.size()) {
                        ok = false;
                        break;
                    }
                    const int v = value(sub);
                    if (v < 0) {
                        ok = false;
                        break;
                    }
                    worst = std::max(worst, 1 + v);
                }
                if (ok && (best < 0 || worst < best)) best = worst;
            }
        }
        memo_[vs] = best;
        return best;
    }

    int value() {
        std::vector<int> all(cls_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        return value(all);
    }

private:
    Cls cls_;
    Rule rule_;
    std::vector<long> radii_;
    std::map<std::vector<int>, int> memo_;
};

inline Rule min_rule(Dist d) {
    return [d](const Labels& c, int x, long) { return nearest_opposite(c, x, d); };
}
inline Rule prox_rule(Dist d) {
    return [d](const Labels& c, int x, long r) { return within_radius(c, x, r, d); };
}
inline Rule mq_rule() {
    return [](const Labels&, int, long) { return std::vector<int>{}; };
}

// Self-directed mistake bound by direct recursion over (vs, unseen points).
inline int sd_value(const Cls& cls) {
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> memo;
    const int n = static_cast<int>(cls[0].size());
    std::function<int(const std::vector<int>&, const std::vector<int>&)> rec =
        [&](const std::vector<int>& vs, const std::vector<int>& rest) -> int {
        if (vs.size() <= 1 || rest.empty()) return 0;
        auto key = std::pair(vs, rest);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        int best = 1 << 20;
        for (int x : rest) {
            std::vector<int> r2;
            for (int y : rest)
                if (y != x) r2.push_back(y);
            std::vector<int> part[2];
            for (int i : vs) part[cls[i][x]].push_back(i);
            for (int p = 0; p < 2; ++p) {
                // predict p: a mistake happens when the truth is 1-p
                int worst = 0;
                if (!part[p].empty()) worst = std::max(worst, rec(part[p], r2));
                if (!part[1 - p].empty()) worst = std::max(worst, 1 + rec(part[1 - p], r2));
                best = std::min(best, worst);
            }
        }
        memo[key] = best;
        return best;
    };
    std::vector<int> all(cls.size()), pts(n);
    for (std::size_t i = 0; i < cls.size(); ++i) all[i] = static_cast<int>(i);
    for (int i = 0; i < n; ++i) pts[i] = i;
    (void)n;
    return rec(all, pts);
}

inline int vc_dimension(const Cls& cls) {
    const int n = static_cast<int>(cls[0].size());
    int best = 0;
    for (unsigned s = 1; s < (1u << n); ++s) {
        std::set<unsigned> patterns;
        for (const auto& c : cls) {
            unsigned p = 0;
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1u) p |= static_cast<unsigned>(c[i]) << i;
            patterns.insert(p);
        }
        const int k = std::popcount(s);
        if (patterns.size() == (1u << k)) best = std::max(best, k);
    }
    return best;
}

// Positive monomials over m variables, bit i of a point is variable m-i.
inline Cls pmon(int m) {
    Cls cls;
    for (int s = 0; s < (1 << m); ++s) {
        Labels c(1 << m);
        for (int x = 0; x < (1 << m); ++x) c[x] = (x & s) == s;
        cls.push_back(c);
    }
    return cls;
}

}  // namespace ref
