#include "clab/exact.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "clab/caps.hpp"
#include "clab/oracles.hpp"

namespace clab {

namespace {

std::uint32_t answer_key(const OracleAnswer& a) {
    std::uint32_t k = a.label ? 1u : 0u;
    if (a.contrast) k |= (static_cast<std::uint32_t>(a.contrast->x + 1) << 2) | (a.contrast->y ? 2u : 0u);
    return k;
}

OracleAnswer decode_key(std::uint32_t k) {
    OracleAnswer a;
    a.label = (k & 1u) != 0;
    const std::uint32_t pos = k >> 2;
    if (pos != 0) a.contrast = Contrast{pos - 1, (k & 2u) != 0};
    return a;
}

void append_keys(const Query& q, const Concept& c, const Bits& set, std::vector<std::uint32_t>& out) {
    OracleAnswer a;
    a.label = c(q.x);
    if (set.none()) {
        out.push_back(answer_key(a));
        return;
    }
    set.for_each_set([&](Instance y) {
        a.contrast = Contrast{y, c(y)};
        out.push_back(answer_key(a));
    });
}

void group_by_keys(const Bits& mask, const std::vector<std::vector<std::uint32_t>>& keys, std::size_t universe,
                   std::vector<std::pair<std::uint32_t, Bits>>& groups) {
    groups.clear();
    std::unordered_map<std::uint32_t, std::size_t> where;
    mask.for_each_set([&](std::size_t i) {
        for (auto k : keys[i]) {
            auto [it, fresh] = where.emplace(k, groups.size());
            if (fresh) groups.emplace_back(k, Bits(universe));
            groups[it->second].second.set(i);
        }
    });
}

}  // namespace

std::vector<AnswerGroup> answer_groups(const VersionSpace& vs, const Query& q, const ContrastSet& cs,
                                       std::size_t round) {
    const auto& cls = vs.cls();
    std::vector<std::vector<std::uint32_t>> keys(cls.size());
    vs.mask().for_each_set([&](std::size_t i) { append_keys(q, cls[i], cs(q, cls[i], vs, round), keys[i]); });
    std::vector<std::pair<std::uint32_t, Bits>> groups;
    group_by_keys(vs.mask(), keys, cls.size(), groups);
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<AnswerGroup> out;
    out.reserve(groups.size());
    for (auto& [k, members] : groups) out.push_back(AnswerGroup{decode_key(k), std::move(members)});
    return out;
}

// ---------------------------------------------------------------------------

std::size_t BoundedGame::canon_round(std::size_t round) const {
    const std::size_t h = round_horizon();
    return std::min(round, h - 1);
}

std::uint32_t BoundedGame::depth_bound(const Bits& mask, std::size_t round) const {
    const std::size_t extra = round_horizon() - 1 - canon_round(round);
    return static_cast<std::uint32_t>(mask.count() - 1 + extra);
}

bool BoundedGame::move_works(const Bits& mask, std::size_t round, std::size_t move, std::uint32_t k) {
    std::vector<Bits> succ;
    successors(mask, round, move, succ);
    const std::size_t nr = canon_round(next_round(round));
    const bool stalls_forever = nr == round;
    for (const auto& g : succ) {
        if (g == mask && stalls_forever) return false;
        if (k == 1 && g.count() > 1) return false;
    }
    std::sort(succ.begin(), succ.end(), [](const Bits& a, const Bits& b) { return a.count() > b.count(); });
    for (const auto& g : succ) {
        if (!feasible(g, nr, k - 1)) return false;
    }
    return true;
}

bool BoundedGame::feasible(const Bits& mask, std::size_t round, std::uint32_t k) {
    if (mask.count() <= 1) return true;
    if (k == 0) return false;
    round = canon_round(round);
    k = std::min(k, depth_bound(mask, round));
    const Key key{mask, round};
    {
        auto it = memo_.find(key);
        if (it == memo_.end()) {
            if (memo_.size() >= caps().memo_entries) {
                fail(Errc::CapExceeded, "memo table exceeded " + std::to_string(caps().memo_entries) + " entries");
            }
            it = memo_.emplace(key, Bounds{}).first;
        }
        if (it->second.hi <= k) return true;
        if (it->second.lo > k) return false;
    }
    bool ok = false;
    for (std::size_t mv = 0; mv < move_count() && !ok; ++mv) ok = move_works(mask, round, mv, k);
    auto& b = memo_[key];
    if (ok) b.hi = std::min(b.hi, k);
    else b.lo = std::max(b.lo, k + 1);
    return ok;
}

std::optional<std::size_t> BoundedGame::value(const Bits& mask, std::size_t round) {
    if (mask.count() <= 1) return 0;
    round = canon_round(round);
    const std::uint32_t bound = depth_bound(mask, round);
    std::uint32_t start = 1;
    if (auto it = memo_.find(Key{mask, round}); it != memo_.end()) {
        if (it->second.lo == kInf) return std::nullopt;
        start = it->second.lo;
    }
    for (std::uint32_t k = start; k <= bound; ++k) {
        if (feasible(mask, round, k)) return k;
    }
    memo_[Key{mask, round}].lo = kInf;
    return std::nullopt;
}

std::vector<std::size_t> BoundedGame::optimal_moves(const Bits& mask, std::size_t round) {
    std::vector<std::size_t> out;
    const auto v = value(mask, round);
    if (!v || *v == 0) return out;
    round = canon_round(round);
    for (std::size_t mv = 0; mv < move_count(); ++mv) {
        if (move_works(mask, round, mv, static_cast<std::uint32_t>(*v))) out.push_back(mv);
    }
    return out;
}

std::optional<std::size_t> BoundedGame::best_move(const Bits& mask, std::size_t round) {
    const auto v = value(mask, round);
    if (!v || *v == 0) return std::nullopt;
    round = canon_round(round);
    for (std::size_t mv = 0; mv < move_count(); ++mv) {
        if (move_works(mask, round, mv, static_cast<std::uint32_t>(*v))) return mv;
    }
    fail(Errc::PropertyViolation, "no move achieves the computed game value");
}

std::string BoundedGame::state_name(const Bits& mask, std::size_t round) const {
    if (round_horizon() <= 1) return mask.to_string();
    return mask.to_string() + "@" + std::to_string(canon_round(round));
}

GameValue BoundedGame::solve(bool with_strategy, std::size_t strategy_limit) {
    GameValue gv;
    const Bits root(cls_.size(), true);
    const auto v = value(root, 0);
    if (!v) {
        gv.unbounded = true;
    } else {
        gv.value = *v;
        for (auto mv : optimal_moves(root, 0)) gv.optimal_first_moves.push_back(move_name(mv));
    }
    if (with_strategy && v) {
        std::deque<std::pair<Bits, std::size_t>> todo{{root, 0}};
        std::vector<Bits> succ;
        while (!todo.empty() && gv.strategy.size() < strategy_limit) {
            auto [mask, round] = todo.front();
            todo.pop_front();
            const std::string name = state_name(mask, round);
            if (mask.count() <= 1 || gv.strategy.count(name)) continue;
            const auto mv = best_move(mask, round);
            if (!mv) continue;
            gv.strategy.emplace(name, move_name(*mv));
            successors(mask, round, *mv, succ);
            for (auto& g : succ) todo.emplace_back(g, canon_round(next_round(round)));
        }
    }
    gv.memo_entries = memo_.size();
    return gv;
}

// ---------------------------------------------------------------------------

ContrastGame::ContrastGame(const ConceptClass& cls, std::shared_ptr<const ContrastSet> cs)
    : BoundedGame(cls), cs_(std::move(cs)) {
    if (cls.size() > caps().exact_concepts) {
        fail(Errc::CapExceeded, "exact search limited to " + std::to_string(caps().exact_concepts) + " concepts");
    }
    for (Instance x = 0; x < cls.domain_size(); ++x) {
        if (cs_->takes_radius()) {
            for (const auto& r : cs_->radii(x)) moves_.push_back(Query{x, r});
        } else {
            moves_.push_back(Query{x, std::nullopt});
        }
    }
    if (!cs_->dynamic() && !cs_->round_dependent()) {
        const VersionSpace full = VersionSpace::full(cls);
        keys_.resize(moves_.size());
        for (std::size_t mv = 0; mv < moves_.size(); ++mv) {
            keys_[mv].resize(cls.size());
            for (std::size_t i = 0; i < cls.size(); ++i) {
                append_keys(moves_[mv], cls[i], (*cs_)(moves_[mv], cls[i], full, 0), keys_[mv][i]);
            }
        }
    }
}

std::string ContrastGame::move_name(std::size_t move) const {
    const Query& q = moves_[move];
    std::string s = cls_.domain().name_of(q.x);
    if (q.radius) s += "@" + to_string(*q.radius);
    return s;
}

std::size_t ContrastGame::round_horizon() const { return cs_->round_dependent() ? cs_->round_horizon() : 1; }

std::size_t ContrastGame::next_round(std::size_t round) const { return canon_round(round + 1); }

std::vector<std::vector<std::uint32_t>> ContrastGame::keys_for_dynamic(const Bits& mask, std::size_t round,
                                                                      std::size_t move) {
    std::vector<std::vector<std::uint32_t>> keys(cls_.size());
    const VersionSpace vs(cls_, mask);
    mask.for_each_set([&](std::size_t i) {
        append_keys(moves_[move], cls_[i], (*cs_)(moves_[move], cls_[i], vs, round), keys[i]);
    });
    return keys;
}

void ContrastGame::successors(const Bits& mask, std::size_t round, std::size_t move, std::vector<Bits>& out) {
    std::vector<std::pair<std::uint32_t, Bits>> groups;
    if (!keys_.empty()) {
        group_by_keys(mask, keys_[move], cls_.size(), groups);
    } else {
        group_by_keys(mask, keys_for_dynamic(mask, round, move), cls_.size(), groups);
    }
    out.clear();
    for (auto& g : groups) out.push_back(std::move(g.second));
}

std::optional<Query> ContrastGame::best_query(const VersionSpace& vs, std::size_t round) {
    const auto mv = best_move(vs.mask(), round);
    if (!mv) return std::nullopt;
    return moves_[*mv];
}

// ---------------------------------------------------------------------------

std::string ExMqGame::move_name(std::size_t move) const {
    if (move == ex_pos_move()) return "EX+";
    if (move == ex_neg_move()) return "EX-";
    return "MQ(" + cls_.domain().name_of(move) + ")";
}

void ExMqGame::successors(const Bits& mask, std::size_t, std::size_t move, std::vector<Bits>& out) {
    out.clear();
    const std::size_t n = cls_.domain_size();
    std::unordered_set<Bits, BitsHash> seen;
    auto push = [&](Bits g) {
        if (g.any() && seen.insert(g).second) out.push_back(std::move(g));
    };
    if (move < n) {
        const Bits pos = mask & cls_.positives_at(move);
        push(pos);
        push(mask & ~pos);
        return;
    }
    const bool positive = move == ex_pos_move();
    Bits dummy(cls_.size());
    mask.for_each_set([&](std::size_t i) {
        const auto cnt = cls_[i].labels.count();
        if ((positive && cnt == 0) || (!positive && cnt == n)) dummy.set(i);
    });
    for (Instance x = 0; x < n; ++x) {
        const Bits pos = mask & cls_.positives_at(x);
        push(positive ? pos : (mask & ~pos));
    }
    push(std::move(dummy));
}

// ---------------------------------------------------------------------------

GameValue exact_contrast_complexity(const ConceptClass& cls, std::shared_ptr<const ContrastSet> cs,
                                    bool with_strategy) {
    ContrastGame g(cls, std::move(cs));
    return g.solve(with_strategy);
}

GameValue exact_mq_complexity(const ConceptClass& cls) {
    ContrastGame g(cls, std::make_shared<NullCs>());
    return g.solve();
}

GameValue exact_exmq_complexity(const ConceptClass& cls) {
    ExMqGame g(cls);
    return g.solve();
}

std::size_t SdSolver::value(const Bits& mask) {
    if (mask.count() <= 1) return 0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    if (memo_.size() >= caps().memo_entries) fail(Errc::CapExceeded, "self-directed memo exceeded its cap");
    std::size_t best = SIZE_MAX;
    for (Instance x = 0; x < cls_.domain_size() && best > 1; ++x) {
        const Bits pos = mask & cls_.positives_at(x);
        if (pos.none() || pos == mask) continue;
        const Bits neg = mask & ~pos;
        const std::size_t v1 = value(pos);
        const std::size_t v0 = value(neg);
        best = std::min(best, std::min(std::max(v0, v1 + 1), std::max(v0 + 1, v1)));
    }
    memo_.emplace(mask, best);
    return best;
}

std::pair<Instance, bool> SdSolver::best_move(const Bits& mask) {
    const std::size_t v = value(mask);
    for (Instance x = 0; x < cls_.domain_size(); ++x) {
        const Bits pos = mask & cls_.positives_at(x);
        if (pos.none() || pos == mask) continue;
        const Bits neg = mask & ~pos;
        const std::size_t v1 = value(pos);
        const std::size_t v0 = value(neg);
        if (std::max(v0, v1 + 1) == v) return {x, false};
        if (std::max(v0 + 1, v1) == v) return {x, true};
    }
    fail(Errc::PropertyViolation, "no self-directed move achieves the value");
}

GameValue exact_sd(const ConceptClass& cls) {
    SdSolver s(cls);
    GameValue gv;
    const Bits root(cls.size(), true);
    gv.value = s.value(root);
    if (cls.size() > 1) {
        auto [x, p] = s.best_move(root);
        gv.optimal_first_moves.push_back(std::to_string(x) + ":" + (p ? "1" : "0"));
    }
    gv.memo_entries = s.memo_entries();
    return gv;
}

namespace {

bool shattered(const ConceptClass& cls, const std::vector<Instance>& set) {
    const std::size_t need = std::size_t{1} << set.size();
    std::vector<bool> seen(need, false);
    std::size_t count = 0;
    for (const auto& c : cls.concepts()) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < set.size(); ++j) code |= static_cast<std::size_t>(c(set[j])) << j;
        if (!seen[code]) {
            seen[code] = true;
            if (++count == need) return true;
        }
    }
    return false;
}

// Largest shattered superset size reachable by adding instances above `from`.
std::size_t grow(const ConceptClass& cls, std::vector<Instance>& set, Instance from) {
    std::size_t best = set.size();
    for (Instance x = from; x < cls.domain_size(); ++x) {
        set.push_back(x);
        if (shattered(cls, set)) best = std::max(best, grow(cls, set, x + 1));
        set.pop_back();
    }
    return best;
}

}  // namespace

std::size_t vcd(const ConceptClass& cls) {
    std::vector<Instance> set;
    return grow(cls, set, 0);
}

}  // namespace clab
