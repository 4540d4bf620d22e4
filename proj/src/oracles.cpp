#include "clab/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "clab/exact.hpp"

namespace clab {

Bits cs_min(Instance x, const Concept& c, const Metric& d) {
    const std::size_t n = c.size();
    Bits out(n);
    const bool lab = c(x);
    std::optional<Rational> best;
    for (Instance y = 0; y < n; ++y) {
        if (c(y) == lab) continue;
        const Rational dy = d(x, y);
        if (!best || dy < *best) {
            out = Bits(n);
            best = dy;
        }
        if (dy == *best) out.set(y);
    }
    return out;
}

Bits cs_prox(Instance x, const Rational& r, const Concept& c, const Metric& d) {
    const std::size_t n = c.size();
    Bits out(n);
    const bool lab = c(x);
    for (Instance y = 0; y < n; ++y) {
        if (c(y) != lab && d(x, y) <= r) out.set(y);
    }
    return out;
}

MinDistanceCs::MinDistanceCs(Metric d) {
    seq_.push_back(std::move(d));
    orders_.resize(1);
}

std::shared_ptr<MinDistanceCs> MinDistanceCs::version_space_induced() {
    std::shared_ptr<MinDistanceCs> cs(new MinDistanceCs());
    cs->vs_induced_ = true;
    return cs;
}

std::shared_ptr<MinDistanceCs> MinDistanceCs::sequence(std::vector<Metric> per_round) {
    if (per_round.empty()) fail(Errc::InvalidArgument, "metric sequence must be non-empty");
    std::shared_ptr<MinDistanceCs> cs(new MinDistanceCs());
    cs->seq_ = std::move(per_round);
    cs->orders_.resize(cs->seq_.size());
    return cs;
}

std::string MinDistanceCs::name() const {
    if (vs_induced_) return "min:vs";
    if (seq_.size() == 1) return "min:" + seq_.front().name();
    return "min:seq" + std::to_string(seq_.size());
}

Rational MinDistanceCs::distance(Instance x, Instance y, const VersionSpace& vs, std::size_t round) const {
    if (vs_induced_) return vs_distance(vs, x, y);
    return seq_[std::min(round, seq_.size() - 1)](x, y);
}

const MinDistanceCs::Order& MinDistanceCs::order_for(std::size_t idx, Instance x) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& cache = orders_[idx];
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
    const Metric& d = seq_[idx];
    Order o;
    o.points.resize(d.size());
    std::iota(o.points.begin(), o.points.end(), Instance{0});
    std::vector<Rational> dist(d.size());
    for (Instance y = 0; y < d.size(); ++y) dist[y] = d(x, y);
    std::stable_sort(o.points.begin(), o.points.end(), [&](Instance a, Instance b) { return dist[a] < dist[b]; });
    for (std::size_t i = 0; i < o.points.size(); ++i) {
        if (i == 0 || dist[o.points[i]] != dist[o.points[i - 1]]) o.starts.push_back(i);
    }
    o.starts.push_back(o.points.size());
    return cache.emplace(x, std::move(o)).first->second;
}

Bits MinDistanceCs::operator()(const Query& q, const Concept& c, const VersionSpace& vs, std::size_t round) const {
    const std::size_t n = c.size();
    const bool lab = c(q.x);
    Bits out(n);
    if (vs_induced_) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (Instance y = 0; y < n; ++y) {
            if (c(y) == lab) continue;
            const std::size_t k = vs_disagreements(vs, q.x, y);
            if (k < best) {
                out = Bits(n);
                best = k;
            }
            if (k == best) out.set(y);
        }
        return out;
    }
    const std::size_t idx = std::min(round, seq_.size() - 1);
    if (seq_[idx].size() != n) fail(Errc::DomainMismatch, "metric size differs from domain size");
    const Order& o = order_for(idx, q.x);
    for (std::size_t g = 0; g + 1 < o.starts.size(); ++g) {
        bool any = false;
        for (std::size_t i = o.starts[g]; i < o.starts[g + 1]; ++i) {
            const Instance y = o.points[i];
            if (c(y) != lab) {
                out.set(y);
                any = true;
            }
        }
        if (any) break;
    }
    return out;
}

const ProximityCs::Ball& ProximityCs::ball(Instance x) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = balls_.find(x);
    if (it != balls_.end()) return it->second;
    Ball b;
    b.points.resize(d_.size());
    std::iota(b.points.begin(), b.points.end(), Instance{0});
    std::vector<Rational> dist(d_.size());
    for (Instance y = 0; y < d_.size(); ++y) dist[y] = d_(x, y);
    std::stable_sort(b.points.begin(), b.points.end(), [&](Instance a, Instance c) { return dist[a] < dist[c]; });
    for (std::size_t i = 0; i < b.points.size(); ++i) {
        if (i > 0 && dist[b.points[i]] != dist[b.points[i - 1]]) b.ends.push_back(i);
        if (i == 0 || dist[b.points[i]] != dist[b.points[i - 1]]) b.radius.push_back(dist[b.points[i]]);
    }
    b.ends.push_back(b.points.size());
    return balls_.emplace(x, std::move(b)).first->second;
}

Bits ProximityCs::operator()(const Query& q, const Concept& c, const VersionSpace&, std::size_t) const {
    if (!q.radius) fail(Errc::InvalidArgument, "proximity query needs a radius");
    if (d_.size() != c.size()) fail(Errc::DomainMismatch, "metric size differs from domain size");
    const Ball& b = ball(q.x);
    std::size_t end = 0;
    for (std::size_t g = 0; g < b.radius.size() && b.radius[g] <= *q.radius; ++g) end = b.ends[g];
    Bits out(c.size());
    const bool lab = c(q.x);
    for (std::size_t i = 0; i < end; ++i) {
        if (c(b.points[i]) != lab) out.set(b.points[i]);
    }
    return out;
}

std::vector<Rational> ProximityCs::radii(Instance x) const {
    std::vector<Rational> r{Rational(0)};
    for (const auto& v : d_.spectrum(x)) {
        if (v != Rational(0)) r.push_back(v);
    }
    return r;
}

InjectiveCs::InjectiveCs(const ConceptClass& cls, std::vector<Bits> images, std::vector<Instance> enumeration)
    : enumeration_(std::move(enumeration)) {
    const std::size_t n = cls.domain_size();
    if (images.size() != cls.size()) fail(Errc::InvalidArgument, "need one image per concept");
    if (enumeration_.empty()) {
        enumeration_.resize(n);
        std::iota(enumeration_.begin(), enumeration_.end(), Instance{0});
    }
    if (enumeration_.size() != n) fail(Errc::InvalidArgument, "enumeration must list every instance once");
    position_.assign(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        const Instance x = enumeration_[p];
        if (x >= n || position_[x] != n) fail(Errc::InvalidArgument, "enumeration must list every instance once");
        position_[x] = p;
    }
    std::unordered_map<Bits, std::size_t, BitsHash> seen;
    for (std::size_t k = 0; k < cls.size(); ++k) {
        if (images[k].size() != n) fail(Errc::DomainMismatch, "image over the wrong domain");
        auto [it, fresh] = seen.emplace(images[k], k);
        if (!fresh) {
            fail(Errc::NotInjective, "concepts " + std::to_string(it->second) + " and " + std::to_string(k) +
                                         " share the image " + images[k].to_string());
        }
        images_.emplace(cls[k].labels, images[k]);
    }
}

const Bits& InjectiveCs::image(const Concept& c) const {
    auto it = images_.find(c.labels);
    if (it == images_.end()) fail(Errc::InvalidArgument, "concept has no image");
    return it->second;
}

Bits InjectiveCs::operator()(const Query& q, const Concept& c, const VersionSpace&, std::size_t) const {
    const Bits& img = image(c);
    Bits out(c.size());
    for (std::size_t p = position_[q.x]; p < enumeration_.size(); ++p) {
        if (img.test(enumeration_[p])) {
            out.set(enumeration_[p]);
            break;
        }
    }
    return out;
}

OracleAnswer make_answer(const Query& q, const Concept& target, std::optional<Instance> pick) {
    OracleAnswer a;
    a.label = target(q.x);
    if (pick) a.contrast = Contrast{*pick, target(*pick)};
    return a;
}

OracleAnswer FirstOracle::answer(const Query& q, const Concept& target, const VersionSpace&, const Bits& admissible,
                                 std::size_t) {
    if (admissible.none()) return make_answer(q, target, std::nullopt);
    return make_answer(q, target, admissible.find_first());
}

OracleAnswer RandomOracle::answer(const Query& q, const Concept& target, const VersionSpace&, const Bits& admissible,
                                  std::size_t) {
    const auto options = admissible.indices();
    if (options.empty()) return make_answer(q, target, std::nullopt);
    return make_answer(q, target, options[rng_.below(options.size())]);
}

OracleAnswer MinimaxOracle::answer(const Query& q, const Concept& target, const VersionSpace& vs,
                                   const Bits& admissible, std::size_t round) {
    if (admissible.none()) return make_answer(q, target, std::nullopt);
    std::optional<Instance> best;
    long best_value = -1;
    admissible.for_each_set([&](Instance y) {
        const OracleAnswer a = make_answer(q, target, y);
        const VersionSpace next = restrict_version_space(vs, q, a, game_->contrast_set(), round);
        if (next.empty()) fail(Errc::EmptyVersionSpace, "admissible answer empties the version space");
        const auto v = game_->value(next.mask(), round + 1);
        const long score = v ? static_cast<long>(*v) : std::numeric_limits<long>::max();
        if (score > best_value) {
            best_value = score;
            best = y;
        }
    });
    return make_answer(q, target, best);
}

OracleAnswer FarthestOracle::answer(const Query& q, const Concept& target, const VersionSpace&,
                                    const Bits& admissible, std::size_t) {
    if (admissible.none()) return make_answer(q, target, std::nullopt);
    std::optional<Instance> best;
    Rational best_d(-1);
    admissible.for_each_set([&](Instance y) {
        const Rational dy = d_(q.x, y);
        if (dy > best_d) {
            best_d = dy;
            best = y;
        }
    });
    return make_answer(q, target, best);
}

}  // namespace clab
