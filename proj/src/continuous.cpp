#include "clab/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clab {

bool Rectangle::contains(const Point& x) const {
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] < low[i] || x[i] > high[i]) return false;
    }
    return true;
}

double Rectangle::volume() const {
    double v = 1;
    for (std::size_t i = 0; i < dim(); ++i) v *= high[i] - low[i];
    return v;
}

void Rectangle::validate() const {
    if (low.size() != high.size() || low.empty()) fail(Errc::InvalidArgument, "rectangle corners differ in dimension");
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(0 <= low[i] && low[i] <= high[i] && high[i] <= 1)) fail(Errc::InvalidArgument, "rectangle outside [0,1]^k");
    }
}

double l1(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double threshold_error(const Threshold& a, const Threshold& b) { return std::abs(a.theta - b.theta); }

double rect_error(const Rectangle& a, const Rectangle& b) {
    double inter = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double w = std::min(a.high[i], b.high[i]) - std::max(a.low[i], b.low[i]);
        inter *= std::max(0.0, w);
    }
    return a.volume() + b.volume() - 2 * inter;
}

PickRule parse_pick_rule(const std::string& s) {
    if (s == "nearest") return PickRule::Nearest;
    if (s == "farthest") return PickRule::Farthest;
    if (s == "random") return PickRule::Random;
    fail(Errc::InvalidArgument, "unknown pick rule '" + s + "'");
}

namespace {

// dyadic fraction in [0,1]
double unit_fraction(XorShift64& rng) { return static_cast<double>(rng.below(1025)) / 1024.0; }

}  // namespace

// --- thresholds -------------------------------------------------------------------

Answer1 TargetThresholdOracle::min_query(double x) {
    ++queries_;
    Answer1 a{t_.contains(x), std::nullopt};
    // the closure of either opposite region touches theta, unless (theta, 1] is empty
    if (!(a.label && t_.theta >= 1)) a.contrast = t_.theta;
    return a;
}

Answer1 TargetThresholdOracle::prox_query(double x, double r) {
    ++queries_;
    Answer1 a{t_.contains(x), std::nullopt};
    double lo = std::max(0.0, x - r), hi = std::min(1.0, x + r);
    if (a.label) {
        if (t_.theta >= 1) return a;
        lo = std::max(lo, t_.theta);
    } else {
        hi = std::min(hi, t_.theta);
    }
    if (lo > hi) return a;
    switch (pick_) {
        case PickRule::Nearest: a.contrast = a.label ? lo : hi; break;
        case PickRule::Farthest: a.contrast = (x - lo > hi - x) ? lo : hi; break;
        case PickRule::Random: a.contrast = lo + (hi - lo) * unit_fraction(rng_); break;
    }
    return a;
}

bool TargetThresholdOracle::member(double x) {
    ++queries_;
    return t_.contains(x);
}

Answer1 HalvingThresholdOracle::min_query(double x) {
    ++queries_;
    const double theta = (lo_ + hi_) / 2;
    lo_ = hi_ = theta;
    Answer1 a{x <= theta, std::nullopt};
    if (!(a.label && theta >= 1)) a.contrast = theta;
    return a;
}

Answer1 HalvingThresholdOracle::prox_query(double x, double r) {
    ++queries_;
    const bool label = x < lo_ || (x < hi_ && hi_ - x >= x - lo_) || (lo_ == hi_ && x == lo_);
    if (label) lo_ = std::max(lo_, x);
    else hi_ = std::min(hi_, x);
    Answer1 a{label, std::nullopt};
    if (label) {
        // theta <= x + r can be shown by the point x + r itself
        const double p = std::min(1.0, x + r);
        const double keep_contrast = std::min(p, hi_) - lo_;
        const double keep_omega = hi_ - std::max(p, lo_);
        if (keep_omega > keep_contrast) {
            lo_ = std::max(lo_, p);
        } else {
            hi_ = std::min(hi_, p);
            a.contrast = p;
        }
    } else {
        const double p = std::max(0.0, x - r);
        const double keep_contrast = hi_ - std::max(p, lo_);
        const double keep_omega = std::min(p, hi_) - lo_;
        if (keep_omega > keep_contrast) {
            hi_ = std::min(hi_, p);
        } else {
            lo_ = std::max(lo_, p);
            a.contrast = p;
        }
    }
    return a;
}

bool HalvingThresholdOracle::member(double x) {
    ++queries_;
    if (x < lo_) return true;
    if (x > hi_) return false;
    const bool label = hi_ - x >= x - lo_;
    if (label) lo_ = x;
    else hi_ = x;
    return label;
}

ThresholdRun threshold_min_learner(ThresholdOracle& o, double at) {
    const std::size_t before = o.queries();
    const Answer1 a = o.min_query(at);
    ThresholdRun run;
    if (a.contrast) run.estimate.theta = *a.contrast;
    else if (a.label) run.estimate.theta = 1;
    else fail(Errc::InconsistentOracle, "negative threshold query without a contrast");
    run.queries = o.queries() - before;
    return run;
}

ThresholdRun threshold_prox_learner(ThresholdOracle& o, double eps) {
    const std::size_t before = o.queries();
    double lo = 0, hi = 1;
    while (hi - lo > eps) {
        const double r = (lo + hi) / 2;
        const Answer1 a = o.prox_query(0, r);
        if (a.contrast) hi = std::min(hi, std::max(lo, *a.contrast));
        else lo = r;
    }
    return ThresholdRun{Threshold{(lo + hi) / 2}, o.queries() - before};
}

ThresholdRun threshold_mq_learner(ThresholdOracle& o, double eps) {
    const std::size_t before = o.queries();
    double lo = 0, hi = 1;
    while (hi - lo > eps) {
        const double mid = (lo + hi) / 2;
        if (o.member(mid)) lo = mid;
        else hi = mid;
    }
    return ThresholdRun{Threshold{(lo + hi) / 2}, o.queries() - before};
}

// --- rectangles -------------------------------------------------------------------

RectOracle::RectOracle(Rectangle t, PickRule pick, std::uint64_t seed) : t_(std::move(t)), pick_(pick), rng_(seed) {
    t_.validate();
}

std::optional<std::pair<Point, double>> RectOracle::nearest_outside(const Point& x) const {
    std::optional<std::pair<Point, double>> best;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (const bool up : {false, true}) {
            if (up ? t_.high[i] >= 1 : t_.low[i] <= 0) continue;
            Point p = x;
            p[i] = up ? t_.high[i] : t_.low[i];
            const double d = std::abs(p[i] - x[i]);
            if (!best || d < best->second) best.emplace(std::move(p), d);
        }
    }
    return best;
}

AnswerK RectOracle::min_query(const Point& x) {
    if (x.size() != dim()) fail(Errc::DomainMismatch, "query of the wrong dimension");
    ++queries_;
    AnswerK a{t_.contains(x), std::nullopt};
    if (a.label) {
        if (auto p = nearest_outside(x)) a.contrast = std::move(p->first);
        return a;
    }
    Point c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = std::clamp(x[i], t_.low[i], t_.high[i]);
    a.contrast = std::move(c);
    return a;
}

AnswerK RectOracle::prox_query(const Point& x, double r) {
    if (x.size() != dim()) fail(Errc::DomainMismatch, "query of the wrong dimension");
    ++queries_;
    AnswerK a{t_.contains(x), std::nullopt};
    if (a.label) {
        auto p = nearest_outside(x);
        if (p && p->second <= r) a.contrast = std::move(p->first);
        return a;
    }
    Point c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = std::clamp(x[i], t_.low[i], t_.high[i]);
    const double d = l1(x, c);
    if (d > r) return a;
    double budget = r - d;
    if (pick_ == PickRule::Nearest) budget = 0;
    if (pick_ == PickRule::Random) budget *= unit_fraction(rng_);
    std::vector<std::size_t> order(dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (pick_ == PickRule::Random) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng_.below(i)]);
    }
    // push coordinates away from x while staying inside the box
    for (const std::size_t i : order) {
        if (budget <= 0) break;
        const double room_up = t_.high[i] - c[i], room_down = c[i] - t_.low[i];
        const bool up = x[i] < c[i] || (x[i] == c[i] && room_up >= room_down);
        const double step = std::min(budget, up ? room_up : room_down);
        c[i] += up ? step : -step;
        budget -= step;
    }
    a.contrast = std::move(c);
    return a;
}

bool RectOracle::member(const Point& x) {
    ++queries_;
    return t_.contains(x);
}

RectRun rect_min_learner(RectOracle& o) {
    const std::size_t before = o.queries();
    const std::size_t k = o.dim();
    RectRun run;
    const AnswerK a = o.min_query(Point(k, 0.0));
    run.estimate.low = a.label ? Point(k, 0.0) : a.contrast.value();
    const AnswerK b = o.min_query(Point(k, 1.0));
    run.estimate.high = b.label ? Point(k, 1.0) : b.contrast.value();
    run.queries = o.queries() - before;
    return run;
}

namespace {

// corner of the box nearest to `from`, to within eps/2 in l1
Point prox_corner(RectOracle& o, const Point& from, double eps) {
    const double k = static_cast<double>(o.dim());
    double lo = 0, hi = k;
    std::optional<Point> best;
    while (hi - lo > eps / 2) {
        const double r = (lo + hi) / 2;
        const AnswerK a = o.prox_query(from, r);
        if (a.label) return from;
        if (a.contrast) {
            hi = std::max(lo, l1(*a.contrast, from));
            best = *a.contrast;
        } else {
            lo = r;
        }
    }
    if (!best) {
        const AnswerK a = o.prox_query(from, hi);
        if (a.label) return from;
        if (!a.contrast) fail(Errc::InconsistentOracle, "no point of the box within distance k");
        best = *a.contrast;
    }
    return *best;
}

}  // namespace

RectRun rect_prox_learner(RectOracle& o, double eps) {
    const std::size_t before = o.queries();
    const std::size_t k = o.dim();
    const Point x = prox_corner(o, Point(k, 0.0), eps);
    const Point z = prox_corner(o, Point(k, 1.0), eps);
    RectRun run;
    run.estimate.low.resize(k);
    run.estimate.high.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        run.estimate.low[i] = std::min(x[i], z[i]);
        run.estimate.high[i] = std::max(x[i], z[i]);
    }
    run.queries = o.queries() - before;
    return run;
}

RectRun rect_mq_learner(RectOracle& o, double eps) {
    const std::size_t before = o.queries();
    const std::size_t k = o.dim();
    // find a positive point on ever finer dyadic grids
    std::optional<Point> inside;
    for (double h = 0.5; !inside; h /= 2) {
        const std::size_t cells = static_cast<std::size_t>(std::llround(1 / h));
        std::vector<std::size_t> c(k, 1);
        for (bool more = true; more && !inside;) {
            bool fresh = false;
            for (auto v : c) fresh = fresh || v % 2 == 1 || h == 0.5;
            if (fresh) {
                Point p(k);
                for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<double>(c[i]) * h;
                if (o.member(p)) inside = p;
            }
            std::size_t i = 0;
            while (i < k && ++c[i] == cells) c[i++] = 1;
            more = i < k;
        }
        if (!inside && h <= eps) {
            // some side is shorter than h, so the box has volume below eps
            return RectRun{Rectangle{Point(k, 0.0), Point(k, 0.0)}, o.queries() - before};
        }
    }
    const double tol = eps / (2 * static_cast<double>(k));
    RectRun run{Rectangle{*inside, *inside}, 0};
    for (std::size_t i = 0; i < k; ++i) {
        for (const double edge : {0.0, 1.0}) {
            Point p = *inside;
            double in = p[i], out = edge;
            p[i] = edge;
            if (o.member(p)) {
                in = edge;
            } else {
                while (std::abs(in - out) > tol) {
                    p[i] = (in + out) / 2;
                    (o.member(p) ? in : out) = p[i];
                }
            }
            (edge == 0 ? run.estimate.low : run.estimate.high)[i] = in;
        }
    }
    run.queries = o.queries() - before;
    return run;
}

std::size_t threshold_prox_budget(double eps) {
    return static_cast<std::size_t>(std::max(0.0, std::ceil(std::log2(1 / eps)))) + 2;
}

std::size_t rect_prox_budget(std::size_t k, double eps) {
    return 2 * (static_cast<std::size_t>(std::max(0.0, std::ceil(std::log2(2 * static_cast<double>(k) / eps)))) + 1);
}

Threshold random_threshold(XorShift64& rng, unsigned bits) {
    const std::uint64_t grid = std::uint64_t{1} << bits;
    return Threshold{static_cast<double>(rng.below(grid + 1)) / static_cast<double>(grid)};
}

Rectangle random_rectangle(XorShift64& rng, std::size_t k, unsigned bits) {
    Rectangle r;
    for (std::size_t i = 0; i < k; ++i) {
        double a = random_threshold(rng, bits).theta, b = random_threshold(rng, bits).theta;
        if (a > b) std::swap(a, b);
        r.low.push_back(a);
        r.high.push_back(b);
    }
    return r;
}

std::vector<ContinuousTrial> run_continuous(const ContinuousConfig& cfg) {
    if (!(cfg.eps > 0)) fail(Errc::InvalidArgument, "eps must be positive");
    if (cfg.shape == "rect" && cfg.k == 0) fail(Errc::InvalidArgument, "rectangles need k >= 1");
    XorShift64 rng(cfg.seed);
    std::vector<ContinuousTrial> out;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        ContinuousTrial tr{t, 0, 0};
        if (cfg.shape == "threshold") {
            const Threshold target = random_threshold(rng);
            TargetThresholdOracle o(target, cfg.pick, cfg.seed + t + 1);
            ThresholdRun run;
            if (cfg.model == "min") run = threshold_min_learner(o);
            else if (cfg.model == "prox") run = threshold_prox_learner(o, cfg.eps);
            else if (cfg.model == "mq") run = threshold_mq_learner(o, cfg.eps);
            else fail(Errc::InvalidArgument, "unknown model '" + cfg.model + "'");
            tr.queries = run.queries;
            tr.error = threshold_error(run.estimate, target);
        } else if (cfg.shape == "rect") {
            const Rectangle target = random_rectangle(rng, cfg.k);
            RectOracle o(target, cfg.pick, cfg.seed + t + 1);
            RectRun run;
            if (cfg.model == "min") run = rect_min_learner(o);
            else if (cfg.model == "prox") run = rect_prox_learner(o, cfg.eps);
            else if (cfg.model == "mq") run = rect_mq_learner(o, cfg.eps);
            else fail(Errc::InvalidArgument, "unknown model '" + cfg.model + "'");
            tr.queries = run.queries;
            tr.error = rect_error(run.estimate, target);
        } else {
            fail(Errc::InvalidArgument, "unknown shape '" + cfg.shape + "'");
        }
        out.push_back(tr);
    }
    return out;
}

std::vector<Table1Row> table1(const std::vector<double>& eps, std::size_t k, std::size_t trials, std::uint64_t seed) {
    std::vector<Table1Row> rows;
    auto summarise = [&](const std::string& shape, const std::string& model, double e,
                         std::optional<std::size_t> budget) {
        ContinuousConfig cfg;
        cfg.shape = shape;
        cfg.k = k;
        cfg.model = model;
        cfg.eps = e;
        cfg.trials = trials;
        cfg.seed = seed;
        Table1Row row{shape == "rect" ? "rect:k=" + std::to_string(k) : shape, model, e, 0, 0, 0, budget};
        for (const auto& t : run_continuous(cfg)) {
            row.max_queries = std::max(row.max_queries, t.queries);
            row.mean_queries += static_cast<double>(t.queries);
            row.max_error = std::max(row.max_error, t.error);
        }
        if (trials) row.mean_queries /= static_cast<double>(trials);
        rows.push_back(row);
    };
    for (const double e : eps) {
        summarise("threshold", "mq", e, std::nullopt);
        summarise("threshold", "prox", e, threshold_prox_budget(e));
        HalvingThresholdOracle adv;
        const auto run = threshold_prox_learner(adv, e);
        rows.push_back(Table1Row{"threshold", "prox-adversary", e, run.queries, static_cast<double>(run.queries),
                                 std::max(run.estimate.theta - adv.lo(), adv.hi() - run.estimate.theta),
                                 threshold_prox_budget(e)});
        summarise("threshold", "min", e, 1);
        summarise("rect", "mq", e, std::nullopt);
        summarise("rect", "prox", e, rect_prox_budget(k, e));
        summarise("rect", "min", e, 2);
    }
    return rows;
}

}  // namespace clab
