#include <doctest.h>

#include <cmath>

#include "clab/continuous.hpp"

using namespace clab;

namespace {

// ceil(log2(1/eps)) for eps = 2^-b, counted by halving
std::size_t halvings(double eps, double width = 1) {
    std::size_t t = 0;
    while (width > eps) {
        width /= 2;
        ++t;
    }
    return t;
}

const PickRule kPicks[] = {PickRule::Nearest, PickRule::Farthest, PickRule::Random};

}  // namespace

TEST_CASE("threshold min learner reads theta off one contrast") {
    TargetThresholdOracle o(Threshold{0.37});
    const auto run = threshold_min_learner(o);
    CHECK(run.queries == 1);
    CHECK(run.estimate.theta == 0.37);

    TargetThresholdOracle zero(Threshold{0});
    CHECK(threshold_min_learner(zero, 1).estimate.theta == 0);
    CHECK(threshold_min_learner(zero, 0).estimate.theta == 0);

    TargetThresholdOracle one(Threshold{1});
    const auto a = one.min_query(0);
    CHECK(a.label);
    CHECK_FALSE(a.contrast);
    CHECK(threshold_min_learner(one).estimate.theta == 1);
    CHECK(threshold_min_learner(one, 1).estimate.theta == 1);
}

TEST_CASE("threshold min learner is exact on random dyadic targets") {
    XorShift64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto target = random_threshold(rng);
        for (const double at : {0.0, 1.0}) {
            TargetThresholdOracle o(target);
            const auto run = threshold_min_learner(o, at);
            CHECK(run.queries == 1);
            CHECK(run.estimate.theta == target.theta);
        }
    }
}

TEST_CASE("threshold prox learner meets its budget") {
    TargetThresholdOracle o(Threshold{0.37}, PickRule::Farthest);
    const auto run = threshold_prox_learner(o, 1.0 / 32);
    CHECK(run.queries <= 7);
    CHECK(std::abs(run.estimate.theta - 0.37) <= 1.0 / 32);

    TargetThresholdOracle wide(Threshold{0.37});
    CHECK(threshold_prox_learner(wide, 1).queries <= 1);

    XorShift64 rng(5);
    for (unsigned b = 4; b <= 10; ++b) {
        const double eps = std::ldexp(1.0, -static_cast<int>(b));
        CHECK(threshold_prox_budget(eps) == halvings(eps) + 2);
        for (int t = 0; t < 100; ++t) {
            const auto target = random_threshold(rng);
            for (const auto pick : kPicks) {
                TargetThresholdOracle ot(target, pick, rng.next());
                const auto r = threshold_prox_learner(ot, eps);
                CHECK(r.queries <= halvings(eps) + 2);
                CHECK(std::abs(r.estimate.theta - target.theta) <= eps);
            }
        }
    }
    TargetThresholdOracle fine(Threshold{0.37}, PickRule::Farthest);
    CHECK(threshold_prox_learner(fine, 1.0 / 1024).queries <= 12);
}

TEST_CASE("threshold membership baseline") {
    XorShift64 rng(6);
    for (int t = 0; t < 100; ++t) {
        const auto target = random_threshold(rng);
        TargetThresholdOracle o(target);
        const auto r = threshold_mq_learner(o, 1.0 / 64);
        CHECK(r.queries == 6);
        CHECK(std::abs(r.estimate.theta - target.theta) <= 1.0 / 64);
    }
}

TEST_CASE("halving adversary forces about log2(1/eps) proximity queries") {
    for (unsigned b = 4; b <= 10; ++b) {
        const double eps = std::ldexp(1.0, -static_cast<int>(b));
        HalvingThresholdOracle adv;
        const auto r = threshold_prox_learner(adv, eps);
        CHECK(r.queries + 1 >= b);
        CHECK(adv.lo() <= r.estimate.theta);
        CHECK(r.estimate.theta <= adv.hi());
    }
}

TEST_CASE("rectangle min learner reads both corners") {
    RectOracle o(Rectangle{{0.2, 0.3}, {0.5, 0.6}});
    const auto a = o.min_query({0, 0});
    CHECK_FALSE(a.label);
    CHECK(*a.contrast == Point{0.2, 0.3});
    const auto b = o.min_query({1, 1});
    CHECK(*b.contrast == Point{0.5, 0.6});

    RectOracle o2(Rectangle{{0.2, 0.3}, {0.5, 0.6}});
    const auto run = rect_min_learner(o2);
    CHECK(run.queries == 2);
    CHECK(run.estimate.low == Point{0.2, 0.3});
    CHECK(run.estimate.high == Point{0.5, 0.6});

    RectOracle at_origin(Rectangle{{0, 0}, {0.5, 0.25}});
    const auto c = rect_min_learner(at_origin);
    CHECK(c.estimate.low == Point{0, 0});
    CHECK(c.estimate.high == Point{0.5, 0.25});

    RectOracle dot(Rectangle{{0.25, 0.75, 0.5}, {0.25, 0.75, 0.5}});
    const auto d = rect_min_learner(dot);
    CHECK(d.estimate.low == Point{0.25, 0.75, 0.5});
    CHECK(d.estimate.high == Point{0.25, 0.75, 0.5});
}

TEST_CASE("rectangle min learner is exact for k <= 4") {
    XorShift64 rng(9);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (int t = 0; t < 100; ++t) {
            const auto target = random_rectangle(rng, k);
            RectOracle o(target);
            const auto run = rect_min_learner(o);
            CHECK(run.queries == 2);
            CHECK(run.estimate.low == target.low);
            CHECK(run.estimate.high == target.high);
        }
    }
}

TEST_CASE("rectangle prox learner meets its budget") {
    XorShift64 rng(11);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (unsigned b = 4; b <= 10; ++b) {
            const double eps = std::ldexp(1.0, -static_cast<int>(b));
            const std::size_t budget = 2 * (halvings(eps / 2, static_cast<double>(k)) + 1);
            CHECK(rect_prox_budget(k, eps) == budget);
            for (int t = 0; t < 100; ++t) {
                const auto target = random_rectangle(rng, k);
                const auto pick = kPicks[t % 3];
                RectOracle o(target, pick, rng.next());
                const auto r = rect_prox_learner(o, eps);
                CHECK(r.queries <= budget);
                CHECK(rect_error(r.estimate, target) <= eps);
            }
        }
    }
    RectOracle o(Rectangle{{0.25, 0.5}, {0.5, 0.75}}, PickRule::Farthest);
    CHECK(rect_prox_learner(o, 1.0 / 64).queries <= 18);
    RectOracle coarse(Rectangle{{0.25, 0.5}, {0.5, 0.75}}, PickRule::Farthest);
    CHECK(rect_prox_learner(coarse, 4).queries == 2);
}

TEST_CASE("rectangle membership baseline stays within eps") {
    XorShift64 rng(12);
    for (int t = 0; t < 50; ++t) {
        const auto target = random_rectangle(rng, 2);
        RectOracle o(target);
        const auto r = rect_mq_learner(o, 1.0 / 64);
        CHECK(rect_error(r.estimate, target) <= 1.0 / 64);
    }
}

TEST_CASE("rectangle error is the symmetric difference") {
    const Rectangle a{{0, 0}, {0.5, 0.5}}, b{{0.25, 0.25}, {0.75, 0.75}};
    CHECK(rect_error(a, a) == 0);
    CHECK(rect_error(a, b) == 0.375);
    const Rectangle c{{0.75}, {1}}, d{{0}, {0.25}};
    CHECK(rect_error(c, d) == 0.5);
    CHECK_THROWS_AS(RectOracle(Rectangle{{0.5}, {0.25}}), Error);
}

TEST_CASE("continuous runs are reproducible") {
    ContinuousConfig cfg;
    cfg.shape = "rect";
    cfg.k = 2;
    cfg.model = "prox";
    cfg.trials = 20;
    cfg.seed = 4;
    cfg.pick = PickRule::Random;
    const auto a = run_continuous(cfg), b = run_continuous(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].queries == b[i].queries);
        CHECK(a[i].error == b[i].error);
    }
    cfg.model = "bogus";
    CHECK_THROWS_AS(run_continuous(cfg), Error);
}
