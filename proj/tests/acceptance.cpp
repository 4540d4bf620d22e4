// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "clab/boolean_classes.hpp"
#include "clab/continuous.hpp"
#include "clab/exact.hpp"
#include "clab/learners.hpp"
#include "clab/self_directed.hpp"
#include "clab/verify.hpp"
#include "reference.hpp"
#include "helpers.hpp"

using namespace clab;

namespace {

struct Ctx {
    std::ostringstream note;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) note << "first failure: " << what << "; ";
            ok = false;
        }
    }
};

std::size_t clog2(std::size_t m) {
    std::size_t t = 0;
    while ((std::size_t{1} << t) < m) ++t;
    return t;
}

std::string class_to_string(const ConceptClass& cls) {
    std::string s = "{";
    for (std::size_t k = 0; k < cls.size(); ++k) s += (k ? "," : "") + cls[k].to_string();
    return s + "}";
}

std::string val(const GameValue& g) { return g.unbounded ? "unbounded" : std::to_string(g.value); }

std::shared_ptr<MinDistanceCs> ham_min(std::size_t m) { return std::make_shared<MinDistanceCs>(Metric::hamming(m)); }

// shared pool for criteria 6-8 and 14
struct PoolClass {
    ConceptClass cls;
    std::vector<Metric> metrics;
};

const std::vector<PoolClass>& class_pool() {
    static const std::vector<PoolClass> pool = [] {
        std::vector<PoolClass> out;
        XorShift64 rng(2024);
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = 2 + rng.below(4);
            auto cls = random_class(rng, n, 8);
            auto metrics = metric_pool(n, rng);
            out.push_back(PoolClass{std::move(cls), std::move(metrics)});
        }
        return out;
    }();
    return pool;
}

void c1(Ctx& c) {
    for (std::size_t m = 2; m <= 4; ++m) {
        const auto cls = gen_pmon(m);
        const auto cs = ham_min(m);
        const auto g = exact_contrast_complexity(cls, cs);
        c.expect(!g.unbounded && g.value == 1, "pmon m=" + std::to_string(m) + " value " + val(g));
        auto game = std::make_shared<ContrastGame>(cls, cs);
        for (const auto& t : cls.concepts()) {
            PmonLearner l;
            MinimaxOracle adv(game);
            const auto run = run_protocol(l, adv, t, *cs, cls);
            c.expect(run.outcome == Outcome::Identified && run.rounds() == 1 && run.hypothesis == t,
                     "pmon learner on " + t.to_string());
        }
        c.note << (m > 2 ? " " : "") << "m=" << m << ":" << val(g);
    }
}

void c2(Ctx& c) {
    for (std::size_t m = 1; m <= 3; ++m) {
        const auto mp = exact_mq_complexity(gen_pmon(m));
        const auto mpar = exact_mq_complexity(gen_parity(m));
        const auto cpar = exact_contrast_complexity(gen_parity(m), ham_min(m));
        c.expect(!mp.unbounded && mp.value == m, "mq pmon m=" + std::to_string(m) + " = " + val(mp));
        c.expect(!mpar.unbounded && mpar.value == m, "mq parity m=" + std::to_string(m) + " = " + val(mpar));
        c.expect(!cpar.unbounded && (cpar.value == m || cpar.value + 1 == m),
                 "contrast parity m=" + std::to_string(m) + " = " + val(cpar));
        c.note << (m > 1 ? " " : "") << "m=" << m << ":mq(pmon)=" << val(mp) << ",mq(par)=" << val(mpar)
               << ",min(par)=" << val(cpar);
    }
}

void c3(Ctx& c) {
    const std::size_t m = 2;
    const auto cls = gen_primed_pmon(m);
    const auto mq = exact_mq_complexity(cls);
    const auto mn = exact_contrast_complexity(cls, ham_min(m + 1));
    const auto px = exact_contrast_complexity(cls, std::make_shared<ProximityCs>(Metric::hamming(m + 1)));
    c.expect(!mq.unbounded && mq.value == m, "mq " + val(mq));
    c.expect(!mn.unbounded && mn.value == m, "min " + val(mn));
    c.expect(!px.unbounded && px.value == m, "prox " + val(px));
    c.note << "m=2: mq=" << val(mq) << " min=" << val(mn) << " prox=" << val(px);
}

void c4(Ctx& c) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto cls = gen_dl(m, 1);
        const auto cs = ham_min(m);
        const auto w = evaluate_worst_case(MonClausLearner{}, cls, *cs);
        // m=1: two points, one query reveals both labels
        const std::size_t want = m == 1 ? 1 : 2;
        c.expect(w.all_identified && w.hypotheses_ok && w.max_queries == want,
                 "monclaus worst case m=" + std::to_string(m) + " = " + std::to_string(w.max_queries));
        c.note << (m > 1 ? " " : "") << "m=" << m << ":learner=" << w.max_queries;
        if (m <= 3) {
            const auto g = exact_contrast_complexity(cls, cs);
            c.expect(!g.unbounded && g.value == want, "exact m=" + std::to_string(m) + " = " + val(g));
            c.note << ",exact=" << val(g);
        }
    }
}

void c5(Ctx& c) {
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto cls = gen_mon_claus(m);
        const Metric d = Metric::hamming(m);
        const std::size_t budget = 2 * std::max<std::size_t>(1, clog2(m));
        const auto w = evaluate_worst_case(ProxFromMin(std::make_unique<MonClausLearner>(), d), cls, ProximityCs(d));
        c.expect(w.all_identified && w.hypotheses_ok && w.max_queries <= budget,
                 "prox(monclaus) m=" + std::to_string(m) + " = " + std::to_string(w.max_queries));
        c.note << (m > 1 ? " " : "") << w.max_queries << "/" << budget;
        if (m <= 3) {
            const auto mn = exact_contrast_complexity(cls, std::make_shared<MinDistanceCs>(d));
            const auto px = exact_contrast_complexity(cls, std::make_shared<ProximityCs>(d));
            c.expect(!px.unbounded && !mn.unbounded && px.value <= std::max<std::size_t>(1, clog2(m)) * mn.value,
                     "exact prox " + val(px) + " vs min " + val(mn) + " at m=" + std::to_string(m));
        }
    }
}

void c6(Ctx& c) {
    std::size_t n_ok = 0;
    for (const auto& p : class_pool()) {
        const auto d0 = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(Metric::discrete(p.cls.domain_size())));
        const auto ex = exact_exmq_complexity(p.cls);
        const bool ok = !d0.unbounded && !ex.unbounded && d0.value <= ex.value && ex.value <= d0.value + 2;
        c.expect(ok, "class " + class_to_string(p.cls) + " exmq=" + val(ex) + " d0=" + val(d0));
        n_ok += ok;
    }
    const auto sing = gen_singletons(4);
    const auto d0 = exact_contrast_complexity(sing, std::make_shared<MinDistanceCs>(Metric::discrete(4)));
    const auto mq = exact_mq_complexity(sing);
    c.expect(!d0.unbounded && d0.value == 1, "singletons d0 = " + val(d0));
    c.expect(!mq.unbounded && mq.value == 3, "singletons mq = " + val(mq));
    c.note << n_ok << "/100 sandwiches; singletons(4): d0=" << val(d0) << " mq=" << val(mq);
}

void c7(Ctx& c) {
    std::size_t checks = 0;
    for (const auto& p : class_pool()) {
        const auto d0 = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(Metric::discrete(p.cls.domain_size())));
        for (const auto& d : p.metrics) {
            const auto v = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(d));
            c.expect(d0.unbounded || (!v.unbounded && v.value <= d0.value),
                     "class " + class_to_string(p.cls) + " " + d.name() + "=" + val(v) + " d0=" + val(d0));
            ++checks;
        }
    }
    c.note << checks << " (class, metric) pairs";
}

void c8(Ctx& c) {
    std::size_t checks = 0;
    XorShift64 rng(88);
    for (const auto& p : class_pool()) {
        const auto sd = exact_sd(p.cls);
        for (const auto& d : p.metrics) {
            const auto v = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(d));
            c.expect(v.unbounded || 2 * v.value >= sd.value,
                     "class " + class_to_string(p.cls) + " " + d.name() + " min=" + val(v) + " sd=" + val(sd));
            ++checks;
        }
        for (int s = 0; s < 3; ++s) {
            std::vector<Metric> seq;
            for (int r = 0; r < 3; ++r) seq.push_back(p.metrics[rng.below(p.metrics.size())]);
            const auto v = exact_contrast_complexity(p.cls, MinDistanceCs::sequence(seq));
            c.expect(v.unbounded || 2 * v.value >= sd.value,
                     "class " + class_to_string(p.cls) + " dynamic min=" + val(v) + " sd=" + val(sd));
            ++checks;
        }
    }
    const auto cls = gen_pmon(3);
    const auto cs = ham_min(3);
    std::size_t worst = 0;
    for (const auto& t : cls.concepts()) {
        SdFromContrast l(std::make_unique<PmonLearner>(), cs, cls);
        worst = std::max(worst, run_sd(l, t).mistakes);
    }
    c.expect(worst <= 2, "sd_from_contrast(pmon) made " + std::to_string(worst) + " mistakes");
    c.note << checks << " inequalities; sd(pmon learner) worst=" << worst;
}

std::size_t vcd1_worst(const ConceptClass& cls, Ctx& c) {
    const auto con = vcd1_metric(cls);
    const MinDistanceCs cs(con.metric);
    const auto w = evaluate_worst_case(Vcd1Learner(con), cls, cs);
    c.expect(w.all_identified && w.hypotheses_ok, "vcd1 learner failed on " + class_to_string(cls));
    return w.max_queries;
}

void c9(Ctx& c) {
    const auto ex = vcd1_example();
    const auto sd = exact_sd(ex);
    const std::size_t v = vcd(ex);
    c.expect(sd.value == 1 && v == 1, "sd=" + val(sd) + " vcd=" + std::to_string(v));
    XorShift64 rng(9);
    auto pool = metric_pool(ex.domain_size(), rng);
    pool.push_back(Metric::discrete(ex.domain_size()));
    pool.push_back(vcd1_metric(ex).metric);
    std::size_t min_s = SIZE_MAX;
    for (const auto& d : pool) {
        const auto g = exact_contrast_complexity(ex, std::make_shared<MinDistanceCs>(d));
        c.expect(g.unbounded || g.value >= 2, "metric " + d.name() + " gives " + val(g));
        if (!g.unbounded) min_s = std::min(min_s, g.value);
    }
    std::size_t worst = vcd1_worst(ex, c);
    // one concept: VC dimension 0, nothing to ask
    const auto one = exact_contrast_complexity(gen_singletons(1), std::make_shared<MinDistanceCs>(Metric::discrete(1)));
    c.expect(!one.unbounded && one.value == 0, "singletons(1) = " + val(one));
    for (std::size_t n = 2; n <= 6; ++n) worst = std::max(worst, vcd1_worst(gen_singletons(n), c));
    int found = 0;
    while (found < 50) {
        const auto cls = random_class(rng, 2 + rng.below(5), 7);
        if (cls.size() < 2 || vcd(cls) != 1) continue;
        ++found;
        worst = std::max(worst, vcd1_worst(cls, c));
    }
    c.expect(worst <= 2, "vcd1 learner needed " + std::to_string(worst));
    c.note << "sd=vcd=1; min over " << pool.size() << " metrics=" << min_s << "; vcd1 learner worst=" << worst;
}

void c10(Ctx& c) {
    const auto mq = exact_mq_complexity(gen_mon(2));
    c.expect(!mq.unbounded && mq.value == 3, "mq(gen_mon(2)) = " + val(mq) + ", expected 3");
    const auto emb = exact_contrast_complexity(gen_dl2_embedding(4), ham_min(4));
    c.expect(emb.unbounded || emb.value >= 3, "dl2 embedding m=4 = " + val(emb));
    c.note << "mq(mon m=2)=" << val(mq) << " dl2(m=4)=" << val(emb);
}

DecisionList random_list(std::size_t m, XorShift64& rng) {
    std::vector<std::size_t> vars(m);
    for (std::size_t i = 0; i < m; ++i) vars[i] = i + 1;
    for (std::size_t i = m; i > 1; --i) std::swap(vars[i - 1], vars[rng.below(i)]);
    DecisionList dl;
    const std::size_t len = rng.below(m + 1);
    for (std::size_t i = 0; i < len; ++i) dl.items.push_back(DlItem{vars[i], rng.below(2) == 1, rng.below(2) == 1});
    dl.default_label = rng.below(2) == 1;
    return dl;
}

void c11(Ctx& c) {
    XorShift64 rng(11);
    double worst_ratio = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 1 + rng.below(8);
        const auto dl = random_list(m, rng);
        const std::size_t k = std::max<std::size_t>(1, blocks_of(dl).size());
        SdDlLearner l(m);
        const auto run = run_sd(l, dl_concept(dl, m));
        c.expect(run.mistakes <= 4 * k * m, dl.to_string() + " cost " + std::to_string(run.mistakes));
        worst_ratio = std::max(worst_ratio, static_cast<double>(run.mistakes) / static_cast<double>(4 * k * m));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 lists, max mistakes/(4km) = %.3f", worst_ratio);
    c.note << buf;
}

void c12(Ctx& c) {
    for (auto [m, s, z] : {std::tuple<std::size_t, std::size_t, std::size_t>{3, 2, 2}, {4, 2, 1}}) {
        const auto cls = gen_mdnf(m, s, z);
        std::size_t worst_sd = 0;
        for (const auto& t : cls.concepts()) {
            SdMdnfLearner l(m);
            worst_sd = std::max(worst_sd, run_sd(l, t).mistakes);
        }
        const auto cs = MinDistanceCs::version_space_induced();
        const auto w = evaluate_worst_case(MdnfDynamicLearner(s), cls, *cs);
        c.expect(worst_sd <= s, "sd_mdnf mistakes " + std::to_string(worst_sd));
        c.expect(w.all_identified && w.hypotheses_ok && w.max_queries <= s,
                 "mdnf dynamic learner queries " + std::to_string(w.max_queries));
        c.note << "mdnf(" << m << "," << s << "," << z << "): sd=" << worst_sd << " dyn=" << w.max_queries << "; ";
    }
    const auto g = exact_sd(gen_mdnf(3, 2, 2));
    c.expect(g.value == 2, "exact sd = " + val(g));
    c.note << "exact_sd(mdnf(3,2,2))=" << val(g);
}

void c13(Ctx& c) {
    XorShift64 rng(13);
    const PickRule picks[] = {PickRule::Nearest, PickRule::Farthest, PickRule::Random};
    for (int t = 0; t < 100; ++t) {
        const auto th = random_threshold(rng);
        TargetThresholdOracle o(th);
        const auto r = threshold_min_learner(o);
        c.expect(r.queries == 1 && r.estimate.theta == th.theta, "threshold min");
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto rect = random_rectangle(rng, k);
            RectOracle ro(rect);
            const auto rr = rect_min_learner(ro);
            c.expect(rr.queries == 2 && rr.estimate.low == rect.low && rr.estimate.high == rect.high, "rect min");
        }
    }
    std::size_t runs = 0;
    for (int b = 4; b <= 10; ++b) {
        const double eps = std::ldexp(1.0, -b);
        for (int t = 0; t < 100; ++t) {
            const auto th = random_threshold(rng);
            const PickRule pick = picks[t % 3];
            TargetThresholdOracle o(th, pick, rng.next());
            const auto r = threshold_prox_learner(o, eps);
            c.expect(r.queries <= clog2(static_cast<std::size_t>(1 / eps)) + 2 && std::abs(r.estimate.theta - th.theta) <= eps,
                     "threshold prox eps=2^-" + std::to_string(b));
            for (std::size_t k = 1; k <= 4; ++k) {
                const auto rect = random_rectangle(rng, k);
                RectOracle ro(rect, pick, rng.next());
                const auto rr = rect_prox_learner(ro, eps);
                const std::size_t budget = 2 * (clog2(static_cast<std::size_t>(2 * k / eps)) + 1);
                c.expect(rr.queries <= budget && rect_error(rr.estimate, rect) <= eps,
                         "rect prox k=" + std::to_string(k) + " eps=2^-" + std::to_string(b));
            }
            runs += 5;
        }
    }
    c.note << "min exact on 100 thresholds and 400 rectangles; " << runs << " prox runs within budget and eps";
}

void c14(Ctx& c) {
    // recorded traces: monotone, sound, and replayable
    std::size_t traces = 0;
    auto record = [&](Learner& proto, OracleStrategy& oproto, const ConceptClass& cls, const ContrastSet& cs) {
        for (const auto& t : cls.concepts()) {
            auto l = proto.clone();
            auto o = oproto.clone();
            const auto run = run_protocol(*l, *o, t, cs, cls);
            check_trace(run.records, t, cls);
            replay(run.records, cls, cs);
            ++traces;
        }
    };
    {
        const auto cls = gen_pmon(3);
        auto cs = ham_min(3);
        PmonLearner l;
        RandomOracle o(5);
        record(l, o, cls, *cs);
        FirstOracle f;
        MonClausLearner mc;
        const auto dl = gen_dl(3, 1);
        record(mc, f, dl, *cs);
        const auto md = gen_mdnf(3, 2, 2);
        MdnfDynamicLearner mdl(2);
        RandomOracle o2(6);
        record(mdl, o2, md, *MinDistanceCs::version_space_induced());
        const Metric d = Metric::hamming(3);
        ProxFromMin pl(std::make_unique<MonClausLearner>(), d);
        RandomOracle o3(7);
        record(pl, o3, dl, ProximityCs(d));
    }
    // sandwich and dominance on the pool
    std::size_t exact_checks = 0;
    for (const auto& p : class_pool()) {
        const std::size_t n = p.cls.domain_size();
        const auto mq = exact_mq_complexity(p.cls);
        const auto d0 = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(Metric::discrete(n)));
        for (const auto& d : p.metrics) {
            const auto mn = exact_contrast_complexity(p.cls, std::make_shared<MinDistanceCs>(d));
            const auto px = exact_contrast_complexity(p.cls, std::make_shared<ProximityCs>(d));
            auto leq = [](const GameValue& a, const GameValue& b) {
                return b.unbounded || (!a.unbounded && a.value <= b.value);
            };
            c.expect(leq(mn, px) && leq(px, mq), "sandwich " + class_to_string(p.cls) + " " + d.name());
            c.expect(leq(mn, d0), "dominance " + class_to_string(p.cls) + " " + d.name());
            exact_checks += 2;
        }
    }
    const auto chain = verify_suite("chain", 1000, 14);
    for (const auto& line : chain.lines) c.expect(line.ok, "chain " + line.item + ": " + line.detail);
    c.note << traces << " traces; " << exact_checks << " sandwich/dominance checks; 1000 chains";
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    const std::vector<std::pair<const char*, std::function<void(Ctx&)>>> crits = {
        {"pmon contrast complexity is 1 (m=2..4)", c1},
        {"membership complexity m for pmon and parity; parity contrast in {m-1, m}", c2},
        {"primed monomials: MQ = min = prox = m at m=2", c3},
        {"monomial/clause learner needs 2 queries on DL(m,1)", c4},
        {"prox wrapper within 2*ceil(log2 m) for m <= 8", c5},
        {"EX/MQ sandwich with the discrete metric", c6},
        {"any metric is at most the discrete metric", c7},
        {"min-distance complexity at least ceil(SD/2)", c8},
        {"VC dimension 1: SD = VCD = 1, learner within 2", c9},
        {"MQ(gen_mon(2)) = 3 and embedded DL2 at m=4 >= 3", c10},
        {"decision-list SD learner within 4km", c11},
        {"MDNF: SD learner and dynamic learner within s", c12},
        {"thresholds and rectangles within budget", c13},
        {"trace, sandwich, dominance and chain properties", c14},
    };
    int failed = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && only != id) continue;
        Ctx c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crits[i].second(c);
        } catch (const Error& e) {
            c.ok = false;
            c.note << " threw " << errc_name(e.code()) << ": " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %2d: %s [%s] (%.1fs)\n", c.ok ? "PASS" : "FAIL", id, crits[i].first,
                    c.note.str().c_str(), secs);
        std::fflush(stdout);
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
