#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clab/boolean_classes.hpp"
#include "clab/caps.hpp"
#include "clab/continuous.hpp"
#include "clab/exact.hpp"
#include "clab/io.hpp"
#include "clab/self_directed.hpp"
#include "clab/verify.hpp"

using namespace clab;

namespace {

enum Exit { kOk = 0, kConfig = 2, kCap = 3, kProperty = 4 };

int exit_for(Errc c) {
    switch (c) {
        case Errc::CapExceeded: return kCap;
        case Errc::PropertyViolation:
        case Errc::DishonestOracle:
        case Errc::EmptyVersionSpace:
        case Errc::InconsistentOracle:
        case Errc::RoundLimit: return kProperty;
        default: return kConfig;
    }
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    Json elapsed(bool timing) const {
        if (!timing) return nullptr;
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
};

Json params_json(const Spec& s) {
    Json p = Json::object();
    for (const auto& [k, v] : s.params) p[k] = v;
    return p;
}

double parse_eps(const std::string& s) {
    if (s.rfind("2^-", 0) == 0) {
        const int b = std::stoi(s.substr(3));
        return std::ldexp(1.0, -b);
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail(Errc::ConfigError, "bad eps '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// --config FILE: key=value lines become --key value unless given on the command line
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::vector<std::string> out;
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[++i];
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            continue;
        }
        out.push_back(args[i]);
    }
    if (file.empty()) return out;
    auto cfg = load_config_file(file);
    if (auto it = cfg.find("command"); it != cfg.end()) {
        if (out.size() < 2) out.push_back(it->second);
        cfg.erase(it);
    }
    for (const auto& [k, v] : cfg) {
        const std::string flag = "--" + k;
        const bool given = std::any_of(out.begin(), out.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given) continue;
        out.push_back(flag);
        if (v != "true") out.push_back(v);
    }
    return out;
}

struct Common {
    std::string format;
    bool timing = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// --- simulate ---------------------------------------------------------------------

struct SimulateOpts {
    std::string cls, cs = "min:metric=hamming", learner, oracle = "first", targets = "all";
    std::size_t max_rounds = 0;
    bool trace = false;
};

int cmd_simulate(const SimulateOpts& o, const Common& c) {
    Clock clock;
    const Spec cspec = parse_spec(o.cls);
    const ConceptClass cls = make_class(cspec);
    const ContrastSetup setup = make_contrast_set(parse_spec(o.cs), cls);
    const auto learner = make_learner(parse_spec(o.learner), cls, cspec, setup);
    const auto oracle = make_oracle(parse_spec(o.oracle), cls, setup);
    auto targets = select_targets(o.targets, cls);
    std::stable_sort(targets.begin(), targets.end());

    ProtocolOptions popts;
    if (o.max_rounds) popts.max_rounds = o.max_rounds;
    Json rows = Json::array();
    std::size_t max_q = 0, total_q = 0, identified = 0;
    std::vector<std::vector<std::string>> csv;
    for (const std::size_t t : targets) {
        auto l = learner->clone();
        auto orc = oracle->clone();
        const RunResult run = run_protocol(*l, *orc, cls[t], *setup.cs, cls, popts);
        check_trace(run.records, cls[t], cls);
        replay(run.records, cls, *setup.cs);
        const bool ok = run.hypothesis && *run.hypothesis == cls[t];
        max_q = std::max(max_q, run.rounds());
        total_q += run.rounds();
        if (run.outcome == Outcome::Identified) ++identified;
        Json r;
        r["index"] = t;
        r["target"] = cls[t].to_string();
        r["outcome"] = outcome_name(run.outcome);
        r["queries"] = run.rounds();
        r["hypothesis_ok"] = ok;
        if (o.trace) r["trace"] = trace_json(run.records, cls);
        rows.push_back(std::move(r));
        csv.push_back({std::to_string(t), cls[t].to_string(), outcome_name(run.outcome), std::to_string(run.rounds()),
                       ok ? "true" : "false"});
    }
    const double mean = targets.empty() ? 0.0 : static_cast<double>(total_q) / static_cast<double>(targets.size());
    if (c.format == "csv") {
        std::cout << csv_row({"index", "target", "outcome", "queries", "hypothesis_ok"});
        for (const auto& r : csv) std::cout << csv_row(r);
        return kOk;
    }
    if (c.format == "text") {
        for (const auto& r : csv) std::cout << "target " << r[0] << " " << r[1] << ": " << r[3] << " queries, " << r[2] << "\n";
        std::cout << "max_queries=" << max_q << " mean_queries=" << format_double(mean) << " identified=" << identified
                  << "/" << targets.size() << "\n";
        return kOk;
    }
    Json j;
    j["command"] = "simulate";
    j["class"] = cspec.name;
    j["params"] = params_json(cspec);
    j["cs"] = setup.cs->name();
    j["learner"] = learner->name();
    j["oracle"] = oracle->name();
    j["targets"] = rows;
    j["summary"] = Json{{"targets", targets.size()}, {"max_queries", max_q}, {"mean_queries", mean}, {"identified", identified}};
    j["elapsed_ms"] = clock.elapsed(c.timing);
    emit(j);
    return kOk;
}

// --- complexity / sd / vcd ------------------------------------------------------------

Json value_json(const GameValue& g) { return g.unbounded ? Json("unbounded") : Json(g.value); }

int emit_quantity(const Spec& cspec, const std::string& quantity, const Json& value, std::size_t memo,
                  const std::vector<std::string>& moves, const Common& c, const Clock& clock, const std::string& cs = "") {
    if (c.format == "text") {
        std::cout << quantity << " value=" << (value.is_string() ? value.get<std::string>() : value.dump());
        if (!moves.empty()) {
            std::cout << " optimal_first_moves=";
            for (std::size_t i = 0; i < moves.size(); ++i) std::cout << (i ? "," : "") << moves[i];
        }
        std::cout << "\n";
        return kOk;
    }
    if (c.format == "csv") {
        std::cout << csv_row({"class", "quantity", "value", "memo_entries"});
        std::cout << csv_row({cspec.to_string(), quantity, value.is_string() ? value.get<std::string>() : value.dump(),
                              std::to_string(memo)});
        return kOk;
    }
    Json j;
    j["class"] = cspec.name;
    j["params"] = params_json(cspec);
    j["quantity"] = quantity;
    if (!cs.empty()) j["cs"] = cs;
    j["value"] = value;
    j["optimal_first_moves"] = moves;
    j["elapsed_ms"] = clock.elapsed(c.timing);
    j["memo_entries"] = memo;
    emit(j);
    return kOk;
}

int cmd_complexity(const std::string& cls_s, const std::string& cs_s, const std::string& metric,
                   const std::string& quantity, const Common& c) {
    Clock clock;
    const Spec cspec = parse_spec(cls_s);
    const ConceptClass cls = make_class(cspec);
    GameValue g;
    std::string cs_name;
    if (quantity == "mq") {
        g = exact_mq_complexity(cls);
    } else if (quantity == "exmq") {
        g = exact_exmq_complexity(cls);
    } else if (quantity == "contrast") {
        Spec s = parse_spec(cs_s);
        if (!metric.empty()) {
            s.params.erase("d");
            s.params["metric"] = metric;
        }
        const auto setup = make_contrast_set(s, cls);
        cs_name = setup.cs->name();
        g = exact_contrast_complexity(cls, setup.cs);
    } else {
        fail(Errc::ConfigError, "unknown quantity '" + quantity + "'");
    }
    return emit_quantity(cspec, quantity, value_json(g), g.memo_entries, g.optimal_first_moves, c, clock, cs_name);
}

int cmd_sd(const std::string& cls_s, const std::string& learner, const std::string& cs_s, const Common& c) {
    Clock clock;
    const Spec cspec = parse_spec(cls_s);
    const ConceptClass cls = make_class(cspec);
    if (learner.empty()) {
        const auto g = exact_sd(cls);
        return emit_quantity(cspec, "sd", value_json(g), g.memo_entries, g.optimal_first_moves, c, clock);
    }
    const Spec ls = parse_spec(learner);
    std::unique_ptr<SdLearner> l;
    const std::size_t m = cls.domain().bool_dim.value_or(0);
    if (ls.name == "sd_dl" || ls.name == "sd_mdnf") {
        if (!cls.domain().bool_dim) fail(Errc::ConfigError, ls.name + " needs a Boolean domain");
        if (ls.name == "sd_dl") l = std::make_unique<SdDlLearner>(m);
        else l = std::make_unique<SdMdnfLearner>(m);
    } else if (ls.name == "from") {
        const auto setup = make_contrast_set(parse_spec(cs_s), cls);
        auto mcs = std::dynamic_pointer_cast<MinDistanceCs>(setup.cs);
        if (!mcs) fail(Errc::ConfigError, "from(inner=...) needs a min contrast rule");
        l = std::make_unique<SdFromContrast>(make_learner(parse_spec(ls.get("inner", "pmon")), cls, cspec, setup), mcs, cls);
    } else {
        fail(Errc::ConfigError, "unknown self-directed learner '" + ls.name + "'");
    }
    std::size_t worst = 0;
    for (const auto& t : cls.concepts()) {
        auto run_l = l->clone();
        worst = std::max(worst, run_sd(*run_l, t).mistakes);
    }
    return emit_quantity(cspec, "sd_mistakes:" + l->name(), Json(worst), 0, {}, c, clock);
}

int cmd_vcd(const std::string& cls_s, const Common& c) {
    Clock clock;
    const Spec cspec = parse_spec(cls_s);
    const ConceptClass cls = make_class(cspec);
    return emit_quantity(cspec, "vcd", Json(vcd(cls)), 0, {}, c, clock);
}

// --- continuous / table1 --------------------------------------------------------------

int cmd_continuous(const std::string& shape, const std::string& model, const std::string& eps, std::size_t trials,
                   std::uint64_t seed, const std::string& pick, const Common& c) {
    const Spec s = parse_spec(shape);
    ContinuousConfig cfg;
    cfg.shape = s.name;
    cfg.k = s.get_size("k", 1);
    cfg.model = model;
    cfg.eps = parse_eps(eps);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.pick = parse_pick_rule(pick);
    const auto rows = run_continuous(cfg);
    if (c.format == "json") {
        Json j;
        j["class"] = s.name;
        j["params"] = params_json(s);
        j["model"] = model;
        j["eps"] = cfg.eps;
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(Json{{"trial", r.trial}, {"queries", r.queries}, {"error", r.error}});
        j["trials"] = arr;
        emit(j);
        return kOk;
    }
    std::cout << csv_row({"trial", "queries", "error"});
    for (const auto& r : rows) std::cout << csv_row({std::to_string(r.trial), std::to_string(r.queries), format_double(r.error)});
    return kOk;
}

int cmd_table1(const std::string& eps_list, std::size_t k, std::size_t trials, std::uint64_t seed, const Common& c) {
    std::vector<double> eps;
    for (const auto& e : split_list(eps_list)) eps.push_back(parse_eps(e));
    const auto rows = table1(eps, k, trials, seed);
    auto budget = [](const Table1Row& r) { return r.budget ? std::to_string(*r.budget) : std::string("-"); };
    if (c.format == "csv") {
        std::cout << csv_row({"shape", "model", "eps", "max_queries", "mean_queries", "budget", "max_error"});
        for (const auto& r : rows) {
            std::cout << csv_row({r.shape, r.model, format_double(r.eps), std::to_string(r.max_queries),
                                  format_double(r.mean_queries), budget(r), format_double(r.max_error)});
        }
        return kOk;
    }
    if (c.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back(Json{{"shape", r.shape}, {"model", r.model}, {"eps", r.eps}, {"max_queries", r.max_queries},
                               {"mean_queries", r.mean_queries}, {"budget", r.budget ? Json(*r.budget) : Json(nullptr)},
                               {"max_error", r.max_error}});
        }
        emit(Json{{"table", "epsilon-approximation"}, {"trials", trials}, {"seed", seed}, {"rows", arr}});
        return kOk;
    }
    std::printf("%-12s %-15s %-10s %11s %12s %7s %12s\n", "shape", "model", "eps", "max_queries", "mean_queries",
                "budget", "max_error");
    for (const auto& r : rows) {
        std::printf("%-12s %-15s %-10s %11zu %12.2f %7s %12.3g\n", r.shape.c_str(), r.model.c_str(),
                    format_double(r.eps).c_str(), r.max_queries, r.mean_queries, budget(r).c_str(), r.max_error);
    }
    return kOk;
}

// --- verify -------------------------------------------------------------------------

int cmd_verify(const std::string& suite, std::size_t trials, std::uint64_t seed, const Common& c) {
    const auto rep = verify_suite(suite, trials, seed);
    if (c.format == "json") {
        Json arr = Json::array();
        for (const auto& l : rep.lines) arr.push_back(Json{{"suite", l.suite}, {"item", l.item}, {"ok", l.ok}, {"detail", l.detail}});
        emit(Json{{"suite", suite}, {"trials", trials}, {"seed", seed}, {"failures", rep.failures()}, {"checks", arr}});
    } else {
        for (const auto& l : rep.lines) std::cout << (l.ok ? "ok   " : "FAIL ") << l.suite << " " << l.item << " " << l.detail << "\n";
        std::cout << rep.lines.size() - rep.failures() << "/" << rep.lines.size() << " checks hold\n";
    }
    return rep.failures() ? kProperty : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contrastive active learning lab"};
    app.require_subcommand(1);
    Common common;
    std::string caps_override;
    app.add_option("--caps", caps_override, "cap overrides, key=value,... (same as CLAB_CAPS)");

    std::map<CLI::App*, std::string> default_format;
    auto add_common = [&](CLI::App* s, const std::string& dflt) {
        default_format[s] = dflt;
        s->add_option("--format", common.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_flag("--timing", common.timing, "fill elapsed_ms (breaks byte-identical output)");
    };

    SimulateOpts sim;
    auto* s_sim = app.add_subcommand("simulate", "run a learner against an oracle on each target");
    s_sim->add_option("--class", sim.cls, "class spec, e.g. pmon:m=3")->required();
    s_sim->add_option("--cs", sim.cs, "contrast rule, e.g. min:metric=hamming");
    s_sim->add_option("--learner", sim.learner, "pmon | monclaus | prox(inner=...) | vcd1 | mdnf | injective | halving | optimal")->required();
    s_sim->add_option("--oracle", sim.oracle, "first | random:seed=N | minimax | farthest");
    s_sim->add_option("--targets", sim.targets, "all | enumerate | random:N:SEED | list:i,j");
    s_sim->add_option("--max-rounds", sim.max_rounds);
    s_sim->add_flag("--trace", sim.trace, "include per-round traces");

    std::string cx_class, cx_cs = "min:metric=hamming", cx_metric, cx_quantity = "contrast";
    auto* s_cx = app.add_subcommand("complexity", "exact minimax sample complexity");
    s_cx->add_option("--class", cx_class)->required();
    s_cx->add_option("--cs", cx_cs);
    s_cx->add_option("--metric", cx_metric, "overrides the rule's metric");
    s_cx->add_option("--quantity", cx_quantity, "contrast | mq | exmq");

    std::string sd_class, sd_learner, sd_cs = "min:metric=hamming";
    auto* s_sd = app.add_subcommand("sd", "self-directed complexity, or a learner's worst mistakes");
    s_sd->add_option("--class", sd_class)->required();
    s_sd->add_option("--learner", sd_learner, "sd_dl | sd_mdnf | from(inner=...)");
    s_sd->add_option("--cs", sd_cs);

    std::string vcd_class;
    auto* s_vcd = app.add_subcommand("vcd", "VC dimension");
    s_vcd->add_option("--class", vcd_class)->required();

    std::string ct_class = "threshold", ct_model = "min", ct_eps = "2^-6", ct_pick = "farthest";
    std::size_t ct_trials = 100;
    std::uint64_t ct_seed = 1;
    auto* s_ct = app.add_subcommand("continuous", "thresholds and rectangles under l1");
    s_ct->add_option("--class", ct_class, "threshold | rect:k=K");
    s_ct->add_option("--model", ct_model, "min | prox | mq");
    s_ct->add_option("--eps", ct_eps, "2^-B or a decimal");
    s_ct->add_option("--trials", ct_trials);
    s_ct->add_option("--seed", ct_seed);
    s_ct->add_option("--pick", ct_pick, "nearest | farthest | random");

    std::string vf_suite = "all";
    std::size_t vf_trials = 50;
    std::uint64_t vf_seed = 7;
    auto* s_vf = app.add_subcommand("verify", "check inequalities on random classes");
    s_vf->add_option("--suite", vf_suite, "thm13 | cor12 | thm14 | thm14_dynamic | sandwich | chain | all");
    s_vf->add_option("--trials", vf_trials);
    s_vf->add_option("--seed", vf_seed);

    std::string t1_eps = "2^-4,2^-6,2^-8";
    std::size_t t1_k = 2, t1_trials = 100;
    std::uint64_t t1_seed = 1;
    auto* s_t1 = app.add_subcommand("table1", "measured counts for the epsilon-approximation table");
    s_t1->add_option("--eps", t1_eps);
    s_t1->add_option("--k", t1_k);
    s_t1->add_option("--trials", t1_trials);
    s_t1->add_option("--seed", t1_seed);

    add_common(s_sim, "json");
    add_common(s_cx, "json");
    add_common(s_sd, "json");
    add_common(s_vcd, "json");
    add_common(s_ct, "csv");
    add_common(s_vf, "text");
    add_common(s_t1, "text");

    try {
        auto args = expand_config(argc, argv);
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
        if (common.format.empty()) {
            for (const auto& [sub, f] : default_format)
                if (*sub) common.format = f;
        }
        if (!caps_override.empty()) caps().apply(caps_override);

        if (*s_sim) return cmd_simulate(sim, common);
        if (*s_cx) return cmd_complexity(cx_class, cx_cs, cx_metric, cx_quantity, common);
        if (*s_sd) return cmd_sd(sd_class, sd_learner, sd_cs, common);
        if (*s_vcd) return cmd_vcd(vcd_class, common);
        if (*s_ct) return cmd_continuous(ct_class, ct_model, ct_eps, ct_trials, ct_seed, ct_pick, common);
        if (*s_vf) return cmd_verify(vf_suite, vf_trials, vf_seed, common);
        if (*s_t1) return cmd_table1(t1_eps, t1_k, t1_trials, t1_seed, common);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return kConfig;
    }
    return kOk;
}
