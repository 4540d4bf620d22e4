#include "clab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "clab/boolean_classes.hpp"
#include "clab/exact.hpp"

namespace clab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t to_size(const std::string& v, const std::string& what) {
    std::size_t out = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end || v.empty()) fail(Errc::ConfigError, what + " is not a non-negative integer: '" + v + "'");
    return out;
}

// split on commas that are not inside parentheses
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

std::string Spec::get(const std::string& k, const std::string& dflt) const {
    auto it = params.find(k);
    return it == params.end() ? dflt : it->second;
}

std::size_t Spec::get_size(const std::string& k) const {
    if (!has(k)) fail(Errc::ConfigError, "'" + name + "' needs parameter " + k);
    return to_size(get(k), name + "." + k);
}

std::size_t Spec::get_size(const std::string& k, std::size_t dflt) const {
    return has(k) ? to_size(get(k), name + "." + k) : dflt;
}

std::string Spec::to_string() const {
    std::string s = name;
    char sep = ':';
    for (const auto& [k, v] : params) {
        s += sep + k + "=" + v;
        sep = ',';
    }
    return s;
}

Spec parse_spec(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) fail(Errc::ConfigError, "empty spec");
    Spec spec;
    std::string rest;
    const auto paren = t.find('(');
    const auto colon = t.find(':');
    if (paren != std::string::npos && (colon == std::string::npos || paren < colon)) {
        if (t.back() != ')') fail(Errc::ParseError, "unbalanced parentheses in '" + t + "'");
        spec.name = t.substr(0, paren);
        rest = t.substr(paren + 1, t.size() - paren - 2);
    } else if (colon != std::string::npos) {
        spec.name = t.substr(0, colon);
        rest = t.substr(colon + 1);
    } else {
        spec.name = t;
    }
    for (const auto& item : split_top(rest)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(Errc::ParseError, "parameter needs key=value: '" + item + "'");
        spec.params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ConfigError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ConceptClass parse_class_text(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Concept> concepts;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "line " + std::to_string(lineno);
        if (!n) {
            std::istringstream hs(line);
            std::string kw, num, extra;
            hs >> kw >> num;
            if (kw != "domain" || num.empty() || (hs >> extra)) fail(Errc::ParseError, where + ": expected 'domain <n>'");
            n = to_size(num, "domain size");
            if (*n == 0) fail(Errc::ParseError, where + ": domain must be non-empty");
            continue;
        }
        if (line.size() != *n) fail(Errc::ParseError, where + ": expected " + std::to_string(*n) + " labels");
        if (line.find_first_not_of("01") != std::string::npos) fail(Errc::ParseError, where + ": labels must be 0 or 1");
        concepts.push_back(Concept::from_string(line));
    }
    if (!n) fail(Errc::ParseError, "missing 'domain <n>' header");
    return ConceptClass(FiniteDomain(*n), std::move(concepts), name);
}

ConceptClass load_class_file(const std::string& path) { return parse_class_text(read_file(path), path); }

std::string class_to_text(const ConceptClass& cls) {
    std::string s = "domain " + std::to_string(cls.domain_size()) + "\n";
    for (const auto& c : cls.concepts()) s += c.to_string() + "\n";
    return s;
}

ConceptClass make_class(const Spec& spec) {
    const auto& n = spec.name;
    if (n == "pmon") return gen_pmon(spec.get_size("m"));
    if (n == "mon") return gen_mon(spec.get_size("m"));
    if (n == "claus") return gen_claus(spec.get_size("m"));
    if (n == "mon_claus") return gen_mon_claus(spec.get_size("m"));
    if (n == "parity") return gen_parity(spec.get_size("m"));
    if (n == "dl") return gen_dl(spec.get_size("m"), spec.get_size("k"));
    if (n == "dl2") return gen_dl2_embedding(spec.get_size("m"));
    if (n == "mdnf") return gen_mdnf(spec.get_size("m"), spec.get_size("s"), spec.get_size("z"));
    if (n == "primed_pmon") return gen_primed_pmon(spec.get_size("m"));
    if (n == "singletons") return gen_singletons(spec.get_size("n"));
    if (n == "vcd1") return vcd1_example();
    if (n == "file") {
        if (!spec.has("path")) fail(Errc::ConfigError, "file class needs path=...");
        return load_class_file(spec.get("path"));
    }
    fail(Errc::ConfigError, "unknown class '" + n + "'");
}

Metric make_metric(const std::string& name, const ConceptClass& cls) {
    const std::size_t n = cls.domain_size();
    if (name == "hamming") {
        if (!cls.domain().bool_dim) fail(Errc::ConfigError, "hamming needs a Boolean domain");
        return Metric::hamming(*cls.domain().bool_dim);
    }
    if (name == "discrete" || name == "d0") return Metric::discrete(n);
    if (name == "line") return Metric::grid_l1({n});
    if (name == "vcd1") return vcd1_metric(cls).metric;
    const Spec s = parse_spec(name);
    if (s.name == "csv") {
        if (!s.has("path")) fail(Errc::ConfigError, "csv metric needs path=...");
        Metric m = load_matrix_csv(s.get("path"));
        if (m.size() != n) fail(Errc::DomainMismatch, "metric size differs from the domain");
        return m;
    }
    fail(Errc::ConfigError, "unknown metric '" + name + "'");
}

ContrastSetup make_contrast_set(const Spec& spec, const ConceptClass& cls) {
    ContrastSetup out;
    const std::string metric = spec.get("metric", spec.get("d", "hamming"));
    if (spec.name == "none" || spec.name == "mq") {
        out.cs = std::make_shared<NullCs>();
    } else if (spec.name == "min") {
        if (metric == "vs") {
            out.cs = MinDistanceCs::version_space_induced();
        } else {
            out.metric = make_metric(metric, cls);
            out.cs = std::make_shared<MinDistanceCs>(*out.metric);
        }
    } else if (spec.name == "prox") {
        out.metric = make_metric(metric, cls);
        out.cs = std::make_shared<ProximityCs>(*out.metric);
    } else if (spec.name == "injective") {
        if (!spec.has("map")) fail(Errc::ConfigError, "injective rule needs map=FILE");
        out.cs = load_injective(spec.get("map"), cls);
    } else {
        fail(Errc::ConfigError, "unknown contrast rule '" + spec.name + "'");
    }
    return out;
}

std::shared_ptr<InjectiveCs> load_injective(const std::string& path, const ConceptClass& cls) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<Instance> order;
    std::vector<Bits> images;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("order", 0) == 0) {
            std::istringstream ls(line.substr(5));
            std::string tok;
            while (ls >> tok) order.push_back(to_size(tok, "order entry"));
            continue;
        }
        if (line.size() != cls.domain_size() || line.find_first_not_of("01") != std::string::npos) {
            fail(Errc::ParseError, path + ": image '" + line + "' is not a bit-string of the domain size");
        }
        images.push_back(Bits::from_string(line));
    }
    return std::make_shared<InjectiveCs>(cls, std::move(images), std::move(order));
}

std::unique_ptr<Learner> make_learner(const Spec& spec, const ConceptClass& cls, const Spec& class_spec,
                                      const ContrastSetup& setup) {
    const auto& n = spec.name;
    if (n == "pmon") return std::make_unique<PmonLearner>();
    if (n == "monclaus") return std::make_unique<MonClausLearner>();
    if (n == "mdnf") {
        const std::size_t s = spec.get_size("s", class_spec.name == "mdnf" ? class_spec.get_size("s") : 0);
        if (s == 0) fail(Errc::ConfigError, "mdnf learner needs s=...");
        return std::make_unique<MdnfDynamicLearner>(s);
    }
    if (n == "vcd1") return std::make_unique<Vcd1Learner>(vcd1_metric(cls));
    if (n == "halving") return std::make_unique<HalvingLearner>(setup.cs);
    if (n == "optimal") return std::make_unique<CertificateLearner>(std::make_shared<ContrastGame>(cls, setup.cs));
    if (n == "injective") {
        auto inj = std::dynamic_pointer_cast<InjectiveCs>(setup.cs);
        if (!inj) fail(Errc::ConfigError, "injective learner needs --cs injective:map=FILE");
        return std::make_unique<InjectiveLearner>(inj);
    }
    if (n == "prox") {
        if (!setup.metric || !setup.cs->takes_radius()) fail(Errc::ConfigError, "prox learner needs --cs prox:metric=...");
        const Spec inner = parse_spec(spec.get("inner", "monclaus"));
        return std::make_unique<ProxFromMin>(make_learner(inner, cls, class_spec, setup), *setup.metric);
    }
    fail(Errc::ConfigError, "unknown learner '" + n + "'");
}

std::unique_ptr<OracleStrategy> make_oracle(const Spec& spec, const ConceptClass& cls, const ContrastSetup& setup) {
    if (spec.name == "first") return std::make_unique<FirstOracle>();
    if (spec.name == "random") return std::make_unique<RandomOracle>(spec.get_size("seed", 1));
    if (spec.name == "minimax") return std::make_unique<MinimaxOracle>(std::make_shared<ContrastGame>(cls, setup.cs));
    if (spec.name == "farthest") {
        if (!setup.metric) fail(Errc::ConfigError, "farthest oracle needs a metric-based contrast rule");
        return std::make_unique<FarthestOracle>(*setup.metric);
    }
    fail(Errc::ConfigError, "unknown oracle '" + spec.name + "'");
}

std::vector<std::size_t> select_targets(const std::string& text, const ConceptClass& cls) {
    std::vector<std::size_t> out;
    if (text == "all" || text == "enumerate") {
        for (std::size_t i = 0; i < cls.size(); ++i) out.push_back(i);
        return out;
    }
    if (text.rfind("list:", 0) == 0) {
        for (const auto& tok : split_top(text.substr(5))) {
            const std::size_t i = to_size(trim(tok), "target index");
            if (i >= cls.size()) fail(Errc::OutOfRange, "target index " + tok + " outside the class");
            out.push_back(i);
        }
        return out;
    }
    if (text.rfind("random", 0) == 0) {
        std::size_t count = 0;
        std::uint64_t seed = 1;
        const std::string rest = text.size() > 6 ? text.substr(7) : "";
        if (rest.find('=') != std::string::npos) {
            const Spec s = parse_spec("random:" + rest);
            count = s.get_size("n");
            seed = s.get_size("seed", 1);
        } else {
            const auto c = rest.find(':');
            count = to_size(rest.substr(0, c), "target count");
            if (c != std::string::npos) seed = to_size(rest.substr(c + 1), "target seed");
        }
        XorShift64 rng(seed);
        for (std::size_t k = 0; k < count; ++k) out.push_back(rng.below(cls.size()));
        return out;
    }
    fail(Errc::ConfigError, "unknown target set '" + text + "'");
}

Json trace_json(const std::vector<InteractionRecord>& records, const ConceptClass& cls) {
    Json rounds = Json::array();
    for (const auto& r : records) {
        Json j;
        j["query"] = cls.domain().name_of(r.query.x);
        if (r.query.radius) j["radius"] = clab::to_string(*r.query.radius);
        j["label"] = r.answer.label ? 1 : 0;
        if (r.answer.contrast) {
            j["contrast"] = Json{{"x", cls.domain().name_of(r.answer.contrast->x)}, {"y", r.answer.contrast->y ? 1 : 0}};
        } else {
            j["contrast"] = "omega";
        }
        j["vs_size"] = r.post.size();
        rounds.push_back(std::move(j));
    }
    return rounds;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(Errc::ConfigError, "config line " + std::to_string(lineno) + " needs key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) { return parse_config_text(read_file(path)); }

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace clab
