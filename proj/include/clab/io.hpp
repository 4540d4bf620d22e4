#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clab/core.hpp"
#include "clab/learners.hpp"
#include "clab/metrics.hpp"
#include "clab/oracles.hpp"
#include "clab/protocol.hpp"

namespace clab {

using Json = nlohmann::ordered_json;

/// "name:k=v,k=v" or "name(k=v,k=v)". Values may contain ':'; a value in
/// parentheses may itself be a spec ("prox(inner=monclaus)").
struct Spec {
    std::string name;
    std::map<std::string, std::string> params;

    bool has(const std::string& k) const { return params.count(k) != 0; }
    std::string get(const std::string& k, const std::string& dflt = "") const;
    std::size_t get_size(const std::string& k) const;
    std::size_t get_size(const std::string& k, std::size_t dflt) const;
    std::string to_string() const;
};

Spec parse_spec(const std::string& text);

/// "domain <n>" then one n-character bit-string per concept. Blank lines and
/// lines starting with '#' are skipped.
ConceptClass parse_class_text(const std::string& text, const std::string& name = "file");
ConceptClass load_class_file(const std::string& path);
std::string class_to_text(const ConceptClass& cls);

/// Builds a class from a generator spec such as "pmon:m=3", "mdnf:m=4,s=2,z=2",
/// or "file:path=classes/x.txt".
ConceptClass make_class(const Spec& spec);

/// hamming | discrete | line | csv:path=F | vcd1
Metric make_metric(const std::string& name, const ConceptClass& cls);

struct ContrastSetup {
    std::shared_ptr<ContrastSet> cs;
    std::optional<Metric> metric;  // the static metric behind min/prox rules
};

/// min:metric=NAME | min:metric=vs | prox:metric=NAME | injective:map=FILE | none
/// ("d=" is accepted for "metric=").
ContrastSetup make_contrast_set(const Spec& spec, const ConceptClass& cls);

/// Image file for an injective rule: optional "order i0 i1 ..." line, then
/// one image bit-string per concept in class order.
std::shared_ptr<InjectiveCs> load_injective(const std::string& path, const ConceptClass& cls);

/// pmon | monclaus | prox(inner=...) | vcd1 | mdnf:s=N | injective | halving | optimal
std::unique_ptr<Learner> make_learner(const Spec& spec, const ConceptClass& cls, const Spec& class_spec,
                                      const ContrastSetup& setup);

/// first | random:seed=N | minimax | farthest
std::unique_ptr<OracleStrategy> make_oracle(const Spec& spec, const ConceptClass& cls, const ContrastSetup& setup);

/// all | enumerate | random:N:SEED (also random:n=N,seed=S) | list:i,j,k
std::vector<std::size_t> select_targets(const std::string& text, const ConceptClass& cls);

/// One object per round: {query, radius?, label, contrast: {x, y} | "omega", vs_size}.
Json trace_json(const std::vector<InteractionRecord>& records, const ConceptClass& cls);

/// RFC 4180: quote when the field holds a comma, quote, CR or LF.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

/// key=value lines; '#' comments and blank lines skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

std::string read_file(const std::string& path);

/// Shortest decimal for doubles that are exact in binary, e.g. 0.015625.
std::string format_double(double v);

}  // namespace clab
