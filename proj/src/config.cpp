#include "extremal/config.hpp"

#include <fstream>
#include <stdexcept>

#include "extremal/hermitian.hpp"

namespace extremal {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw std::invalid_argument("unknown config key '" + it.key() + "' in " + where);
  }
}

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["field"] = field;
  j["construction"] = {{"type", construction.type},
                       {"n", construction.n},
                       {"gram", construction.gram},
                       {"pi", construction.pi}};
  j["operation"] = operation;
  j["bounds"] = {{"enum_cap", bounds.enum_cap}, {"samples", bounds.samples}};
  j["output"] = {{"json", output.json_path}, {"dot", output.dot_path}};
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  reject_unknown(j, {"field", "construction", "operation", "bounds", "output", "seed"},
                 "config");
  RunConfig c;
  c.field = j.value("field", c.field);
  if (j.contains("construction")) {
    const json& cj = j["construction"];
    reject_unknown(cj, {"type", "n", "gram", "pi"}, "construction");
    c.construction.type = cj.value("type", c.construction.type);
    c.construction.n = cj.value("n", c.construction.n);
    c.construction.gram = cj.value("gram", c.construction.gram);
    c.construction.pi = cj.value("pi", c.construction.pi);
  }
  c.operation = j.value("operation", c.operation);
  if (j.contains("bounds")) {
    const json& bj = j["bounds"];
    reject_unknown(bj, {"enum_cap", "samples"}, "bounds");
    c.bounds.enum_cap = bj.value("enum_cap", c.bounds.enum_cap);
    c.bounds.samples = bj.value("samples", c.bounds.samples);
  }
  if (j.contains("output")) {
    const json& oj = j["output"];
    reject_unknown(oj, {"json", "dot"}, "output");
    c.output.json_path = oj.value("json", c.output.json_path);
    c.output.dot_path = oj.value("dot", c.output.dot_path);
  }
  c.seed = j.value("seed", c.seed);

  const std::string& op = c.operation;
  if (op != "construct" && op != "verify" && op != "geometry" && op != "classify" &&
      op != "extend" && op != "polarity" && op != "local" && op != "suite")
    throw std::invalid_argument("unknown operation: " + op);
  const std::string& ty = c.construction.type;
  if (ty != "sl" && ty != "su" && ty != "sp" && ty != "flag_model")
    throw std::invalid_argument("unknown construction type: " + ty);
  if (c.construction.n < 1) throw std::invalid_argument("construction dimension must be positive");
  return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  in >> j;
  return from_json(j);
}

Matrix parse_gram(const Field& f, int n, const std::string& spec, bool hermitian) {
  if (spec == "standard") {
    return hermitian ? SesquiForm::standard_skew_hermitian(f, n).gram()
                     : SesquiForm::standard_alternating(f, n).gram();
  }
  bool anti = spec.rfind("antidiag(", 0) == 0;
  bool diag = spec.rfind("diag(", 0) == 0;
  if ((!anti && !diag) || spec.back() != ')')
    throw std::invalid_argument("gram spec must be standard, diag(...) or antidiag(...)");
  std::string inner = spec.substr(anti ? 9 : 5);
  inner.pop_back();
  std::vector<Scalar> entries;
  size_t pos = 0;
  while (pos <= inner.size()) {
    size_t comma = inner.find(',', pos);
    std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    if (!tok.empty()) entries.push_back(Scalar::parse(f, tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(entries.size()) != n)
    throw std::invalid_argument("gram spec entry count must equal n");
  Matrix g(f, n, n);
  for (int i = 0; i < n; ++i) {
    if (anti)
      g.at(i, n - 1 - i) = entries[i];
    else
      g.at(i, i) = entries[i];
  }
  return g;
}

}  // namespace extremal
