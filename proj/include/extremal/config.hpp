#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "extremal/lie.hpp"

namespace extremal {

/// Run configuration: a structured JSON file plus flag overrides. Unknown
/// keys are rejected and a parsed config round-trips through serialization.
struct RunConfig {
  std::string field = "GF(2)";
  struct Construction {
    std::string type = "sl";      // sl | su | sp | flag_model
    int n = 3;
    std::string gram = "standard";  // standard | diag(...) | antidiag(...)
    std::string pi = "full";
  } construction;
  std::string operation = "verify";  // construct | verify | geometry | classify |
                                     // extend | polarity | local | suite
  struct Bounds {
    std::int64_t enum_cap = LieAlgebra::kDefaultEnumerationBound;
    int samples = 10;
  } bounds;
  struct Output {
    std::string json_path;
    std::string dot_path;
  } output;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load_file(const std::string& path);
};

/// Gram matrix from its compact spec: "standard", "diag(a,b,...)" or
/// "antidiag(a,b,...)" with scalar-string entries.
Matrix parse_gram(const Field& f, int n, const std::string& spec, bool hermitian);

}  // namespace extremal
