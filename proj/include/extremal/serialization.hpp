#pragma once

#include <string>

#include "json.hpp"

#include "extremal/geometry.hpp"
#include "extremal/hermitian.hpp"
#include "extremal/lie.hpp"
#include "extremal/local_systems.hpp"

namespace extremal {

inline constexpr const char* kElementSchema = "extremal/element-v1";
inline constexpr const char* kAlgebraSchema = "extremal/algebra-v1";
inline constexpr const char* kGeometrySchema = "extremal/geometry-v1";
inline constexpr const char* kFormSchema = "extremal/form-v1";
inline constexpr const char* kPolaritySchema = "extremal/polarity-v1";
inline constexpr const char* kCoverSchema = "extremal/cover-v1";
inline constexpr const char* kReportSchema = "extremal/report-v1";

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json to_json(const LieElement& x);
LieElement element_from_json(const nlohmann::json& j);

/// Generators plus basis, for reproducible reload; the reload reconstructs
/// the closure from the generators and verifies the stored basis.
nlohmann::json to_json(const LieAlgebra& a);
LieAlgebra algebra_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GeometryGraph& g);
/// DOT rendering of the collinearity graph with line-membership labels.
std::string to_dot(const GeometryGraph& g);

nlohmann::json to_json(const SesquiForm& h);
SesquiForm form_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolaritySpec& p);
nlohmann::json to_json(const DirectedIndex& i);
nlohmann::json to_json(const CoverReport& r);

}  // namespace extremal
