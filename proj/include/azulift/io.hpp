#pragma once

#include "azulift/lift.hpp"

#include <json.hpp>

#include <string>

namespace azulift::io {

using Json = nlohmann::json;

// Every reader validates shape and types and throws Error(Parse) with the
// offending JSON path. Rationals are always strings "n" or "n/d".

[[nodiscard]] Json rational_to_json(const Rational& q);
[[nodiscard]] Rational rational_from_json(const Json& j, const std::string& path);
[[nodiscard]] Json vec_to_json(CSpan v);
[[nodiscard]] Vec vec_from_json(const Json& j, const std::string& path, size_t width);

[[nodiscard]] Json table_to_json(const ProductTable& t);
[[nodiscard]] ProductTable table_from_json(const Json& j, const std::string& path);
[[nodiscard]] Json algebra_to_json(const StructAlgebra& a);
/// Rebuilds an algebra over `base`; the stored ring width must match.
[[nodiscard]] StructAlgebra algebra_from_json(const Json& j, const std::string& path, const TowerPtr& base);

[[nodiscard]] Json scenario_to_json(const LiftScenario& sc);
[[nodiscard]] LiftScenario scenario_from_json(const Json& j);

[[nodiscard]] Json witnesses_to_json(const Witnesses& w);
[[nodiscard]] Witnesses witnesses_from_json(const Json& j, const std::string& path);

[[nodiscard]] Json report_to_json(const std::vector<CheckResult>& r);

/// Self-contained certificate; A'' is recorded as its construction and rank.
[[nodiscard]] Json certificate_to_json(const LiftCertificate& cert);
/// The stored report is kept in `report` and is not trusted by verification.
[[nodiscard]] LiftCertificate certificate_from_json(const Json& j);

/// Parses a whole file. Throws Error(Parse) on I/O or syntax errors.
[[nodiscard]] Json read_json_file(const std::string& path);
/// Canonical serialization: sorted keys, one-space indent, trailing newline.
[[nodiscard]] std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace azulift::io
