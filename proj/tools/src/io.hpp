#pragma once

/// JSON file formats for realizations, charts and Schur data.
///
/// Matrices are flat row-major arrays of [re, im] pairs whose shape follows
/// from the counts stored alongside them. Output is canonical: sorted keys,
/// two-space indentation, shortest round-trip decimals, trailing newline.

#include <optional>
#include <string>

#include "json.hpp"

#include "schurloss/realization.hpp"
#include "schurloss/schur.hpp"

namespace schurloss::cli {

inline constexpr const char* kSchemaVersion = "1";

struct RealizationFile {
  Realization g;
  std::optional<bool> lossless_balanced;
};

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Json matrix_to_json(const CMatrix& m);
Json vector_to_json(const CVector& v);

/// The parsers raise Error(ParseError) with a message naming the field.
Complex complex_from_json(const Json& j, const std::string& field);
CMatrix matrix_from_json(const Json& j, Index rows, Index cols, const std::string& field);
CVector vector_from_json(const Json& j, Index size, const std::string& field);

Json realization_to_json(const RealizationFile& f);
RealizationFile realization_from_json(const Json& j);

Json chart_to_json(const Chart& c, Index p);
/// Returns the chart and its vector size p.
std::pair<Chart, Index> chart_from_json(const Json& j);

Json schur_data_to_json(const SchurData& d);
SchurData schur_data_from_json(const Json& j);

std::string dump(const Json& j);
/// Reads and parses a file; syntax errors report line and column.
Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

RealizationFile load_realization(const std::string& path);
void save_realization(const std::string& path, const RealizationFile& f);
std::pair<Chart, Index> load_chart(const std::string& path);
void save_chart(const std::string& path, const Chart& c, Index p);
SchurData load_schur_data(const std::string& path);
void save_schur_data(const std::string& path, const SchurData& d);

}  // namespace schurloss::cli
