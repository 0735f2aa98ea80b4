#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "schurloss/error.hpp"

namespace schurloss::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  raise(ErrorCode::ParseError, "field '" + field + "': " + what);
}

const Json& member(const Json& j, const char* key, const std::string& context) {
  const std::string field = context.empty() ? key : context + "." + key;
  if (!j.is_object()) parse_fail(context.empty() ? "<root>" : context, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(field, "missing");
  return *it;
}

Index count(const Json& j, const char* key, Index min_value) {
  const Json& c = member(j, key, "");
  if (!c.is_number_integer() || c.get<long long>() < min_value) {
    parse_fail(key, "expected an integer >= " + std::to_string(min_value));
  }
  return static_cast<Index>(c.get<long long>());
}

void check_schema(const Json& j) {
  const Json& s = member(j, "schema_version", "");
  if (!s.is_string()) parse_fail("schema_version", "expected a string");
  if (s.get<std::string>() != kSchemaVersion) {
    parse_fail("schema_version", "unsupported version '" + s.get<std::string>() + "'");
  }
}

Json steps_to_json(const Chart& c) {
  Json steps = Json::array();
  for (const ChartStep& s : c.steps) {
    steps.push_back({{"w", complex_to_json(s.w)}, {"u", vector_to_json(s.u)}});
  }
  return steps;
}

std::vector<ChartStep> steps_from_json(const Json& j, Index n, Index p) {
  const Json& steps = member(j, "steps", "");
  if (!steps.is_array()) parse_fail("steps", "expected an array");
  if (static_cast<Index>(steps.size()) != n) {
    parse_fail("steps", "has " + std::to_string(steps.size()) + " entries, n = " + std::to_string(n));
  }
  std::vector<ChartStep> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string ctx = "steps[" + std::to_string(k) + "]";
    out.push_back({complex_from_json(member(steps[k], "w", ctx), ctx + ".w"),
                   vector_from_json(member(steps[k], "u", ctx), p, ctx + ".u")});
  }
  return out;
}

bool fixed_base(const Json& j) {
  const Json& b = member(j, "base", "");
  if (b == "fixed") return true;
  if (b == "free") return false;
  parse_fail("base", "expected \"free\" or \"fixed\"");
}

// Converts library validation failures into parse errors for the file.
template <class F>
void validate_as_parse(const char* what, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    raise(ErrorCode::ParseError, std::string(what) + ": " + e.detail());
  }
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  }
  return out;
}

Json vector_to_json(const CVector& v) { return matrix_to_json(v.transpose()); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(field, "expected [re, im]");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) parse_fail(field, "non-finite value");
  return {re, im};
}

CMatrix matrix_from_json(const Json& j, Index rows, Index cols, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of [re, im] pairs");
  if (static_cast<Index>(j.size()) != rows * cols) {
    parse_fail(field, "has " + std::to_string(j.size()) + " entries, expected " +
                          std::to_string(rows) + " x " + std::to_string(cols));
  }
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = complex_from_json(j[k], field + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

CVector vector_from_json(const Json& j, Index size, const std::string& field) {
  return matrix_from_json(j, size, 1, field);
}

Json realization_to_json(const RealizationFile& f) {
  const Realization& g = f.g;
  Json j = {{"schema_version", kSchemaVersion},
            {"n", g.n()},
            {"p", g.p()},
            {"m", g.m()},
            {"A", matrix_to_json(g.A)},
            {"B", matrix_to_json(g.B)},
            {"C", matrix_to_json(g.C)},
            {"D", matrix_to_json(g.D)}};
  if (f.lossless_balanced) j["tags"] = {{"lossless_balanced", *f.lossless_balanced}};
  return j;
}

RealizationFile realization_from_json(const Json& j) {
  check_schema(j);
  const Index n = count(j, "n", 0);
  const Index p = count(j, "p", 1);
  const Index m = count(j, "m", 1);
  CMatrix a = matrix_from_json(member(j, "A", ""), n, n, "A");
  CMatrix b = matrix_from_json(member(j, "B", ""), n, m, "B");
  CMatrix c = matrix_from_json(member(j, "C", ""), p, n, "C");
  CMatrix d = matrix_from_json(member(j, "D", ""), p, m, "D");
  RealizationFile f{Realization(std::move(a), std::move(b), std::move(c), std::move(d)),
                    std::nullopt};
  if (const auto it = j.find("tags"); it != j.end()) {
    if (!it->is_object()) parse_fail("tags", "expected an object");
    if (const auto t = it->find("lossless_balanced"); t != it->end()) {
      if (!t->is_boolean()) parse_fail("tags.lossless_balanced", "expected a boolean");
      f.lossless_balanced = t->get<bool>();
    }
  }
  return f;
}

Json chart_to_json(const Chart& c, Index p) {
  Json j = {{"schema_version", kSchemaVersion},
            {"n", c.n()},
            {"p", p},
            {"steps", steps_to_json(c)},
            {"base", c.fixed_d0 ? "fixed" : "free"}};
  if (c.fixed_d0) j["D0"] = matrix_to_json(*c.fixed_d0);
  return j;
}

std::pair<Chart, Index> chart_from_json(const Json& j) {
  check_schema(j);
  const Index n = count(j, "n", 0);
  const Index p = count(j, "p", 1);
  Chart c;
  c.steps = steps_from_json(j, n, p);
  if (fixed_base(j)) c.fixed_d0 = matrix_from_json(member(j, "D0", ""), p, p, "D0");
  validate_as_parse("chart", [&] { c.validate(p); });
  return {c, p};
}

Json schur_data_to_json(const SchurData& d) {
  Json v = Json::array();
  for (const CVector& x : d.v) v.push_back(vector_to_json(x));
  return {{"schema_version", kSchemaVersion},
          {"n", d.chart.n()},
          {"p", d.p()},
          {"steps", steps_to_json(d.chart)},
          {"v", v},
          {"D0", matrix_to_json(d.D0)},
          {"base", d.chart.fixed_d0 ? "fixed" : "free"}};
}

SchurData schur_data_from_json(const Json& j) {
  check_schema(j);
  const Index n = count(j, "n", 0);
  const Index p = count(j, "p", 1);
  SchurData d;
  d.chart.steps = steps_from_json(j, n, p);
  d.D0 = matrix_from_json(member(j, "D0", ""), p, p, "D0");
  if (fixed_base(j)) d.chart.fixed_d0 = d.D0;
  const Json& v = member(j, "v", "");
  if (!v.is_array() || static_cast<Index>(v.size()) != n) {
    parse_fail("v", "expected an array of n = " + std::to_string(n) + " vectors");
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    d.v.push_back(vector_from_json(v[k], p, "v[" + std::to_string(k) + "]"));
  }
  validate_as_parse("Schur data", [&] { d.validate(); });
  return d;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    raise(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::InvalidArgument, path + ": cannot open for writing");
  out << text;
  if (!out) raise(ErrorCode::InvalidArgument, path + ": write failed");
}

namespace {

template <class T, class F>
T load_with_context(const std::string& path, F&& parse) {
  const Json j = read_json(path);
  try {
    return parse(j);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) raise(ErrorCode::ParseError, path + ": " + e.detail());
    throw;
  }
}

}  // namespace

RealizationFile load_realization(const std::string& path) {
  return load_with_context<RealizationFile>(path, realization_from_json);
}

void save_realization(const std::string& path, const RealizationFile& f) {
  write_text(path, dump(realization_to_json(f)));
}

std::pair<Chart, Index> load_chart(const std::string& path) {
  return load_with_context<std::pair<Chart, Index>>(path, chart_from_json);
}

void save_chart(const std::string& path, const Chart& c, Index p) {
  write_text(path, dump(chart_to_json(c, p)));
}

SchurData load_schur_data(const std::string& path) {
  return load_with_context<SchurData>(path, schur_data_from_json);
}

void save_schur_data(const std::string& path, const SchurData& d) {
  write_text(path, dump(schur_data_to_json(d)));
}

}  // namespace schurloss::cli
