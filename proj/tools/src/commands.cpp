#include "commands.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "schurloss/canonical.hpp"
#include "schurloss/realization.hpp"
#include "schurloss/schur.hpp"

namespace schurloss::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotJUnitary:
    case ErrorCode::SingularBlock:
    case ErrorCode::SingularPivot:
    case ErrorCode::DeflationFailed:
    case ErrorCode::WindingAmbiguous:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

namespace {

struct Globals {
  bool json = false;
  ToleranceProfile tol;
  std::uint64_t seed = 0;
  std::string output;
};

// Everything a command hands back: a report for stdout, an optional
// document for -o, and the exit status.
struct Result {
  Json report = Json::object();
  std::optional<std::string> document;
  int status = kExitOk;
};

void print_human(const Json& report, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& [key, value] : report.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : report.items()) {
    out << key << std::string(width - key.size() + 2, ' ');
    if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

Chart resolve_chart(const std::string& arg, Index n, Index p) {
  if (arg == "default") return default_chart(n, p);
  if (arg == "default-free") {
    Chart c = default_chart(n, p);
    c.fixed_d0.reset();
    return c;
  }
  auto [chart, chart_p] = load_chart(arg);
  if (chart.n() != n || chart_p != p) {
    raise(ErrorCode::DimensionMismatch,
          arg + ": chart has n = " + std::to_string(chart.n()) + ", p = " + std::to_string(chart_p) +
              " but the system needs n = " + std::to_string(n) + ", p = " + std::to_string(p));
  }
  return chart;
}

void require_square(const Realization& g, const std::string& path) {
  if (g.p() != g.m()) {
    raise(ErrorCode::DimensionMismatch, path + ": lossless systems must have p = m");
  }
}

Json residual_list(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

// ||G^(k)(1/conj w_k) u_k - v_k|| for k = 1..n.
std::vector<double> interpolation_residuals(const SchurData& data,
                                            const std::vector<Realization>& stages,
                                            const ToleranceProfile& tol) {
  std::vector<double> res;
  for (std::size_t k = 1; k < stages.size(); ++k) {
    const ChartStep& s = data.chart.steps[k - 1];
    res.push_back((eval(stages[k], Point::reflect(s.w), tol) * s.u - data.v[k - 1]).norm());
  }
  return res;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

Point parse_point(const std::string& text) {
  if (text == "inf") return Point::infinity();
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  in >> re;
  if (in && in.peek() != EOF) in >> comma >> im;
  if (!in || (comma != 0 && comma != ',') || in.peek() != EOF || !std::isfinite(re) ||
      !std::isfinite(im)) {
    raise(ErrorCode::InvalidArgument, "--z: cannot parse '" + text + "' (expected RE,IM or inf)");
  }
  return Point(Complex(re, im));
}

Result cmd_generate(const Globals& g, Index n, Index p, const std::string& chart_arg) {
  const Chart chart = resolve_chart(chart_arg, n, p);
  const SchurData data = random_schur_data(chart, p, g.seed);
  const Realization r = schur_reconstruct(data, g.tol);
  Result res;
  res.document = dump(realization_to_json({r, true}));
  res.report = {{"n", n}, {"p", p}, {"seed", g.seed}, {"chart", chart_arg},
                {"unitarity_residual", unitarity_residual(r.matrix())}};
  return res;
}

Result cmd_check(const Globals& g, const std::string& path) {
  const RealizationFile f = load_realization(path);
  const LosslessCertificate cert = is_lossless(f.g, g.tol);
  const bool tagged = f.lossless_balanced.value_or(false);
  Result res;
  res.report = {{"raw_unitarity_residual", cert.raw_unitarity_residual},
                {"unitarity_residual", cert.unitarity_residual},
                {"circle_residual", cert.circle_residual},
                {"spectral_radius", cert.spectral_radius},
                {"balanced", cert.balanced},
                {"tagged_lossless_balanced", tagged}};
  bool ok = cert.passes(g.tol);
  if (tagged) ok = ok && cert.raw_unitarity_residual < g.tol.tol_unitary;
  if (f.g.n() > 0 && f.g.p() == f.g.m() && cert.stability_margin > 0.0) {
    try {
      const int degree = winding_degree(f.g, 1024, g.tol);
      res.report["winding_degree"] = degree;
      if (cert.balanced) ok = ok && degree == f.g.n();
    } catch (const Error& e) {
      res.report["winding_degree"] = e.detail();
      ok = false;
    }
  }
  if (cert.stability_margin > 0.0) {
    const GramianPair w = gramians(f.g, g.tol);
    const auto [rc, ro] = gramian_residuals(f.g, w);
    res.report["gramian_residual"] = std::max(rc, ro);
  }
  res.report["lossless"] = ok;
  res.status = ok ? kExitOk : kExitNumerical;
  return res;
}

Result cmd_gramians(const Globals& g, const std::string& path) {
  const RealizationFile f = load_realization(path);
  const GramianPair w = gramians(f.g, g.tol);
  const auto [rc, ro] = gramian_residuals(f.g, w);
  const Eigen::VectorXd hsv2 = hankel_singular_values(f.g, g.tol);
  Json hsv = Json::array();
  for (Index i = 0; i < hsv2.size(); ++i) hsv.push_back(std::sqrt(std::max(hsv2(i), 0.0)));
  Result res;
  res.report = {{"n", f.g.n()},
                {"Wc", matrix_to_json(w.Wc)},
                {"Wo", matrix_to_json(w.Wo)},
                {"controllability_residual", rc},
                {"observability_residual", ro},
                {"hankel_singular_values", hsv}};
  return res;
}

Result cmd_balance(const Globals& g, const std::string& path) {
  const RealizationFile f = load_realization(path);
  require_square(f.g, path);
  const Realization b = balance_lossless(f.g, g.tol);
  Result res;
  res.document = dump(realization_to_json({b, true}));
  res.report = {{"n", b.n()},
                {"unitarity_residual", unitarity_residual(b.matrix())},
                {"circle_distance", circle_distance(b, f.g, 32, g.tol)}};
  return res;
}

Result cmd_eval(const Globals& g, const std::string& path, const std::vector<std::string>& zs,
                int points) {
  const RealizationFile f = load_realization(path);
  std::vector<Point> at;
  for (const std::string& z : zs) at.push_back(parse_point(z));
  for (int k = 0; k < points; ++k) {
    at.emplace_back(std::polar(1.0, 2.0 * std::numbers::pi * k / points));
  }
  if (at.empty()) raise(ErrorCode::InvalidArgument, "eval: give --z or --points");
  Json values = Json::array();
  for (const Point& z : at) {
    values.push_back({{"z", z.is_infinite() ? Json("inf") : complex_to_json(z.value())},
                      {"G", matrix_to_json(eval(f.g, z, g.tol))}});
  }
  Result res;
  res.report = {{"p", f.g.p()}, {"m", f.g.m()}, {"values", values}};
  return res;
}

Result cmd_encode(const Globals& g, const std::string& path, const std::string& chart_arg) {
  const RealizationFile f = load_realization(path);
  require_square(f.g, path);
  const Chart chart = resolve_chart(chart_arg, f.g.n(), f.g.p());
  const DecompositionTrace trace = schur_decompose_trace(f.g, chart, g.tol);
  const std::vector<double> interp = interpolation_residuals(trace.data, trace.stages, g.tol);
  std::vector<double> norms;
  for (const CVector& v : trace.data.v) norms.push_back(v.norm());
  const Realization back = schur_reconstruct(trace.data, g.tol);
  Result res;
  res.document = dump(schur_data_to_json(trace.data));
  res.report = {{"n", f.g.n()},
                {"p", f.g.p()},
                {"schur_vector_norms", residual_list(norms)},
                {"interpolation_residual", max_of(interp)},
                {"roundtrip_error", f.g.n() > 0 ? circle_distance(back, f.g, 32, g.tol)
                                                : max_abs(back.D - f.g.D)}};
  return res;
}

Result cmd_decode(const Globals& g, const std::string& path) {
  const SchurData data = load_schur_data(path);
  const std::vector<Realization> stages = schur_reconstruct_trace(data, g.tol);
  const Realization& r = stages.back();
  Result res;
  res.document = dump(realization_to_json({r, true}));
  res.report = {{"n", r.n()},
                {"p", r.p()},
                {"unitarity_residual", unitarity_residual(r.matrix())},
                {"interpolation_residual", max_of(interpolation_residuals(data, stages, g.tol))}};
  return res;
}

Result cmd_chart_test(const Globals& g, const std::string& path, const std::string& chart_arg) {
  const RealizationFile f = load_realization(path);
  require_square(f.g, path);
  const Chart chart = resolve_chart(chart_arg, f.g.n(), f.g.p());
  const ChartReport rep = chart_contains(f.g, chart, g.tol);
  Result res;
  res.report = {{"in_chart", rep.in_chart},
                {"per_step_norms", residual_list(rep.per_step_norms)},
                {"failure_step", rep.failure_step},
                {"message", rep.message}};
  res.status = rep.in_chart ? kExitOk : kExitValidation;
  return res;
}

Result cmd_canonical(const Globals& g, const std::string& path, const std::string& chart_arg,
                     bool output_normal) {
  const RealizationFile f = load_realization(path);
  const StableSystem s(f.g, g.tol);
  const Index width = output_normal ? f.g.p() : f.g.m();
  const Chart chart = resolve_chart(chart_arg, f.g.n(), width);
  const CanonicalForm cf =
      output_normal ? output_normal_form(s, chart, g.tol) : input_normal_form(s, chart, g.tol);
  const GramianPair w = gramians(cf.form, g.tol);
  const CMatrix id = CMatrix::Identity(f.g.n(), f.g.n());
  Result res;
  res.document = dump(realization_to_json({cf.form, std::nullopt}));
  res.report = {{"form", output_normal ? "output-normal" : "input-normal"},
                {"n", f.g.n()},
                {"gramian_identity_residual",
                 f.g.n() > 0 ? max_abs((output_normal ? w.Wo : w.Wc) - id) : 0.0},
                {"circle_distance", f.g.n() > 0 ? circle_distance(cf.form, f.g, 32, g.tol) : 0.0},
                {"T", matrix_to_json(cf.T)}};
  return res;
}

Result cmd_compare(const Globals& g, const std::string& a, const std::string& b, int points,
                   std::optional<double> max_error) {
  const RealizationFile fa = load_realization(a);
  const RealizationFile fb = load_realization(b);
  if (fa.g.p() != fb.g.p() || fa.g.m() != fb.g.m()) {
    raise(ErrorCode::DimensionMismatch, "compare: the two systems have different p x m");
  }
  const double err = circle_distance(fa.g, fb.g, points, g.tol);
  Result res;
  res.report = {{"points", points}, {"max_error", err}};
  if (max_error) {
    res.report["threshold"] = *max_error;
    if (!(err < *max_error)) res.status = kExitNumerical;
  }
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lossless systems and the tangential Schur algorithm", "schurloss"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json, "Print the report as JSON");
  app.add_option("--tol-unitary", g.tol.tol_unitary, "Unitarity tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-rank", g.tol.tol_rank, "Rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("-o,--output", g.output, "Output file");

  std::function<Result()> action;
  const auto chart_option = [](CLI::App* sub, std::string& target) {
    sub->add_option("--chart", target, "default, default-free or a chart file")
        ->capture_default_str();
  };

  Index degree = 0;
  Index size = 1;
  std::string gen_chart = "default";
  CLI::App* gen = app.add_subcommand("generate", "Random lossless-balanced realization");
  gen->add_option("--degree", degree, "McMillan degree n")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--size", size, "Input/output size p")->required()->check(CLI::PositiveNumber);
  chart_option(gen, gen_chart);
  gen->callback([&] { action = [&] { return cmd_generate(g, degree, size, gen_chart); }; });

  std::string file;
  std::string file2;

  CLI::App* check = app.add_subcommand("check", "Certify losslessness");
  check->add_option("FILE", file)->required();
  check->callback([&] { action = [&] { return cmd_check(g, file); }; });

  CLI::App* gram = app.add_subcommand("gramians", "Controllability and observability Gramians");
  gram->add_option("FILE", file)->required();
  gram->callback([&] { action = [&] { return cmd_gramians(g, file); }; });

  CLI::App* bal = app.add_subcommand("balance", "Balance a lossless realization");
  bal->add_option("FILE", file)->required();
  bal->callback([&] { action = [&] { return cmd_balance(g, file); }; });

  std::vector<std::string> zs;
  int eval_points = 0;
  CLI::App* ev = app.add_subcommand("eval", "Evaluate the transfer function");
  ev->add_option("FILE", file)->required();
  ev->add_option("--z", zs, "Point RE,IM or inf (repeatable)");
  ev->add_option("--points", eval_points, "Equispaced unit-circle samples")
      ->check(CLI::NonNegativeNumber);
  ev->callback([&] { action = [&] { return cmd_eval(g, file, zs, eval_points); }; });

  std::string schur_chart = "default";
  CLI::App* schur = app.add_subcommand("schur", "Schur coordinates");
  schur->require_subcommand(1);
  CLI::App* enc = schur->add_subcommand("encode", "Realization to Schur data");
  enc->add_option("FILE", file)->required();
  chart_option(enc, schur_chart);
  enc->callback([&] { action = [&] { return cmd_encode(g, file, schur_chart); }; });
  CLI::App* dec = schur->add_subcommand("decode", "Schur data to realization");
  dec->add_option("FILE", file)->required();
  dec->callback([&] { action = [&] { return cmd_decode(g, file); }; });

  std::string test_chart = "default";
  CLI::App* ct = app.add_subcommand("chart-test", "Chart membership");
  ct->add_option("FILE", file)->required();
  chart_option(ct, test_chart);
  ct->callback([&] { action = [&] { return cmd_chart_test(g, file, test_chart); }; });

  std::string canon_chart = "default";
  CLI::App* canon = app.add_subcommand("canonical", "Canonical forms of stable systems");
  canon->require_subcommand(1);
  CLI::App* onf = canon->add_subcommand("output-normal", "Output-normal canonical form");
  onf->add_option("FILE", file)->required();
  chart_option(onf, canon_chart);
  onf->callback([&] { action = [&] { return cmd_canonical(g, file, canon_chart, true); }; });
  CLI::App* inf = canon->add_subcommand("input-normal", "Input-normal canonical form");
  inf->add_option("FILE", file)->required();
  chart_option(inf, canon_chart);
  inf->callback([&] { action = [&] { return cmd_canonical(g, file, canon_chart, false); }; });

  int cmp_points = 32;
  std::optional<double> max_error;
  CLI::App* cmp = app.add_subcommand("compare", "Max difference on the unit circle");
  cmp->add_option("A", file)->required();
  cmp->add_option("B", file2)->required();
  cmp->add_option("--points", cmp_points, "Unit-circle samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp->add_option("--max-error", max_error, "Exit 3 when the error reaches this value")
      ->check(CLI::PositiveNumber);
  cmp->callback(
      [&] { action = [&] { return cmd_compare(g, file, file2, cmp_points, max_error); }; });

  std::vector<std::string> argv_store{"schurloss"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    g.tol.validate();
    Result res = action();
    if (res.document) {
      if (g.output.empty()) {
        out << *res.document;
        return res.status;
      }
      write_text(g.output, *res.document);
    } else if (!g.output.empty()) {
      write_text(g.output, dump(res.report));
    }
    if (g.json) {
      out << dump(res.report);
    } else {
      print_human(res.report, out);
    }
    return res.status;
  } catch (const NotInChartError& e) {
    if (g.json) {
      out << dump({{"error", "NotInChart"}, {"step", e.step()}, {"norm", e.norm()},
                   {"message", e.detail()}});
    }
    err << "error: " << e.what() << " (step " << e.step() << ")\n";
    return kExitValidation;
  } catch (const Error& e) {
    if (g.json) out << dump({{"error", std::string(to_string(e.code()))}, {"message", e.detail()}});
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace schurloss::cli
