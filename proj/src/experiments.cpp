#include "gcsie/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gcsie/operators.hpp"
#include "gcsie/oracle.hpp"
#include "gcsie/postprocess.hpp"

namespace gcsie::experiments {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double number(const json& doc, const std::string& key, double fallback, const std::string& path) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  return v.get<double>();
}

int integer(const json& doc, const std::string& key, int fallback, const std::string& path) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(path, "must be an integer");
  return v.get<int>();
}

std::string text(const json& doc, const std::string& key, const std::string& fallback, const std::string& path) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(path, "must be a string");
  return v.get<std::string>();
}

std::vector<int> int_list(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) return {};
  const json& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(path, "must be an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

const json& object(const json& doc, const std::string& key, const std::string& path) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(path, "must be an object");
  return v;
}

Curve parse_curve(const json& doc) {
  if (!doc.contains("curve")) return Curve::circle(1.0);
  const json& c = doc.at("curve");
  std::string kind;
  json params = json::object();
  if (c.is_string()) {
    kind = c.get<std::string>();
  } else if (c.is_object()) {
    kind = text(c, "kind", "", "curve.kind");
    params = c;
  } else {
    throw ConfigError("curve", "must be a string or an object");
  }
  if (kind == "circle") {
    const double r = number(params, "radius", 1.0, "curve.radius");
    if (!(r > 0.0)) throw ConfigError("curve.radius", "must be positive");
    return Curve::circle(r);
  }
  if (kind == "ellipse") {
    const double a = number(params, "a", 1.0, "curve.a"), b = number(params, "b", 1.0, "curve.b");
    if (!(a > 0.0)) throw ConfigError("curve.a", "must be positive");
    if (!(b > 0.0)) throw ConfigError("curve.b", "must be positive");
    return Curve::ellipse(a, b);
  }
  if (kind == "kite") return Curve::kite();
  throw ConfigError("curve.kind", "must be one of circle, ellipse, kite");
}

json curve_json(const Curve& c) {
  json j{{"kind", c.name()}};
  switch (c.kind()) {
    case Curve::Kind::Circle: j["radius"] = c.parameters()[0]; break;
    case Curve::Kind::Ellipse:
      j["a"] = c.parameters()[0];
      j["b"] = c.parameters()[1];
      break;
    case Curve::Kind::Kite: break;
  }
  return j;
}

void check_n(int n, const std::string& path) {
  if (n < 4 || n % 2 != 0) throw ConfigError(path, "must be even and >= 4");
  if (n > 2048) throw ConfigError(path, "must not exceed 2048");
}

fs::path prepare_out(const RunConfig& c) {
  fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw ConfigError("out", "cannot create output directory '" + c.out_dir + "'");
  return dir;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

// Plain CSV with a header row; cells are preformatted.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    line(cells);
  }
  std::string str() const { return out_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  std::size_t width_;
  std::ostringstream out_;
};

std::string fmt(double v) { return format_double(v); }

int max_iterations(const RunConfig& c, int system_size) {
  return c.solver.maxit > 0 ? std::min(c.solver.maxit, system_size) : system_size;
}

SolveReport solve(const RunConfig& c, const BlockSystem& sys) {
  if (c.solver.type == "lu") return lu_solve(sys);
  return gmres(sys, c.solver.tol, max_iterations(c, 2 * sys.block_size()));
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

// max_m |u(theta_m) - ref(theta_m)| / max_m |ref(theta_m)|
double relative_error(const std::vector<cplx>& u, const std::vector<cplx>& ref) {
  double e = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) e = std::max(e, std::abs(u[m] - ref[m]));
  const double scale = max_abs(ref);
  return scale > 0.0 ? e / scale : e;
}

std::vector<cplx> mie_far_field(const RunConfig& c, const std::vector<double>& angles) {
  const auto mie = oracle::mie_solve(c.problem.curve.parameters()[0], c.problem.k1, c.problem.k2, c.problem.nu,
                                     c.angle);
  std::vector<cplx> out;
  for (double t : angles) out.push_back(mie.far_field(t));
  return out;
}

// Uniform [0,1) from raw 64-bit draws, identical on every platform.
double unit(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

json positivity(const RunConfig& c) {
  const NodeGrid g = c.problem.grid();
  const DenseOp s = assemble_S(c.problem.curve, g, c.problem.kappa);
  const DenseOp n = assemble_N(c.problem.curve, g, c.problem.kappa);
  std::mt19937_64 gen(c.seed);
  double min_s = INFINITY, min_n = INFINITY;
  const int samples = 50, max_mode = g.size() / 4;
  for (int k = 0; k < samples; ++k) {
    // random coefficients on modes |m| <= N/4, which the grid resolves
    CVector phi = CVector::Zero(g.size());
    for (int m = -max_mode; m <= max_mode; ++m) {
      const double re = unit(gen) - 0.5;
      const cplx coef(re, unit(gen) - 0.5);
      for (int j = 0; j < g.size(); ++j) phi[j] += coef * std::exp(kI * (m * g.node(j)));
    }
    min_s = std::min(min_s, quadratic_form(s, phi, c.problem.curve).imag());
    min_n = std::min(min_n, quadratic_form(n, phi, c.problem.curve).imag());
  }
  return {{"seed", c.seed},
          {"samples", samples},
          {"max_mode", max_mode},
          {"min_im_S_kappa", min_s},
          {"min_im_N_kappa", min_n}};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("(root)", "configuration must be a JSON object");
  RunConfig c;
  TransmissionConfig& p = c.problem;
  p.curve = parse_curve(doc);
  p.k1 = number(doc, "k1", p.k1, "k1");
  p.k2 = number(doc, "k2", p.k2, "k2");
  p.nu = number(doc, "nu", p.nu, "nu");
  const cplx kd = TransmissionConfig::default_kappa(p.k1);
  const json& kappa = object(doc, "kappa", "kappa");
  p.kappa = cplx(number(kappa, "re", kd.real(), "kappa.re"), number(kappa, "im", kd.imag(), "kappa.im"));
  p.n = integer(doc, "N", p.n, "N");
  p.oversample = integer(doc, "oversample", p.oversample, "oversample");
  c.formulation = [&] {
    const std::string f = text(doc, "formulation", "gcsie", "formulation");
    try {
      return parse_formulation(f);
    } catch (const std::invalid_argument&) {
      throw ConfigError("formulation", "must be one of gcsie, gcsie-explicit, classical");
    }
  }();
  const json& solver = object(doc, "solver", "solver");
  c.solver.type = text(solver, "type", c.solver.type, "solver.type");
  c.solver.tol = number(solver, "tol", c.solver.tol, "solver.tol");
  c.solver.maxit = integer(solver, "maxit", c.solver.maxit, "solver.maxit");
  c.angle = number(doc, "angle", c.angle, "angle");
  c.far_field_angles = integer(doc, "far_field_angles", c.far_field_angles, "far_field_angles");
  if (doc.contains("diagnostics")) {
    if (!doc.at("diagnostics").is_boolean()) throw ConfigError("diagnostics", "must be a boolean");
    c.diagnostics = doc.at("diagnostics").get<bool>();
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed", "must be a non-negative integer");
    c.seed = doc.at("seed").get<std::uint64_t>();
  }
  const json& conv = object(doc, "convergence", "convergence");
  c.convergence_n = int_list(conv, "N_list", "convergence.N_list");
  c.reference_n = integer(conv, "reference_N", 0, "convergence.reference_N");
  c.compare_n = int_list(object(doc, "compare", "compare"), "N_list", "compare.N_list");
  const json& sym = object(doc, "symbols", "symbols");
  c.symbols_n_min = integer(sym, "n_min", c.symbols_n_min, "symbols.n_min");
  c.symbols_n_max = integer(sym, "n_max", c.symbols_n_max, "symbols.n_max");
  c.out_dir = text(doc, "out", c.out_dir, "out");
  if (c.convergence_n.empty()) c.convergence_n = {p.n};
  if (c.compare_n.empty()) c.compare_n = {p.n};
  if (c.reference_n == 0) c.reference_n = 2 * *std::max_element(c.convergence_n.begin(), c.convergence_n.end());
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

void validate(const RunConfig& c) {
  const TransmissionConfig& p = c.problem;
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be a positive finite number");
  };
  positive(p.k1, "k1");
  positive(p.k2, "k2");
  positive(p.nu, "nu");
  if (!(p.kappa.real() >= 0.0)) throw ConfigError("kappa.re", "must be >= 0");
  if (!(p.kappa.imag() > 0.0)) throw ConfigError("kappa.im", "must be > 0");
  check_n(p.n, "N");
  if (p.oversample < 1 || p.oversample > 8) throw ConfigError("oversample", "must lie in [1, 8]");
  if (c.solver.type != "gmres" && c.solver.type != "lu") throw ConfigError("solver.type", "must be gmres or lu");
  if (!(c.solver.tol > 0.0 && c.solver.tol < 1.0)) throw ConfigError("solver.tol", "must lie in (0, 1)");
  if (c.solver.maxit < 0) throw ConfigError("solver.maxit", "must be >= 0");
  if (!std::isfinite(c.angle)) throw ConfigError("angle", "must be finite");
  if (c.far_field_angles < 1) throw ConfigError("far_field_angles", "must be >= 1");
  for (std::size_t i = 0; i < c.convergence_n.size(); ++i) {
    check_n(c.convergence_n[i], "convergence.N_list[" + std::to_string(i) + "]");
    if (i > 0 && c.convergence_n[i] <= c.convergence_n[i - 1])
      throw ConfigError("convergence.N_list", "must be strictly ascending");
  }
  check_n(c.reference_n, "convergence.reference_N");
  for (std::size_t i = 0; i < c.compare_n.size(); ++i) check_n(c.compare_n[i], "compare.N_list[" + std::to_string(i) + "]");
  if (c.symbols_n_min < 0) throw ConfigError("symbols.n_min", "must be >= 0");
  if (c.symbols_n_max < c.symbols_n_min || c.symbols_n_max > 190)
    throw ConfigError("symbols.n_max", "must lie in [n_min, 190]");
  p.validate();
}

json to_json(const RunConfig& c) {
  const TransmissionConfig& p = c.problem;
  return {{"curve", curve_json(p.curve)},
          {"k1", p.k1},
          {"k2", p.k2},
          {"nu", p.nu},
          {"kappa", {{"re", p.kappa.real()}, {"im", p.kappa.imag()}}},
          {"delta1", p.delta1},
          {"delta2", p.delta2},
          {"N", p.n},
          {"oversample", p.oversample},
          {"formulation", to_string(c.formulation)},
          {"solver", {{"type", c.solver.type}, {"tol", c.solver.tol}, {"maxit", c.solver.maxit}}},
          {"angle", c.angle},
          {"far_field_angles", c.far_field_angles},
          {"diagnostics", c.diagnostics},
          {"seed", c.seed},
          {"convergence", {{"N_list", c.convergence_n}, {"reference_N", c.reference_n}}},
          {"compare", {{"N_list", c.compare_n}}},
          {"symbols", {{"n_min", c.symbols_n_min}, {"n_max", c.symbols_n_max}}},
          {"out", c.out_dir}};
}

json run_solve(const RunConfig& c) {
  validate(c);
  const fs::path dir = prepare_out(c);
  const IncidentWave inc{c.angle};
  const auto t0 = Clock::now();
  const BlockSystem sys = assemble_system(c.formulation, c.problem, inc);
  const double t_assembly = elapsed(t0);
  SolveReport rep = solve(c, sys);
  const std::vector<double> angles = uniform_angles(c.far_field_angles);
  const auto t1 = Clock::now();
  const FarField ff = far_field(c.formulation, rep.solution, c.problem, inc, angles);
  const double t_far = elapsed(t1);

  Csv csv({"theta", "re", "im", "abs"});
  for (std::size_t m = 0; m < angles.size(); ++m)
    csv.row({fmt(angles[m]), fmt(ff.values[m].real()), fmt(ff.values[m].imag()), fmt(std::abs(ff.values[m]))});
  write_text(dir / "farfield.csv", csv.str());

  json report{{"command", "solve"},
              {"config", to_json(c)},
              {"formulation", to_string(c.formulation)},
              {"status", rep.converged ? "converged" : "not_converged"},
              {"solver",
               {{"method", rep.method},
                {"iterations", rep.iterations},
                {"relative_residual", rep.relative_residual},
                {"residual_history", rep.residual_history}}},
              {"far_field",
               {{"angles", c.far_field_angles}, {"max_abs", max_abs(ff.values)}, {"convention", ff.convention}}}};
  if (c.problem.curve.kind() == Curve::Kind::Circle) {
    report["mie"] = {{"max_relative_error", relative_error(ff.values, mie_far_field(c, angles))},
                     {"error_definition", "max |u_inf - u_mie| / max |u_mie|"}};
  }
  if (c.diagnostics) {
    const CMatrix a = sys.matrix();
    report["diagnostics"] = {{"norm_minus_identity", norm2_estimate(a, 1)},
                             {"sigma_min", sigma_min_estimate(a)},
                             {"positivity", positivity(c)}};
  }
  write_json(dir / "report.json", report);
  write_json(dir / "timings.json",
             {{"assembly_s", t_assembly}, {"solve_s", rep.seconds}, {"far_field_s", t_far}});
  return report;
}

json run_convergence(const RunConfig& c) {
  validate(c);
  const fs::path dir = prepare_out(c);
  const IncidentWave inc{c.angle};
  const std::vector<double> angles = uniform_angles(c.far_field_angles);
  const bool circle = c.problem.curve.kind() == Curve::Kind::Circle;

  auto far = [&](int n) {
    TransmissionConfig p = c.problem;
    p.n = n;
    const SolveReport rep = lu_solve(assemble_system(c.formulation, p, inc));
    return far_field(c.formulation, rep.solution, p, inc, angles).values;
  };
  const std::vector<cplx> reference = circle ? mie_far_field(c, angles) : far(c.reference_n);

  Csv csv({"N", "reference", "far_field_error", "error_ratio", "composed_explicit_max_diff"});
  json rows = json::array();
  double prev = 0.0;
  for (std::size_t i = 0; i < c.convergence_n.size(); ++i) {
    const int n = c.convergence_n[i];
    const double err = relative_error(far(n), reference);
    TransmissionConfig p = c.problem;
    p.n = n;
    const double diff =
        (assemble_gcsie_composed(p, inc).matrix() - assemble_gcsie_explicit(p, inc).matrix()).cwiseAbs().maxCoeff();
    json row{{"N", n}, {"far_field_error", err}, {"composed_explicit_max_diff", diff}};
    std::string ratio;
    if (i > 0) {
      row["error_ratio"] = prev / err;
      ratio = fmt(prev / err);
    }
    const std::string ref = circle ? "mie" : "N=" + std::to_string(c.reference_n);
    row["reference"] = ref;
    csv.row({std::to_string(n), ref, fmt(err), ratio, fmt(diff)});
    rows.push_back(row);
    prev = err;
  }
  write_text(dir / "convergence.csv", csv.str());
  return {{"command", "convergence"}, {"config", to_json(c)}, {"rows", rows}};
}

json run_compare(const RunConfig& c) {
  validate(c);
  const fs::path dir = prepare_out(c);
  const IncidentWave inc{c.angle};
  Csv csv({"formulation", "N", "gmres_iterations", "residual_target", "converged", "final_relative_residual"});
  json rows = json::array();
  for (int n : c.compare_n) {
    TransmissionConfig p = c.problem;
    p.n = n;
    for (Formulation f : {Formulation::GcsieComposed, Formulation::Classical}) {
      const SolveReport rep = gmres(assemble_system(f, p, inc), c.solver.tol, max_iterations(c, 2 * n));
      csv.row({to_string(f), std::to_string(n), std::to_string(rep.iterations), fmt(c.solver.tol),
               rep.converged ? "true" : "false", fmt(rep.relative_residual)});
      rows.push_back({{"formulation", to_string(f)},
                      {"N", n},
                      {"gmres_iterations", rep.iterations},
                      {"residual_target", c.solver.tol},
                      {"converged", rep.converged},
                      {"final_relative_residual", rep.relative_residual}});
    }
  }
  write_text(dir / "compare.csv", csv.str());
  return {{"command", "compare"}, {"config", to_json(c)}, {"rows", rows}};
}

json run_symbols(const RunConfig& c) {
  validate(c);
  if (c.problem.curve.kind() != Curve::Kind::Circle)
    throw ConfigError("curve.kind", "the symbols command requires a circle");
  const fs::path dir = prepare_out(c);
  const TransmissionConfig& p = c.problem;
  const double radius = p.curve.parameters()[0];

  // quantity name, expected decay order
  const std::vector<std::pair<std::string, double>> quantities = {
      {"dtn1_diff", -1}, {"dtn2_diff", -1}, {"r11_diff", -2}, {"r12_diff", -3}, {"r21_diff", -1}, {"r22_diff", -2},
      {"s_diff", -3},    {"n_diff", -1},    {"d11", -2},      {"d12", -3},      {"d21", -1},      {"d22", -2}};
  std::vector<std::string> header = {"n", "status", "y1_re", "y1_im", "y2_re", "y2_im"};
  for (const auto& q : quantities) header.push_back(q.first);
  header.push_back("identity_residual");
  Csv csv(header);
  std::vector<std::vector<std::pair<int, double>>> samples(quantities.size());
  json rows = json::array();

  for (int n = c.symbols_n_min; n <= c.symbols_n_max; ++n) {
    using namespace oracle;
    try {
      const cplx y1 = circle_dtn_symbol(Side::Exterior, radius, p.k1, n);
      const cplx y2 = circle_dtn_symbol(Side::Interior, radius, p.k2, n);
      const cplx nk = circle_operator_symbol(OpTag::N, radius, p.kappa, n);
      const BlockSymbol exact = exact_admittance_symbols(radius, p.k1, p.k2, p.nu, n);
      const BlockSymbol reg = regularizer_symbols(radius, p.nu, p.kappa, n);
      const BlockSymbol d = gcsie_block_symbols(radius, p.k1, p.k2, p.nu, reg, n);
      const BlockSymbol di = gcsie_block_symbols(radius, p.k1, p.k2, p.nu, exact, n);
      const std::vector<double> values = {
          std::abs(2.0 * nk - y1),
          std::abs(-2.0 * nk - y2),
          std::abs(reg.b11 - exact.b11),
          std::abs(reg.b12 - exact.b12),
          std::abs(reg.b21 - exact.b21),
          std::abs(reg.b22 - exact.b22),
          std::abs(circle_operator_symbol(OpTag::S, radius, p.k1, n) - circle_operator_symbol(OpTag::S, radius, p.kappa, n)),
          std::abs(circle_operator_symbol(OpTag::N, radius, p.k1, n) - nk),
          std::abs(d.b11 - 1.0),
          std::abs(d.b12),
          std::abs(d.b21),
          std::abs(d.b22 - 1.0)};
      const double id_res = std::max({std::abs(di.b11 - 1.0), std::abs(di.b12), std::abs(di.b21), std::abs(di.b22 - 1.0)});
      std::vector<std::string> cells = {std::to_string(n), "ok", fmt(y1.real()), fmt(y1.imag()), fmt(y2.real()),
                                        fmt(y2.imag())};
      json row{{"n", n}, {"status", "ok"}, {"identity_residual", id_res}};
      for (std::size_t q = 0; q < quantities.size(); ++q) {
        cells.push_back(fmt(values[q]));
        row[quantities[q].first] = values[q];
        if (n >= 1 && values[q] > 0.0) samples[q].push_back({n, values[q]});
      }
      cells.push_back(fmt(id_res));
      csv.row(cells);
      rows.push_back(row);
    } catch (const OracleError& e) {
      std::vector<std::string> cells(header.size());
      cells[0] = std::to_string(n);
      cells[1] = "pole";
      csv.row(cells);
      rows.push_back({{"n", n}, {"status", "pole"}, {"reason", e.what()}});
    }
  }
  write_text(dir / "symbols.csv", csv.str());

  std::vector<std::string> slope_header, slope_cells;
  json slopes = json::object();
  for (std::size_t q = 0; q < quantities.size(); ++q) {
    const std::string name = "slope_" + quantities[q].first;
    slope_header.push_back(name);
    if (samples[q].size() >= 4) {
      const double s = oracle::smoothing_order(samples[q]);
      slope_cells.push_back(fmt(s));
      slopes[quantities[q].first] = {
          {"slope", s}, {"expected", quantities[q].second}, {"within_threshold", s <= quantities[q].second + 0.3}};
    } else {
      slope_cells.push_back("");
    }
  }
  Csv slope_csv(slope_header);
  slope_csv.row(slope_cells);
  write_text(dir / "slopes.csv", slope_csv.str());
  return {{"command", "symbols"}, {"config", to_json(c)}, {"rows", rows}, {"slopes", slopes}};
}

}  // namespace gcsie::experiments
