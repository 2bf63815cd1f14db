// Command-line driver: solve | convergence | compare | symbols.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gcsie/experiments.hpp"

namespace ex = gcsie::experiments;
using ex::json;

namespace {

struct Overrides {
  std::string config;
  std::optional<double> k1, k2, nu, kappa_re, kappa_im, angle;
  std::optional<int> n;
  std::optional<std::string> formulation, out;
};

void add_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON configuration file")->required();
  cmd->add_option("--k1", o.k1, "exterior wavenumber");
  cmd->add_option("--k2", o.k2, "interior wavenumber");
  cmd->add_option("--nu", o.nu, "density ratio");
  cmd->add_option("--kappa-re", o.kappa_re, "real part of the regularization wavenumber");
  cmd->add_option("--kappa-im", o.kappa_im, "imaginary part of the regularization wavenumber");
  cmd->add_option("--N", o.n, "number of boundary nodes");
  cmd->add_option("--formulation", o.formulation, "gcsie | gcsie-explicit | classical");
  cmd->add_option("--angle", o.angle, "incidence angle in radians");
  cmd->add_option("--out", o.out, "output directory");
}

// Flags override file values before validation, so errors name the same fields.
ex::RunConfig resolve(const Overrides& o) {
  std::ifstream f(o.config);
  if (!f) throw ex::ConfigError("config", "cannot open '" + o.config + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ex::ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ex::ConfigError("(root)", "configuration must be a JSON object");
  if (o.k1) doc["k1"] = *o.k1;
  if (o.k2) doc["k2"] = *o.k2;
  if (o.nu) doc["nu"] = *o.nu;
  if (o.kappa_re) doc["kappa"]["re"] = *o.kappa_re;
  if (o.kappa_im) doc["kappa"]["im"] = *o.kappa_im;
  if (o.n) doc["N"] = *o.n;
  if (o.formulation) doc["formulation"] = *o.formulation;
  if (o.angle) doc["angle"] = *o.angle;
  if (o.out) doc["out"] = *o.out;
  return ex::parse_run_config(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz transmission solver: combined-source and classical integral equations"};
  app.require_subcommand(1);
  Overrides o;
  CLI::App* solve = app.add_subcommand("solve", "solve once, write report.json and farfield.csv");
  CLI::App* conv = app.add_subcommand("convergence", "far-field error against N, write convergence.csv");
  CLI::App* cmp = app.add_subcommand("compare", "GMRES iterations per formulation, write compare.csv");
  CLI::App* sym = app.add_subcommand("symbols", "circle symbols and smoothing slopes, write symbols.csv");
  for (CLI::App* c : {solve, conv, cmp, sym}) add_options(c, o);
  CLI11_PARSE(app, argc, argv);

  try {
    const ex::RunConfig cfg = resolve(o);
    json result;
    if (solve->parsed()) {
      result = ex::run_solve(cfg);
      const auto& s = result["solver"];
      std::printf("%s: %s, %d iterations, relative residual %s, max |u_inf| %s\n",
                  result["formulation"].get<std::string>().c_str(), result["status"].get<std::string>().c_str(),
                  s["iterations"].get<int>(), ex::format_double(s["relative_residual"].get<double>()).c_str(),
                  ex::format_double(result["far_field"]["max_abs"].get<double>()).c_str());
      if (result.contains("mie"))
        std::printf("max relative far-field error vs Mie series: %s\n",
                    ex::format_double(result["mie"]["max_relative_error"].get<double>()).c_str());
      return result["status"] == "converged" ? 0 : 3;
    }
    if (conv->parsed()) {
      result = ex::run_convergence(cfg);
      for (const auto& r : result["rows"])
        std::printf("N=%d error %s\n", r["N"].get<int>(), ex::format_double(r["far_field_error"].get<double>()).c_str());
    } else if (cmp->parsed()) {
      result = ex::run_compare(cfg);
      for (const auto& r : result["rows"])
        std::printf("%-10s N=%d iterations %d\n", r["formulation"].get<std::string>().c_str(), r["N"].get<int>(),
                    r["gmres_iterations"].get<int>());
    } else {
      result = ex::run_symbols(cfg);
      for (const auto& [name, s] : result["slopes"].items())
        std::printf("%-10s slope %s\n", name.c_str(), ex::format_double(s["slope"].get<double>()).c_str());
    }
    std::printf("outputs written to %s\n", cfg.out_dir.c_str());
    return 0;
  } catch (const ex::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
