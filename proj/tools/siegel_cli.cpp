// siegel_cli: experiments and single-point utilities.
//
//   siegel_cli density    [--genus G] [--samples N] [--seed S] [--t-schedule t1,t2,..] ...
//   siegel_cli net-check  ...
//   siegel_cli distortion ...            (genus 4)
//   siegel_cli bb-probe   ...
//   siegel_cli reduce        --point P
//   siegel_cli distance      --p P --q Q [--search-radius R]
//   siegel_cli period-matrix --family F
//
// P, Q, F are JSON text or a path to a JSON file. Exit codes: 0 ok, 2 bad
// input or configuration, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "siegel/errors.hpp"
#include "siegel/experiments.hpp"
#include "siegel/io.hpp"
#include "siegel/metric.hpp"
#include "siegel/reduction.hpp"

namespace {

using siegel::io::json;

struct ExperimentFlags {
  std::optional<std::string> config_path;
  std::optional<int> genus;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> t_schedule;
  std::optional<double> a_param;
  std::optional<int> search_radius;
  std::optional<double> tolerance;
  std::optional<std::string> output;
  bool hyperelliptic = false;
  std::string out_path;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--genus", f.genus, "genus (2..6)");
  cmd->add_option("--samples", f.samples, "number of samples");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--t-schedule", f.t_schedule, "decreasing plumbing parameters in (0, 0.1)")->delimiter(',');
  cmd->add_option("--a-param", f.a_param, "Weyl chamber parameter");
  cmd->add_option("--search-radius", f.search_radius, "word length for quotient distance search");
  cmd->add_option("--tolerance", f.tolerance, "boundary classifier tolerance");
  cmd->add_option("--output", f.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--hyperelliptic", f.hyperelliptic, "glue at 2-torsion points");
  cmd->add_option("--out", f.out_path, "write to FILE instead of stdout");
}

siegel::ExperimentConfig build_config(const ExperimentFlags& f, int default_genus) {
  siegel::ExperimentConfig cfg;
  cfg.genus = default_genus;
  if (f.config_path) {
    json j = siegel::io::read_file(*f.config_path);
    if (j.is_object() && !j.contains("genus")) j["genus"] = default_genus;
    cfg = siegel::ExperimentConfig::from_json(j);
  }
  if (f.genus) cfg.genus = *f.genus;
  if (f.samples) cfg.samples = *f.samples;
  if (f.seed) cfg.seed = *f.seed;
  if (f.t_schedule) cfg.t_schedule = *f.t_schedule;
  if (f.a_param) cfg.a_param = *f.a_param;
  if (f.search_radius) cfg.search_radius = *f.search_radius;
  if (f.tolerance) cfg.tolerance = *f.tolerance;
  if (f.output) cfg.output_format = *f.output == "json" ? siegel::OutputFormat::json : siegel::OutputFormat::csv;
  if (f.hyperelliptic) cfg.hyperelliptic = true;
  cfg.validate();
  return cfg;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw siegel::ConfigError("cannot write " + path);
  out << text;
}

json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return siegel::io::parse(arg);
  return siegel::io::read_file(arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on the Siegel upper half space"};
  app.require_subcommand(1);

  ExperimentFlags flags;
  std::map<std::string, std::function<siegel::Report(const siegel::ExperimentConfig&)>> probes{
      {"density", [](const auto& c) { return siegel::density_probe(c).report; }},
      {"net-check", [](const auto& c) { return siegel::net_check(c).report; }},
      {"distortion", [](const auto& c) { return siegel::distortion_probe(c).report; }},
      {"bb-probe", [](const auto& c) { return siegel::bb_probe(c).report; }},
  };
  std::map<std::string, CLI::App*> probe_cmds;
  probe_cmds["density"] = app.add_subcommand("density", "distance of plumbed chains to chamber targets");
  probe_cmds["net-check"] = app.add_subcommand("net-check", "chamber distance of reduced points across scales");
  probe_cmds["distortion"] = app.add_subcommand("distortion", "two gluing orders of four tori");
  probe_cmds["bb-probe"] = app.add_subcommand("bb-probe", "boundary classification of degenerating families");
  for (auto& [_, cmd] : probe_cmds) add_experiment_flags(cmd, flags);

  std::string point_arg, p_arg, q_arg, family_arg, out_path;
  double a_param = 0.5;
  std::optional<int> radius;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a point into the Siegel set");
  reduce_cmd->add_option("--point", point_arg, "SiegelPoint JSON or file")->required();
  reduce_cmd->add_option("--a-param", a_param, "Weyl chamber parameter");
  reduce_cmd->add_option("--out", out_path, "write to FILE instead of stdout");

  auto* distance_cmd = app.add_subcommand("distance", "invariant distance between two points");
  distance_cmd->add_option("--p", p_arg, "SiegelPoint JSON or file")->required();
  distance_cmd->add_option("--q", q_arg, "SiegelPoint JSON or file")->required();
  distance_cmd->add_option("--search-radius", radius, "also bound the quotient distance");
  distance_cmd->add_option("--out", out_path, "write to FILE instead of stdout");

  auto* period_cmd = app.add_subcommand("period-matrix", "first-order period matrix of a plumbed family");
  period_cmd->add_option("--family", family_arg, "family JSON or file")->required();
  period_cmd->add_option("--out", out_path, "write to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& [name, cmd] : probe_cmds) {
      if (!cmd->parsed()) continue;
      const auto cfg = build_config(flags, name == "distortion" ? 4 : 3);
      emit(probes.at(name)(cfg).render(cfg.output_format), flags.out_path);
      return 0;
    }
    if (reduce_cmd->parsed()) {
      const siegel::SiegelSetParams params{a_param, 1.0};
      params.validate();
      const auto result = siegel::reduce(siegel::io::siegel_point_from_json(load_json_arg(point_arg)), params);
      emit(siegel::io::to_json(result).dump(2) + "\n", out_path);
    } else if (distance_cmd->parsed()) {
      const auto p = siegel::io::siegel_point_from_json(load_json_arg(p_arg));
      const auto q = siegel::io::siegel_point_from_json(load_json_arg(q_arg));
      json j{{"distance", siegel::distance(p, q)}};
      if (radius) {
        if (*radius < 0) throw siegel::ConfigError("search radius must be non-negative");
        j["quotient_upper"] = siegel::quotient_distance_upper(p, q, *radius);
      }
      emit(j.dump(2) + "\n", out_path);
    } else if (period_cmd->parsed()) {
      const auto family = siegel::io::family_from_json(load_json_arg(family_arg));
      const auto z = std::visit(
          [](const auto& fam) {
            if constexpr (std::is_same_v<std::decay_t<decltype(fam)>, siegel::TorusChainFamily>)
              return siegel::chain_period_matrix(fam);
            else
              return siegel::nonseparating_period_matrix(fam);
          },
          family);
      emit(siegel::io::to_json(z).dump(2) + "\n", out_path);
    }
  } catch (const siegel::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const siegel::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
