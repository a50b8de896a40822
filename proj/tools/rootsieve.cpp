#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rootsieve/rootsieve.hpp"

namespace {

using namespace rootsieve;

struct RunConfig {
  std::string fn;
  std::string map = "newton";
  std::string pred = "p0";
  double d = 0.0;
  bool has_d = false;
  double lo = 0.0;
  double hi = 0.0;
  int n = 1500;
  double tol = 1e-12;
  int rmax = 8;
  int depths = 3;
  std::string format = "table";
  std::string out;
};

MapKind map_kind(const std::string& s) {
  if (s == "newton") return MapKind::Newton;
  if (s == "halley") return MapKind::Halley;
  throw CLI::ValidationError("--map", "must be newton or halley");
}

PredicateMode pred_mode(const std::string& s) {
  if (s == "p0") return PredicateMode::P0;
  if (s == "p1") return PredicateMode::P1;
  if (s == "both") return PredicateMode::Both;
  throw CLI::ValidationError("--pred", "must be p0, p1 or both");
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
  f << text;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool with_depths) {
  cmd->add_option("--fn", cfg.fn, "function spec (pruitt:k, oscillating, poly:c0,c1,..., or an expression in x)")
      ->required();
  cmd->add_option("--map", cfg.map, "iteration map: newton|halley")->required();
  cmd->add_option("--pred", cfg.pred, "educating predicate: p0|p1|both")->required();
  auto* dopt = cmd->add_option("--d", cfg.d, "vertical displacement (required for p0/both)");
  cmd->add_option("--lo", cfg.lo, "sweep interval lower end")->required();
  cmd->add_option("--hi", cfg.hi, "sweep interval upper end")->required();
  cmd->add_option("--n", cfg.n, "grid subdivisions")->check(CLI::Range(2, 100000000));
  cmd->add_option("--tol", cfg.tol, "numerical-invariance tolerance");
  cmd->add_option("--rmax", cfg.rmax, "maximum composition depth")->check(CLI::PositiveNumber);
  if (with_depths)
    cmd->add_option("--depths", cfg.depths, "emit columns for depths 1..R")
        ->required()
        ->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "csv|json|table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  cmd->add_option("--out", cfg.out, "output file (default stdout)");
  cmd->callback([&cfg, dopt] { cfg.has_d = dopt->count() > 0; });
}

struct Pipeline {
  FunctionModel model;
  PredicateConfig cfg;
  GridSpec grid;
};

Pipeline build_pipeline(const RunConfig& rc) {
  const PredicateMode mode = pred_mode(rc.pred);
  if ((mode == PredicateMode::P0 || mode == PredicateMode::Both) && !rc.has_d)
    throw CLI::ValidationError("--d", "predicate p0 requires --d");
  if (!(rc.lo < rc.hi))
    throw CLI::ValidationError("--lo/--hi", "need lo < hi");
  const Interval sweep_interval(rc.lo, rc.hi);
  FunctionModel model = FunctionModel::from_spec(rc.fn, sweep_interval);
  // Predicates test membership in the map's full domain, which may
  // extend beyond the swept subinterval.
  const Interval domain = hull(model.domain(), sweep_interval);
  PredicateConfig cfg(domain, mode, rc.has_d ? rc.d : 0.0);
  return Pipeline{std::move(model), cfg, GridSpec(sweep_interval, rc.n)};
}

nlohmann::json config_json(const RunConfig& rc) {
  nlohmann::json j = {{"fn", rc.fn},   {"map", rc.map}, {"pred", rc.pred},
                      {"lo", rc.lo},   {"hi", rc.hi},   {"n", rc.n},
                      {"tol", rc.tol}, {"rmax", rc.rmax}};
  if (rc.has_d) j["d"] = rc.d;
  return j;
}

int run_separate(const RunConfig& rc) {
  Pipeline p = build_pipeline(rc);
  const SeparateResult result =
      separate(p.model, map_kind(rc.map), p.cfg, p.grid, rc.tol, rc.rmax);

  std::string text;
  if (rc.format == "json") {
    text = result_to_json(result, config_json(rc)).dump(2) + "\n";
  } else if (rc.format == "csv") {
    text = "root,residual,depth,invariant\n";
    for (const auto& r : result.reports) {
      text += detail::shortest(r.root) + "," + detail::shortest(r.residual) +
              "," + std::to_string(r.depth) + "," +
              (r.invariant ? "true" : "false") + "\n";
    }
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-12s %-6s %s\n", "root",
                  "residual", "depth", "invariant");
    text = line;
    for (const auto& r : result.reports) {
      std::snprintf(line, sizeof line, "%-22.10g %-12.3g %-6d %s%s\n", r.root,
                    r.residual, r.depth, r.invariant ? "yes" : "no",
                    r.possibly_multiple ? "  (possibly multiple)" : "");
      text += line;
    }
  }
  write_output(rc, text);
  return result.reports.empty() ? 2 : 0;
}

int run_table(const RunConfig& rc) {
  Pipeline p = build_pipeline(rc);
  const EducatedMap em{IterationMap::make(map_kind(rc.map), p.model), p.cfg, 1};
  const SweepTable table = sweep_grid(em, p.grid, rc.depths);

  std::string text;
  if (rc.format == "json") {
    nlohmann::json j = table_to_json(table);
    j["config"] = config_json(rc);
    text = j.dump(2) + "\n";
  } else if (rc.format == "csv") {
    text = to_csv(table);
  } else {
    char line[256];
    for (std::size_t i = 0; i < table.x.size(); ++i) {
      std::snprintf(line, sizeof line, "%.10g", table.x[i]);
      text += line;
      for (int r = 0; r < table.depths; ++r) {
        std::snprintf(line, sizeof line, ", %.10g",
                      table.values[i][r] ? *table.values[i][r] : 0.0);
        text += line;
      }
      text += '\n';
    }
  }
  write_output(rc, text);
  return 0;
}

int run_sieve(int k, bool full, const std::string& format, RunConfig& rc) {
  const auto primes = sieve_primes(k);
  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["k"] = k;
    j["primes"] = primes;
    if (full) {
      j["zeros"] = zero_set(k).points;
      nlohmann::json mult = nlohmann::json::array();
      for (const auto& [z, m] : classify_multiplicity(k).entries)
        mult.push_back({{"zero", z}, {"multiplicity", m}});
      j["multiplicities"] = std::move(mult);
    }
    text = j.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < primes.size(); ++i)
      text += (i ? " " : "") + std::to_string(primes[i]);
    text += '\n';
    if (full) {
      text += "zeros:";
      for (double z : zero_set(k).points)
        text += " " + std::to_string(static_cast<long long>(z));
      text += "\nmultiplicities:";
      for (const auto& [z, m] : classify_multiplicity(k).entries)
        text += " " + std::to_string(z) + ":" + std::to_string(m);
      text += '\n';
    }
  }
  write_output(rc, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rootsieve: global root separation via educated quasi-step maps"};
  app.require_subcommand(1);

  RunConfig rc;
  auto* sep = app.add_subcommand("separate", "sweep, isolate and refine roots");
  add_common_flags(sep, rc, false);

  RunConfig tc;
  auto* tab = app.add_subcommand("table", "emit the discretized educated-map table");
  add_common_flags(tab, tc, true);

  int sieve_k = 0;
  bool sieve_full = false;
  RunConfig sc;
  auto* sv = app.add_subcommand("sieve", "primes in (p_k, p_k^2] via the Pruitt step map");
  sv->add_option("--k", sieve_k, "Pruitt family index (1..10)")->required();
  sv->add_flag("--full", sieve_full, "also print the zero set and multiplicities");
  sv->add_option("--format", sc.format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));
  sv->add_option("--out", sc.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (sep->parsed()) return run_separate(rc);
    if (tab->parsed()) return run_table(tc);
    if (sv->parsed()) return run_sieve(sieve_k, sieve_full, sc.format, sc);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
