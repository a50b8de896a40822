#pragma once

#include <charconv>
#include <string>

#include <json.hpp>

#include "rootsieve/sweep.hpp"

namespace rootsieve {

namespace detail {

inline std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// CSV rendering of a sweep table.  Suppressed cells are printed as the
/// paper-parity literal 0; the trailing boolean column records whether
/// the depth-1 value was suppressed.
inline std::string to_csv(const SweepTable& table) {
  std::string out = "i,x";
  for (int r = 1; r <= table.depths; ++r)
    out += ",depth" + std::to_string(r);
  out += ",suppressed\n";
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += detail::shortest(table.x[i]);
    for (int r = 0; r < table.depths; ++r) {
      out += ',';
      out += table.values[i][r] ? detail::shortest(*table.values[i][r]) : "0";
    }
    out += table.values[i][0] ? ",false\n" : ",true\n";
  }
  return out;
}

inline void to_json(nlohmann::json& j, const PredicateRun& run) {
  j = {{"lo", run.lo},
       {"hi", run.hi},
       {"indices", {run.first_index, run.last_index}},
       {"values", run.values}};
}

inline void from_json(const nlohmann::json& j, PredicateRun& run) {
  j.at("lo").get_to(run.lo);
  j.at("hi").get_to(run.hi);
  run.first_index = j.at("indices").at(0).get<int>();
  run.last_index = j.at("indices").at(1).get<int>();
  j.at("values").get_to(run.values);
}

inline void to_json(nlohmann::json& j, const RootReport& report) {
  j = {{"root", report.root},
       {"residual", report.residual},
       {"depth", report.depth},
       {"invariant", report.invariant},
       {"possibly_multiple", report.possibly_multiple},
       {"run", report.run}};
  if (!report.note.empty()) j["note"] = report.note;
}

inline void from_json(const nlohmann::json& j, RootReport& report) {
  j.at("root").get_to(report.root);
  j.at("residual").get_to(report.residual);
  j.at("depth").get_to(report.depth);
  j.at("invariant").get_to(report.invariant);
  j.at("possibly_multiple").get_to(report.possibly_multiple);
  j.at("run").get_to(report.run);
  report.note = j.value("note", "");
}

inline nlohmann::json result_to_json(const SeparateResult& result,
                                     nlohmann::json config = {}) {
  nlohmann::json j;
  j["config"] = std::move(config);
  j["grid"] = {{"lo", result.grid.interval.lo},
               {"hi", result.grid.interval.hi},
               {"n", result.grid.n}};
  j["runs"] = result.runs;
  j["reports"] = result.reports;
  return j;
}

inline SeparateResult result_from_json(const nlohmann::json& j) {
  const auto& g = j.at("grid");
  SeparateResult result{
      GridSpec(Interval(g.at("lo").get<double>(), g.at("hi").get<double>()),
               g.at("n").get<int>()),
      {},
      {}};
  j.at("runs").get_to(result.runs);
  j.at("reports").get_to(result.reports);
  return result;
}

/// JSON rendering of a sweep table (depth columns plus suppression
/// flags), used by the CLI table subcommand.
inline nlohmann::json table_to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    nlohmann::json row;
    row["i"] = i;
    row["x"] = table.x[i];
    nlohmann::json depths = nlohmann::json::array();
    for (int r = 0; r < table.depths; ++r)
      depths.push_back(table.values[i][r] ? *table.values[i][r] : 0.0);
    row["depths"] = std::move(depths);
    row["suppressed"] = !table.values[i][0].has_value();
    rows.push_back(std::move(row));
  }
  nlohmann::json j;
  j["grid"] = {{"lo", table.grid.interval.lo},
               {"hi", table.grid.interval.hi},
               {"n", table.grid.n}};
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace rootsieve
