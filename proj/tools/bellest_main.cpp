#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellest/bell.hpp"
#include "bellest/estimation.hpp"
#include "bellest/interplay.hpp"
#include "bellest/io.hpp"
#include "bellest/random.hpp"
#include "bellest/scenarios.hpp"

namespace {

using nlohmann::json;
using namespace bellest;

constexpr const char* kVersion = "0.1.0";

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

MeasureKind parse_measure(const std::string& name) {
  if (name == "concurrence") return MeasureKind::Concurrence;
  if (name == "eof") return MeasureKind::EntanglementOfFormation;
  if (name == "distillable") return MeasureKind::OneWayDistillable;
  throw ParamOutOfRangeError("unknown measure: " + name);
}

AssumptionLevel parse_level(const std::string& name) {
  if (name == "qubit") return AssumptionLevel::QubitPair;
  if (name == "di") return AssumptionLevel::DeviceIndependent;
  throw ParamOutOfRangeError("unknown assumption level: " + name);
}

// Emit an envelope as JSON or as CSV (rows only, 12 significant digits).
void emit(const json& envelope, const std::string& format) {
  if (format == "json") {
    std::cout << envelope.dump(2) << "\n";
    return;
  }
  const auto& rows = envelope["rows"];
  if (rows.empty()) return;
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  for (std::size_t i = 0; i < keys.size(); ++i)
    std::cout << (i ? "," : "") << keys[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) std::cout << ",";
      const auto& v = row.contains(keys[i]) ? row[keys[i]] : json();
      if (v.is_number())
        std::cout << fmt12(v.get<double>());
      else if (v.is_string())
        std::cout << v.get<std::string>();
      else if (!v.is_null())
        std::cout << v.dump();
    }
    std::cout << "\n";
  }
}

json meta(std::uint64_t seed) {
  return {{"seed", seed},
          {"version", kVersion},
          {"tolerances", {{"constraint_residual", 1e-7}, {"locc_invariance", 1e-9}}}};
}

int cmd_estimate(double alpha, double bell_value_in, const std::string& state_file,
                 const std::string& measure_name, const std::string& level_name,
                 const std::string& format) {
  const MeasureKind measure = parse_measure(measure_name);
  const AssumptionLevel level = parse_level(level_name);
  double s = bell_value_in;
  if (!state_file.empty()) s = max_violation_general(load_state_file(state_file), alpha);

  BoundResult res;
  switch (measure) {
    case MeasureKind::Concurrence:
      res = concurrence_bound(s, alpha, level);
      break;
    case MeasureKind::EntanglementOfFormation:
      res = eof_bound(s, alpha, level);
      break;
    case MeasureKind::OneWayDistillable:
      res = distillable_bound(s, alpha);
      break;
  }

  json row = {{"measure", measure_name}, {"level", level_name}, {"alpha", alpha},
              {"S", s},                  {"value", res.value}};
  if (res.extremal_theta) row["extremal_theta"] = *res.extremal_theta;
  if (res.extremal_spectrum) {
    row["extremal_spectrum"] = {(*res.extremal_spectrum)[0], (*res.extremal_spectrum)[1],
                                (*res.extremal_spectrum)[2], (*res.extremal_spectrum)[3]};
  }
  json envelope = {{"command", "estimate"},
                   {"inputs", {{"alpha", alpha}, {"bell_value", s}, {"measure", measure_name},
                               {"level", level_name}}},
                   {"rows", json::array({row})},
                   {"meta", meta(0)}};
  emit(envelope, format);
  return 0;
}

int cmd_scan_alpha(const std::string& state_name, double param, std::vector<double> thetas,
                   double amin, double amax, double astep, const std::string& level_name,
                   const std::string& format) {
  if (thetas.size() != 3) throw ParamOutOfRangeError("--thetas needs three angles");
  if (!(amin >= 1.0 && amax >= amin && astep > 0.0))
    throw ParamOutOfRangeError("invalid alpha grid");
  const AssumptionLevel level = parse_level(level_name);
  const ScenarioState spec = state_name == "pure"     ? ScenarioState::pure(param)
                             : state_name == "werner" ? ScenarioState::werner(param)
                                                      : throw ParamOutOfRangeError(
                                                            "unknown state kind: " + state_name);

  std::vector<double> grid;
  for (double a = amin; a <= amax + 1e-12; a += astep) grid.push_back(a);
  const std::vector<MeasureKind> measures = {MeasureKind::Concurrence,
                                             MeasureKind::EntanglementOfFormation,
                                             MeasureKind::OneWayDistillable};
  const auto scan = alpha_scan(spec, Thetas{thetas[0], thetas[1], thetas[2]}, grid, measures, level);

  json rows = json::array();
  for (std::size_t i = 0; i < scan.alpha_grid.size(); ++i) {
    rows.push_back({{"alpha", scan.alpha_grid[i]},
                    {"S", scan.s_values[i]},
                    {"concurrence", scan.bounds[0][i]},
                    {"eof", scan.bounds[1][i]},
                    {"distillable", scan.bounds[2][i]}});
  }
  json envelope = {{"command", "scan-alpha"},
                   {"inputs", {{"state", state_name}, {"param", param}, {"thetas", thetas},
                               {"alpha_min", amin}, {"alpha_max", amax}, {"alpha_step", astep},
                               {"level", level_name}}},
                   {"rows", rows},
                   {"summary", {{"best_alpha_concurrence", scan.best_alpha[0]},
                                {"best_alpha_eof", scan.best_alpha[1]},
                                {"best_alpha_distillable", scan.best_alpha[2]}}},
                   {"meta", meta(0)}};
  emit(envelope, format);
  return 0;
}

int cmd_interplay(double alpha, const std::vector<double>& s_list, int theta_steps,
                  const std::string& measure_name, int restarts, std::uint64_t seed,
                  const std::string& format) {
  const MeasureKind measure = parse_measure(measure_name);
  const auto rows_data = interplay_scan(s_list, alpha, theta_steps, measure, restarts, seed);

  json rows = json::array();
  json summary = json::array();
  for (const auto& row : rows_data) {
    for (const auto& pt : row.points)
      rows.push_back({{"S", pt.S}, {"theta", pt.theta}, {"e_min", pt.e_min}});
    summary.push_back(
        {{"S", row.S}, {"best_theta", row.best_theta}, {"best_e", row.best_e}});
  }
  json envelope = {{"command", "interplay"},
                   {"inputs", {{"alpha", alpha}, {"s_list", s_list},
                               {"theta_steps", theta_steps}, {"measure", measure_name},
                               {"restarts", restarts}}},
                   {"rows", rows},
                   {"summary", summary},
                   {"meta", meta(seed)}};
  emit(envelope, format);
  return 0;
}

int cmd_locc_check(int trials, std::uint64_t seed, const std::string& state_file,
                   const std::string& format) {
  Rng rng(seed);
  json rows = json::array();
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const DensityMatrix rho =
        !state_file.empty() ? load_state_file(state_file) : random_density_matrix(rng);
    const auto locc = locc_to_bell_diagonal(rho);
    const DensityMatrix reduced{locc.transcript.reduced};

    double max_ds = 0.0;
    for (int q = 0; q < 20; ++q) {
      const double alpha = rng.uniform(1.0, 2.5);
      const MeasurementQuad quad{rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI),
                                 rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI)};
      const double before = bell_value(rho, BellScenario(alpha, quad));
      const double after =
          bell_value(reduced, BellScenario(alpha, transport_quad(quad, locc.transcript)));
      max_ds = std::max(max_ds, std::abs(before - after));
    }
    worst = std::max(worst, max_ds);
    rows.push_back({{"trial", trial},
                    {"rotation_a", locc.transcript.rotation_a},
                    {"rotation_b", locc.transcript.rotation_b},
                    {"max_delta_s", max_ds}});
  }
  json envelope = {{"command", "locc-check"},
                   {"inputs", {{"trials", trials}, {"state_file", state_file}}},
                   {"rows", rows},
                   {"summary", {{"worst_delta_s", worst}}},
                   {"meta", meta(seed)}};
  emit(envelope, format);
  return worst > 1e-9 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-CHSH entanglement estimation toolkit"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // estimate
  auto* est = app.add_subcommand("estimate", "Entanglement bound from a Bell value");
  double e_alpha = 1.0, e_s = 0.0;
  std::string e_state, e_measure = "concurrence", e_level = "di";
  est->add_option("--alpha", e_alpha, "Tilt parameter")->required();
  auto* sopt = est->add_option("--bell-value", e_s, "Observed Bell value S");
  est->add_option("--state-file", e_state, "JSON state file (S from max violation)")
      ->excludes(sopt);
  est->add_option("--measure", e_measure)->check(CLI::IsMember({"concurrence", "eof", "distillable"}));
  est->add_option("--level", e_level)->check(CLI::IsMember({"qubit", "di"}));

  // scan-alpha
  auto* scan = app.add_subcommand("scan-alpha", "Bound vs alpha for a scenario state");
  std::string sc_state;
  double sc_param = 0.0, sc_amin = 1.0, sc_amax = 3.0, sc_astep = 0.005;
  std::vector<double> sc_thetas;
  std::string sc_level = "di";
  scan->add_option("--state", sc_state)->required()->check(CLI::IsMember({"pure", "werner"}));
  scan->add_option("--param", sc_param, "delta (pure) or p (werner)")->required();
  scan->add_option("--thetas", sc_thetas, "theta1 theta2 theta3")->expected(3)->required();
  scan->add_option("--alpha-min", sc_amin);
  scan->add_option("--alpha-max", sc_amax);
  scan->add_option("--alpha-step", sc_astep);
  scan->add_option("--level", sc_level)->check(CLI::IsMember({"qubit", "di"}));

  // interplay
  auto* inter = app.add_subcommand("interplay", "Minimum entanglement vs incompatibility");
  double i_alpha = 1.0;
  std::vector<double> i_slist;
  int i_steps = 20, i_restarts = 8;
  std::uint64_t i_seed = 0;
  std::string i_measure = "concurrence";
  inter->add_option("--alpha", i_alpha)->required();
  inter->add_option("--s-list", i_slist, "Bell values")->required();
  inter->add_option("--theta-steps", i_steps);
  inter->add_option("--measure", i_measure)
      ->check(CLI::IsMember({"concurrence", "eof", "distillable"}));
  inter->add_option("--restarts", i_restarts);
  inter->add_option("--seed", i_seed);

  // locc-check
  auto* locc = app.add_subcommand("locc-check", "Verify Bell-value invariance of the reduction");
  int l_trials = 100;
  std::uint64_t l_seed = 0;
  std::string l_state;
  locc->add_option("--trials", l_trials);
  locc->add_option("--seed", l_seed);
  locc->add_option("--state-file", l_state, "Check one fixed state instead of random ones");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) {
      if (e_state.empty() && sopt->count() == 0)
        throw ParamOutOfRangeError("provide --bell-value or --state-file");
      return cmd_estimate(e_alpha, e_s, e_state, e_measure, e_level, format);
    }
    if (scan->parsed())
      return cmd_scan_alpha(sc_state, sc_param, sc_thetas, sc_amin, sc_amax, sc_astep, sc_level,
                            format);
    if (inter->parsed())
      return cmd_interplay(i_alpha, i_slist, i_steps, i_measure, i_restarts, i_seed, format);
    if (locc->parsed()) return cmd_locc_check(l_trials, l_seed, l_state, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
