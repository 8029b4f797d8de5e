// Command-line front end: one-shot fusion from JSON, the static fusion
// benchmark, the tracking simulation, the invariant suite, and SVG plots.
//
// Exit codes: 0 success, 1 verify-suite failure, 2 parse error,
// 3 infeasible problem, 4 solver failure.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "ellint/json_io.hpp"
#include "ellint/relaxations.hpp"
#include "ellint/sampling.hpp"
#include "ellint/simulate.hpp"
#include "ellint/svg.hpp"
#include "ellint/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ellint;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolver = 4;

struct RunConfig {
  std::string input;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string method = "all";
  std::string criterion = "logdet";
  int runs = 100;
  int steps = 50;
  double tol = 0.0;  // 0 = keep defaults
  int instances = 50;
  bool inject_fault = false;
};

SizeCriterion parse_criterion(const std::string& name) {
  if (name == "logdet") return SizeCriterion::LogDet;
  if (name == "trace") return SizeCriterion::Trace;
  throw InvalidArgument("unknown criterion: " + name);
}

std::vector<Method> selected_methods(const std::string& name) {
  if (name == "all")
    return {Method::FullSdp,          Method::SProcedure,
            Method::DecoupledSdp,     Method::InscribedInflate,
            Method::BoundingNoDelta,  Method::BoundingOptimal,
            Method::CovarianceIntersection, Method::RecursiveBounding};
  const auto m = method_from_name(name);
  if (!m) throw InvalidArgument("unknown method: " + name);
  return {*m};
}

void ensure_out_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};

int cmd_fuse(const RunConfig& cfg) {
  IntersectionSpec spec = spec_from_json(read_text_file(cfg.input));
  const SizeCriterion criterion = parse_criterion(cfg.criterion);
  ensure_out_dir(cfg);
  for (Method m : selected_methods(cfg.method)) {
    const MethodResult res = run_method(m, spec, criterion);
    write_text_file(out_path(cfg, "result_" + method_name(m) + ".json"),
                    result_to_json(res) + "\n");
  }
  return kExitOk;
}

int cmd_static_demo(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const std::vector<Method> methods = {
      Method::FullSdp, Method::DecoupledSdp, Method::InscribedInflate,
      Method::BoundingNoDelta, Method::RecursiveBounding};
  std::vector<double> sum_logdet(methods.size(), 0.0);
  std::vector<double> sum_seconds(methods.size(), 0.0);
  const int draws = cfg.runs;
  Rng rng = Rng(cfg.seed).split(0);

  std::string first_draw_svg;
  for (int d = 0; d < draws; ++d) {
    const double xi = rng.uniform(9.0, 10.0);
    const IntersectionSpec spec = static_case_spec(xi);
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      const MethodResult res =
          run_method(methods[k], spec, SizeCriterion::LogDet);
      sum_seconds[k] +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      sum_logdet[k] += res.objective;
      if (d == 0 && methods[k] == Method::DecoupledSdp) {
        std::vector<SvgEllipse> shapes;
        for (int i = 0; i < spec.size(); ++i)
          shapes.push_back(SvgEllipse{spec.member(i), kSeriesColors[i], false,
                                      "member " + std::to_string(i + 1)});
        shapes.push_back(
            SvgEllipse{res.ellipsoid, "#d62728", true, "decoupled fusion"});
        first_draw_svg = render_ellipses_svg(shapes);
      }
    }
  }

  std::ostringstream csv;
  csv << "method,mean_logdet,mean_wall_seconds\n";
  for (std::size_t k = 0; k < methods.size(); ++k)
    csv << method_name(methods[k]) << ','
        << format_number(sum_logdet[k] / draws) << ','
        << format_number(sum_seconds[k] / draws) << '\n';
  write_text_file(out_path(cfg, "table.csv"), csv.str());
  write_text_file(out_path(cfg, "intersection.svg"), first_draw_svg);
  std::cout << csv.str();
  return kExitOk;
}

int cmd_track(const RunConfig& cfg) {
  Scenario sc = cfg.input.empty() ? paper_scenario()
                                  : scenario_from_json(read_text_file(cfg.input));
  sc.steps = cfg.steps;
  sc.runs = cfg.runs;
  sc.seed = cfg.seed;
  ensure_out_dir(cfg);
  const SimulationResult sim = simulate(sc);

  std::ostringstream csv;
  csv << "step";
  for (std::size_t i = 0; i < sim.sensors.size(); ++i)
    csv << ",rmse_sensor" << i + 1;
  csv << ",rmse_fused_dec,rmse_fused_ci";
  for (std::size_t i = 0; i < sim.sensors.size(); ++i)
    csv << ",vol_sensor" << i + 1;
  csv << ",vol_fused_dec,vol_fused_ci\n";
  for (int k = 0; k < sc.steps; ++k) {
    csv << k + 1;
    for (const TrackMetrics& s : sim.sensors)
      csv << ',' << format_number(s.rmse[k]);
    csv << ',' << format_number(sim.fused.rmse[k]) << ','
        << format_number(sim.fused_ci.rmse[k]);
    for (const TrackMetrics& s : sim.sensors)
      csv << ',' << format_number(s.mean_volume[k]);
    csv << ',' << format_number(sim.fused.mean_volume[k]) << ','
        << format_number(sim.fused_ci.mean_volume[k]) << '\n';
  }
  write_text_file(out_path(cfg, "metrics.csv"), csv.str());

  std::vector<SvgSeries> rmse_series;
  for (std::size_t i = 0; i < sim.sensors.size(); ++i)
    rmse_series.push_back(SvgSeries{sim.sensors[i].rmse, kSeriesColors[i],
                                    "sensor " + std::to_string(i + 1)});
  rmse_series.push_back(SvgSeries{sim.fused.rmse, "#d62728", "fused decoupled"});
  rmse_series.push_back(SvgSeries{sim.fused_ci.rmse, "#8c564b", "fused CI"});
  write_text_file(out_path(cfg, "rmse.svg"),
                  render_line_chart_svg(rmse_series, "step", "RMSE"));

  std::vector<SvgSeries> vol_series;
  for (std::size_t i = 0; i < sim.sensors.size(); ++i)
    vol_series.push_back(SvgSeries{sim.sensors[i].mean_volume, kSeriesColors[i],
                                   "sensor " + std::to_string(i + 1)});
  vol_series.push_back(
      SvgSeries{sim.fused.mean_volume, "#d62728", "fused decoupled"});
  vol_series.push_back(SvgSeries{sim.fused_ci.mean_volume, "#8c564b", "fused CI"});
  write_text_file(out_path(cfg, "volume.svg"),
                  render_line_chart_svg(vol_series, "step", "logdet volume"));

  std::cout << "wrote " << out_path(cfg, "metrics.csv") << " ("
            << sim.fallback_events << " empty-intersection fallbacks, truth "
            << (sim.all_contained ? "contained" : "NOT contained") << ")\n";
  return sim.all_contained ? kExitOk : kExitVerifyFailure;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.instance_count = cfg.instances;
  if (cfg.tol > 0.0) opts.prop1_tol = cfg.tol;
  opts.inject_decoupled_center_fault = cfg.inject_fault;
  const std::vector<CheckResult> checks = run_invariant_suite(opts);
  bool all = true;
  std::size_t width = 0;
  for (const CheckResult& c : checks) width = std::max(width, c.name.size());
  for (const CheckResult& c : checks) {
    all = all && c.passed;
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name
              << std::string(width - c.name.size() + 2, ' ') << c.detail
              << '\n';
  }
  return all ? kExitOk : kExitVerifyFailure;
}

int cmd_plot(const RunConfig& cfg) {
  const IntersectionSpec spec = spec_from_json(read_text_file(cfg.input));
  ensure_out_dir(cfg);
  std::vector<SvgEllipse> shapes;
  for (int i = 0; i < spec.size(); ++i)
    shapes.push_back(SvgEllipse{spec.member(i),
                                kSeriesColors[i % 6], false,
                                "member " + std::to_string(i + 1)});
  if (cfg.method != "none") {
    const SizeCriterion criterion = parse_criterion(cfg.criterion);
    for (Method m : selected_methods(cfg.method)) {
      const MethodResult res = run_method(m, spec, criterion);
      shapes.push_back(
          SvgEllipse{res.ellipsoid, "#d62728", true, method_name(m)});
    }
  }
  write_text_file(out_path(cfg, "spec.svg"), render_ellipses_svg(shapes));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum outer ellipsoids of ellipsoid intersections"};
  app.require_subcommand(1);

  RunConfig cfg;
  const auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", cfg.input, "input JSON path");
    if (needs_input) in->required();
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--seed", cfg.seed, "root random seed");
    sub->add_option("--runs", cfg.runs, "Monte Carlo repetitions");
    sub->add_option("--steps", cfg.steps, "tracking horizon");
    sub->add_option("--method", cfg.method,
                    "sdp|sproc|decoupled|inscribed|bounding|bounding-opt|ci|"
                    "recursive|all");
    sub->add_option("--criterion", cfg.criterion, "logdet|trace");
    sub->add_option("--tol", cfg.tol, "tolerance override");
  };

  CLI::App* fuse = app.add_subcommand("fuse", "fuse the ellipsoids of a spec JSON");
  add_common(fuse, true);
  CLI::App* sdemo =
      app.add_subcommand("static-demo", "three-ellipsoid fusion benchmark");
  add_common(sdemo, false);
  CLI::App* track = app.add_subcommand("track", "tracking simulation");
  add_common(track, false);
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, false);
  verify->add_option("--instances", cfg.instances, "instance grid size");
  verify->add_flag("--inject-fault", cfg.inject_fault,
                   "perturb the decoupled center (harness self-test)");
  CLI::App* plot = app.add_subcommand("plot", "render a spec JSON as SVG");
  add_common(plot, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (fuse->parsed()) return cmd_fuse(cfg);
    if (sdemo->parsed()) return cmd_static_demo(cfg);
    if (track->parsed()) return cmd_track(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (plot->parsed()) return cmd_plot(cfg);
  } catch (const SolverInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const OptimizerFailed& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}
