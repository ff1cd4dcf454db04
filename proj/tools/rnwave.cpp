// Command-line driver: run, sweep, convergence, nirenberg, report.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>

#include "rnwave/analysis.hpp"
#include "rnwave/experiments.hpp"

namespace fs = std::filesystem;
using namespace rnwave;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kBlowup = 2, kAcceptance = 3 };

struct Common {
  std::string config;
  std::string out;
  std::string probes;
  bool quiet = false;
};

bool g_quiet = false;

std::string short_number(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

void say(const std::string& s) {
  if (!g_quiet) std::printf("%s\n", s.c_str());
}

RunConfig load(const Common& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.probes.empty()) c.probes = parse_number_list(o.probes);
  validate(c);
  return c;
}

bool unexpected_blowup(const RunResult& r) {
  return r.evolution.blowup.flag && r.config.nonlinearity.kind != NonlinearityKind::NonNullHorizon;
}

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(2) << "\n";
}

/// Simulates every config (worker threads, one run each) and writes artifacts.
std::vector<std::unique_ptr<RunResult>> run_all(const std::vector<RunConfig>& cfgs) {
  std::vector<std::unique_ptr<RunResult>> out(cfgs.size());
  std::vector<std::string> errors(cfgs.size());
  std::atomic<std::size_t> next{0};
  std::mutex io;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cfgs.size();) {
      try {
        out[k] = std::make_unique<RunResult>(simulate(cfgs[k]));
        write_artifacts(*out[k], cfgs[k].output_dir);
        std::lock_guard lock(io);
        say("wrote " + cfgs[k].output_dir);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), cfgs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < cfgs.size(); ++k)
    if (!errors[k].empty()) throw ConfigError(cfgs[k].output_dir, errors[k]);
  return out;
}

/// Ladder of refinement levels 0, 1, 2 below the config's own grid.
std::vector<RunConfig> ladder_of(RunConfig c, const std::string& root, const std::string& tag) {
  if (c.points.empty()) {
    RunConfig base = suite_base();
    GridSpec g = grid_of(c);
    for (std::size_t k = 0; k < base.points.size(); ++k) {
      double f = base.points[k].u / grid_of(base).U;
      c.points.push_back({std::round(f * g.U / g.du) * g.du, std::round(base.points[k].v / g.dv) * g.dv});
    }
  }
  std::vector<RunConfig> out;
  for (int r = 0; r < 3; ++r) {
    RunConfig x = c;
    x.grid.refine = c.grid.refine + r;
    x.output_dir = (fs::path(root) / (tag + "_ref" + std::to_string(r))).string();
    out.push_back(x);
  }
  return out;
}

int cmd_run(const Common& o) {
  RunConfig c = load(o);
  auto r = simulate(c);
  write_artifacts(r, c.output_dir);
  say("wrote " + c.output_dir + (r.evolution.blowup.flag ? " (blow-up at v = " + format_double(r.evolution.blowup.v) + ")" : ""));
  return unexpected_blowup(r) ? kBlowup : kOk;
}

int cmd_sweep(const Common& o, const std::string& axis, const std::string& values_text) {
  RunConfig base = load(o);
  auto values = parse_number_list(values_text);
  if (values.empty()) throw ConfigError("--values", "empty list");
  if (axis != "epsilon" && axis != "resolution") throw ConfigError("--axis", "expected epsilon or resolution");
  const std::string root = o.out.empty() ? base.output_dir : o.out;
  double coarsest = *std::max_element(values.begin(), values.end());
  std::vector<RunConfig> cfgs;
  for (double v : values) {
    RunConfig c = base;
    if (axis == "epsilon") {
      c.data.epsilon = v;
    } else {
      double lv = std::log2(coarsest / v);
      if (std::abs(lv - std::round(lv)) < 1e-9) {
        c.grid.du = c.grid.dv = coarsest;
        c.grid.refine = static_cast<int>(std::lround(lv));
      } else {
        c.grid.du = c.grid.dv = v;
      }
    }
    c.output_dir = (fs::path(root) / ((axis == "epsilon" ? "eps_" : "res_") + short_number(v))).string();
    validate(c);
    cfgs.push_back(c);
  }
  auto runs = run_all(cfgs);

  json summary{{"axis", axis}, {"values", values}};
  json per = json::array();
  std::vector<double> eps, drift, a1;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = *runs[k];
    double d = r.horizon.size() ? conservation_drift(r.horizon).drift : NAN;
    const auto* s = r.slice_at(50.0);
    per.push_back({{"value", values[k]},
                   {"dir", cfgs[k].output_dir},
                   {"H_drift", d},
                   {"A1_tau50", s ? json(s->F_l2_inner) : json(nullptr)},
                   {"blowup", r.evolution.blowup.flag}});
    if (d > 0.0 && s && s->F_l2_inner > 0.0) {
      eps.push_back(values[k]);
      drift.push_back(d);
      a1.push_back(s->F_l2_inner);
    }
  }
  summary["runs"] = per;
  if (axis == "epsilon" && eps.size() >= 2) {
    summary["drift_slope"] = loglog_slope(eps, drift);
    summary["A1_slope"] = loglog_slope(eps, a1);
  }
  if (axis == "resolution" && runs.size() >= 3) {
    std::vector<std::size_t> idx(runs.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] > values[b]; });
    const auto& c = runs[idx[idx.size() - 3]]->horizon;
    const auto& m = runs[idx[idx.size() - 2]]->horizon;
    const auto& f = runs[idx.back()]->horizon;
    std::vector<double> sc, sm, sf;
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto km = static_cast<std::size_t>(std::lround(c.tau[k] / m.dv));
      auto kf = static_cast<std::size_t>(std::lround(c.tau[k] / f.dv));
      if (km >= m.size() || kf >= f.size()) break;
      sc.push_back(c.psi[k]);
      sm.push_back(m.psi[km]);
      sf.push_back(f.psi[kf]);
    }
    if (!sc.empty()) summary["convergence_order"] = convergence_order(sc, sm, sf);
  }
  write_json(fs::path(root) / "sweep_summary.json", summary);
  say("wrote " + (fs::path(root) / "sweep_summary.json").string());
  for (const auto& r : runs)
    if (unexpected_blowup(*r)) return kBlowup;
  return kOk;
}

int cmd_convergence(const Common& o) {
  RunConfig base = load(o);
  const std::string root = o.out.empty() ? base.output_dir : o.out;
  auto runs = run_all(ladder_of(base, root, "ladder"));
  double order = convergence_order(runs[0]->point_values, runs[1]->point_values, runs[2]->point_values);
  json j{{"du", {runs[0]->grid.du, runs[1]->grid.du, runs[2]->grid.du}},
         {"points", {runs[0]->point_values, runs[1]->point_values, runs[2]->point_values}},
         {"order", std::isfinite(order) ? json(order) : json("inf")}};
  write_json(fs::path(root) / "convergence.json", j);
  say("order " + format_double(order));
  for (const auto& r : runs)
    if (unexpected_blowup(*r)) return kBlowup;
  return kOk;
}

int cmd_nirenberg(const Common& o) {
  RunConfig base = load(o);
  const std::string root = o.out.empty() ? base.output_dir : o.out;
  base.nonlinearity.kind = NonlinearityKind::NullForm;
  base.nonlinearity.profile = AProfile::Constant;
  base.nonlinearity.a0 = 1.0;
  base.data.transform = DataTransform::None;
  auto nl_cfg = ladder_of(base, root, "nonlinear");
  std::vector<RunConfig> cfgs = nl_cfg;
  for (auto c : nl_cfg) {
    c.nonlinearity.kind = NonlinearityKind::Zero;
    c.data.transform = DataTransform::ExpNeg;
    c.output_dir = (fs::path(root) / ("linear_ref" + std::to_string(c.grid.refine - base.grid.refine))).string();
    cfgs.push_back(c);
  }
  auto runs = run_all(cfgs);
  std::vector<double> err;
  for (int k = 0; k < 3; ++k) err.push_back(nirenberg_compare(runs[k]->point_values, runs[k + 3]->point_values));
  double order = err[2] > 0.0 ? std::log2(err[1] / err[2]) : INFINITY;
  json j{{"du", {runs[0]->grid.du, runs[1]->grid.du, runs[2]->grid.du}},
         {"max_error", err},
         {"order", std::isfinite(order) ? json(order) : json("inf")}};
  write_json(fs::path(root) / "nirenberg.json", j);
  say("max error " + format_double(err[2]) + ", order " + format_double(order));
  return kOk;
}

int cmd_report(const std::string& dir, const std::string& out, bool strict) {
  if (!fs::is_directory(dir)) throw ConfigError(dir, "not a directory");
  std::vector<std::unique_ptr<RunResult>> store;
  RunSet runs;
  std::vector<fs::path> found;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() == "run_meta.json") found.push_back(e.path().parent_path());
  std::sort(found.begin(), found.end());
  for (const auto& p : found) {
    store.push_back(std::make_unique<RunResult>(load_artifacts(p.string())));
    runs.push_back(store.back().get());
  }
  auto results = evaluate_all(runs);
  fs::path target = out.empty() ? fs::path(dir) / "report.json" : fs::path(out);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream(target) << report_json(results);
  bool failed = false;
  for (const auto& r : results) {
    say("C" + std::to_string(r.id) + " " + to_string(r.status) + " " + r.name + (r.detail.empty() ? "" : ": " + r.detail));
    failed |= r.status == Status::Fail;
  }
  say("wrote " + target.string() + " from " + std::to_string(runs.size()) + " runs");
  return strict && failed ? kAcceptance : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic evolution of spherically symmetric semilinear waves on Reissner-Nordstrom"};
  app.require_subcommand(1);
  Common o;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "configuration file");
    s->add_option("--out", o.out, "output directory");
    s->add_option("--probes", o.probes, "comma-separated slice times");
    s->add_flag("--quiet", o.quiet, "suppress progress output");
  };
  auto* run = app.add_subcommand("run", "simulate one configuration");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "one run per value along an axis");
  add_common(sweep);
  std::string axis = "epsilon", values;
  sweep->add_option("--axis", axis, "epsilon or resolution");
  sweep->add_option("--values", values, "comma-separated values")->required();
  auto* conv = app.add_subcommand("convergence", "three-level refinement ladder at fixed points");
  add_common(conv);
  auto* nir = app.add_subcommand("nirenberg", "null-form vs exp-transformed linear ladder");
  add_common(nir);
  auto* report = app.add_subcommand("report", "evaluate acceptance criteria on artifacts");
  std::string report_dir, report_out;
  bool strict = false;
  report->add_option("dir", report_dir, "artifact directory")->required();
  report->add_option("--out", report_out, "report path (default DIR/report.json)");
  report->add_flag("--strict", strict, "exit 3 when a criterion fails");
  report->add_flag("--quiet", o.quiet, "suppress output");

  CLI11_PARSE(app, argc, argv);
  g_quiet = o.quiet;
  try {
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o, axis, values);
    if (*conv) return cmd_convergence(o);
    if (*nir) return cmd_nirenberg(o);
    if (*report) return cmd_report(report_dir, report_out, strict);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const ArtifactError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
