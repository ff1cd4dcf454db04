#include "rnwave/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace rnwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ArtifactError("cannot write " + p.string());
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ArtifactError("cannot read " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string csv_row(std::initializer_list<double> xs) {
  std::string s;
  bool first = true;
  for (double x : xs) {
    if (!first) s += ',';
    s += format_double(x);
    first = false;
  }
  return s + '\n';
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;

  const std::vector<double>& col(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ArtifactError("missing column " + name);
    return cols[it - header.begin()];
  }
};

Table read_csv(const fs::path& p) {
  std::istringstream in(read_file(p));
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw ArtifactError(p.string() + ": empty file");
  {
    std::stringstream ss(line);
    std::string h;
    while (std::getline(ss, h, ',')) t.header.push_back(h);
  }
  t.cols.assign(t.header.size(), {});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= t.header.size()) throw ArtifactError(p.string() + ": too many fields on line " + std::to_string(lineno));
      double x;
      try {
        auto v = parse_number_list(cell);
        if (v.size() != 1) throw std::invalid_argument("field");
        x = v[0];
      } catch (const std::exception&) {
        throw ArtifactError(p.string() + ": bad number on line " + std::to_string(lineno));
      }
      t.cols[k++].push_back(x);
    }
    if (k != t.header.size()) throw ArtifactError(p.string() + ": short line " + std::to_string(lineno));
  }
  return t;
}

void require_increasing(const std::vector<double>& x, const std::string& what) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw ArtifactError(what + " is not strictly increasing at row " + std::to_string(i + 1));
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double from_json(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

}  // namespace

const SliceDiagnostics* RunResult::slice_at(double tau) const {
  for (const auto& s : slices)
    if (std::abs(s.tau - tau) < 1e-9) return &s;
  return nullptr;
}

BootstrapNorms RunResult::bootstrap(double tau0, double tau1, double tau2) const {
  const SliceDiagnostics* s = slice_at(tau0);
  if (!s) throw std::invalid_argument("bootstrap: no slice at tau0");
  BootstrapNorms n;
  n.A1 = s->F_l2_inner;
  n.A2 = slab_sum(bulk.taus, bulk.a2, tau1, tau2);
  n.A3 = slab_sum(bulk.taus, bulk.a3, tau1, tau2);
  if (e0_eps2 > 0.0) {
    double alpha = config.diagnostics.alpha;
    n.A1_q = n.A1 * std::pow(1.0 + tau0, 2.0 - alpha) / e0_eps2;
    n.A2_q = n.A2 * std::pow(1.0 + tau1, 2.0 - alpha) / e0_eps2;
    n.A3_q = n.A3 * std::pow(1.0 + tau1, 2.0 - alpha) / e0_eps2;
  }
  return n;
}

RunResult simulate(const RunConfig& c, const SimulateOptions& opt) {
  validate(c);
  RunResult res;
  res.config = c;
  res.grid = grid_of(c);

  std::vector<double> slice_taus = c.probes;
  if (slice_taus.empty() || slice_taus.front() != 0.0) slice_taus.insert(slice_taus.begin(), 0.0);
  SliceCollector slices(slice_taus, c.diagnostics.R0);
  HorizonRecorder horizon(c.horizon);
  BulkAccumulator bulk(c.probes, c.diagnostics);
  GridSupTracker sups;
  PointRecorder points(c.points);
  std::vector<RowObserver*> obs{&slices, &horizon, &points};
  if (opt.bulk) obs.push_back(&bulk);
  if (opt.sups) obs.push_back(&sups);

  res.evolution = evolve(c.spacetime, res.grid, c.data, c.nonlinearity, obs, c.evolution);
  res.horizon = horizon.series();

  for (const auto& s : slices.slices()) {
    if (!s.inner_complete) continue;
    auto d = slice_diagnostics(s, c.diagnostics, c.nonlinearity, c.spacetime);
    if (s.tau == 0.0) {
      res.e0_eps2 = d.n_flux;
      double eps = c.data.epsilon;
      res.E0 = eps > 0.0 ? d.n_flux / (eps * eps) : 0.0;
    }
    if (std::find(c.probes.begin(), c.probes.end(), s.tau) != c.probes.end()) res.slices.push_back(d);
  }
  if (opt.bulk) {
    res.bulk.taus = bulk.taus();
    res.bulk.morawetz = bulk.morawetz_slabs();
    res.bulk.a2 = bulk.a2_slabs();
    res.bulk.a3 = bulk.a3_slabs();
  }
  if (opt.sups) res.sups = {sups.v, sups.sup_psi, sups.sup_Tpsi, sups.sup_Ypsi};
  res.point_values = points.values();
  if (c.nonlinearity.kind == NonlinearityKind::NonNullHorizon && res.horizon.size() > 0)
    res.blowup = make_blowup_report(res.horizon, c.nonlinearity.n, res.evolution.blowup);
  return res;
}

void write_artifacts(const RunResult& r, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path d(dir);
  write_file(d / "config.ini", serialize(r.config));

  {
    std::string s = "tau,psi_h,Tpsi_h,Ypsi_h,Y2psi_h,H,H_drift\n";
    const auto& h = r.horizon;
    for (std::size_t k = 0; k < h.size(); ++k)
      s += csv_row({h.tau[k], h.psi[k], h.T_psi[k], h.Y_psi[k], h.Y2_psi[k], h.H[k], h.H[k] - h.H[0]});
    write_file(d / "horizon.csv", s);
  }
  {
    std::string s =
        "tau,t_flux,n_flux,p_flux,rp_energy_p1,hardy_lhs,hardy_rhs,sup_psi,sup_Tpsi,sup_Ypsi,A1_norm\n";
    for (const auto& x : r.slices)
      s += csv_row({x.tau, x.t_flux, x.n_flux, x.p_flux, x.rp_energy, x.hardy_lhs, x.hardy_rhs, x.sup_psi,
                    x.sup_Tpsi, x.sup_Ypsi, x.F_l2_inner});
    write_file(d / "slices.csv", s);
  }
  if (!r.bulk.taus.empty()) {
    std::string s = "tau_hi,morawetz,A2,A3\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < r.bulk.morawetz.size(); ++k) {
      double hi = k < r.bulk.taus.size() ? r.bulk.taus[k] : inf;
      s += csv_row({hi, r.bulk.morawetz[k], r.bulk.a2[k], r.bulk.a3[k]});
    }
    write_file(d / "bulk.csv", s);
  }
  if (!r.sups.v.empty()) {
    std::string s = "v,sup_psi,sup_Tpsi,sup_Ypsi\n";
    for (std::size_t k = 0; k < r.sups.v.size(); ++k)
      s += csv_row({r.sups.v[k], r.sups.sup_psi[k], r.sups.sup_Tpsi[k], r.sups.sup_Ypsi[k]});
    write_file(d / "grid_sup.csv", s);
  }

  json m;
  m["grid"] = {{"U", r.grid.U}, {"V", r.grid.V}, {"du", r.grid.du}, {"dv", r.grid.dv},
               {"nu", r.grid.nu}, {"nv", r.grid.nv}, {"r_max", r.grid.r_max},
               {"gauge_sigma", r.grid.gauge.sigma}, {"gauge_scale", r.grid.gauge.scale}};
  m["r_plus"] = r_plus(r.config.spacetime);
  m["E0"] = num(r.E0);
  m["E0_eps2"] = num(r.e0_eps2);
  m["rows_emitted"] = r.evolution.rows_emitted;
  m["v_last"] = r.evolution.v_last;
  m["blowup_flag"] = r.evolution.blowup.flag;
  m["blowup_u"] = r.evolution.blowup.u;
  m["blowup_v"] = r.evolution.blowup.v;
  m["blowup_reason"] = r.evolution.blowup.reason;
  if (r.horizon.size()) {
    auto dr = conservation_drift(r.horizon, r.config.data.epsilon);
    m["H0"] = r.horizon.H[0];
    m["H_drift"] = dr.drift;
    m["H_drift_normalized"] = dr.drift_normalized;
  }
  json pts = json::array();
  for (std::size_t k = 0; k < r.config.points.size(); ++k)
    pts.push_back({{"u", r.config.points[k].u}, {"v", r.config.points[k].v}, {"psi", num(r.point_values[k])}});
  m["points"] = pts;
  if (r.blowup) {
    const auto& b = *r.blowup;
    m["blowup_report"] = {{"n", b.n},
                          {"eta0", b.eta0},
                          {"C_n", b.C_n},
                          {"tau_star", num(b.tau_star)},
                          {"tau_blow", num(b.tau_blow)},
                          {"blew_up", b.blew_up},
                          {"hypothesis_met", b.hypothesis_met},
                          {"lower_envelope_ok", b.lower_envelope_ok}};
  }
  write_file(d / "run_meta.json", m.dump(2) + "\n");
}

RunResult load_artifacts(const std::string& dir) {
  const fs::path d(dir);
  RunResult r;
  try {
    r.config = parse_run_config(read_file(d / "config.ini"));
  } catch (const ConfigError& e) {
    throw ArtifactError(dir + "/config.ini: " + e.what());
  }
  json m;
  try {
    m = json::parse(read_file(d / "run_meta.json"));
    const auto& g = m.at("grid");
    r.grid.U = g.at("U");
    r.grid.V = g.at("V");
    r.grid.du = g.at("du");
    r.grid.dv = g.at("dv");
    r.grid.nu = g.at("nu");
    r.grid.nv = g.at("nv");
    r.grid.r_max = g.at("r_max");
    r.grid.gauge = {g.at("gauge_sigma"), g.at("gauge_scale")};
    r.E0 = from_json(m.at("E0"));
    r.e0_eps2 = from_json(m.at("E0_eps2"));
    r.evolution.rows_emitted = m.at("rows_emitted");
    r.evolution.v_last = m.at("v_last");
    r.evolution.blowup.flag = m.at("blowup_flag");
    r.evolution.blowup.u = m.at("blowup_u");
    r.evolution.blowup.v = m.at("blowup_v");
    r.evolution.blowup.reason = m.at("blowup_reason");
    for (const auto& p : m.at("points")) r.point_values.push_back(from_json(p.at("psi")));
    if (m.contains("blowup_report")) {
      const auto& b = m["blowup_report"];
      BlowupReport br;
      br.n = b.at("n");
      br.eta0 = b.at("eta0");
      br.C_n = b.at("C_n");
      br.tau_star = b.at("tau_star").is_null() ? std::numeric_limits<double>::infinity() : b.at("tau_star").get<double>();
      br.tau_blow = b.at("tau_blow").is_null() ? std::numeric_limits<double>::infinity() : b.at("tau_blow").get<double>();
      br.blew_up = b.at("blew_up");
      br.hypothesis_met = b.at("hypothesis_met");
      br.lower_envelope_ok = b.at("lower_envelope_ok");
      r.blowup = br;
    }
  } catch (const json::exception& e) {
    throw ArtifactError(dir + "/run_meta.json: " + e.what());
  }

  Table h = read_csv(d / "horizon.csv");
  require_increasing(h.col("tau"), dir + "/horizon.csv tau");
  r.horizon.mass = r.config.spacetime.mass;
  r.horizon.dv = r.grid.dv;
  r.horizon.tau = h.col("tau");
  r.horizon.psi = h.col("psi_h");
  r.horizon.T_psi = h.col("Tpsi_h");
  r.horizon.Y_psi = h.col("Ypsi_h");
  r.horizon.Y2_psi = h.col("Y2psi_h");
  r.horizon.Y3_psi.assign(r.horizon.tau.size(), kNaN);
  r.horizon.H = h.col("H");

  Table s = read_csv(d / "slices.csv");
  require_increasing(s.col("tau"), dir + "/slices.csv tau");
  for (std::size_t k = 0; k < s.col("tau").size(); ++k) {
    SliceDiagnostics x;
    x.tau = s.col("tau")[k];
    x.t_flux = s.col("t_flux")[k];
    x.n_flux = s.col("n_flux")[k];
    x.p_flux = s.col("p_flux")[k];
    x.rp_energy = s.col("rp_energy_p1")[k];
    x.hardy_lhs = s.col("hardy_lhs")[k];
    x.hardy_rhs = s.col("hardy_rhs")[k];
    x.sup_psi = s.col("sup_psi")[k];
    x.sup_Tpsi = s.col("sup_Tpsi")[k];
    x.sup_Ypsi = s.col("sup_Ypsi")[k];
    x.F_l2_inner = s.col("A1_norm")[k];
    x.complete = true;
    r.slices.push_back(x);
  }
  if (fs::exists(d / "bulk.csv")) {
    Table b = read_csv(d / "bulk.csv");
    require_increasing(b.col("tau_hi"), dir + "/bulk.csv tau_hi");
    const auto& hi = b.col("tau_hi");
    r.bulk.taus.assign(hi.begin(), hi.end() - (hi.empty() ? 0 : 1));
    r.bulk.morawetz = b.col("morawetz");
    r.bulk.a2 = b.col("A2");
    r.bulk.a3 = b.col("A3");
  }
  if (fs::exists(d / "grid_sup.csv")) {
    Table g = read_csv(d / "grid_sup.csv");
    require_increasing(g.col("v"), dir + "/grid_sup.csv v");
    r.sups = {g.col("v"), g.col("sup_psi"), g.col("sup_Tpsi"), g.col("sup_Ypsi")};
  }
  return r;
}

}  // namespace rnwave
