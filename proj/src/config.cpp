#include "rnwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rnwave {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out;
}

std::string transform_name(DataTransform t) { return t == DataTransform::ExpNeg ? "exp_neg" : "none"; }

struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

#define RN_DOUBLE(KEY, MEMBER)                                                   \
  Field{KEY, [](const RunConfig& c) { return format_double(c.MEMBER); },         \
        [](RunConfig& c, const std::string& v) { c.MEMBER = to_double(KEY, v); }}
#define RN_INT(KEY, MEMBER)                                                      \
  Field{KEY, [](const RunConfig& c) { return std::to_string(c.MEMBER); },        \
        [](RunConfig& c, const std::string& v) { c.MEMBER = to_int(KEY, v); }}
#define RN_BOOL(KEY, MEMBER)                                                     \
  Field{KEY, [](const RunConfig& c) { return std::string(c.MEMBER ? "true" : "false"); }, \
        [](RunConfig& c, const std::string& v) { c.MEMBER = to_bool(KEY, v); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      RN_DOUBLE("spacetime.mass", spacetime.mass),
      RN_DOUBLE("spacetime.charge", spacetime.charge),
      RN_DOUBLE("grid.r_max", grid.r_max),
      RN_DOUBLE("grid.du", grid.du),
      RN_DOUBLE("grid.dv", grid.dv),
      RN_DOUBLE("grid.tau_end", grid.tau_end),
      RN_INT("grid.refine", grid.refine),
      Field{"grid.gauge.mode", [](const RunConfig& c) { return c.grid.gauge; },
            [](RunConfig& c, const std::string& v) {
              if (v != "auto" && v != "affine" && v != "graded")
                throw ConfigError("grid.gauge.mode", "expected auto, affine or graded");
              c.grid.gauge = v;
            }},
      RN_DOUBLE("grid.gauge.sigma", grid.gauge_sigma),
      RN_DOUBLE("grid.gauge.scale", grid.gauge_scale),
      RN_DOUBLE("data.epsilon", data.epsilon),
      RN_DOUBLE("data.center", data.center),
      RN_DOUBLE("data.width", data.width),
      RN_BOOL("data.horizon_positive", data.horizon_positive),
      RN_DOUBLE("data.positive_depth", data.positive_depth),
      RN_DOUBLE("data.offset", data.offset),
      Field{"data.transform", [](const RunConfig& c) { return transform_name(c.data.transform); },
            [](RunConfig& c, const std::string& v) {
              if (v == "none") c.data.transform = DataTransform::None;
              else if (v == "exp_neg") c.data.transform = DataTransform::ExpNeg;
              else throw ConfigError("data.transform", "expected none or exp_neg");
            }},
      Field{"nonlinearity.kind", [](const RunConfig& c) { return to_string(c.nonlinearity.kind); },
            [](RunConfig& c, const std::string& v) {
              try {
                c.nonlinearity.kind = parse_kind(v);
              } catch (const std::exception& e) {
                throw ConfigError("nonlinearity.kind", e.what());
              }
            }},
      Field{"nonlinearity.profile", [](const RunConfig& c) { return to_string(c.nonlinearity.profile); },
            [](RunConfig& c, const std::string& v) {
              try {
                c.nonlinearity.profile = parse_profile(v);
              } catch (const std::exception& e) {
                throw ConfigError("nonlinearity.profile", e.what());
              }
            }},
      RN_DOUBLE("nonlinearity.a0", nonlinearity.a0),
      RN_INT("nonlinearity.l", nonlinearity.l),
      RN_INT("nonlinearity.n", nonlinearity.n),
      RN_DOUBLE("nonlinearity.cutoff_width", nonlinearity.cutoff_width),
      RN_DOUBLE("diagnostics.eta", diagnostics.eta),
      RN_DOUBLE("diagnostics.p", diagnostics.p),
      RN_DOUBLE("diagnostics.alpha", diagnostics.alpha),
      RN_DOUBLE("diagnostics.R0", diagnostics.R0),
      RN_DOUBLE("diagnostics.pflux.r0", diagnostics.p_r0),
      RN_DOUBLE("diagnostics.pflux.r1", diagnostics.p_r1),
      RN_INT("evolution.picard", evolution.picard),
      RN_DOUBLE("evolution.psi_max", evolution.psi_max),
      RN_DOUBLE("evolution.horizon_y_max", evolution.horizon_y_max),
      RN_DOUBLE("evolution.radial_floor", evolution.radial_floor),
      Field{"horizon.method",
            [](const RunConfig& c) {
              return std::string(c.horizon.method == TransverseMethod::Chain ? "chain" : "lagrange");
            },
            [](RunConfig& c, const std::string& v) {
              if (v == "lagrange") c.horizon.method = TransverseMethod::Lagrange;
              else if (v == "chain") c.horizon.method = TransverseMethod::Chain;
              else throw ConfigError("horizon.method", "expected lagrange or chain");
            }},
      RN_INT("horizon.npts", horizon.npts),
      RN_DOUBLE("horizon.floor_y1", horizon.floors[0]),
      RN_DOUBLE("horizon.floor_y2", horizon.floors[1]),
      RN_DOUBLE("horizon.floor_y3", horizon.floors[2]),
      Field{"probes.taus", [](const RunConfig& c) { return join(c.probes); },
            [](RunConfig& c, const std::string& v) {
              try {
                c.probes = parse_number_list(v);
              } catch (const std::exception& e) {
                throw ConfigError("probes.taus", e.what());
              }
            }},
      Field{"probes.points",
            [](const RunConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.points.size(); ++i)
                out += (i ? ", " : "") + format_double(c.points[i].u) + ":" + format_double(c.points[i].v);
              return out;
            },
            [](RunConfig& c, const std::string& v) {
              c.points.clear();
              std::stringstream ss(v);
              std::string item;
              while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                auto colon = item.find(':');
                if (colon == std::string::npos) throw ConfigError("probes.points", "expected u:v pairs");
                c.points.push_back({to_double("probes.points", trim(item.substr(0, colon))),
                                    to_double("probes.points", trim(item.substr(colon + 1)))});
              }
            }},
      Field{"output.dir", [](const RunConfig& c) { return c.output_dir; },
            [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

#undef RN_DOUBLE
#undef RN_INT
#undef RN_BOOL

}  // namespace

const std::string* ConfigTree::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double("list", item));
  }
  return out;
}

ConfigTree parse_config_tree(const std::string& text) {
  ConfigTree t;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line[0] == '[') {
      if (line.back() != ']') throw ConfigError(where(), "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      std::stringstream ss(section);
      std::string part;
      bool any = false;
      while (std::getline(ss, part, '.')) {
        if (!valid_name(part)) throw ConfigError(where(), "bad section name '" + section + "'");
        any = true;
      }
      if (!any || section.back() == '.') throw ConfigError(where(), "bad section name '" + section + "'");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where(), "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = line.substr(eq + 1);
    if (auto hash = value.find('#'); hash != std::string::npos) value = value.substr(0, hash);
    value = trim(value);
    if (!valid_name(key)) throw ConfigError(where(), "bad key '" + key + "'");
    std::string full = section.empty() ? key : section + "." + key;
    if (t.find(full)) throw ConfigError(full, "duplicate key (" + where() + ")");
    t.entries.emplace_back(full, value);
  }
  return t;
}

RunConfig parse_run_config(const std::string& text) {
  ConfigTree t = parse_config_tree(text);
  std::map<std::string, const Field*> index;
  for (const auto& f : fields()) index[f.key] = &f;
  RunConfig c;
  for (const auto& [k, v] : t.entries) {
    auto it = index.find(k);
    if (it == index.end()) throw ConfigError(k, "unknown key");
    it->second->set(c, v);
  }
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str());
}

std::string serialize(const RunConfig& c) {
  std::string out;
  std::string current;
  for (const auto& f : fields()) {
    std::string key = f.key;
    auto dot = key.rfind('.');
    std::string section = key.substr(0, dot);
    if (section != current) {
      out += (out.empty() ? "[" : "\n[") + section + "]\n";
      current = section;
    }
    out += key.substr(dot + 1) + " = " + f.get(c) + "\n";
  }
  return out;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  for (const auto& f : fields())
    if (f.get(a) != f.get(b)) return false;
  return true;
}

void validate(const RunConfig& c) {
  auto wrap = [](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(field, e.what());
    }
  };
  wrap("spacetime", [&] { validate(c.spacetime); });
  const auto& g = c.grid;
  if (!(g.r_max > r_plus(c.spacetime))) throw ConfigError("grid.r_max", "must exceed the horizon radius");
  if (!(g.du > 0.0)) throw ConfigError("grid.du", "must be positive");
  if (!(g.dv > 0.0)) throw ConfigError("grid.dv", "must be positive");
  if (!(g.tau_end > 0.0)) throw ConfigError("grid.tau_end", "must be positive");
  if (g.refine < 0 || g.refine > 6) throw ConfigError("grid.refine", "must lie in [0, 6]");
  if (g.gauge == "graded" && !(g.gauge_sigma > 0.0 && g.gauge_sigma <= 1.0))
    throw ConfigError("grid.gauge.sigma", "must lie in (0, 1]");
  if (g.gauge == "graded" && !(g.gauge_scale > 0.0)) throw ConfigError("grid.gauge.scale", "must be positive");
  wrap("data", [&] { validate(c.data, c.spacetime, g.r_max); });
  wrap("nonlinearity", [&] { validate(c.nonlinearity); });
  wrap("diagnostics", [&] { validate(c.diagnostics, c.spacetime, g.r_max); });
  if (c.evolution.picard < 1) throw ConfigError("evolution.picard", "must be at least 1");
  if (!(c.evolution.psi_max > 0.0)) throw ConfigError("evolution.psi_max", "must be positive");
  if (!(c.evolution.horizon_y_max > 0.0)) throw ConfigError("evolution.horizon_y_max", "must be positive");
  if (c.horizon.npts < 2 || c.horizon.npts > 8) throw ConfigError("horizon.npts", "must lie in [2, 8]");
  for (double f : c.horizon.floors)
    if (!(f > 0.0)) throw ConfigError("horizon.floor", "floors must be positive");
  if (!std::is_sorted(c.probes.begin(), c.probes.end()) ||
      std::adjacent_find(c.probes.begin(), c.probes.end()) != c.probes.end())
    throw ConfigError("probes.taus", "must be strictly ascending");
  for (double t : c.probes)
    if (!(t >= 0.0 && t <= g.tau_end)) throw ConfigError("probes.taus", "every probe must lie in [0, tau_end]");
  wrap("grid", [&] { validate(grid_of(c), c.spacetime); });
  const GridSpec gs = grid_of(c);
  for (const auto& p : c.points)
    if (!(p.u >= 0.0 && p.u <= gs.U && p.v >= 0.0 && p.v <= gs.V))
      throw ConfigError("probes.points", "point outside the grid");
}

double required_V(const RunConfig& c) {
  return c.grid.tau_end + (c.diagnostics.R0 - r_plus(c.spacetime)) + 2.0;
}

InitialGauge gauge_of(const RunConfig& c) {
  if (c.grid.gauge == "affine") return InitialGauge{};
  if (c.grid.gauge == "graded") return InitialGauge{c.grid.gauge_sigma, c.grid.gauge_scale};
  return default_gauge(c.spacetime, required_V(c));
}

GridSpec grid_of(const RunConfig& c) {
  GridSpec g = make_grid(c.spacetime, c.grid.r_max, c.grid.du, c.grid.dv, required_V(c), gauge_of(c));
  return c.grid.refine > 0 ? refined(g, 1 << c.grid.refine) : g;
}

}  // namespace rnwave

namespace rnwave {

std::string config_key(const RunConfig& c, const std::vector<std::string>& excluded) {
  std::string out;
  for (const auto& f : fields()) {
    std::string k = f.key;
    bool skip = false;
    for (const auto& e : excluded)
      if (k == e || (e.back() == '.' && k.rfind(e, 0) == 0)) skip = true;
    if (!skip) out += k + "=" + f.get(c) + ";";
  }
  return out;
}

std::string config_value(const RunConfig& c, const std::string& key) {
  for (const auto& f : fields())
    if (key == f.key) return f.get(c);
  throw ConfigError(key, "unknown key");
}

}  // namespace rnwave
