#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rnwave/diagnostics.hpp"
#include "rnwave/horizon.hpp"

namespace rnwave {

/// Error tied to one configuration field (or a line of the text).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& msg)
      : std::runtime_error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Flat view of a config file: fully qualified keys ("section.sub.key") in file order.
struct ConfigTree {
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const;
};

/// Grammar (see docs/config.md):
///   line     := blank | comment | header | pair
///   comment  := ('#' | ';') any*
///   header   := '[' name ('.' name)* ']'
///   pair     := name '=' value        value runs to end of line, trimmed; '#' starts a comment
///   name     := [A-Za-z0-9_]+
/// Keys are qualified by the most recent header. Duplicate keys are errors.
ConfigTree parse_config_tree(const std::string& text);

struct GridConfig {
  double r_max = 40.0;
  double du = 0.04;
  double dv = 0.04;
  double tau_end = 200.0;
  int refine = 0;              // steps divided by 2^refine after sizing the base grid
  std::string gauge = "auto";  // auto | affine | graded
  double gauge_sigma = 2e-3;   // graded only
  double gauge_scale = 1.0;
};

struct RunConfig {
  SpacetimeParams spacetime;
  GridConfig grid;
  InitialDataSpec data;
  NonlinearitySpec nonlinearity;
  DiagnosticsConfig diagnostics;
  EvolveOptions evolution;
  HorizonOptions horizon;
  std::vector<double> probes{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100,
                             110, 120, 130, 140, 150, 160, 170, 180, 190, 200};
  std::vector<ProbePoint> points;
  std::string output_dir = "out";
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
/// Canonical text; doubles carry 17 significant digits so parse(serialize(c)) == c.
std::string serialize(const RunConfig& c);
bool operator==(const RunConfig& a, const RunConfig& b);

/// Field-level validation of every component; throws ConfigError.
void validate(const RunConfig& c);

/// v-extent needed so the slice at tau_end is complete.
double required_V(const RunConfig& c);
InitialGauge gauge_of(const RunConfig& c);
GridSpec grid_of(const RunConfig& c);

std::vector<double> parse_number_list(const std::string& s);
std::string format_double(double x);

}  // namespace rnwave

namespace rnwave {

/// "key=value;" over every field except those listed; equal keys mean the
/// configs differ only in the excluded fields.
std::string config_key(const RunConfig& c, const std::vector<std::string>& excluded);
std::string config_value(const RunConfig& c, const std::string& key);

}  // namespace rnwave
