#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rnwave/simulation.hpp"

namespace rnwave::test {

/// Short extremal run: small domain, coarse steps, probes every 5 up to tau_end.
inline RunConfig small_config(double tau_end = 20.0, double du = 0.1) {
  RunConfig c;
  c.grid.r_max = 10.0;
  c.grid.du = du;
  c.grid.dv = du;
  c.grid.tau_end = tau_end;
  c.probes.clear();
  for (double t = 0.0; t <= tau_end + 1e-9; t += 5.0) c.probes.push_back(t);
  c.output_dir = "unused";
  return c;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("rnwave_test_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace rnwave::test
