#pragma once

#include <cmath>
#include <string>

#include "stringnet/config_io.hpp"
#include "stringnet/model.hpp"

namespace fixture {

/// Valid n-vs-n configuration: a tight attacker blob north of the protected
/// area heading south, defenders on a line just outside it, one safe area.
inline stringnet::ScenarioConfig small_config(int n) {
  stringnet::ScenarioConfig c;
  c.n_a = n;
  c.n_d = n;
  c.u_bar_a = 3.0;
  c.u_bar_d = 5.0;
  c.rho_d_s = 60.0;
  c.protected_area = {{0, 0}, 5.0};
  c.safe_areas = {{{-30, 25}, 8.0}};
  c.r_bar_s = 3.0;
  c.r_under_s = 2.5;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * 3.14159265358979323846 * i / n;
    const double rad = i == 0 ? 0.0 : 0.6 + 0.1 * (i % 3);
    c.attackers.push_back({{rad * std::cos(a), 40.0 + rad * std::sin(a)}, {0.0, -1.5}});
    c.defenders.push_back({{-0.5 * (n - 1) + i, 6.0}, {0.0, 0.0}});
  }
  c.dt = 0.01;
  c.seed = 1;
  c.max_time = 200.0;
  return c;
}

inline std::string scenario_path(const char *name) { return std::string(STRINGNET_SCENARIO_DIR) + "/" + name; }

}  // namespace fixture
