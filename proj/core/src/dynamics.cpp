#include "stringnet/dynamics.hpp"

#include <cmath>

namespace stringnet {

Vec2 saturate(Vec2 u, double bound) {
  const double n = u.norm();
  if (n <= bound) return u;
  return u * (bound / n);
}

namespace {

struct Deriv {
  Vec2 dr;
  Vec2 dv;
};

Deriv rhs(Vec2 v, Vec2 u, double c_d) { return {v, u - v * (c_d * v.norm())}; }

}  // namespace

AgentState step(const AgentState &s, const ControlInput &in, double c_d, double dt) {
  if (!s.r.is_finite() || !s.v.is_finite() || !in.u.is_finite())
    throw IntegrationError("non-finite agent state or control input");
  if (!(dt > 0.0)) throw IntegrationError("integration step must be positive");

  const Vec2 u = saturate(in.u, in.bound);
  const Deriv k1 = rhs(s.v, u, c_d);
  const Deriv k2 = rhs(s.v + k1.dv * (0.5 * dt), u, c_d);
  const Deriv k3 = rhs(s.v + k2.dv * (0.5 * dt), u, c_d);
  const Deriv k4 = rhs(s.v + k3.dv * dt, u, c_d);

  AgentState out;
  out.r = s.r + (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr) * (dt / 6.0);
  out.v = s.v + (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) * (dt / 6.0);
  if (!out.r.is_finite() || !out.v.is_finite()) throw IntegrationError("integration produced a non-finite state");

  // The exact flow keeps |v| below sqrt(bound / c_d); RK4 can overshoot by
  // rounding, so pull the speed back strictly inside.
  if (c_d > 0.0 && in.bound > 0.0) {
    const double v_max = std::sqrt(in.bound / c_d);
    const double speed = out.v.norm();
    if (speed >= v_max) out.v *= v_max * (1.0 - 1e-12) / speed;
  }
  return out;
}

}  // namespace stringnet
