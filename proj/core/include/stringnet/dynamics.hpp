#pragma once

#include <stdexcept>

#include "stringnet/geometry.hpp"
#include "stringnet/model.hpp"

namespace stringnet {

/// Acceleration command together with the bound of the agent's class.
struct ControlInput {
  Vec2 u;
  double bound{1.0};
};

/// Non-finite state or input reached the integrator.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Projection of u onto the closed ball of radius bound.
[[nodiscard]] Vec2 saturate(Vec2 u, double bound);

/// One classical RK4 step of  r' = v,  v' = u - c_d |v| v  with u held
/// constant over dt. u is saturated to input.bound first, and the result's
/// speed is kept strictly below sqrt(bound / c_d).
[[nodiscard]] AgentState step(const AgentState &state, const ControlInput &input, double c_d, double dt);

}  // namespace stringnet
