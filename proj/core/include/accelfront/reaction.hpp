#pragma once

#include <functional>
#include <string>
#include <variant>

#include "accelfront/grid.hpp"

namespace accelfront {

/// f(u) = u(1 - u), advanced with its exact flow.
struct KppLogistic {};

/// A general monostable f on [0, 1], advanced with RK4.
struct CustomMonostable {
  std::function<double(double)> f;
  std::string label = "custom";
};

/// f = 0. Used to isolate the dispersal operator (never passes validate_reaction).
struct NoReaction {};

using ReactionSpec = std::variant<KppLogistic, CustomMonostable, NoReaction>;

double reaction_rate(const ReactionSpec& spec, double u);
std::string describe(const ReactionSpec& spec);

/// Checks f(0) = f(1) = 0 (1e-12), f > 0 at u = 0.01..0.99 and a forward
/// difference f'(0) > 0 at h = 1e-6. Throws EndpointNotZero, NotMonostable
/// or DegenerateAtZero; returns the spec unchanged on success.
ReactionSpec validate_reaction(ReactionSpec spec);

/// Exact solution of w' = w(1 - w) after time dt starting from u in [0, 1].
double logistic_exact_step(double u, double dt) noexcept;
Field logistic_exact_step(const Field& field, double dt);

/// Largest sub-step rk4_reaction_step takes.
inline constexpr double kRk4MaxSubstep = 0.02;

/// Pointwise classical RK4 over dt (sub-cycled in pieces of at most
/// kRk4MaxSubstep), clamped to [0, 1].
Field rk4_reaction_step(const Field& field, const ReactionSpec& spec, double dt);

/// Reaction substep used by the splitting: exact flow for KppLogistic, RK4
/// for CustomMonostable, identity for NoReaction. Not clamped.
void react_in_place(Field& field, const ReactionSpec& spec, double dt);

}  // namespace accelfront
