#include "accelfront/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double rk4_scalar(const ReactionSpec& spec, double u, double dt) {
  if (dt <= 0.0) return u;
  const auto steps = static_cast<std::size_t>(std::ceil(dt / kRk4MaxSubstep));
  const double h = dt / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const double k1 = reaction_rate(spec, u);
    const double k2 = reaction_rate(spec, u + 0.5 * h * k1);
    const double k3 = reaction_rate(spec, u + 0.5 * h * k2);
    const double k4 = reaction_rate(spec, u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace

double reaction_rate(const ReactionSpec& spec, double u) {
  if (std::holds_alternative<KppLogistic>(spec)) return u * (1.0 - u);
  if (const auto* custom = std::get_if<CustomMonostable>(&spec)) return custom->f(u);
  return 0.0;
}

std::string describe(const ReactionSpec& spec) {
  if (std::holds_alternative<KppLogistic>(spec)) return "kpp_logistic";
  if (const auto* custom = std::get_if<CustomMonostable>(&spec)) return custom->label;
  return "none";
}

ReactionSpec validate_reaction(ReactionSpec spec) {
  if (std::holds_alternative<NoReaction>(spec)) {
    throw Error(ErrorKind::NotMonostable, "f = 0 is not monostable");
  }
  if (const auto* custom = std::get_if<CustomMonostable>(&spec); custom && !custom->f) {
    throw Error(ErrorKind::NotMonostable, "custom reaction has no function");
  }
  const double f0 = reaction_rate(spec, 0.0);
  const double f1 = reaction_rate(spec, 1.0);
  if (std::abs(f0) > 1e-12 || std::abs(f1) > 1e-12) {
    throw Error(ErrorKind::EndpointNotZero, "need f(0) = f(1) = 0, got f(0) = " + num(f0) +
                                                ", f(1) = " + num(f1));
  }
  for (int i = 1; i <= 99; ++i) {
    const double u = i / 100.0;
    const double value = reaction_rate(spec, u);
    if (!(value > 0.0)) {
      throw Error(ErrorKind::NotMonostable, "f(" + num(u) + ") = " + num(value) + " is not > 0");
    }
  }
  const double h = 1e-6;
  const double slope = (reaction_rate(spec, h) - f0) / h;
  if (!(slope > 0.0)) {
    throw Error(ErrorKind::DegenerateAtZero, "f'(0) ~ " + num(slope) + " is not > 0");
  }
  return spec;
}

double logistic_exact_step(double u, double dt) noexcept {
  const double growth = std::exp(dt);
  return u * growth / (1.0 - u + u * growth);
}

Field logistic_exact_step(const Field& field, double dt) {
  Field out = field;
  for (double& v : out.values()) v = logistic_exact_step(v, dt);
  return out;
}

Field rk4_reaction_step(const Field& field, const ReactionSpec& spec, double dt) {
  Field out = field;
  for (double& v : out.values()) v = rk4_scalar(spec, v, dt);
  out.clamp();
  return out;
}

void react_in_place(Field& field, const ReactionSpec& spec, double dt) {
  if (std::holds_alternative<NoReaction>(spec) || dt == 0.0) return;
  if (std::holds_alternative<KppLogistic>(spec)) {
    const double growth = std::exp(dt);
    for (double& v : field.values()) v = v * growth / (1.0 - v + v * growth);
    return;
  }
  for (double& v : field.values()) v = rk4_scalar(spec, v, dt);
}

}  // namespace accelfront
