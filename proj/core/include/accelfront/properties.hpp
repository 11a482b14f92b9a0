#pragma once

#include <random>
#include <string>
#include <utility>

#include "accelfront/grid.hpp"
#include "accelfront/integrator.hpp"

namespace accelfront {

/// Outcome of one executable property check.
struct PropertyVerdict {
  std::string name;
  bool pass = false;
  double violation = 0.0;  ///< worst violation magnitude, >= 0
  double tolerance = 0.0;
  double location = 0.0;   ///< x of the worst violation
  double time = 0.0;       ///< t of the worst violation
};

/// "name pass|fail violation tolerance"
std::string format_verdict(const PropertyVerdict& verdict);

/// Ordered data stay ordered: min over steps and nodes of v - u >= -tolerance.
/// Both runs are compared after every time step. Throws PreconditionViolated
/// unless 0 <= u0 <= v0 <= 1.
PropertyVerdict check_comparison(const Field& u0, const Field& v0, const RunConfig& config,
                                 double tolerance = 1e-9);

/// Nonincreasing data stay nonincreasing: the largest u_{i+1} - u_i after any
/// step is <= tolerance. Runs with reflecting ends, so the periodic seam never
/// enters. Throws PreconditionViolated for data that increase anywhere.
PropertyVerdict check_monotone_preservation(const Field& u0, const RunConfig& config,
                                            double tolerance = 1e-9);

/// Finite-time proxy for infinite spreading speed: the minimum of the final
/// snapshot over (0, c t_end) reaches `level`, and the snapshot minima over
/// that window never drop by more than `trend_tolerance`. The violation is the
/// larger of the level shortfall and the excess drop (tolerance 0).
/// Throws ZeroInitialCondition, DomainTooSmall, or GuardBreachedError.
PropertyVerdict check_spreading(const Field& u0, double speed, const RunConfig& config,
                                double level = 0.9, double trend_tolerance = 1e-3);

/// Linear dispersal with the reaction switched off keeps the mean:
/// |mean u(t) - mean u0| <= tolerance at every step. Throws NonlinearVariant.
PropertyVerdict check_mass_neutral(const Field& u0, const RunConfig& config,
                                   double tolerance = 1e-9);
PropertyVerdict check_mass_neutral(const RunConfig& config, double tolerance = 1e-9);

/// A random pair 0 <= u0 <= v0 <= 1 of Gaussian bumps: u0 = a exp(-((x-c)/w)^2)
/// and v0 = min(1, u0 + b exp(-((x-c')/w')^2)), with parameters drawn so that
/// both bumps sit well inside the domain.
std::pair<Field, Field> random_ordered_gaussians(const Grid& grid, std::mt19937_64& rng);

/// Smoothed step 1 / (1 + exp((x - center) / width)), nonincreasing in x.
Field logistic_step_profile(const Grid& grid, double center, double width);

}  // namespace accelfront
