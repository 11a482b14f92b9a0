#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "accelfront/error.hpp"
#include "accelfront/properties.hpp"

using namespace accelfront;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no accelfront::Error thrown");
  return ErrorKind::ParseError;
}

RunConfig config_for(DispersalSpec d, double half_length, std::size_t n, double t_end) {
  RunConfig c;
  c.dispersal = std::move(d);
  c.half_length = half_length;
  c.n_points = n;
  c.t_end = t_end;
  return c;
}

Field gaussian(const Grid& g, double a) {
  return Field::from_function(g, [a](double x) { return a * std::exp(-x * x / 100.0); });
}

}  // namespace

TEST_CASE("verdict formatting") {
  CHECK(format_verdict({"comparison", true, 0.0, 1e-9, 0.0, 0.0}) == "comparison pass 0 1e-09");
  CHECK(format_verdict({"spreading", false, 0.25, 0.0, 3.0, 12.0}) == "spreading fail 0.25 0");
}

TEST_CASE("comparison principle") {
  const RunConfig c = config_for(FractionalLaplacian{0.9}, 400.0, 4096, 5.0);
  const Grid g = c.grid();
  const PropertyVerdict same = check_comparison(gaussian(g, 1.0), gaussian(g, 1.0), c);
  CHECK(same.pass);
  CHECK(same.violation == 0.0);

  const PropertyVerdict ordered = check_comparison(gaussian(g, 0.5), gaussian(g, 1.0), c);
  CHECK(ordered.pass);
  CHECK(ordered.violation <= 1e-9);
  CHECK(ordered.tolerance == 1e-9);
  CHECK(check_comparison(gaussian(g, 0.5), gaussian(g, 1.0), c).violation == ordered.violation);

  Field u = gaussian(g, 1.0);
  Field v = u;
  u[g.nearest_index(0.0)] = 0.9;
  v[g.nearest_index(0.0)] = 0.1;
  CHECK(kind_of([&] { check_comparison(u, v, c); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("comparison on random ordered pairs") {
  std::mt19937_64 rng(99);
  for (const auto& d : {DispersalSpec{Convolution{{StretchedExponentialKernel{0.5, 1.0}}}},
                        DispersalSpec{FastDiffusion{0.5}}}) {
    const RunConfig c = config_for(d, 200.0, 2048, 2.0);
    for (int trial = 0; trial < 3; ++trial) {
      const auto [u, v] = random_ordered_gaussians(c.grid(), rng);
      const PropertyVerdict verdict = check_comparison(u, v, c);
      INFO(describe(d) << ": " << format_verdict(verdict));
      CHECK(verdict.pass);
    }
  }
}

TEST_CASE("random ordered pairs are ordered") {
  std::mt19937_64 rng(1);
  const Grid g(100.0, 512);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [u, v] = random_ordered_gaussians(g, rng);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE((0.0 <= u[i] && u[i] <= v[i] && v[i] <= 1.0));
  }
}

TEST_CASE("monotonicity preservation") {
  // dx must resolve sqrt(dt) or the discrete heat kernel has negative lobes.
  RunConfig c = config_for(StandardLaplacian{}, 100.0, 8192, 5.0);
  c.initial = IndicatorInitial{0.0};
  const Grid g = c.grid();
  const Field indicator = Field::from_function(g, [](double x) { return x < 0.0 ? 1.0 : 0.0; });
  CHECK(check_monotone_preservation(indicator, c).pass);

  const RunConfig conv = config_for(Convolution{{StretchedExponentialKernel{0.5, 1.0}}}, 100.0, 8192, 5.0);
  const PropertyVerdict smooth = check_monotone_preservation(logistic_step_profile(g, 0.0, 2.0), conv);
  INFO(format_verdict(smooth));
  CHECK(smooth.pass);

  const Field increasing = Field::from_function(g, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
  CHECK(kind_of([&] { check_monotone_preservation(increasing, c); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("spreading distinguishes accelerating from classical fronts") {
  const RunConfig frac = config_for(FractionalLaplacian{0.9}, 5000.0, 1u << 16, 12.0);
  const PropertyVerdict fast = check_spreading(gaussian(frac.grid(), 1.0), 4.0, frac);
  INFO(format_verdict(fast));
  CHECK(fast.pass);
  CHECK(check_spreading(gaussian(frac.grid(), 1.0), 2.0, frac).pass);

  const RunConfig lap = config_for(StandardLaplacian{}, 400.0, 8192, 12.0);
  const PropertyVerdict slow = check_spreading(gaussian(lap.grid(), 1.0), 3.0, lap);
  INFO(format_verdict(slow));
  CHECK_FALSE(slow.pass);

  CHECK(kind_of([&] { check_spreading(Field(lap.grid()), 3.0, lap); }) == ErrorKind::ZeroInitialCondition);
  const RunConfig tiny = config_for(StandardLaplacian{}, 40.0, 512, 12.0);
  CHECK(kind_of([&] { check_spreading(gaussian(tiny.grid(), 1.0), 4.0, tiny); }) ==
        ErrorKind::DomainTooSmall);
}

TEST_CASE("mass neutrality of linear dispersal") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(0.25, 0.75);
  const RunConfig frac = config_for(FractionalLaplacian{0.5}, 100.0, 1024, 3.0);
  Field u(frac.grid());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = d(rng);
  CHECK(check_mass_neutral(u, frac).pass);

  const RunConfig conv = config_for(Convolution{{StretchedExponentialKernel{0.5, 1.0}}}, 200.0, 2048, 3.0);
  const PropertyVerdict v = check_mass_neutral(conv);
  INFO(format_verdict(v));
  CHECK(v.pass);

  CHECK(kind_of([] { check_mass_neutral(config_for(FastDiffusion{0.5}, 100.0, 512, 1.0)); }) ==
        ErrorKind::NonlinearVariant);
}
