#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "accelfront/dispersal.hpp"
#include "accelfront/error.hpp"
#include "accelfront/properties.hpp"
#include "oracles.hpp"

using namespace accelfront;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

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

const KernelSpec kSqrtKernel{StretchedExponentialKernel{0.5, 1.0}};

std::vector<DispersalSpec> linear_specs() {
  return {FractionalLaplacian{0.25}, FractionalLaplacian{0.9}, FractionalLaplacian{1.0},
          StandardLaplacian{},       Convolution{kSqrtKernel}, Convolution{{AlgebraicTailKernel{3.0}}}};
}

}  // namespace

TEST_CASE("symbol values at chosen frequencies") {
  const Grid g(std::numbers::pi, 16);  // frequency(k) == k
  const Symbol frac = build_symbol(FractionalLaplacian{0.5}, g);
  CHECK(frac[2] == -2.0);
  const Symbol lap = build_symbol(StandardLaplacian{}, g);
  CHECK(lap[3] == -9.0);
  CHECK(lap[16 - 3] == -9.0);
}

TEST_CASE("every symbol vanishes at zero and is nonpositive") {
  for (const Grid& g : {Grid(200.0, 1u << 13), Grid(10.0, 64), Grid(1000.0, 4096)}) {
    for (const auto& spec : linear_specs()) {
      const Symbol m = build_symbol(spec, g);
      INFO(describe(spec) << " L=" << g.half_length() << " N=" << g.size());
      CHECK(m[0] == 0.0);
      for (double v : m.values()) REQUIRE(v <= 0.0);
    }
  }
}

TEST_CASE("fractional symbol at alpha = 1 is the standard Laplacian, bit for bit") {
  const Grid g(37.5, 2048);
  const Symbol a = build_symbol(FractionalLaplacian{1.0}, g);
  const Symbol b = build_symbol(StandardLaplacian{}, g);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST_CASE("nonlinear variants have no symbol") {
  const Grid g(10.0, 64);
  CHECK(kind_of([&] { build_symbol(FastDiffusion{}, g); }) == ErrorKind::NonlinearVariant);
  CHECK(kind_of([&] { build_symbol(FractionalFastDiffusion{}, g); }) == ErrorKind::NonlinearVariant);
}

TEST_CASE("parameter validation") {
  CHECK(kind_of([] { validate_dispersal(FractionalLaplacian{1.5}); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { validate_dispersal(FractionalLaplacian{0.0}); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { validate_dispersal(FastDiffusion{1.2}); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { validate_dispersal(FractionalFastDiffusion{0.4, 0.1}); }) ==
        ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { validate_dispersal(Convolution{{StretchedExponentialKernel{1.5, 1.0}}}); }) ==
        ErrorKind::KernelInvalid);
  CHECK(kind_of([] { validate_dispersal(Convolution{{AlgebraicTailKernel{2.0}}}); }) ==
        ErrorKind::KernelInvalid);
  CHECK_NOTHROW(validate_dispersal(FractionalFastDiffusion{0.4, 0.3}));
}

TEST_CASE("closed-form kernel constants give unit mass") {
  CHECK_THAT(kernel_value(kSqrtKernel, 0.0), WithinAbs(0.25, 1e-15));
  CHECK_THAT(kernel_value(kSqrtKernel, 4.0), WithinAbs(0.25 * std::exp(-2.0), 1e-15));
  // Riemann sum of a kernel with a sqrt cusp at 0: the excess over 1 is
  // -zeta(-1/2)/2 dx^1.5 - dx^2/48 minus the two tails beyond |x| = L.
  const Grid g(200.0, 1u << 13);
  const double dx = g.dx();
  const double zeta_minus_half = -0.2078862249773545;
  const double tails = (std::sqrt(200.0) + 1.0) * std::exp(-std::sqrt(200.0));
  const double predicted = 1.0 - zeta_minus_half / 2.0 * std::pow(dx, 1.5) - dx * dx / 48.0 - tails;
  CHECK_THAT(discrete_kernel_mass(kSqrtKernel, g), WithinAbs(predicted, 5e-6));
  const Symbol m = build_symbol(Convolution{kSqrtKernel}, g);
  CHECK(std::abs(m[0]) <= 1e-3);
  double sum = 0.0;
  for (double v : sample_kernel(kSqrtKernel, g)) sum += v;
  CHECK_THAT(sum * g.dx(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("unnormalized kernels must carry unit mass") {
  KernelSpec truncated{StretchedExponentialKernel{0.5, 1.0}, false};
  CHECK(kind_of([&] { sample_kernel(truncated, Grid(5.0, 64)); }) == ErrorKind::KernelInvalid);
}

TEST_CASE("semigroup step: identity cases") {
  std::mt19937_64 rng(3);
  const Grid g(20.0, 256);
  const Field u = oracle::random_field(g, rng);
  const Symbol m = build_symbol(FractionalLaplacian{0.7}, g);
  CHECK(semigroup_step(u, m, 0.0) == u);
  const Field c(g, std::vector<double>(256, 0.42));
  CHECK(oracle::sup_diff(semigroup_step(c, m, 3.0).values(), c.values()) < 1e-15);
  CHECK(kind_of([&] { semigroup_step(u, m, -1.0); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("cosine modes are eigenfunctions of the fractional semigroup") {
  const Grid g(30.0, 512);
  const double dt = 0.05;
  for (double alpha : {0.25, 0.5, 0.9}) {
    const Symbol m = build_symbol(FractionalLaplacian{alpha}, g);
    for (std::size_t k : {1u, 2u, 7u, 40u, 100u}) {
      const double xi = g.frequency(k);
      const Field u = Field::from_function(g, [xi](double x) { return std::cos(xi * x); });
      const double decay = std::exp(-std::pow(std::abs(xi), 2.0 * alpha) * dt);
      const Field out = semigroup_step(u, m, dt);
      double rel = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        rel = std::max(rel, std::abs(out[i] - decay * u[i]) / decay);
      }
      INFO("alpha=" << alpha << " k=" << k);
      CHECK(rel < 1e-10);
      // Independent route: explicit Euler on the mode amplitude.
      CHECK_THAT(oracle::explicit_euler_amplitude(-std::pow(std::abs(xi), 2.0 * alpha), dt, 20000000),
                 WithinRel(decay, 1e-5));
    }
  }
}

TEST_CASE("direct convolution oracle") {
  const Grid g(25.0, 512);
  SECTION("delta kernel leaves u unchanged") {
    const KernelSpec delta{TabulatedKernel{{0.0, g.dx()}, {1.0 / g.dx(), 0.0}}};
    std::mt19937_64 rng(9);
    const Field u = oracle::random_field(g, rng);
    for (double v : convolve_direct(u, delta)) CHECK(std::abs(v) < 1e-15);
  }
  SECTION("even field and even kernel give an even result") {
    const Field u = Field::from_function(g, [](double x) { return std::exp(-x * x / 20.0); });
    const auto out = convolve_direct(u, kSqrtKernel);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK_THAT(out[i], WithinAbs(out[g.size() - i], 1e-14));
  }
  SECTION("spectral and direct evaluation agree on random fields") {
    std::mt19937_64 rng(17);
    for (const KernelSpec& k : {kSqrtKernel, KernelSpec{AlgebraicTailKernel{3.0}},
                                KernelSpec{StretchedExponentialKernel{0.3, 2.0}}}) {
      const Symbol m = build_symbol(Convolution{k}, g);
      for (int trial = 0; trial < 5; ++trial) {
        const Field u = oracle::random_field(g, rng);
        CHECK(oracle::sup_diff(apply_symbol(u, m), convolve_direct(u, k)) < 1e-8);
      }
    }
  }
}

TEST_CASE("linear semigroup steps preserve order") {
  // Spectral heat kernels keep negative lobes unless dx resolves sqrt(dt).
  const Grid g(50.0, 4096);
  std::mt19937_64 rng(23);
  for (const auto& spec : linear_specs()) {
    DispersalOperator op(spec, g);
    for (int trial = 0; trial < 10; ++trial) {
      auto [u, v] = random_ordered_gaussians(g, rng);
      op.advance(u, 0.01);
      op.advance(v, 0.01);
      for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(u[i] <= v[i] + 1e-12);
    }
  }
}

TEST_CASE("fast diffusion step") {
  const Grid g(10.0, 128);
  SECTION("constant field is a fixed point") {
    const Field c(g, std::vector<double>(128, 0.3));
    CHECK(oracle::sup_diff(fast_diffusion_step(c, 0.5, 0.1).values(), c.values()) < 1e-15);
  }
  SECTION("gamma = 1 is the implicit heat step") {
    std::mt19937_64 rng(4);
    const Field u = oracle::random_field(g, rng);
    const auto ref = oracle::implicit_heat_step(std::vector<double>(u.values().begin(), u.values().end()),
                                                g.dx(), 0.05);
    CHECK(oracle::sup_diff(fast_diffusion_step(u, 1.0, 0.05).values(), ref) < 1e-10);
  }
  SECTION("mass is conserved per step") {
    std::mt19937_64 rng(8);
    for (double gamma : {0.2, 0.5, 1.0}) {
      const Field u = oracle::random_field(g, rng);
      const Field out = fast_diffusion_step(u, gamma, 0.1);
      CHECK(std::abs((out.mean() - u.mean()) * 2.0 * g.half_length()) < 1e-8);
    }
    const Field gauss = Field::from_function(g, [](double x) { return std::exp(-x * x); });
    CHECK(std::abs(fast_diffusion_step(gauss, 0.5, 0.1).mean() - gauss.mean()) * 20.0 < 1e-8);
  }
  SECTION("ordered pairs stay ordered") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      auto [u, v] = random_ordered_gaussians(g, rng);
      const Field su = fast_diffusion_step(u, 0.5, 0.01);
      const Field sv = fast_diffusion_step(v, 0.5, 0.01);
      for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(su[i] <= sv[i] + 1e-12);
    }
  }
  CHECK(kind_of([&] { fast_diffusion_step(Field(g), 1.5, 0.1); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("fractional fast diffusion step") {
  const Grid g(50.0, 64);
  CHECK(kind_of([&] { fractional_fast_diffusion_step(Field(g), 0.4, 0.1, 0.1); }) ==
        ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([&] { fractional_fast_diffusion_step(Field(g), 1.0, 0.5, 0.1); }) ==
        ErrorKind::ParameterOutOfRange);

  const Field c(g, std::vector<double>(64, 0.6));
  CHECK(oracle::sup_diff(fractional_fast_diffusion_step(c, 0.5, 0.5, 0.1).values(), c.values()) < 1e-14);

  SECTION("substep count follows the stability bound") {
    const double mmax = std::pow(g.max_frequency(), 1.0);
    CHECK(fractional_fast_diffusion_substeps(g, 0.5, 1.0, 0.1, 1e-8) ==
          static_cast<std::size_t>(std::ceil(0.1 * mmax / 0.5)));
    CHECK(fractional_fast_diffusion_substeps(g, 0.5, 0.5, 0.1, 1e-8) >
          fractional_fast_diffusion_substeps(g, 0.5, 1.0, 0.1, 1e-8));
  }

  SECTION("gamma = 1 converges to the exact semigroup at first order") {
    const Field u0 = Field::from_function(g, [](double x) { return 0.2 + 0.5 * std::exp(-x * x / 50.0); });
    const Symbol m = build_symbol(FractionalLaplacian{0.5}, g);
    const Field exact = semigroup_step(u0, m, 1.0);
    std::vector<double> err;
    for (int steps : {10, 20, 40, 80}) {
      Field u = u0;
      for (int s = 0; s < steps; ++s) u = fractional_fast_diffusion_step(u, 0.5, 1.0, 1.0 / steps);
      err.push_back(oracle::sup_diff(u.values(), exact.values()));
    }
    for (std::size_t i = 1; i < err.size(); ++i) {
      INFO("error ratio " << err[i - 1] / err[i]);
      CHECK(err[i] < err[i - 1]);
      CHECK_THAT(err[i - 1] / err[i], WithinAbs(2.0, 0.2));
    }
  }
}

TEST_CASE("kernel tables") {
  std::istringstream one_sided("# x J\n0 0.5\n1 0.25\n2 0\n");
  const TabulatedKernel t = read_kernel_table(one_sided);
  CHECK(t.x == std::vector<double>{0, 1, 2});
  const KernelSpec k{t};
  CHECK_THAT(kernel_value(k, 0.5), WithinAbs(0.375, 1e-15));
  CHECK_THAT(kernel_value(k, -0.5), WithinAbs(0.375, 1e-15));
  CHECK(kernel_value(k, 3.0) == 0.0);

  std::istringstream two_sided("-1 0.2\n0 0.6\n1 0.4\n");
  const KernelSpec k2{read_kernel_table(two_sided)};
  CHECK_THAT(kernel_value(k2, 1.0), WithinAbs(0.3, 1e-15));
  CHECK_THAT(kernel_value(k2, -1.0), WithinAbs(0.3, 1e-15));

  std::istringstream ragged("0 1\n1\n");
  CHECK(kind_of([&] { read_kernel_table(ragged); }) == ErrorKind::ParseError);
  std::istringstream negative("0 1\n1 -0.5\n");
  CHECK(kind_of([&] { read_kernel_table(negative); }) == ErrorKind::KernelInvalid);
  std::istringstream unsorted("0 1\n2 0.5\n1 0.2\n");
  CHECK(kind_of([&] { read_kernel_table(unsorted); }) == ErrorKind::KernelInvalid);
  CHECK(kind_of([] { load_kernel_table("/nonexistent/kernel.txt"); }) == ErrorKind::IoFailure);

  const Grid g(10.0, 256);
  const Symbol m = build_symbol(Convolution{k}, g);
  CHECK(m[0] == 0.0);
}
