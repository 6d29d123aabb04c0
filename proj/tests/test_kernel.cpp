// Kernel checks.  Expected values come from closed forms where one exists
// (the M(1,2,z), U(a,a+1,z) and U(-m,b,z) reductions) and otherwise from
// mpmath 1.3 at 30 significant digits.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "chfact/chf.hpp"
#include "chfact/selftest.hpp"

using namespace chfact;
using Catch::Approx;

namespace {

double rel(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

const EvalPolicy kPol{};

}  // namespace

TEST_CASE("M: series region") {
  CHECK(eval_M({cplx(0.3, -4.0), cplx(2.0, 1.0)}, 0.0) == cplx(1.0));

  // M(1,2,z) = (e^z - 1)/z
  const cplx z{0.0, 2.0};
  const cplx want = (std::exp(z) - 1.0) / z;
  CHECK(rel(eval_M({1.0, 2.0}, z), want) < 1e-14);
  CHECK(want.real() == Approx(0.454649).margin(5e-7));
  CHECK(want.imag() == Approx(0.708074).margin(5e-7));
  // same value as e^{i} sin(1)
  CHECK(rel(eval_M({1.0, 2.0}, z), std::exp(cplx(0, 1)) * std::sin(1.0)) < 1e-14);

  // a = b collapses to the exponential
  CHECK(rel(eval_M({1.5, 1.5}, 0.7), std::exp(0.7)) < 1e-14);

  // negative real axis goes through the Kummer transform
  CHECK(rel(eval_M({0.5, 1.5}, -20.0), 0.198166364829973654) < 1e-13);

  CHECK(rel(eval_M({{-3.2, 1.1}, {2.7, -0.4}}, {8.0, -6.0}),
            {40.4830745021682437, 8.27386204926987481}) < 1e-13);

  CHECK_THROWS_AS(eval_M({1.0, -2.0}, 0.3), InvalidB);
}

TEST_CASE("M: oscillatory arguments with heavy cancellation") {
  // |terms| peak near e^{25}; the double-double accumulation keeps full
  // precision where a plain double sum would be down to ~3 digits
  CHECK(rel(eval_M({{2.0, 1.0}, {3.0, -0.5}}, {0.0, 25.0}),
            {-0.0050410129932933702, 0.00628569670684196705}) < 1e-12);
}

TEST_CASE("M: large-|z| expansion region") {
  CHECK(rel(eval_M({2.5, 5.0}, {0.0, 45.0}),
            {-0.00228236106515469205, -0.0012732190900262713}) < 1e-12);
  CHECK(rel(eval_M({{1.5, -2.5}, {0.3, 0.3}}, {40.0, 10.0}),
            {5.38950318097348516e+20, 8.3006133460716046e+19}) < 1e-11);
}

TEST_CASE("M: series and expansion agree across the seam") {
  const cplx a{1.3, -0.4}, b{2.1, 0.8};
  for (double r : {27.0, 33.0}) {
    for (double phi : {-1.2, -0.3, 0.7, 1.4}) {
      const cplx z = r * std::exp(cplx(0.0, phi));
      const cplx s = detail::eval_M_series(a, b, z, kPol);
      const auto asym = detail::eval_M_asymptotic(a, b, z, kPol, 1e-9);
      REQUIRE(asym.has_value());
      INFO("r = " << r << " phi = " << phi);
      CHECK(rel(s, *asym) < 1e-8);
    }
  }
}

TEST_CASE("U: exact reductions") {
  // U(a, a+1, z) = z^-a
  CHECK(rel(eval_U({1.0, 2.0}, 4.0), 0.25) < 1e-14);
  // U(0,0,z) = 1 anywhere off the cut
  CHECK(eval_U({0.0, 0.0}, {3.0, -7.0}) == cplx(1.0));
  CHECK(eval_U({0.0, 0.0}, {-3.0, 7.0}) == cplx(1.0));
  // U(-1, b, z) = z - b
  CHECK(rel(eval_U({-1.0, 0.5}, 2.0), 1.5) < 1e-14);
  const cplx z{1.2, -0.9}, b{0.3, 2.2};
  CHECK(rel(eval_U({-1.0, b}, z), z - b) < 1e-14);
  // polynomial route for larger m, against the explicit quadratic
  // U(-2,b,z) = z^2 - 2(b+1) z + b(b+1)
  CHECK(rel(eval_U({-2.0, b}, z), z * z - 2.0 * (b + 1.0) * z + b * (b + 1.0)) < 1e-13);
}

TEST_CASE("U: connection-formula route") {
  CHECK(rel(eval_U({{0.5, 0.9}, {1.0, 1.8}}, 12.0),
            {-0.164217605478267706, -0.209154689181725278}) < 1e-11);
  CHECK(rel(eval_U({{-1.8, 0.9}, {1.0, 1.8}}, 4.6),
            {0.766331952463182039, -3.83265437312133385}) < 1e-12);
  CHECK(rel(eval_U({{0.25, -0.7}, {-1.5, 0.4}}, {3.0, 4.0}),
            {0.165770584623748449, 0.405770948187494543}) < 1e-12);
  CHECK(rel(eval_U({1.0 / 6.0, 1.0 / 3.0}, 9.0), 0.683712433062993915) < 1e-11);
  CHECK(rel(eval_U({5.0 / 6.0, 5.0 / 3.0}, 14.0), 0.109863977416789721) < 1e-11);
}

TEST_CASE("U: integer-b logarithmic series") {
  CHECK(rel(eval_U({0.5, 1.0}, 0.8), 0.938067915435352792) < 1e-12);
  CHECK(rel(eval_U({{2.0, 1.3}, 4.0}, {0.0, 2.5}),
            {0.679204574164683158, 0.800394014300535052}) < 1e-12);
  // |series terms| / |U| ~ 1e6 here; accuracy is capped by the double
  // digamma brackets inside the logarithmic series
  CHECK(rel(eval_U({{3.0, 0.5}, 2.0}, 7.0),
            {0.000548141824192885392, -0.00147261824562233597}) < 5e-9);
  CHECK(rel(eval_U({{2.0, 0.8}, 6.0}, {0.0, 18.0}),
            {0.0100713857872090711, 0.00516357417239205606}) < 1e-11);
  // reflection brings integer b <= 0 back to the series
  const cplx direct = eval_U({{0.7, 0.9}, -2.0}, {0.0, 3.0});
  const cplx via = detail::principal_pow({0.0, 3.0}, 3.0) *
                   eval_U({{3.7, 0.9}, 4.0}, {0.0, 3.0});
  CHECK(rel(direct, via) < 1e-12);
}

TEST_CASE("U: branch cut policy") {
  CHECK_THROWS_AS(eval_U({0.3, 0.7}, {-2.0, 0.0}), BranchCutAmbiguity);
  EvalPolicy limit;
  limit.on_cut = OnCut::LimitFromAbove;
  const cplx above = eval_U({0.3, 0.7}, {-2.0, 1e-12}, limit);
  const cplx on = eval_U({0.3, 0.7}, {-2.0, 0.0}, limit);
  CHECK(rel(on, above) < 1e-9);
  CHECK_THROWS_AS(eval_U({0.3, 0.7}, cplx(0.0, 0.0)), DomainError);
}

TEST_CASE("Mtilde") {
  // Mt(0,0,1) = 1 * M(1,2,1) = e - 1
  CHECK(rel(eval_Mtilde({0.0, 0.0}, 1.0), std::exp(1.0) - 1.0) < 1e-14);
  // b = 1 makes Mt = M
  const cplx a{0.7, -1.1}, z{0.4, 1.3};
  CHECK(rel(eval_Mtilde({a, 1.0}, z), eval_M({a, 1.0}, z)) < 1e-14);
  // l = 1: Mt(-1,-2, 2i) = (2i)^3 M(2, 4, 2i)
  const cplx z2{0.0, 2.0};
  CHECK(rel(eval_Mtilde({-1.0, -2.0}, z2), z2 * z2 * z2 * eval_M({2.0, 4.0}, z2)) < 1e-13);
  CHECK_THROWS_AS(eval_Mtilde({1.0, 2.0}, 0.3), InvalidB);
}

TEST_CASE("derivatives through the beta identity") {
  // dM/dz at 0 is a/b
  const cplx a{1.7, 0.4}, b{2.2, -0.6};
  CHECK(rel(eval_dF(CHFKind::M, {a, b}, 0.0), a / b) < 1e-14);
  // U(1,2,z) = 1/z so U' = -1/z^2
  CHECK(rel(eval_dF(CHFKind::U, {1.0, 2.0}, 2.0), -0.25) < 1e-13);

  // central finite differences at step 1e-5, mixed tolerance
  const double h = 1e-5;
  const cplx z{1.1, 0.7};
  for (CHFKind kind : {CHFKind::M, CHFKind::U, CHFKind::Mtilde}) {
    const CHFParams p{{0.8, -0.5}, {1.6, 0.9}};
    const cplx fd = (eval_F(kind, p, z + h) - eval_F(kind, p, z - h)) / (2.0 * h);
    const cplx an = eval_dF(kind, p, z);
    INFO("kind " << static_cast<int>(kind));
    CHECK(std::abs(fd - an) / (1.0 + std::abs(an)) < 1e-7);
  }

  CHECK_THROWS_AS(eval_dF(CHFKind::Mtilde, {1.0, 2.0}, 0.5), BetaUndefined);
}

TEST_CASE("zero-energy second solution grows like e^z") {
  EvalPolicy pol;
  // solves the b=1, a=-m confluent equation: check via finite differences
  const int m = 2;
  const double z0 = 1.7, h = 1e-4;
  const cplx w0 = detail::second_solution_b1_npi(m, z0, pol);
  const cplx wp = detail::second_solution_b1_npi(m, z0 + h, pol);
  const cplx wm = detail::second_solution_b1_npi(m, z0 - h, pol);
  const cplx d1 = (wp - wm) / (2.0 * h);
  const cplx d2 = (wp - 2.0 * w0 + wm) / (h * h);
  const cplx ode = z0 * d2 + (1.0 - z0) * d1 + static_cast<double>(m) * w0;
  CHECK(std::abs(ode) < 1e-6 * (1.0 + std::abs(w0)));
  // e^z growth
  const double r1 = std::abs(detail::second_solution_b1_npi(m, 20.0, pol));
  const double r2 = std::abs(detail::second_solution_b1_npi(m, 25.0, pol));
  CHECK(r2 / r1 > 0.4 * std::exp(5.0));  // e^5 times the algebraic factor (20/25)^(m+1)
}

TEST_CASE("identity battery") {
  for (const auto& rep : run_identity_battery(400)) {
    INFO(rep.name << " worst " << rep.worst << " tol " << rep.tolerance);
    CHECK(rep.passed);
  }
}
