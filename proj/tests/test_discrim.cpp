#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locclab/discrim.hpp"
#include "test_util.hpp"

#include <random>

using namespace locclab;

namespace {

// Independent 2x2 Helstrom oracle: trace norm from trace and determinant.
double helstrom_2x2_oracle(double p0, const Matrix& rho0, double p1, const Matrix& rho1) {
  return 0.5 * (1.0 - testutil::trace_norm_2x2(p0 * rho0 - p1 * rho1));
}

struct QubitTriple {
  double p0, p1, p2;
  Ket psi0, psi1, psi2;
};

QubitTriple random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double p0 = uni(rng);
  double p1 = (1.0 - p0) * uni(rng);
  Dims q({2});
  return {p0,     p1,
          1.0 - p0 - p1,
          testutil::random_ket(rng, q),
          testutil::random_ket(rng, q),
          testutil::random_ket(rng, q)};
}

double lemma_oracle(const QubitTriple& t) {
  Matrix pure = projector(t.psi0).matrix();
  Matrix mix = t.p1 * projector(t.psi1).matrix() + t.p2 * projector(t.psi2).matrix();
  double total = t.p1 + t.p2;
  if (total < 1e-15) return 0.0;
  return helstrom_2x2_oracle(t.p0, pure, total, mix / total);
}

} // namespace

TEST_CASE("Helstrom error on the pure vs mixed two-qubit pair") {
  ErrorReport r = helstrom_error(koashi_instance());
  const double s5 = std::sqrt(5.0);
  CHECK(r.p_err == doctest::Approx((3.0 - s5) / 8.0).epsilon(1e-13));
  CHECK(r.norm_value == doctest::Approx((1.0 + s5) / 4.0).epsilon(1e-13));
}

TEST_CASE("Helstrom edge cases") {
  Dims q({2});
  HermOp z = projector(basis_ket(0, 2));
  HermOp o = projector(basis_ket(1, 2));
  // Orthogonal states: perfect discrimination.
  CHECK(helstrom_error(BinaryInstance(0.3, z, 0.7, o)).p_err == doctest::Approx(0.0));
  // Identical states: guess the likelier prior.
  CHECK(helstrom_error(BinaryInstance(0.3, z, 0.7, z)).p_err == doctest::Approx(0.3));
}

TEST_CASE("Helstrom agrees with the 2x2 closed-form oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uni(0.01, 0.99);
  Dims q({2});
  for (int trial = 0; trial < 2000; ++trial) {
    double p = uni(rng);
    Matrix a = testutil::random_density_matrix(rng, 2, 1 + trial % 2);
    Matrix b = testutil::random_density_matrix(rng, 2, 1 + (trial / 2) % 2);
    BinaryInstance inst(p, HermOp(a, q), 1.0 - p, HermOp(b, q));
    CHECK(helstrom_error(inst).p_err ==
          doctest::Approx(helstrom_2x2_oracle(p, a, 1.0 - p, b)).epsilon(1e-11));
  }
}

TEST_CASE("det Delta on hand-checkable kets") {
  Dims q({2});
  Ket k0 = basis_ket(0, 2), k1 = basis_ket(1, 2);
  Vector vp(2);
  vp << 1.0, 1.0;
  Ket plus = normalized_ket(vp, q);
  // All overlaps known: |<0|1>|^2 = 0, |<0|+>|^2 = 1/2.
  // det = p1 p2 (1-|<1|+>|^2) - p0 p1 (1-|<0|1>|^2) - p0 p2 (1-|<0|+>|^2)
  double det = det_delta(0.5, k0, 0.25, k1, 0.25, plus);
  CHECK(det == doctest::Approx(0.25 * 0.25 * 0.5 - 0.5 * 0.25 - 0.5 * 0.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("pure-vs-mixed lemma matches the eigenvalue oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10000; ++trial) {
    QubitTriple t = random_triple(rng);
    ErrorReport r = pure_mixed_qubit_error(t.p0, t.psi0, t.p1, t.psi1, t.p2, t.psi2);
    CHECK(r.p_err == doctest::Approx(lemma_oracle(t)).epsilon(1e-10));
  }
}

TEST_CASE("lemma branches are continuous across det Delta = 0") {
  // Walk pairs of draws on opposite sides of the boundary and bisect; the
  // two closed forms must agree at the crossing.
  std::mt19937_64 rng(47);
  int families = 0;
  while (families < 100) {
    QubitTriple lo = random_triple(rng);
    QubitTriple hi = lo;
    hi.p0 = rng() % 2 ? lo.p0 * 0.1 : std::min(0.999, lo.p0 * 3.0 + 0.3);
    hi.p1 = (1.0 - hi.p0) * lo.p1 / std::max(1e-12, lo.p1 + lo.p2);
    hi.p2 = 1.0 - hi.p0 - hi.p1;
    auto det_at = [&](double s) {
      double p0 = (1.0 - s) * lo.p0 + s * hi.p0;
      double p1 = (1.0 - s) * lo.p1 + s * hi.p1;
      return det_delta(p0, lo.psi0, p1, lo.psi1, 1.0 - p0 - p1, lo.psi2);
    };
    if (det_at(0.0) * det_at(1.0) >= 0.0) continue;
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (a + b);
      (det_at(a) * det_at(mid) <= 0.0 ? b : a) = mid;
    }
    auto err_at = [&](double s) {
      double p0 = (1.0 - s) * lo.p0 + s * hi.p0;
      double p1 = (1.0 - s) * lo.p1 + s * hi.p1;
      return pure_mixed_qubit_error(p0, lo.psi0, p1, lo.psi1, 1.0 - p0 - p1, lo.psi2).p_err;
    };
    double delta = 1e-9;
    double lo_s = std::max(0.0, a - delta), hi_s = std::min(1.0, b + delta);
    CHECK(std::abs(err_at(lo_s) - err_at(hi_s)) < 1e-8);
    ++families;
  }
}

TEST_CASE("error/norm conversion") {
  CHECK(error_to_norm(0.125) == doctest::Approx(0.75));
  CHECK(norm_to_error(0.75) == doctest::Approx(0.125));
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uni(0.0, 0.5);
  for (int i = 0; i < 100; ++i) {
    double e = uni(rng);
    CHECK(norm_to_error(error_to_norm(e)) == doctest::Approx(e).epsilon(1e-14));
  }
  CHECK_THROWS_AS(error_to_norm(0.6), std::invalid_argument);
  CHECK_THROWS_AS(norm_to_error(1.2), std::invalid_argument);
  CHECK_THROWS_AS(norm_to_error(-0.1), std::invalid_argument);
}

TEST_CASE("non-guessing node bound") {
  BinaryInstance inst = koashi_instance();
  const HermOp& rho = inst.rho();
  const HermOp& sigma = inst.sigma();
  HermOp id = HermOp::identity(rho.dims());
  // Identity node: the bound reduces to (1 - sqrt(1 - tr(rho sigma)))/2.
  double expected = 0.5 * (1.0 - std::sqrt(1.0 - overlap(rho, sigma)));
  CHECK(nonguessing_error_bound(1.0, 0.5, 0.5, id, rho, sigma) ==
        doctest::Approx(expected).epsilon(1e-12));
  // Orthogonal pair: bound vanishes.
  BinaryInstance dom = domino_instance();
  HermOp id9 = HermOp::identity(dom.rho().dims());
  CHECK(nonguessing_error_bound(1.0, 0.5, 0.5, id9, dom.rho(), dom.sigma()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // Inconsistent reach probability is rejected.
  CHECK_THROWS_AS(nonguessing_error_bound(0.3, 0.5, 0.5, id, rho, sigma),
                  std::invalid_argument);
}
