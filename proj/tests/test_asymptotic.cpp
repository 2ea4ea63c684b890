#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locclab/asymptotic.hpp"
#include "locclab/ensembles.hpp"
#include "test_util.hpp"

#include <random>

using namespace locclab;
using namespace locclab::asymptotic;

namespace {

Ket two_qubit(std::initializer_list<Complex> amps) {
  Vector v(4);
  int i = 0;
  for (Complex c : amps) v(i++) = c;
  return normalized_ket(v, Dims({2, 2}));
}

} // namespace

TEST_CASE("ProductOp validation and realization") {
  Dims dims({2, 2});
  Matrix a = Matrix::Identity(2, 2), b = Matrix::Identity(2, 2) * 0.5;
  ProductOp op({a, b}, dims);
  CHECK((op.realized().matrix() - kron(a, b)).cwiseAbs().maxCoeff() < 1e-14);
  Matrix neg = -a;
  CHECK_THROWS_AS(ProductOp({neg, b}, dims), std::invalid_argument);
  CHECK_THROWS_AS(ProductOp({a}, dims), std::invalid_argument);
}

TEST_CASE("identity witness at x = 1/2 passes for the domino pair") {
  BinaryInstance inst = domino_instance();
  Dims dims({3, 3});
  TheoremOneWitness w;
  w.x = 0.5;
  w.pis.emplace_back(std::vector<Matrix>{Matrix::Identity(3, 3), Matrix::Identity(3, 3)}, dims);
  WitnessReport rep = check_theorem1_witness(w, inst.rho(), inst.sigma());
  CHECK(rep.pass);
  REQUIRE(rep.conditions.size() == 3);
  for (const auto& c : rep.conditions) CHECK(std::abs(c.residual) < 1e-12);
}

TEST_CASE("projector witness at x = 1 on |00> vs |11>") {
  Dims dims({2, 2});
  HermOp rho = projector(tensor(basis_ket(0, 2), basis_ket(0, 2)));
  HermOp sigma = projector(tensor(basis_ket(1, 2), basis_ket(1, 2)));
  TheoremOneWitness w;
  w.x = 1.0;
  // Pi0 = |01><01| + |10><10| + |11><11| (explicit product decomposition),
  // Pi1 = |00><00|: never errs on rho, never fires on sigma.
  for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {1, 1}}) {
    SepTerm t;
    t.coeff = 1.0;
    t.factors = {basis_ket(i, 2).amplitudes(), basis_ket(j, 2).amplitudes()};
    w.pi0.terms.push_back(t);
  }
  Matrix p0 = basis_ket(0, 2).amplitudes() * basis_ket(0, 2).amplitudes().adjoint();
  w.pis.emplace_back(std::vector<Matrix>{p0, p0}, dims);
  WitnessReport rep = check_theorem1_witness(w, rho, sigma);
  CHECK(rep.pass);
}

TEST_CASE("witness invariant violations are rejected up front") {
  BinaryInstance inst = domino_instance();
  Dims dims({3, 3});
  TheoremOneWitness incomplete;
  incomplete.x = 0.5;
  incomplete.pis.emplace_back(
      std::vector<Matrix>{0.5 * Matrix::Identity(3, 3), Matrix::Identity(3, 3)}, dims);
  CHECK_THROWS_AS(check_theorem1_witness(incomplete, inst.rho(), inst.sigma()),
                  std::invalid_argument);

  TheoremOneWitness bad_x;
  bad_x.x = 0.3;
  bad_x.pis.emplace_back(
      std::vector<Matrix>{Matrix::Identity(3, 3), Matrix::Identity(3, 3)}, dims);
  CHECK_THROWS_AS(check_theorem1_witness(bad_x, inst.rho(), inst.sigma()),
                  std::invalid_argument);

  // Non-orthogonal hypothesis pair.
  BinaryInstance ko = koashi_instance();
  TheoremOneWitness idw;
  idw.x = 0.5;
  idw.pis.emplace_back(
      std::vector<Matrix>{Matrix::Identity(2, 2), Matrix::Identity(2, 2)}, Dims({2, 2}));
  CHECK_THROWS_AS(check_theorem1_witness(idw, ko.rho(), ko.sigma()), std::invalid_argument);
}

TEST_CASE("forced-form operators satisfy the witness conditions individually") {
  BinaryInstance inst = domino_instance();
  const Matrix& rho = inst.rho().matrix();
  const Matrix& sigma = inst.sigma().matrix();
  double x = 0.7;
  for (int i = 1; i <= 4; ++i) {
    Vector vp = domino_plus(i).amplitudes();
    Vector vm = domino_minus(i).amplitudes();
    // Balance condition fixes the weight ratio: (1-x) c- /5 = x c+ /4.
    double cp = (1.0 - x) / 5.0, cm = x / 4.0;
    Matrix pi = cp * (vp * vp.adjoint()) + cm * (vm * vm.adjoint());
    CHECK(std::abs((pi * rho * pi * sigma).trace().real()) < 1e-12);
    CHECK(std::abs((pi * ((1.0 - x) * rho - x * sigma)).trace().real()) < 1e-12);
  }
}

TEST_CASE("product states in supp(sigma) are exactly the four psi_i+") {
  BinaryInstance inst = domino_instance();
  ProductSpanResult res = product_states_in_span(support(inst.sigma()), Dims({3, 3}));
  REQUIRE(res.kind == SpanKind::Finite);
  REQUIRE(res.states.size() == 4);
  for (int i = 1; i <= 4; ++i) {
    Ket target = domino_plus(i);
    bool matched = false;
    for (const Ket& s : res.states)
      if (std::abs(std::abs(inner(target, s)) - 1.0) < 1e-8) matched = true;
    CHECK(matched);
  }
  for (double r : res.residuals) CHECK(r < 1e-9);
}

TEST_CASE("span of |00>, |11> contains exactly those two product states") {
  Dims dims({2, 2});
  std::vector<Ket> basis = {tensor(basis_ket(0, 2), basis_ket(0, 2)),
                            tensor(basis_ket(1, 2), basis_ket(1, 2))};
  ProductSpanResult res = product_states_in_span(basis, dims);
  REQUIRE(res.kind == SpanKind::Finite);
  REQUIRE(res.states.size() == 2);
  for (const Ket& b : basis) {
    bool matched = false;
    for (const Ket& s : res.states)
      if (std::abs(std::abs(inner(b, s)) - 1.0) < 1e-9) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("tensor-product subspace is detected, not enumerated") {
  Dims dims({2, 2});
  std::vector<Ket> basis = {tensor(basis_ket(0, 2), basis_ket(0, 2)),
                            tensor(basis_ket(0, 2), basis_ket(1, 2))};
  ProductSpanResult res = product_states_in_span(basis, dims);
  CHECK(res.kind == SpanKind::TensorProductSubspace);
  CHECK(res.states.empty());
}

TEST_CASE("dependent basis is rejected") {
  Dims dims({2, 2});
  Ket v = tensor(basis_ket(0, 2), basis_ket(0, 2));
  CHECK_THROWS_AS(product_states_in_span({v, v}, dims), std::invalid_argument);
}

TEST_CASE("2D classifier: orthogonal product pair") {
  Dims dims({2, 2});
  Ket v1 = tensor(basis_ket(0, 2), basis_ket(0, 2));
  Vector beta(2);
  beta << 0.6, 0.8;
  Ket v2 = tensor(basis_ket(1, 2), Ket(beta, Dims({2})));
  ProductBasis2dResult res = product_basis_2d(v1, v2, dims);
  REQUIRE(res.kind == SpanKind::Finite);
  REQUIRE(res.states.size() == 2);
  CHECK(res.orthogonal);
}

TEST_CASE("2D classifier: non-orthogonal product pair") {
  Dims dims({2, 2});
  double alpha = 0.7, beta = -0.4;
  Ket s1 = two_qubit({1.0, 0.0, 0.0, 0.0});
  Ket s2 = two_qubit({alpha * beta, alpha, beta, 1.0});
  // Orthonormalize the second generator against the first before classifying.
  Vector w = s2.amplitudes() - s1.amplitudes() * s1.amplitudes().dot(s2.amplitudes());
  ProductBasis2dResult res = product_basis_2d(s1, normalized_ket(w, dims), dims);
  REQUIRE(res.kind == SpanKind::Finite);
  REQUIRE(res.states.size() == 2);
  CHECK_FALSE(res.orthogonal);
  for (const Ket& expect : {s1, s2}) {
    bool matched = false;
    for (const Ket& s : res.states)
      if (std::abs(std::abs(inner(expect, s)) - 1.0) < 1e-9) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("2D classifier: two maximally entangled generators") {
  Dims dims({2, 2});
  Ket bell1 = two_qubit({1.0, 0.0, 0.0, 1.0});
  Ket bell2 = two_qubit({0.0, 1.0, -1.0, 0.0});
  ProductBasis2dResult res = product_basis_2d(bell1, bell2, dims);
  REQUIRE(res.kind == SpanKind::Finite);
  // The pencil quadratic has roots t = +-i, giving two product states.
  CHECK(res.states.size() == 2);
  for (double r : res.residuals) CHECK(r < 1e-9);
}

TEST_CASE("random non-product 2D spans of 2x2 have at most two product states") {
  std::mt19937_64 rng(71);
  Dims dims({2, 2});
  int checked = 0;
  while (checked < 1000) {
    Ket v1 = testutil::random_ket(rng, dims);
    Vector raw = testutil::random_ket_vec(rng, 4);
    Vector w = raw - v1.amplitudes() * v1.amplitudes().dot(raw);
    if (w.norm() < 1e-3) continue;
    ProductBasis2dResult res = product_basis_2d(v1, normalized_ket(w, dims), dims);
    if (res.kind != SpanKind::Finite) continue; // random TP subspaces are measure zero anyway
    CHECK(res.states.size() <= 2);
    for (double r : res.residuals) CHECK(r < 1e-9);
    ++checked;
  }
}

TEST_CASE("full-rank lemma check on constructed operators") {
  Dims dims({2, 2});
  Ket k00 = tensor(basis_ket(0, 2), basis_ket(0, 2));
  Ket k11 = tensor(basis_ket(1, 2), basis_ket(1, 2));
  // Positive eigenspace span{|00>,|11>}: has an orthonormal product basis; the
  // complement span{|01>,|10>} does as well.
  Matrix pv = projector(k00).matrix() + projector(k11).matrix();
  HermOp m1(2.0 * pv - Matrix::Identity(4, 4), dims);
  CHECK(full_rank_lemma_check(m1).product_bases_exist);

  // Positive eigenspace a tensor-product subspace |0> x C^2.
  Matrix p0 = kron(basis_ket(0, 2).amplitudes() * basis_ket(0, 2).amplitudes().adjoint(),
                   Matrix::Identity(2, 2));
  HermOp m2(2.0 * p0 - Matrix::Identity(4, 4), dims);
  CHECK(full_rank_lemma_check(m2).product_bases_exist);

  // Positive eigenspace with two non-orthogonal product states.
  Ket s2 = two_qubit({0.7 * -0.4, 0.7, -0.4, 1.0});
  Vector w = s2.amplitudes() - k00.amplitudes() * k00.amplitudes().dot(s2.amplitudes());
  Matrix pw = projector(k00).matrix() + w.normalized() * w.normalized().adjoint();
  HermOp m3(2.0 * pw - Matrix::Identity(4, 4), dims);
  CHECK_FALSE(full_rank_lemma_check(m3).product_bases_exist);

  // Rank-deficient input is rejected.
  HermOp sing(pv, dims);
  CHECK_THROWS_AS(full_rank_lemma_check(sing), std::invalid_argument);
}

TEST_CASE("no-go certificate: reduced-budget run") {
  NoGoCertificate cert = domino_nogo_certificate({0.75}, 60, 0);
  CHECK(cert.conclusion);
  CHECK_FALSE(cert.inconclusive);
  CHECK(cert.product_states_in_supp_sigma.size() == 4);
  REQUIRE(cert.forced_form_checks.size() == 1);
  const ForcedFormStage& stage = cert.forced_form_checks[0];
  CHECK(stage.converged > 0);
  CHECK(stage.classified == stage.converged);
  CHECK(stage.max_family_distance < 1e-6);
  CHECK(cert.max_uncovered_overlap < 1e-9);
  REQUIRE(cert.uncovered_vector.has_value());
  CHECK(std::abs(std::abs(inner(*cert.uncovered_vector,
                                tensor(basis_ket(1, 3), basis_ket(1, 3)))) -
                 1.0) < 1e-12);
}

TEST_CASE("certificate rejects boundary and out-of-range x") {
  CHECK_THROWS_AS(domino_nogo_certificate({0.5}, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(domino_nogo_certificate({1.0}, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(domino_nogo_certificate({}, 10, 0), std::invalid_argument);
}

TEST_CASE("certificate is deterministic for a fixed seed") {
  NoGoCertificate a = domino_nogo_certificate({0.75}, 25, 7);
  NoGoCertificate b = domino_nogo_certificate({0.75}, 25, 7);
  REQUIRE(a.forced_form_checks.size() == b.forced_form_checks.size());
  CHECK(a.forced_form_checks[0].converged == b.forced_form_checks[0].converged);
  CHECK(a.forced_form_checks[0].max_family_distance ==
        b.forced_form_checks[0].max_family_distance);
}
