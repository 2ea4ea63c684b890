#ifndef LOCCLAB_ASYMPTOTIC_HPP
#define LOCCLAB_ASYMPTOTIC_HPP

#include "locclab/qcore.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locclab {
namespace asymptotic {

// Tensor product of local positive operators, one factor per subsystem.
class ProductOp {
public:
  ProductOp(std::vector<Matrix> factors, Dims dims);

  const std::vector<Matrix>& factors() const { return factors_; }
  const Dims& dims() const { return dims_; }
  HermOp realized() const;

private:
  std::vector<Matrix> factors_;
  Dims dims_;
};

// Explicit separable decomposition: positive combination of products of
// rank-one local projectors.  Separability is never decided algorithmically;
// only membership of the given decomposition is verified.
struct SepTerm {
  double coeff;                 // > 0
  std::vector<Vector> factors;  // one local ket per subsystem
};

struct SepWitness {
  std::vector<SepTerm> terms;
  Matrix realized(const Dims& dims) const;
};

struct TheoremOneWitness {
  SepWitness pi0;
  std::vector<ProductOp> pis;
  double x; // in [1/2, 1]
};

struct ConditionReport {
  std::string name;
  double residual;
  bool pass;
};

struct WitnessReport {
  std::vector<ConditionReport> conditions;
  bool pass = false;
};

// Verifies the three asymptotic-discrimination conditions of the witness:
// tr(Pi0 rho) = 0, tr(Pi_l rho Pi_l sigma) = 0 for each l, and
// tr[Pi_l ((1-x) rho - x sigma)] = 0 for each l.  The witness invariants
// (positivity, completeness, element count <= prod d_k^2 + 1) are checked
// first and rejected with an exception on violation.
WitnessReport check_theorem1_witness(const TheoremOneWitness& w, const HermOp& rho,
                                     const HermOp& sigma, double tol = 1e-9);

enum class SpanKind {
  Finite,                // finitely many product states, all returned
  TensorProductSubspace, // V_A tensor V_B: a continuum of product states
  Continuum,             // non-product continuum detected; no finite list
};

struct ProductSpanResult {
  SpanKind kind = SpanKind::Finite;
  std::vector<Ket> states;
  std::vector<double> residuals; // in-span + rank-one residual per state
  std::string note;
};

// All product vectors (up to phase) in the span of the given bipartite
// basis vectors (span dimension <= 4).  Solutions of the vanishing-minor
// system, located by deterministic multi-start alternating least squares
// and verified rank-one and in-span.
ProductSpanResult product_states_in_span(const std::vector<Ket>& basis, const Dims& dims);

struct ProductBasis2dResult {
  SpanKind kind = SpanKind::Finite;
  std::vector<Ket> states; // 0, 1 or 2 product states when kind == Finite
  bool orthogonal = false; // meaningful when two states are returned
  std::vector<double> residuals;
};

// Classifies the two-dimensional span of two orthonormal bipartite vectors:
// a tensor-product subspace, or at most two product states found as the
// rank-one members of the matrix pencil (roots of the 2x2-minor quadratics).
ProductBasis2dResult product_basis_2d(const Ket& v1, const Ket& v2, const Dims& dims);

struct LemmaCheckResult {
  bool product_bases_exist = false;
  std::string evidence;
};

// For a full-rank bipartite operator with a positive or negative eigenspace
// of dimension two: decides whether both eigenspaces admit orthonormal
// product bases, i.e. whether the trace norm is LOCC-attainable.
LemmaCheckResult full_rank_lemma_check(const HermOp& m);

// One converged stage-(b) solution and its classification data.
struct ForcedFormRecord {
  Matrix factor_a, factor_b;   // the product operator's local factors
  double residual_overlap;     // |tr(Pi rho Pi sigma)|
  double residual_balance;     // |tr(Pi ((1-x) rho - x sigma))|
  double family_distance;      // Frobenius distance to the nearest forced form
  int family_index;            // which psi_i pair, 1..4
  bool in_family;
};

struct ForcedFormStage {
  double x;
  int restarts;
  int converged;
  int classified;
  double max_family_distance = 0.0;
  std::vector<ForcedFormRecord> records;
};

struct NoGoCertificate {
  std::vector<Ket> product_states_in_supp_sigma;
  std::vector<ForcedFormStage> forced_form_checks;
  std::optional<Ket> uncovered_vector; // |11>
  double max_uncovered_overlap = 0.0;
  bool conclusion = false;
  bool inconclusive = false;
  std::string note;
};

// Numerical certificate of the domino-states separation: (a) the four
// psi_i+ are the only product states in supp(sigma); (b) a multi-start
// search over product operators satisfying the overlap and balance
// conditions at each sampled x finds only operators of the forced
// two-dimensional form; (c) |11> lies outside the union of the forced
// supports.  A certificate is evidence, not proof.
NoGoCertificate domino_nogo_certificate(const std::vector<double>& x_samples,
                                        int restarts = 1000, std::uint64_t seed = 0);

} // namespace asymptotic
} // namespace locclab

#endif
