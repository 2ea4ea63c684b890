#ifndef LOCCLAB_ONEWAY_HPP
#define LOCCLAB_ONEWAY_HPP

#include "locclab/discrim.hpp"

#include <string>
#include <vector>

namespace locclab {
namespace oneway {

// Half of Alice's four-element POVM for the |00> vs (|++>,|-->)/2 ensemble:
// elements q_i |phi_i><phi_i| with |phi_i> = cos(phi_i/2)|0> + sin(phi_i/2)|1>.
// The full POVM also contains the sigma_z-rotated mirrors.  Completion
// requires q0 + q1 = 1 and q0 cos(phi0) + q1 cos(phi1) = 0.
struct AliceSubPovm {
  double q0, q1;
  double phi0, phi1;

  AliceSubPovm(double q0_, double q1_, double phi0_, double phi1_);
};

struct OneWayResult {
  double p_err = 0.5;
  // one of: computational-basis, hadamard-basis, tau-zero, interior
  std::string extremum_label = "interior";
  AliceSubPovm sub_povm{0.5, 0.5, 0.0, M_PI};
  bool global_minimum = false;
};

// Posterior data at Alice outcome lambda (0 or 1):
//   p_given_0 = (q/2)(1 + cos phi), p_given_pm = (q/2)(1 +/- sin phi),
//   reach = (q/2)(1 + cos(phi)/2).
struct BranchPosteriors {
  double p_given_0;
  double p_given_plus;
  double p_given_minus;
  double reach;
};

BranchPosteriors branch_posteriors(const AliceSubPovm& sp, int lambda);

// Whether branch lambda sits in the det Delta <= 0 regime of the posterior
// qubit problem, i.e. (1 - cos phi)^2 <= 3.
bool branch_det_nonpositive(const AliceSubPovm& sp, int lambda);

// Closed-form total error when both branches have det Delta <= 0:
//   (1 - [q0 sqrt(1+cos phi0) + q1 sqrt(1+cos phi1)]/sqrt(2))/2.
double error_both_detneg(const AliceSubPovm& sp);

// Closed-form total error when branch 0 has det Delta > 0 (cos phi0 < 0)
// and branch 1 has det Delta <= 0:
//   (1 - q1 (cos(phi1)/2 + sqrt(1+cos phi1)/sqrt(2)))/2.
double error_mixed_regime(const AliceSubPovm& sp);

// Total error of a sub-POVM via the branchwise qubit lemma, valid in any
// regime (the independent assembly the closed forms are checked against).
double error_via_lemma(const AliceSubPovm& sp);

// The stationary points of the constrained one-way optimization, with the
// global minimum flagged.
std::vector<OneWayResult> enumerate_extrema();

// Exhaustive evaluation of error_via_lemma over a (q1, phi1) grid with the
// completion constraint eliminated analytically (cos phi0 = -q1 cos(phi1)/q0);
// infeasible grid points are skipped.  When restrict_both_detneg is set, only
// sub-POVMs with both branches in the det Delta <= 0 regime are considered.
OneWayResult grid_oracle(int n_q, int n_phi, bool restrict_both_detneg = false);

} // namespace oneway
} // namespace locclab

#endif
