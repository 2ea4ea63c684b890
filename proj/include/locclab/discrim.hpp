#ifndef LOCCLAB_DISCRIM_HPP
#define LOCCLAB_DISCRIM_HPP

#include "locclab/ensembles.hpp"
#include "locclab/qcore.hpp"

#include <string>

namespace locclab {

// Result of a minimum-error computation.  norm_value = 1 - 2*p_err is the
// distinguishability-norm value of M = p_rho*rho - p_sigma*sigma attained by
// the reported strategy.
struct ErrorReport {
  double p_err = 0.0;
  double norm_value = 0.0;
  std::string strategy; // free-form record of the achieving measurement
};

// Globally optimal error probability, p_err = (1 - ||p_rho*rho - p_sigma*sigma||_1)/2.
ErrorReport helstrom_error(const BinaryInstance& inst);

// det of Delta = p0|psi0><psi0| - p1|psi1><psi1| - p2|psi2><psi2| for qubit kets.
double det_delta(double p0, const Ket& psi0, double p1, const Ket& psi1, double p2,
                 const Ket& psi2);

// Closed-form minimum error for distinguishing the weighted qubit states
// p0|psi0><psi0| versus p1|psi1><psi1| + p2|psi2><psi2|:
//   (1 - sqrt(|p0-p1-p2|^2 - 4 det Delta))/2   if det Delta <= 0,
//   (1 - |p0-p1-p2|)/2                         otherwise.
ErrorReport pure_mixed_qubit_error(double p0, const Ket& psi0, double p1, const Ket& psi1,
                                   double p2, const Ket& psi2);

double error_to_norm(double p_err);
double norm_to_error(double v);

// Lower bound on the eventual guessing error from a non-guessing protocol
// node with accumulated product operator pi:
//   (p_lambda - sqrt(p_lambda^2 - 4 p_rho p_sigma tr(pi rho pi sigma)))/2.
// p_lambda must be consistent with p_rho tr(pi rho) + p_sigma tr(pi sigma).
double nonguessing_error_bound(double p_lambda, double p_rho, double p_sigma,
                               const HermOp& pi, const HermOp& rho, const HermOp& sigma);

} // namespace locclab

#endif
