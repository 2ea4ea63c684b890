#include "locclab/discrim.hpp"

#include <cmath>

namespace locclab {

namespace {

void require_qubit(const Ket& psi, const char* who) {
  if (psi.dim() != 2)
    throw std::invalid_argument(std::string(who) + ": expected a single-qubit ket");
}

double mag2(const Ket& a, const Ket& b) { return std::norm(inner(a, b)); }

// det Delta within this band of zero is treated as the det >= 0 branch;
// the two closed forms coincide there.
constexpr double kDetBand = 1e-12;

} // namespace

ErrorReport helstrom_error(const BinaryInstance& inst) {
  double norm = trace_norm(discrimination_operator(inst));
  ErrorReport out;
  out.p_err = 0.5 * (1.0 - norm);
  out.norm_value = norm;
  out.strategy = "helstrom: project onto positive eigenspace of p_rho*rho - p_sigma*sigma";
  return out;
}

double det_delta(double p0, const Ket& psi0, double p1, const Ket& psi1, double p2,
                 const Ket& psi2) {
  require_qubit(psi0, "det_delta");
  require_qubit(psi1, "det_delta");
  require_qubit(psi2, "det_delta");
  return p1 * p2 * (1.0 - mag2(psi1, psi2)) - p0 * p1 * (1.0 - mag2(psi0, psi1)) -
         p0 * p2 * (1.0 - mag2(psi0, psi2));
}

ErrorReport pure_mixed_qubit_error(double p0, const Ket& psi0, double p1, const Ket& psi1,
                                   double p2, const Ket& psi2) {
  require_qubit(psi0, "pure_mixed_qubit_error");
  require_qubit(psi1, "pure_mixed_qubit_error");
  require_qubit(psi2, "pure_mixed_qubit_error");
  if (p0 < 0 || p1 < 0 || p2 < 0 || std::abs(p0 + p1 + p2 - 1.0) > 1e-9)
    throw std::invalid_argument("pure_mixed_qubit_error: weights must be >= 0 and sum to 1");
  double det = det_delta(p0, psi0, p1, psi1, p2, psi2);
  double t = std::abs(p0 - p1 - p2);
  ErrorReport out;
  if (det < -kDetBand) {
    out.p_err = 0.5 - 0.5 * std::sqrt(std::max(0.0, t * t - 4.0 * det));
    out.strategy = "lemma: det Delta <= 0 branch";
  } else {
    out.p_err = 0.5 - 0.5 * t;
    out.strategy = "lemma: det Delta > 0 branch (guess majority)";
  }
  out.norm_value = 1.0 - 2.0 * out.p_err;
  return out;
}

double error_to_norm(double p_err) {
  if (p_err < 0.0 || p_err > 0.5)
    throw std::invalid_argument("error_to_norm: p_err must lie in [0, 1/2]");
  return 1.0 - 2.0 * p_err;
}

double norm_to_error(double v) {
  if (v < 0.0 || v > 1.0)
    throw std::invalid_argument("norm_to_error: norm value must lie in [0, 1]");
  return 0.5 * (1.0 - v);
}

double nonguessing_error_bound(double p_lambda, double p_rho, double p_sigma,
                               const HermOp& pi, const HermOp& rho, const HermOp& sigma) {
  double via_states = p_rho * overlap(pi, rho) + p_sigma * overlap(pi, sigma);
  if (std::abs(via_states - p_lambda) > 1e-9)
    throw std::invalid_argument("nonguessing_error_bound: p_lambda inconsistent with pi");
  double cross = (pi.matrix() * rho.matrix() * pi.matrix() * sigma.matrix()).trace().real();
  double radicand = p_lambda * p_lambda - 4.0 * p_rho * p_sigma * cross;
  if (radicand < -1e-12)
    throw std::invalid_argument("nonguessing_error_bound: negative radicand, inconsistent inputs");
  return 0.5 * (p_lambda - std::sqrt(std::max(0.0, radicand)));
}

} // namespace locclab
