#include "locclab/oneway.hpp"

#include <cmath>
#include <limits>

namespace locclab {
namespace oneway {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double branch_cos(const AliceSubPovm& sp, int lambda) {
  return std::cos(lambda == 0 ? sp.phi0 : sp.phi1);
}

// Error of Bob's posterior problem at outcome lambda, times 2 P(lambda).
double weighted_branch_error(const AliceSubPovm& sp, int lambda) {
  double q = lambda == 0 ? sp.q0 : sp.q1;
  if (q < 1e-15) return 0.0;
  BranchPosteriors bp = branch_posteriors(sp, lambda);
  double w0 = bp.p_given_0 / (2.0 * bp.reach);
  double wp = bp.p_given_plus / (4.0 * bp.reach);
  double wm = bp.p_given_minus / (4.0 * bp.reach);
  ErrorReport err = pure_mixed_qubit_error(w0, basis_ket(0, 2), wp, plus_ket(), wm, minus_ket());
  return 2.0 * bp.reach * err.p_err;
}

} // namespace

AliceSubPovm::AliceSubPovm(double q0_, double q1_, double phi0_, double phi1_)
    : q0(q0_), q1(q1_), phi0(phi0_), phi1(phi1_) {
  if (q0 < -1e-12 || q1 < -1e-12 || std::abs(q0 + q1 - 1.0) > 1e-9)
    throw std::invalid_argument("AliceSubPovm: weights must be >= 0 and sum to 1");
  if (std::abs(q0 * std::cos(phi0) + q1 * std::cos(phi1)) > 1e-9)
    throw std::invalid_argument("AliceSubPovm: completion constraint violated");
}

BranchPosteriors branch_posteriors(const AliceSubPovm& sp, int lambda) {
  if (lambda != 0 && lambda != 1)
    throw std::invalid_argument("branch_posteriors: lambda must be 0 or 1");
  double q = lambda == 0 ? sp.q0 : sp.q1;
  double phi = lambda == 0 ? sp.phi0 : sp.phi1;
  BranchPosteriors out;
  out.p_given_0 = 0.5 * q * (1.0 + std::cos(phi));
  out.p_given_plus = 0.5 * q * (1.0 + std::sin(phi));
  out.p_given_minus = 0.5 * q * (1.0 - std::sin(phi));
  out.reach = 0.5 * q * (1.0 + 0.5 * std::cos(phi));
  return out;
}

bool branch_det_nonpositive(const AliceSubPovm& sp, int lambda) {
  double c = branch_cos(sp, lambda);
  return (1.0 - c) * (1.0 - c) <= 3.0;
}

double error_both_detneg(const AliceSubPovm& sp) {
  if (!branch_det_nonpositive(sp, 0) || !branch_det_nonpositive(sp, 1))
    throw std::invalid_argument(
        "error_both_detneg: a branch violates the det Delta <= 0 regime, (1-cos phi)^2 > 3");
  double c0 = branch_cos(sp, 0), c1 = branch_cos(sp, 1);
  return 0.5 * (1.0 - kInvSqrt2 * (sp.q0 * std::sqrt(1.0 + c0) + sp.q1 * std::sqrt(1.0 + c1)));
}

double error_mixed_regime(const AliceSubPovm& sp) {
  if (branch_det_nonpositive(sp, 0))
    throw std::invalid_argument("error_mixed_regime: branch 0 must have det Delta > 0");
  if (!branch_det_nonpositive(sp, 1))
    throw std::invalid_argument("error_mixed_regime: branch 1 must have det Delta <= 0");
  double c1 = branch_cos(sp, 1);
  return 0.5 * (1.0 - sp.q1 * (0.5 * c1 + kInvSqrt2 * std::sqrt(1.0 + c1)));
}

double error_via_lemma(const AliceSubPovm& sp) {
  return weighted_branch_error(sp, 0) + weighted_branch_error(sp, 1);
}

std::vector<OneWayResult> enumerate_extrema() {
  std::vector<OneWayResult> out;

  // tau = 0: cos(phi1)/2 + sqrt(1+cos phi1)/sqrt(2) = 0, i.e. cos phi1 = 1 - sqrt(3).
  {
    OneWayResult r;
    double c1 = 1.0 - std::sqrt(3.0);
    double c0 = -0.5 * c1 / 0.5;
    r.sub_povm = AliceSubPovm(0.5, 0.5, std::acos(c0), std::acos(c1));
    r.p_err = 0.5;
    r.extremum_label = "tau-zero";
    out.push_back(r);
  }
  // q1 = 1, cos phi1 = 0: Alice measures in the Hadamard basis.
  {
    OneWayResult r;
    r.sub_povm = AliceSubPovm(0.0, 1.0, M_PI, 0.5 * M_PI);
    r.p_err = 0.5 * (1.0 - kInvSqrt2);
    r.extremum_label = "hadamard-basis";
    out.push_back(r);
  }
  // cos phi0 = -1, cos phi1 = 1, q1 = 1/2: Alice measures in the computational basis.
  {
    OneWayResult r;
    r.sub_povm = AliceSubPovm(0.5, 0.5, M_PI, 0.0);
    r.p_err = 0.125;
    r.extremum_label = "computational-basis";
    out.push_back(r);
  }

  // Flag the global minimum: smallest p_err, ties broken by label order.
  size_t best = 0;
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].p_err < out[best].p_err ||
        (out[i].p_err == out[best].p_err && out[i].extremum_label < out[best].extremum_label))
      best = i;
  }
  out[best].global_minimum = true;
  return out;
}

OneWayResult grid_oracle(int n_q, int n_phi, bool restrict_both_detneg) {
  if (n_q < 64 || n_phi < 64)
    throw std::invalid_argument("grid_oracle: grid sizes must be >= 64");

  OneWayResult best;
  best.p_err = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n_q; ++i) {
    double q1 = static_cast<double>(i) / n_q;
    double q0 = 1.0 - q1;
    for (int j = 0; j < n_phi; ++j) {
      double phi1 = 2.0 * M_PI * j / n_phi;
      double c1 = std::cos(phi1);
      double c0;
      if (q0 < 1e-12) {
        // q0 = 0: feasible only when the constraint already balances.
        if (std::abs(q1 * c1) > 1e-12) continue;
        c0 = 0.0;
      } else {
        c0 = -q1 * c1 / q0;
        if (c0 < -1.0 || c0 > 1.0) continue; // constraint unsolvable here
      }
      if (restrict_both_detneg &&
          ((1.0 - c0) * (1.0 - c0) > 3.0 || (1.0 - c1) * (1.0 - c1) > 3.0))
        continue;
      AliceSubPovm sp(q0, q1, std::acos(std::clamp(c0, -1.0, 1.0)), phi1);
      double err = error_via_lemma(sp);
      if (err < best.p_err) {
        best.p_err = err;
        best.sub_povm = sp;
      }
    }
  }

  best.extremum_label = "interior";
  for (const OneWayResult& ex : enumerate_extrema())
    if (std::abs(best.p_err - ex.p_err) < 1e-9) {
      best.extremum_label = ex.extremum_label;
      break;
    }
  return best;
}

} // namespace oneway
} // namespace locclab
