#include "locclab/ensembles.hpp"

#include <cmath>

namespace locclab {

namespace {

void check_density(const HermOp& s, const char* name) {
  if (std::abs(s.trace() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(name) + ": trace != 1");
  EigenSystem es = eigh(s);
  if (es.eigenvalues.minCoeff() < -kTolPsd)
    throw std::invalid_argument(std::string(name) + ": not positive semidefinite");
}

// |j> or (|j> +/- |k>)/sqrt(2) on a qutrit.
Ket qutrit(int j) { return basis_ket(j, 3); }

Ket qutrit_pm(int j, int k, int sign) {
  Vector v = Vector::Zero(3);
  v(j) = 1.0;
  v(k) = static_cast<double>(sign);
  return normalized_ket(v, Dims({3}));
}

} // namespace

Ensemble::Ensemble(std::vector<std::pair<double, HermOp>> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("Ensemble: empty");
  double total = 0.0;
  for (const auto& [w, s] : items_) {
    if (w <= 0.0) throw std::invalid_argument("Ensemble: nonpositive weight");
    check_density(s, "Ensemble state");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("Ensemble: weights do not sum to 1");
}

BinaryInstance::BinaryInstance(double p_rho, HermOp rho, double p_sigma, HermOp sigma)
    : p_rho_(p_rho), p_sigma_(p_sigma), rho_(std::move(rho)), sigma_(std::move(sigma)) {
  if (p_rho_ < 0.0 || p_sigma_ < 0.0 || std::abs(p_rho_ + p_sigma_ - 1.0) > 1e-9)
    throw std::invalid_argument("BinaryInstance: priors must be nonnegative and sum to 1");
  check_density(rho_, "BinaryInstance rho");
  check_density(sigma_, "BinaryInstance sigma");
  if (!(rho_.dims() == sigma_.dims()))
    throw std::invalid_argument("BinaryInstance: mismatched dims");
}

HermOp discrimination_operator(const BinaryInstance& inst) {
  return HermOp(inst.p_rho() * inst.rho().matrix() - inst.p_sigma() * inst.sigma().matrix(),
                inst.rho().dims());
}

std::vector<Ket> domino_states() {
  std::vector<Ket> out;
  out.reserve(9);
  out.push_back(tensor(qutrit(1), qutrit(1)));                    // psi_0
  for (int sign : {+1, -1})                                       // psi_1+-
    out.push_back(tensor(qutrit(0), qutrit_pm(0, 1, sign)));
  for (int sign : {+1, -1})                                       // psi_2+-
    out.push_back(tensor(qutrit_pm(0, 1, sign), qutrit(2)));
  for (int sign : {+1, -1})                                       // psi_3+-
    out.push_back(tensor(qutrit_pm(1, 2, sign), qutrit(0)));
  for (int sign : {+1, -1})                                       // psi_4+-
    out.push_back(tensor(qutrit(2), qutrit_pm(1, 2, sign)));
  return out;
}

Ket domino_plus(int i) {
  if (i < 1 || i > 4) throw std::invalid_argument("domino_plus: i must be 1..4");
  return domino_states()[static_cast<size_t>(2 * i - 1)];
}

Ket domino_minus(int i) {
  if (i < 1 || i > 4) throw std::invalid_argument("domino_minus: i must be 1..4");
  return domino_states()[static_cast<size_t>(2 * i)];
}

BinaryInstance domino_instance(double p_rho, double p_sigma) {
  Dims dims({3, 3});
  Matrix sigma = Matrix::Zero(9, 9);
  Matrix rho = domino_states()[0].amplitudes() * domino_states()[0].amplitudes().adjoint();
  for (int i = 1; i <= 4; ++i) {
    Vector plus = domino_plus(i).amplitudes();
    Vector minus = domino_minus(i).amplitudes();
    sigma += plus * plus.adjoint();
    rho += minus * minus.adjoint();
  }
  return BinaryInstance(p_rho, HermOp(rho / 5.0, dims), p_sigma, HermOp(sigma / 4.0, dims));
}

Ket plus_ket() {
  Vector v(2);
  v << 1.0, 1.0;
  return normalized_ket(v, Dims({2}));
}

Ket minus_ket() {
  Vector v(2);
  v << 1.0, -1.0;
  return normalized_ket(v, Dims({2}));
}

BinaryInstance koashi_instance() {
  Ket zz = tensor(basis_ket(0, 2), basis_ket(0, 2));
  Ket pp = tensor(plus_ket(), plus_ket());
  Ket mm = tensor(minus_ket(), minus_ket());
  Matrix mixed = 0.5 * (pp.amplitudes() * pp.amplitudes().adjoint() +
                        mm.amplitudes() * mm.amplitudes().adjoint());
  Dims dims({2, 2});
  return BinaryInstance(0.5, projector(zz), 0.5, HermOp(mixed, dims));
}

} // namespace locclab
