#ifndef LOCCLAB_ENSEMBLES_HPP
#define LOCCLAB_ENSEMBLES_HPP

#include "locclab/qcore.hpp"

#include <utility>
#include <vector>

namespace locclab {

// Weighted list of density operators, weights summing to one.
class Ensemble {
public:
  explicit Ensemble(std::vector<std::pair<double, HermOp>> items);
  const std::vector<std::pair<double, HermOp>>& items() const { return items_; }

private:
  std::vector<std::pair<double, HermOp>> items_;
};

// Two-hypothesis discrimination instance.  Priors are stored even for
// perfect-discrimination questions, since minimum-error operations need them.
class BinaryInstance {
public:
  BinaryInstance(double p_rho, HermOp rho, double p_sigma, HermOp sigma);

  double p_rho() const { return p_rho_; }
  double p_sigma() const { return p_sigma_; }
  const HermOp& rho() const { return rho_; }
  const HermOp& sigma() const { return sigma_; }

private:
  double p_rho_, p_sigma_;
  HermOp rho_, sigma_;
};

// M = p_rho * rho - p_sigma * sigma.
HermOp discrimination_operator(const BinaryInstance& inst);

// The nine orthogonal 3x3 domino product states, in the order
// psi_0, psi_1+, psi_1-, psi_2+, psi_2-, psi_3+, psi_3-, psi_4+, psi_4-.
std::vector<Ket> domino_states();

// Indexing helpers into domino_states(): i in 1..4.
Ket domino_plus(int i);
Ket domino_minus(int i);

// sigma = (1/4) sum |psi_i+><psi_i+|, rho = (1/5)(|psi_0><psi_0| + sum |psi_i-><psi_i-|).
BinaryInstance domino_instance(double p_rho = 0.5, double p_sigma = 0.5);

// The equiprobable two-qubit pair psi = |00><00| vs rho = (|++><++| + |--><--|)/2.
// The pure state occupies the rho slot of the instance.
BinaryInstance koashi_instance();

// Single-qubit |+> and |-> states.
Ket plus_ket();
Ket minus_ket();

} // namespace locclab

#endif
