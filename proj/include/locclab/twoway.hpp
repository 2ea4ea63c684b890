#ifndef LOCCLAB_TWOWAY_HPP
#define LOCCLAB_TWOWAY_HPP

#include "locclab/discrim.hpp"

#include <string>
#include <utility>
#include <vector>

namespace locclab {
namespace twoway {

// Alice's two-outcome instrument, p parametrizing the measurement strength:
//   A0 = sqrt((1+p)/2)|0><0| + sqrt((1-p)/2)|1><1|,  A1 its bit-flip mirror.
// p = 0, 1 reduce to the optimal one-way measurement.
struct KrausPair {
  double p;
  Matrix a0, a1;
};

KrausPair kraus_pair(double p);

struct CurvePoint {
  double p;
  double p_err;
};

// Node of a measurement-outcome tree.  The accumulated POVM element is the
// product over subsystems of kraus[k]^dagger kraus[k]; bias is the posterior
// (p_sigma|lambda, p_rho|lambda) pair.
struct ProtocolNode {
  enum class Kind { Guessing, NonGuessing };

  std::string label;               // outcome sequence, e.g. "A0.B0"
  std::vector<Matrix> kraus;       // accumulated local Kraus operator per subsystem
  double reach_prob = 1.0;
  double bias_sigma = 0.5;
  double bias_rho = 0.5;
  Kind kind = Kind::NonGuessing;
  int step_subsystem = -1;         // subsystem measured by the parent to get here
  Matrix step_kraus;               // local Kraus of that step
  std::vector<ProtocolNode> children;

  bool is_leaf() const { return children.empty(); }
};

struct ProtocolTree {
  ProtocolNode root;
  double total_error = 0.0;
};

// Closed-form weighted error of the (A0, B0) branch: (3 + 2p - sqrt(4+5p))/16.
double branch_error_A0(double p);
// Closed-form weighted error of the (A1, B0) branch: (3 - 2p - sqrt(4-3p))/16.
double branch_error_A1(double p);
// Intermediate quantities of the A0 branch, exposed for testing.
double prob_A0(double p);           // P(A0) = (2+p)/4
double prob_B0_given_A0(double p);  // P(B0) = (3+2p)/(2(2+p))
// Total protocol error: (6 - sqrt(4-3p) - sqrt(4+5p))/16.
double total_error(double p);

// Alice's conditional mixture pair at the (A_lambda, B0) node, i.e. the two
// equally weighted states she must tell apart from |0>.  The branch error
// formulas correspond to the Gram data |<s_+-|0>|^2 = (1 +- p)/2 (lambda = 0
// resp. 1) together with pair fidelity |<s_+|s_->|^2 = p; the raw steered
// vectors A_lambda|+-> share the first datum but have pair fidelity p^2.
// This returns the qubit pair realizing the branch-analysis Gram data, which
// fixes the relative phase of the |1>-components to cos(delta) = (1-p)/(1+p).
std::pair<Ket, Ket> conditional_pair(double p, int lambda);

// Bracketed 1-D minimization of total_error over [0,1] (golden section).
CurvePoint minimize_total_error(double tol);

// Curve sampling with endpoints pinned to the analytic value 1/8.
std::vector<CurvePoint> sample_curve(int steps);
void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points);

// Full operator-level simulation of the two-round protocol on the
// |00> vs (|++>,|-->)/2 ensemble: Alice {A0,A1}, Bob {|0><0|,|1><1|},
// then Alice's optimal final measurement from the posterior qubit lemma.
ProtocolTree simulate_protocol(double p);

// Nodes whose majority hypothesis swaps relative to their parent.
std::vector<const ProtocolNode*> detect_bias_flips(const ProtocolNode& root);

// Two-step replacement of a local two-outcome element E so that the
// intermediate node is exactly unbiased: E1 = (1-t)I + tE with t solved by
// bisection, E2 = E1^{-1/2} E E1^{-1/2}, so the composition reproduces E.
struct SplitResult {
  Matrix e1, e2;
  double t = 0.0;
  std::pair<double, double> intermediate_bias; // (sigma, rho)
  bool identity_split = false;                 // child was already unbiased
};

SplitResult split_to_unbiased(const Matrix& element, double parent_bias_sigma,
                              double parent_bias_rho, const Matrix& rho_local,
                              const Matrix& sigma_local);

// Tree-level form: rewrites the parent's two-outcome step on the flipping
// child as the two-step cascade; returns the rewritten parent subtree.
ProtocolNode split_to_unbiased_node(const ProtocolNode& parent, int flip_child_index,
                                    const BinaryInstance& inst);

// Accumulated POVM element of a node (product over subsystems).
HermOp node_element(const ProtocolNode& node, const Dims& dims);

// Total guessing error contributed by the subtree rooted at n.
double subtree_error(const ProtocolNode& n);

} // namespace twoway
} // namespace locclab

#endif
