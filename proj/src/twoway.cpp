#include "locclab/twoway.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace locclab {
namespace twoway {

namespace {

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix matrix_invsqrt_pd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("matrix_invsqrt_pd: operator is singular");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix joint_kraus(const ProtocolNode& n) {
  Matrix k = n.kraus.front();
  for (size_t i = 1; i < n.kraus.size(); ++i) k = kron(k, n.kraus[i]);
  return k;
}

// Reach probability and posterior bias from the accumulated element.
void fill_stats(ProtocolNode& n, const BinaryInstance& inst) {
  Matrix k = joint_kraus(n);
  double w_rho = inst.p_rho() * (k * inst.rho().matrix() * k.adjoint()).trace().real();
  double w_sigma = inst.p_sigma() * (k * inst.sigma().matrix() * k.adjoint()).trace().real();
  n.reach_prob = w_rho + w_sigma;
  if (n.reach_prob > 1e-15) {
    n.bias_rho = w_rho / n.reach_prob;
    n.bias_sigma = w_sigma / n.reach_prob;
  } else {
    n.bias_rho = n.bias_sigma = 0.5; // unreachable branch, bias undefined
  }
}

void collect_flips(const ProtocolNode& parent, std::vector<const ProtocolNode*>& out) {
  for (const ProtocolNode& c : parent.children) {
    if (c.reach_prob > 1e-15) {
      bool sigma_major = parent.bias_sigma > parent.bias_rho;
      bool rho_major = parent.bias_rho > parent.bias_sigma;
      if ((sigma_major && c.bias_rho >= c.bias_sigma) ||
          (rho_major && c.bias_sigma >= c.bias_rho))
        out.push_back(&c);
    }
    collect_flips(c, out);
  }
}

} // namespace

double subtree_error(const ProtocolNode& n) {
  if (n.is_leaf())
    return n.kind == ProtocolNode::Kind::Guessing
               ? n.reach_prob * std::min(n.bias_sigma, n.bias_rho)
               : 0.0;
  double total = 0.0;
  for (const ProtocolNode& c : n.children) total += subtree_error(c);
  return total;
}

KrausPair kraus_pair(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("kraus_pair: p must lie in [0,1]");
  double hi = std::sqrt(0.5 * (1.0 + p)), lo = std::sqrt(0.5 * (1.0 - p));
  KrausPair kp;
  kp.p = p;
  kp.a0 = Matrix::Zero(2, 2);
  kp.a1 = Matrix::Zero(2, 2);
  kp.a0(0, 0) = hi;
  kp.a0(1, 1) = lo;
  kp.a1(0, 0) = lo;
  kp.a1(1, 1) = hi;
  return kp;
}

double prob_A0(double p) { return (2.0 + p) / 4.0; }
double prob_B0_given_A0(double p) { return (3.0 + 2.0 * p) / (2.0 * (2.0 + p)); }

double branch_error_A0(double p) { return (3.0 + 2.0 * p - std::sqrt(4.0 + 5.0 * p)) / 16.0; }
double branch_error_A1(double p) { return (3.0 - 2.0 * p - std::sqrt(4.0 - 3.0 * p)) / 16.0; }

std::pair<Ket, Ket> conditional_pair(double p, int lambda) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("conditional_pair: p must lie in [0,1]");
  if (lambda != 0 && lambda != 1)
    throw std::invalid_argument("conditional_pair: lambda must be 0 or 1");
  double c2 = lambda == 0 ? 0.5 * (1.0 + p) : 0.5 * (1.0 - p);
  double s2 = 1.0 - c2;
  // Relative phase delta between the two |1>-components making the pair
  // fidelity c2^2 + s2^2 - 2 c2 s2 cos(delta) equal p.
  double cosd = std::clamp((1.0 - p) / (1.0 + p), -1.0, 1.0);
  double half = 0.5 * std::acos(cosd);
  Complex ph(std::cos(half), std::sin(half));
  Vector sp(2), sm(2);
  sp << std::sqrt(c2), std::conj(ph) * std::sqrt(s2);
  sm << std::sqrt(c2), -ph * std::sqrt(s2);
  Dims d(std::vector<int>{2});
  return {Ket(sp, d), Ket(sm, d)};
}

double total_error(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("total_error: p must lie in [0,1]");
  return (6.0 - std::sqrt(4.0 - 3.0 * p) - std::sqrt(4.0 + 5.0 * p)) / 16.0;
}

CurvePoint minimize_total_error(double tol) {
  if (tol <= 0.0) throw std::invalid_argument("minimize_total_error: tol must be positive");
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 1.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = total_error(c), fd = total_error(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = total_error(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = total_error(d);
    }
  }
  double p = 0.5 * (a + b);
  return CurvePoint{p, total_error(p)};
}

std::vector<CurvePoint> sample_curve(int steps) {
  if (steps < 2) throw std::invalid_argument("sample_curve: steps must be >= 2");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    double p = static_cast<double>(i) / steps;
    double err = (i == 0 || i == steps) ? 0.125 : total_error(p);
    out.push_back(CurvePoint{p, err});
  }
  return out;
}

void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
  out << "p,p_err\n" << std::setprecision(17);
  for (const CurvePoint& pt : points) out << pt.p << ',' << pt.p_err << '\n';
}

ProtocolTree simulate_protocol(double p) {
  BinaryInstance inst = koashi_instance(); // rho slot = |00><00|, sigma slot = the mixture
  KrausPair kp = kraus_pair(p);
  Matrix id = Matrix::Identity(2, 2);
  Matrix proj0 = Matrix::Zero(2, 2), proj1 = Matrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  proj1(1, 1) = 1.0;

  ProtocolTree tree;
  tree.root.label = "root";
  tree.root.kraus = {id, id};
  fill_stats(tree.root, inst);

  for (int lam = 0; lam < 2; ++lam) {
    const Matrix& a = lam == 0 ? kp.a0 : kp.a1;
    ProtocolNode alice;
    alice.label = lam == 0 ? "A0" : "A1";
    alice.kraus = {a, id};
    alice.step_subsystem = 0;
    alice.step_kraus = a;
    fill_stats(alice, inst);

    for (int mu = 0; mu < 2; ++mu) {
      const Matrix& b = mu == 0 ? proj0 : proj1;
      ProtocolNode bob;
      bob.label = alice.label + (mu == 0 ? ".B0" : ".B1");
      bob.kraus = {a, b};
      bob.step_subsystem = 1;
      bob.step_kraus = b;
      fill_stats(bob, inst);

      if (mu == 1) {
        // Bob saw |1>: the pure hypothesis |00> is ruled out, guess the mixture.
        bob.kind = ProtocolNode::Kind::Guessing;
        alice.children.push_back(std::move(bob));
        continue;
      }

      // Alice's final round.  Her pure-hypothesis state is A|0> (proportional
      // to |0>); the mixture hypothesis is the equally weighted conditional
      // pair, whose Gram data the branch analysis fixes (see conditional_pair).
      // The optimal measurement is the Helstrom projector of the posterior
      // qubit operator (the lemma's achieving POVM).
      Vector e0 = basis_ket(0, 2).amplitudes();
      auto pair = conditional_pair(p, lam);
      const Vector& spv = pair.first.amplitudes();
      const Vector& smv = pair.second.amplitudes();
      double w0 = 0.5 * (a * e0).squaredNorm();  // |00>: Bob surely measures 0
      double wp = 1.0 / 16.0;  // |++>: outcome A_lambda w.p. 1/2, then B0 w.p. 1/2
      double wm = 1.0 / 16.0;
      double reach = w0 + wp + wm;
      Matrix delta = (w0 / reach) * (e0 * e0.adjoint()) -
                     (wp / reach) * (spv * spv.adjoint()) -
                     (wm / reach) * (smv * smv.adjoint());

      Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
      Matrix p_pos = Matrix::Zero(2, 2);
      for (int i = 0; i < 2; ++i)
        if (es.eigenvalues()(i) > 0)
          p_pos += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();

      for (int nu = 0; nu < 2; ++nu) {
        Matrix e = nu == 0 ? p_pos : Matrix(id - p_pos);
        ProtocolNode leaf;
        leaf.label = bob.label + (nu == 0 ? ".guess-pure" : ".guess-mixed");
        leaf.kraus = {Matrix(e * a), b};
        leaf.step_subsystem = 0;
        leaf.step_kraus = e;
        leaf.kind = ProtocolNode::Kind::Guessing;
        double wr = w0 * (e0.adjoint() * e * e0)(0).real();
        double ws = wp * (spv.adjoint() * e * spv)(0).real() +
                    wm * (smv.adjoint() * e * smv)(0).real();
        leaf.reach_prob = wr + ws;
        if (leaf.reach_prob > 1e-15) {
          leaf.bias_rho = wr / leaf.reach_prob;
          leaf.bias_sigma = ws / leaf.reach_prob;
        } else {
          leaf.bias_rho = leaf.bias_sigma = 0.5;
        }
        bob.children.push_back(std::move(leaf));
      }
      alice.children.push_back(std::move(bob));
    }
    tree.root.children.push_back(std::move(alice));
  }

  tree.total_error = subtree_error(tree.root);
  return tree;
}

std::vector<const ProtocolNode*> detect_bias_flips(const ProtocolNode& root) {
  std::vector<const ProtocolNode*> out;
  collect_flips(root, out);
  return out;
}

SplitResult split_to_unbiased(const Matrix& element, double parent_bias_sigma,
                              double parent_bias_rho, const Matrix& rho_local,
                              const Matrix& sigma_local) {
  if (std::abs(parent_bias_sigma + parent_bias_rho - 1.0) > 1e-9)
    throw std::invalid_argument("split_to_unbiased: bias components must sum to 1");
  Matrix id = Matrix::Identity(element.rows(), element.cols());

  // Signed bias imbalance after the first step (1-t)I + tE; linear in t,
  // positive at t = 0 when the parent has a strict majority.
  auto imbalance = [&](double t) {
    Matrix e1 = (1.0 - t) * id + t * element;
    double ws = parent_bias_sigma * (e1 * sigma_local).trace().real();
    double wr = parent_bias_rho * (e1 * rho_local).trace().real();
    return parent_bias_sigma > parent_bias_rho ? ws - wr : wr - ws;
  };

  SplitResult out;
  double g0 = imbalance(0.0), g1 = imbalance(1.0);
  if (g0 <= 0.0)
    throw std::invalid_argument("split_to_unbiased: parent node has no strict majority");
  if (std::abs(g1) <= 1e-15) {
    // Child already unbiased: trivial second step.
    out.e1 = element;
    out.e2 = id;
    out.t = 1.0;
    out.identity_split = true;
  } else if (g1 > 0.0) {
    throw std::invalid_argument("split_to_unbiased: indicated child is not bias-flipped");
  } else {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
      double mid = 0.5 * (lo + hi);
      (imbalance(mid) > 0.0 ? lo : hi) = mid;
    }
    out.t = 0.5 * (lo + hi);
    out.e1 = (1.0 - out.t) * id + out.t * element;
    Matrix inv_sqrt = matrix_invsqrt_pd(out.e1);
    out.e2 = inv_sqrt * element * inv_sqrt;
  }

  double ws = parent_bias_sigma * (out.e1 * sigma_local).trace().real();
  double wr = parent_bias_rho * (out.e1 * rho_local).trace().real();
  out.intermediate_bias = {ws / (ws + wr), wr / (ws + wr)};
  return out;
}

ProtocolNode split_to_unbiased_node(const ProtocolNode& parent, int flip_child_index,
                                    const BinaryInstance& inst) {
  if (flip_child_index < 0 || flip_child_index >= static_cast<int>(parent.children.size()))
    throw std::invalid_argument("split_to_unbiased_node: bad child index");
  const ProtocolNode& child = parent.children[static_cast<size_t>(flip_child_index)];
  if (child.step_subsystem < 0 ||
      child.step_subsystem >= static_cast<int>(parent.kraus.size()))
    throw std::invalid_argument("split_to_unbiased_node: child carries no step info");
  if (parent.kraus.size() != 2)
    throw std::invalid_argument("split_to_unbiased_node: expects a bipartite protocol");
  int sub = child.step_subsystem;
  Matrix element = child.step_kraus.adjoint() * child.step_kraus;

  // Conditional local states on the measured subsystem at the parent node.
  Matrix k = joint_kraus(parent);
  int da = static_cast<int>(parent.kraus[0].rows());
  int db = static_cast<int>(parent.kraus[1].rows());
  auto reduce = [&](const Matrix& state) {
    Matrix cond = k * state * k.adjoint();
    cond /= cond.trace().real();
    return sub == 0 ? ptrace_second(cond, da, db) : ptrace_first(cond, da, db);
  };
  Matrix rho_local = reduce(inst.rho().matrix());
  Matrix sigma_local = reduce(inst.sigma().matrix());

  SplitResult split =
      split_to_unbiased(element, parent.bias_sigma, parent.bias_rho, rho_local, sigma_local);

  Matrix local_id = Matrix::Identity(element.rows(), element.cols());
  Matrix k1 = matrix_sqrt_psd(split.e1);
  Matrix k1c = matrix_sqrt_psd(local_id - split.e1);
  Matrix k2 = matrix_sqrt_psd(split.e2);
  Matrix k2c = matrix_sqrt_psd(local_id - split.e2);

  auto derive = [&](const ProtocolNode& base, const std::string& label, const Matrix& step,
                    const Matrix& accumulated, ProtocolNode::Kind kind) {
    ProtocolNode n;
    n.label = label;
    n.kraus = base.kraus;
    n.kraus[static_cast<size_t>(sub)] = accumulated * base.kraus[static_cast<size_t>(sub)];
    n.step_subsystem = sub;
    n.step_kraus = step;
    n.kind = kind;
    fill_stats(n, inst);
    return n;
  };

  ProtocolNode rewritten = parent;
  rewritten.children.clear();

  ProtocolNode mid = derive(parent, parent.label + ".split-mid", k1, k1, child.kind);
  mid.kind = ProtocolNode::Kind::NonGuessing;
  mid.children.push_back(
      derive(parent, child.label, k2 * k1, k2 * k1, child.kind)); // reproduces the flip child
  mid.children.push_back(derive(parent, parent.label + ".split-rest", k2c * k1, k2c * k1,
                                ProtocolNode::Kind::Guessing));
  rewritten.children.push_back(std::move(mid));
  rewritten.children.push_back(derive(parent, parent.label + ".split-complement", k1c, k1c,
                                      ProtocolNode::Kind::Guessing));
  return rewritten;
}

HermOp node_element(const ProtocolNode& node, const Dims& dims) {
  Matrix k = joint_kraus(node);
  return HermOp(k.adjoint() * k, dims);
}

} // namespace twoway
} // namespace locclab
