#include "locclab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locclab {

Dims::Dims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("Dims: empty dimension list");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("Dims: every subsystem dimension must be >= 2");
    total_ *= d;
  }
}

Dims Dims::operator+(const Dims& other) const {
  std::vector<int> joined = dims_;
  joined.insert(joined.end(), other.dims_.begin(), other.dims_.end());
  return Dims(joined);
}

Ket::Ket(Vector amplitudes, Dims dims) : amp_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amp_.size() != dims_.total())
    throw std::invalid_argument("Ket: amplitude length does not match Dims");
  if (std::abs(amp_.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("Ket: vector is not normalized");
}

HermOp::HermOp(Matrix m, Dims dims) : mat_(std::move(m)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != dims_.total())
    throw std::invalid_argument("HermOp: matrix shape does not match Dims");
  double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kTolHerm * std::max(1.0, mat_.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("HermOp: matrix is not hermitian");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval()); // symmetrize away roundoff
}

HermOp HermOp::identity(const Dims& dims) {
  return HermOp(Matrix::Identity(dims.total(), dims.total()), dims);
}

HermOp HermOp::zero(const Dims& dims) {
  return HermOp(Matrix::Zero(dims.total(), dims.total()), dims);
}

Ket basis_ket(int k, int d) {
  if (k < 0 || k >= d) throw std::invalid_argument("basis_ket: index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return Ket(v, Dims({d}));
}

Ket normalized_ket(const Vector& amplitudes, const Dims& dims) {
  double n = amplitudes.norm();
  if (n < 1e-14) throw std::invalid_argument("normalized_ket: zero vector");
  return Ket(amplitudes / n, dims);
}

HermOp projector(const Ket& psi) {
  return HermOp(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Vector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  return Ket(out, a.dims() + b.dims());
}

HermOp tensor(const HermOp& a, const HermOp& b) {
  return HermOp(kron(a.matrix(), b.matrix()), a.dims() + b.dims());
}

EigenSystem eigh(const HermOp& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  // Eigen returns ascending order; flip to descending.
  const int n = m.dim();
  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

double trace_norm(const HermOp& m) {
  EigenSystem es = eigh(m);
  return es.eigenvalues.cwiseAbs().sum();
}

std::pair<HermOp, HermOp> orthogonal_decompose(const HermOp& m) {
  EigenSystem es = eigh(m);
  const int n = m.dim();
  Matrix r = Matrix::Zero(n, n), s = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double ev = es.eigenvalues(i);
    Matrix p = es.eigenvectors.col(i) * es.eigenvectors.col(i).adjoint();
    if (ev > 0)
      r += ev * p;
    else
      s -= ev * p;
  }
  return {HermOp(r, m.dims()), HermOp(s, m.dims())};
}

std::vector<Ket> support(const HermOp& m, double tol) {
  EigenSystem es = eigh(m);
  double largest = es.eigenvalues.size() > 0 ? es.eigenvalues(0) : 0.0;
  if (largest <= 0.0) return {};
  double cutoff = tol * largest;
  if (es.eigenvalues(es.eigenvalues.size() - 1) < -std::max(kTolPsd, cutoff))
    throw std::invalid_argument("support: operator has a significantly negative eigenvalue");
  std::vector<Ket> basis;
  for (int i = 0; i < m.dim(); ++i)
    if (es.eigenvalues(i) > cutoff)
      basis.emplace_back(es.eigenvectors.col(i), m.dims());
  return basis;
}

Matrix ptrace_second(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        out(i, j) += m(i * db + k, j * db + k);
  return out;
}

Matrix ptrace_first(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        out(i, j) += m(k * db + i, k * db + j);
  return out;
}

Complex inner(const Ket& a, const Ket& b) {
  return a.amplitudes().dot(b.amplitudes());
}

double overlap(const HermOp& a, const HermOp& b) {
  return (a.matrix() * b.matrix()).trace().real();
}

} // namespace locclab
