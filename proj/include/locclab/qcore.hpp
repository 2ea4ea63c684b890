#ifndef LOCCLAB_QCORE_HPP
#define LOCCLAB_QCORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace locclab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical tolerances used by the validators below.  Double-precision
// eigensolvers on the <= 9x9 matrices handled here comfortably exceed these.
inline constexpr double kTolHerm = 1e-12;   // entrywise hermiticity
inline constexpr double kTolRecon = 1e-10;  // spectral-norm reconstruction
inline constexpr double kTolPsd = 1e-10;    // eigenvalue positivity slack
inline constexpr double kTolNorm = 1e-10;   // vector normalization
inline constexpr double kSupportTol = 1e-9; // default relative rank cutoff

// Ordered subsystem dimensions d_1..d_N.  Tensor structure is always carried
// explicitly; it is never inferred from matrix size (4 could be 2x2 or 4x1).
class Dims {
public:
  Dims() = default;
  explicit Dims(std::vector<int> dims);

  int total() const { return total_; }
  int count() const { return static_cast<int>(dims_.size()); }
  int operator[](int k) const { return dims_[static_cast<size_t>(k)]; }
  const std::vector<int>& list() const { return dims_; }

  // Concatenation, matching operator tensor products.
  Dims operator+(const Dims& other) const;
  bool operator==(const Dims& other) const { return dims_ == other.dims_; }

private:
  std::vector<int> dims_;
  int total_ = 0;
};

// Normalized pure state on a multipartite space.
class Ket {
public:
  Ket(Vector amplitudes, Dims dims);

  const Vector& amplitudes() const { return amp_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(amp_.size()); }

private:
  Vector amp_;
  Dims dims_;
};

// Hermitian operator on a multipartite space (states, POVM elements, M).
class HermOp {
public:
  HermOp(Matrix m, Dims dims);

  const Matrix& matrix() const { return mat_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  double trace() const { return mat_.trace().real(); }

  static HermOp identity(const Dims& dims);
  static HermOp zero(const Dims& dims);

private:
  Matrix mat_;
  Dims dims_;
};

// Spectral decomposition, eigenvalues descending.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors; // orthonormal columns, aligned with eigenvalues
};

// Computational basis state |k> of a single d-dimensional system.
Ket basis_ket(int k, int d);

// Unit-normalized copy of an arbitrary amplitude vector.
Ket normalized_ket(const Vector& amplitudes, const Dims& dims);

// Rank-one projector |psi><psi|.
HermOp projector(const Ket& psi);

Ket tensor(const Ket& a, const Ket& b);
HermOp tensor(const HermOp& a, const HermOp& b);
Matrix kron(const Matrix& a, const Matrix& b);

EigenSystem eigh(const HermOp& m);

// Sum of absolute eigenvalues, ||m||_1.
double trace_norm(const HermOp& m);

// Unique decomposition m = R - S with R,S >= 0 and RS = 0.
std::pair<HermOp, HermOp> orthogonal_decompose(const HermOp& m);

// Orthonormal basis of the range: eigenvectors whose eigenvalue exceeds
// tol (relative to the largest eigenvalue).  Rejects inputs with a
// significantly negative eigenvalue.
std::vector<Ket> support(const HermOp& m, double tol = kSupportTol);

// Partial trace of a bipartite operator over the second (or first) factor.
Matrix ptrace_second(const Matrix& m, int da, int db);
Matrix ptrace_first(const Matrix& m, int da, int db);

// Inner product <a|b> and operator overlap tr(a b).
Complex inner(const Ket& a, const Ket& b);
double overlap(const HermOp& a, const HermOp& b);

} // namespace locclab

#endif
