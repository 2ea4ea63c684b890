#ifndef LOCCLAB_TEST_UTIL_HPP
#define LOCCLAB_TEST_UTIL_HPP

#include "locclab/qcore.hpp"

#include <random>

namespace locclab {
namespace testutil {

inline Vector random_ket_vec(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  return v;
}

inline Ket random_ket(std::mt19937_64& rng, const Dims& dims) {
  return Ket(random_ket_vec(rng, dims.total()), dims);
}

// Wishart-style random density operator of the given rank.
inline Matrix random_density_matrix(std::mt19937_64& rng, int d, int rank) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix w(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) w(i, j) = Complex(g(rng), g(rng));
  Matrix m = w * w.adjoint();
  return m / m.trace().real();
}

inline HermOp random_density(std::mt19937_64& rng, const Dims& dims, int rank) {
  return HermOp(random_density_matrix(rng, dims.total(), rank), dims);
}

// Trace norm of a Hermitian 2x2 matrix from trace and determinant only;
// independent of any eigensolver.
inline double trace_norm_2x2(const Matrix& m) {
  double t = m.trace().real();
  double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  double disc = std::sqrt(std::max(0.0, t * t / 4.0 - det));
  double l1 = t / 2.0 + disc, l2 = t / 2.0 - disc;
  return std::abs(l1) + std::abs(l2);
}

} // namespace testutil
} // namespace locclab

#endif
