#pragma once

// (max,+) semiring arithmetic on dense Eigen storage.
//
// Scalars are plain floating values; epsilon (the semiring zero) is -inf.
// Matrices are row-major Eigen matrices over the same scalar. Eigen's own
// operator* is never used on these matrices: its kernels assume the ordinary
// field's 0 and 1, so every semiring operation below is an explicit loop.

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "fjn/error.hpp"

namespace fjn {

template <typename Scalar>
using MaxPlusMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using MaxPlusVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MaxPlusMatrix<double>;
using Vector = MaxPlusVector<double>;

template <typename Scalar>
constexpr Scalar epsilon() {
  static_assert(std::numeric_limits<Scalar>::has_infinity);
  return -std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar>
constexpr bool is_epsilon(Scalar x) {
  return x == epsilon<Scalar>();
}

/// A value is admissible when it is epsilon or a finite real.
template <typename Scalar>
bool is_admissible(Scalar x) {
  return is_epsilon(x) || std::isfinite(x);
}

template <typename Scalar>
constexpr Scalar oplus(Scalar a, Scalar b) {
  return a < b ? b : a;
}

// epsilon short-circuits before the addition, so -inf + inf never happens.
template <typename Scalar>
constexpr Scalar otimes(Scalar a, Scalar b) {
  if (is_epsilon(a) || is_epsilon(b)) return epsilon<Scalar>();
  return a + b;
}

/// The null matrix: every entry epsilon.
template <typename Scalar = double>
MaxPlusMatrix<Scalar> null_matrix(Eigen::Index rows, Eigen::Index cols) {
  return MaxPlusMatrix<Scalar>::Constant(rows, cols, epsilon<Scalar>());
}

template <typename Scalar = double>
MaxPlusMatrix<Scalar> null_matrix(Eigen::Index n) {
  return null_matrix<Scalar>(n, n);
}

/// The identity: 0 on the diagonal, epsilon elsewhere.
template <typename Scalar = double>
MaxPlusMatrix<Scalar> identity_matrix(Eigen::Index n) {
  MaxPlusMatrix<Scalar> e = null_matrix<Scalar>(n);
  e.diagonal().setZero();
  return e;
}

/// diag(d_1, ..., d_n) with epsilon off the diagonal.
template <typename Derived>
MaxPlusMatrix<typename Derived::Scalar> diagonal_matrix(
    const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  MaxPlusMatrix<Scalar> m = null_matrix<Scalar>(d.size());
  m.diagonal() = d;
  return m;
}

namespace detail {

template <typename A, typename B>
void require_same_shape(const Eigen::MatrixBase<A>& a,
                        const Eigen::MatrixBase<B>& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput(std::string(op) + ": dimension mismatch (" +
                       std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " vs " +
                       std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()) + ")");
  }
}

}  // namespace detail

template <typename A, typename B>
MaxPlusMatrix<typename A::Scalar> mat_oplus(const Eigen::MatrixBase<A>& a,
                                            const Eigen::MatrixBase<B>& b) {
  detail::require_same_shape(a, b, "mat_oplus");
  return a.cwiseMax(b);
}

/// Max-plus product: (a ⊗ b)(i,j) = max_m a(i,m) + b(m,j).
template <typename A, typename B>
MaxPlusMatrix<typename A::Scalar> mat_otimes(const Eigen::MatrixBase<A>& a,
                                             const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  if (a.cols() != b.rows()) {
    throw InvalidInput("mat_otimes: inner dimensions differ (" +
                       std::to_string(a.cols()) + " vs " +
                       std::to_string(b.rows()) + ")");
  }
  MaxPlusMatrix<Scalar> out = null_matrix<Scalar>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      const Scalar aim = a(i, m);
      if (is_epsilon(aim)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        out(i, j) = oplus(out(i, j), otimes(aim, b(m, j)));
      }
    }
  }
  return out;
}

/// Max-plus matrix-vector product.
template <typename A, typename V>
MaxPlusVector<typename A::Scalar> mat_vec(const Eigen::MatrixBase<A>& a,
                                          const Eigen::MatrixBase<V>& x) {
  using Scalar = typename A::Scalar;
  if (a.cols() != x.size()) {
    throw InvalidInput("mat_vec: matrix has " + std::to_string(a.cols()) +
                       " columns, vector has " + std::to_string(x.size()) +
                       " entries");
  }
  MaxPlusVector<Scalar> out =
      MaxPlusVector<Scalar>::Constant(a.rows(), epsilon<Scalar>());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      out(i) = oplus(out(i), otimes(a(i, m), x(m)));
    }
  }
  return out;
}

/// A^q by repeated multiplication; A^0 is the identity.
template <typename A>
MaxPlusMatrix<typename A::Scalar> mat_power(const Eigen::MatrixBase<A>& a,
                                            std::size_t q) {
  using Scalar = typename A::Scalar;
  if (a.rows() != a.cols()) {
    throw InvalidInput("mat_power: matrix is " + std::to_string(a.rows()) +
                       "x" + std::to_string(a.cols()) + ", not square");
  }
  MaxPlusMatrix<Scalar> out = identity_matrix<Scalar>(a.rows());
  for (std::size_t i = 0; i < q; ++i) out = mat_otimes(a, out);
  return out;
}

/// Largest entry; epsilon when every entry is epsilon.
template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) throw InvalidInput("norm: empty input");
  return x.maxCoeff();
}

/// Entrywise order with epsilon below every real.
template <typename A, typename B>
bool mat_leq(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  detail::require_same_shape(a, b, "mat_leq");
  return (a.array() <= b.array()).all();
}

template <typename A, typename B>
bool mat_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

}  // namespace fjn
