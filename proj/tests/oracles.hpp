#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <cstdint>
#include <vector>

#include "extremal/field.hpp"
#include "extremal/linalg.hpp"

namespace oracles {

using extremal::Field;
using extremal::Matrix;
using extremal::Scalar;
using extremal::Vector;

/// Frobenius x -> x^p by repeated squaring, no use of Scalar::sigma.
inline Scalar frobenius(const Scalar& x) {
  std::int64_t p = x.field().characteristic();
  Scalar r = x.field().one();
  Scalar b = x;
  std::int64_t e = p;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

/// Rank by elimination with a different pivoting strategy (last nonzero row,
/// no normalization) than the library's rref.
inline int rank_by_elimination(Matrix m) {
  int rows = m.rows(), cols = m.cols();
  std::vector<Vector> w;
  for (int i = 0; i < rows; ++i) w.push_back(m.row(i));
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = rows - 1; i >= r; --i) {
      if (!w[i][c].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(w[r], w[piv]);
    for (int i = r + 1; i < rows; ++i) {
      if (w[i][c].is_zero()) continue;
      Scalar factor = w[i][c] / w[r][c];
      w[i] = w[i] - w[r] * factor;
    }
    ++r;
  }
  return r;
}

/// Dense matrix commutator a*b - b*a.
inline Matrix commutator(const Matrix& a, const Matrix& b) {
  return a * b - b * a;
}

/// Conjugation (I + lambda X) Y (I - lambda X); the inverse of I + lambda X
/// is I - lambda X exactly when X^2 = 0.
inline Matrix conjugation_exp(const Matrix& x, const Matrix& y, const Scalar& lambda) {
  Matrix id = Matrix::identity(x.field(), x.rows());
  Matrix plus = id + x * lambda;
  Matrix minus = id - x * lambda;
  return plus * y * minus;
}

/// Whether d lies in the line spanned by x (matrices), by direct scan.
inline bool in_matrix_span(const Matrix& d, const Matrix& x) {
  if (d.is_zero()) return true;
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      if (x.at(i, j).is_zero()) continue;
      Scalar c = d.at(i, j) / x.at(i, j);
      return x * c == d;
    }
  }
  return false;
}

/// Number of points of PG(n-1, q).
inline std::int64_t pg_points(int n, std::int64_t q) {
  std::int64_t acc = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

/// Number of incident point-hyperplane pairs of PG(n-1, q).
inline std::int64_t pg_flags(int n, std::int64_t q) {
  return pg_points(n, q) * pg_points(n - 1, q);
}

/// Deterministic xorshift-style generator for reproducible random instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return s_;
  }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % n); }
  Scalar scalar(const Field& f) {
    if (f.is_finite()) return f.element(below(f.order()));
    // Small random rationals keep exact arithmetic comfortable.
    return f.from_integer(below(7) - 3);
  }
  Scalar nonzero_scalar(const Field& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (!s.is_zero()) return s;
    }
  }
  Vector vector(const Field& f, int n) {
    Vector v(f, n);
    for (int i = 0; i < n; ++i) v[i] = scalar(f);
    return v;
  }
  Vector nonzero_vector(const Field& f, int n) {
    for (;;) {
      Vector v = vector(f, n);
      if (!v.is_zero()) return v;
    }
  }
  Matrix matrix(const Field& f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = scalar(f);
    return m;
  }

 private:
  std::uint64_t s_;
};

}  // namespace oracles
