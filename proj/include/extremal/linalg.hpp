#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremal/field.hpp"

namespace extremal {

class Functional;

/// Coordinate vector over an exact field.
class Vector {
 public:
  Vector() = default;
  Vector(const Field& f, int n) : field_(&f), c_(n, f.zero()) {}
  Vector(const Field& f, std::vector<Scalar> coords)
      : field_(&f), c_(std::move(coords)) {}

  const Field& field() const { return *field_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int i) const { return c_[i]; }
  Scalar& operator[](int i) { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }

  bool is_zero() const;
  Vector operator+(const Vector& o) const;
  Vector operator-(const Vector& o) const;
  Vector operator*(const Scalar& s) const;
  Vector operator-() const;

  /// Scales so the first nonzero coordinate becomes 1; zero stays zero.
  Vector projective_normal_form() const;

  bool operator==(const Vector& o) const { return field_ == o.field_ && c_ == o.c_; }
  bool operator<(const Vector& o) const;  // lexicographic, for canonical keys

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::vector<Scalar> c_;
};

/// Element of the dual: evaluates on vectors through the dual pairing
/// phi(v) = sum phi_i v_i.
class Functional {
 public:
  Functional() = default;
  explicit Functional(Vector coords) : v_(std::move(coords)) {}
  Functional(const Field& f, std::vector<Scalar> coords) : v_(f, std::move(coords)) {}

  const Field& field() const { return v_.field(); }
  int dim() const { return v_.dim(); }
  const Scalar& operator[](int i) const { return v_[i]; }
  Scalar& operator[](int i) { return v_[i]; }
  const Vector& coords() const { return v_; }

  Scalar operator()(const Vector& v) const;

  bool is_zero() const { return v_.is_zero(); }
  Functional operator+(const Functional& o) const { return Functional(v_ + o.v_); }
  Functional operator-(const Functional& o) const { return Functional(v_ - o.v_); }
  Functional operator*(const Scalar& s) const { return Functional(v_ * s); }
  Functional projective_normal_form() const { return Functional(v_.projective_normal_form()); }
  bool operator==(const Functional& o) const { return v_ == o.v_; }

  std::string to_string() const { return v_.to_string(); }

 private:
  Vector v_;
};

/// Dense matrix over an exact field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, int rows, int cols)
      : field_(&f), rows_(rows), cols_(cols), d_(rows * cols, f.zero()) {}
  static Matrix identity(const Field& f, int n);
  /// Outer product v * phi^T, the matrix of w -> phi(w) v.
  static Matrix outer(const Vector& v, const Functional& phi);

  const Field& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Scalar& at(int i, int j) const { return d_[i * cols_ + j]; }
  Scalar& at(int i, int j) { return d_[i * cols_ + j]; }

  bool is_zero() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  Matrix operator-() const;
  bool operator==(const Matrix& o) const;

  Matrix transposed() const;
  /// Entrywise involution; requires the field to carry one.
  Matrix sigma_entrywise() const;
  Scalar trace() const;
  Vector apply(const Vector& v) const;  // matrix * column vector
  Vector row(int i) const;
  Vector col(int j) const;
  void set_row(int i, const Vector& v);

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> d_;
};

struct RrefResult {
  Matrix mat;               // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column per row
};

RrefResult rref(const Matrix& m);
int rank(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws on singular input
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Subspace of F^n stored by its unique reduced row echelon basis, so
/// equality of subspaces is representation equality.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(const Field& f, int ambient);
  static Subspace full(const Field& f, int ambient);
  static Subspace span(const Field& f, int ambient, const std::vector<Vector>& gens);
  static Subspace from_rref(Matrix m, std::vector<int> pivots, int ambient);

  const Field& field() const { return *field_; }
  int ambient() const { return ambient_; }
  int dim() const { return rows_.rows(); }
  const Matrix& basis_matrix() const { return rows_; }
  Vector basis_vector(int i) const { return rows_.row(i); }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the echelon basis; nullopt when v lies outside.
  std::optional<std::vector<Scalar>> coordinates_of(const Vector& v) const;
  /// Remainder of v after eliminating with the echelon rows.
  Vector reduce(const Vector& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  int ambient_ = 0;
  Matrix rows_;               // dim x ambient, RREF
  std::vector<int> pivots_;
};

/// The annihilator {v : phi(v) = 0 for all phi in the space}, computed
/// through the dual pairing. Works in both directions since the pairing is
/// symmetric in coordinates.
Subspace annihilator(const Subspace& space, int ambient);

/// Kernel of a matrix as a subspace of F^cols.
Subspace kernel(const Matrix& m);

/// Incremental exact span builder: keeps a reduced echelon set of rows and
/// reports whether an inserted vector enlarged the span.
class SpanBuilder {
 public:
  SpanBuilder(const Field& f, int ambient);
  /// Returns true when v was independent of the current span.
  bool insert(const Vector& v);
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const { return reduce(v).is_zero(); }
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  Subspace subspace() const;

 private:
  const Field* field_;
  int ambient_;
  std::vector<Vector> rows_;   // kept reduced, sorted by pivot
  std::vector<int> pivots_;
};

}  // namespace extremal
