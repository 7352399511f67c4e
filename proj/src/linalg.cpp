#include "extremal/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace extremal {

namespace {
void require_same_shape(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim() || &a.field() != &b.field())
    throw std::invalid_argument("vector shape or field mismatch");
}
}  // namespace

bool Vector::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

Vector Vector::operator+(const Vector& o) const {
  require_same_shape(*this, o);
  Vector r(*field_, dim());
  for (int i = 0; i < dim(); ++i) r[i] = c_[i] + o.c_[i];
  return r;
}

Vector Vector::operator-(const Vector& o) const {
  require_same_shape(*this, o);
  Vector r(*field_, dim());
  for (int i = 0; i < dim(); ++i) r[i] = c_[i] - o.c_[i];
  return r;
}

Vector Vector::operator*(const Scalar& s) const {
  Vector r(*field_, dim());
  for (int i = 0; i < dim(); ++i) r[i] = c_[i] * s;
  return r;
}

Vector Vector::operator-() const {
  Vector r(*field_, dim());
  for (int i = 0; i < dim(); ++i) r[i] = -c_[i];
  return r;
}

Vector Vector::projective_normal_form() const {
  for (int i = 0; i < dim(); ++i) {
    if (!c_[i].is_zero()) {
      if (c_[i].is_one()) return *this;
      return *this * c_[i].inverse();
    }
  }
  return *this;
}

bool Vector::operator<(const Vector& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  for (int i = 0; i < dim(); ++i) {
    if (!(c_[i] == o.c_[i])) return c_[i] < o.c_[i];
  }
  return false;
}

std::string Vector::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += c_[i].to_string();
  }
  return s + ")";
}

Scalar Functional::operator()(const Vector& v) const {
  require_same_shape(v_, v);
  Scalar acc = field().zero();
  for (int i = 0; i < dim(); ++i) acc += v_[i] * v[i];
  return acc;
}

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Matrix Matrix::outer(const Vector& v, const Functional& phi) {
  if (&v.field() != &phi.field() || v.dim() != phi.dim())
    throw std::invalid_argument("outer product shape mismatch");
  Matrix m(v.field(), v.dim(), v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < v.dim(); ++j) m.at(i, j) = v[i] * phi[j];
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : d_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
    throw std::invalid_argument("matrix shape or field mismatch");
  Matrix r(*field_, rows_, cols_);
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] + o.d_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
    throw std::invalid_argument("matrix shape or field mismatch");
  Matrix r(*field_, rows_, cols_);
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] - o.d_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || field_ != o.field_)
    throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(*field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) += x * y;
      }
    }
  }
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r(*field_, rows_, cols_);
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] * s;
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(*field_, rows_, cols_);
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = -d_[i];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

Matrix Matrix::transposed() const {
  Matrix r(*field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::sigma_entrywise() const {
  Matrix r(*field_, rows_, cols_);
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i].sigma();
  return r;
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Scalar acc = field_->zero();
  for (int i = 0; i < rows_; ++i) acc += at(i, i);
  return acc;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.dim() != cols_ || &v.field() != field_)
    throw std::invalid_argument("matrix-vector shape mismatch");
  Vector r(*field_, rows_);
  for (int i = 0; i < rows_; ++i) {
    Scalar acc = field_->zero();
    for (int j = 0; j < cols_; ++j) {
      if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
    }
    r[i] = acc;
  }
  return r;
}

Vector Matrix::row(int i) const {
  Vector r(*field_, cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vector Matrix::col(int j) const {
  Vector r(*field_, rows_);
  for (int i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

void Matrix::set_row(int i, const Vector& v) {
  if (v.dim() != cols_) throw std::invalid_argument("row length mismatch");
  for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

std::string Matrix::to_string() const {
  std::ostringstream s;
  for (int i = 0; i < rows_; ++i) {
    s << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) s << ", ";
      s << at(i, j).to_string();
    }
    s << "]\n";
  }
  return s.str();
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  int rows = m.rows(), cols = m.cols();
  std::vector<Vector> work;
  work.reserve(rows);
  for (int i = 0; i < rows; ++i) work.push_back(m.row(i));

  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!work[i][c].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(work[r], work[piv]);
    work[r] = work[r] * work[r][c].inverse();
    for (int i = 0; i < rows; ++i) {
      if (i == r || work[i][c].is_zero()) continue;
      work[i] = work[i] - work[r] * work[i][c];
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(f, r, cols);
  for (int i = 0; i < r; ++i) out.set_row(i, work[i]);
  return RrefResult{std::move(out), std::move(pivots)};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const Field& f = m.field();
  int n = m.rows();
  Matrix aug(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  RrefResult rr = rref(aug);
  if (rr.mat.rows() != n) throw std::domain_error("matrix is singular");
  for (int i = 0; i < n; ++i)
    if (rr.pivots[i] != i) throw std::domain_error("matrix is singular");
  Matrix inv(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
  return inv;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.dim()) throw std::invalid_argument("solve shape mismatch");
  const Field& f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult rr = rref(aug);
  Vector x(f, a.cols());
  for (size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == a.cols()) return std::nullopt;  // inconsistent row
    x[rr.pivots[i]] = rr.mat.at(static_cast<int>(i), a.cols());
  }
  return x;
}

Subspace Subspace::zero(const Field& f, int ambient) {
  return from_rref(Matrix(f, 0, ambient), {}, ambient);
}

Subspace Subspace::full(const Field& f, int ambient) {
  std::vector<int> piv(ambient);
  for (int i = 0; i < ambient; ++i) piv[i] = i;
  return from_rref(Matrix::identity(f, ambient), std::move(piv), ambient);
}

Subspace Subspace::span(const Field& f, int ambient, const std::vector<Vector>& gens) {
  Matrix m(f, static_cast<int>(gens.size()), ambient);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].dim() != ambient) throw std::invalid_argument("generator dimension mismatch");
    m.set_row(static_cast<int>(i), gens[i]);
  }
  RrefResult rr = rref(m);
  return from_rref(std::move(rr.mat), std::move(rr.pivots), ambient);
}

Subspace Subspace::from_rref(Matrix m, std::vector<int> pivots, int ambient) {
  Subspace s;
  s.field_ = &m.field();
  s.ambient_ = ambient;
  s.rows_ = std::move(m);
  s.pivots_ = std::move(pivots);
  return s;
}

Vector Subspace::reduce(const Vector& v) const {
  Vector r = v;
  for (int i = 0; i < dim(); ++i) {
    const Scalar& c = r[pivots_[i]];
    if (!c.is_zero()) r = r - rows_.row(i) * c;
  }
  return r;
}

bool Subspace::contains(const Vector& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

std::optional<std::vector<Scalar>> Subspace::coordinates_of(const Vector& v) const {
  std::vector<Scalar> coords;
  coords.reserve(dim());
  Vector r = v;
  for (int i = 0; i < dim(); ++i) {
    Scalar c = r[pivots_[i]];
    coords.push_back(c);
    if (!c.is_zero()) r = r - rows_.row(i) * c;
  }
  if (!r.is_zero()) return std::nullopt;
  return coords;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (ambient_ != o.ambient_ || field_ != o.field_)
    throw std::invalid_argument("subspace ambient mismatch");
  std::vector<Vector> gens;
  for (int i = 0; i < dim(); ++i) gens.push_back(basis_vector(i));
  for (int i = 0; i < o.dim(); ++i) gens.push_back(o.basis_vector(i));
  return span(*field_, ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_ || field_ != o.field_)
    throw std::invalid_argument("subspace ambient mismatch");
  // Zassenhaus: row-reduce [A A; B 0]; rows with zero left half carry the
  // intersection in the right half.
  int da = dim(), db = o.dim();
  Matrix big(*field_, da + db, 2 * ambient_);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < ambient_; ++j) {
      big.at(i, j) = rows_.at(i, j);
      big.at(i, ambient_ + j) = rows_.at(i, j);
    }
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < ambient_; ++j) big.at(da + i, j) = o.rows_.at(i, j);
  RrefResult rr = rref(big);
  std::vector<Vector> gens;
  for (int i = 0; i < rr.mat.rows(); ++i) {
    bool left_zero = true;
    for (int j = 0; j < ambient_ && left_zero; ++j)
      if (!rr.mat.at(i, j).is_zero()) left_zero = false;
    if (!left_zero) continue;
    Vector v(*field_, ambient_);
    for (int j = 0; j < ambient_; ++j) v[j] = rr.mat.at(i, ambient_ + j);
    gens.push_back(v);
  }
  return span(*field_, ambient_, gens);
}

bool Subspace::operator==(const Subspace& o) const {
  return field_ == o.field_ && ambient_ == o.ambient_ && rows_ == o.rows_;
}

std::string Subspace::to_string() const {
  return "span of\n" + rows_.to_string();
}

Subspace annihilator(const Subspace& space, int ambient) {
  if (space.ambient() != ambient)
    throw std::invalid_argument("annihilator ambient mismatch");
  return kernel(space.basis_matrix());
}

Subspace kernel(const Matrix& m) {
  const Field& f = m.field();
  int n = m.cols();
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<Vector> gens;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vector v(f, n);
    v[c] = f.one();
    for (int i = 0; i < rr.mat.rows(); ++i) v[rr.pivots[i]] = -rr.mat.at(i, c);
    gens.push_back(v);
  }
  return Subspace::span(f, n, gens);
}

SpanBuilder::SpanBuilder(const Field& f, int ambient)
    : field_(&f), ambient_(ambient) {}

Vector SpanBuilder::reduce(const Vector& v) const {
  Vector r = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = r[pivots_[i]];
    if (!c.is_zero()) r = r - rows_[i] * c;
  }
  return r;
}

bool SpanBuilder::insert(const Vector& v) {
  if (v.dim() != ambient_) throw std::invalid_argument("span builder dimension mismatch");
  Vector r = reduce(v);
  int piv = -1;
  for (int j = 0; j < ambient_; ++j) {
    if (!r[j].is_zero()) {
      piv = j;
      break;
    }
  }
  if (piv < 0) return false;
  r = r * r[piv].inverse();
  // Back-substitute into existing rows to keep the set fully reduced.
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = rows_[i][piv];
    if (!c.is_zero()) rows_[i] = rows_[i] - r * c;
  }
  // Insert sorted by pivot column.
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(r));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

Subspace SpanBuilder::subspace() const {
  Matrix m(*field_, static_cast<int>(rows_.size()), ambient_);
  for (size_t i = 0; i < rows_.size(); ++i) m.set_row(static_cast<int>(i), rows_[i]);
  return Subspace::from_rref(std::move(m), pivots_, ambient_);
}

}  // namespace extremal
