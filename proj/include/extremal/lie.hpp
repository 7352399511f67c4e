#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extremal/field.hpp"
#include "extremal/linalg.hpp"

namespace extremal {

/// One rank-one summand v (x) phi of a finitary map.
struct RankOneTerm {
  Vector v;
  Functional phi;
};

/// A finitary linear map at desk scale: a square matrix over the field,
/// optionally carrying a rank-one decomposition sum v_i (x) phi_i whose
/// expansion is verified to equal the matrix.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(Matrix m) : mat_(std::move(m)) {}
  LieElement(Matrix m, std::vector<RankOneTerm> terms);

  static LieElement zero(const Field& f, int n) { return LieElement(Matrix(f, n, n)); }

  const Field& field() const { return mat_.field(); }
  int ambient_dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  const std::optional<std::vector<RankOneTerm>>& decomposition() const { return terms_; }

  bool is_zero() const { return mat_.is_zero(); }
  Scalar trace() const { return mat_.trace(); }

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(const Scalar& s) const;
  LieElement operator-() const;
  bool operator==(const LieElement& o) const { return mat_ == o.mat_; }

  std::string to_string() const { return mat_.to_string(); }

 private:
  Matrix mat_;
  std::optional<std::vector<RankOneTerm>> terms_;
};

/// Lie bracket ab - ba. When both arguments carry rank-one decompositions the
/// result carries the one given by [v(x)phi, w(x)psi] = phi(w) v(x)psi -
/// psi(v) w(x)phi.
LieElement bracket(const LieElement& a, const LieElement& b);

/// Infinitesimal transvection t_{v,phi}: w -> phi(w) v, with phi(v) = 0.
/// (With phi(v) != 0 the same map is an infinitesimal reflection; those are
/// built directly as rank-one LieElements where needed.)
class Transvection {
 public:
  Transvection(Vector v, Functional phi);
  const Vector& v() const { return v_; }
  const Functional& phi() const { return phi_; }
  LieElement element() const;

 private:
  Vector v_;
  Functional phi_;
};

enum class Extremality { pure_extremal, sandwich, not_extremal };
enum class PairCase { a, b, c, d, e };

/// Incident point-hyperplane pair (p, ker phi) tagging a transvection class.
struct FlagLabel {
  Vector point;           // canonical projective representative in V
  Functional functional;  // canonical projective representative in Pi
};

struct ExtremalPoint {
  LieElement rep;              // canonical representative
  std::vector<Scalar> coords;  // its coordinates in the handle basis
  std::optional<FlagLabel> flag;
};

enum class EnumerationMode { brute, parametric };

/// A Lie algebra of finitary maps with a computed linear basis. The
/// coefficient field is either the matrix field itself or, for unitary-type
/// algebras, its sigma-fixed base field; in the latter case each matrix entry
/// contributes two coordinates to the vectorization.
class LieAlgebra {
 public:
  enum class Kind { special_linear, unitary, symplectic, extended, custom };

  /// Parameters of a special-linear style construction: the supported
  /// subspace U of V and the functional space Phi inside the dual.
  struct SlData {
    Subspace U;
    Subspace Phi;
  };
  /// Gram matrix of the construction form; hermitian means tau = sigma,
  /// otherwise the form is alternating (tau = id).
  struct FormData {
    Matrix gram;
    bool hermitian = false;
  };

  /// fsl(F^n, V*) generated by the elementary transvections.
  static LieAlgebra special_linear(int n, const Field& f);
  /// Subalgebra generated by arbitrary transvections (kind = custom).
  static LieAlgebra from_transvections(const Field& f, int n,
                                       const std::vector<Transvection>& gens);
  /// General factory used by the other modules.
  static LieAlgebra from_parts(Kind kind, const Field& matrix_field,
                               const Field& coeff_field, int n,
                               std::vector<LieElement> gens,
                               std::optional<SlData> sl = std::nullopt,
                               std::optional<FormData> form = std::nullopt,
                               bool contains_reflections = false);

  Kind kind() const { return kind_; }
  const Field& matrix_field() const { return *mf_; }
  const Field& coeff_field() const { return *cf_; }
  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<LieElement>& basis() const { return basis_; }
  const std::vector<LieElement>& generators() const { return gens_; }
  const Matrix& gram() const { return gram_; }
  bool contains_reflections() const { return contains_reflections_; }
  const std::optional<SlData>& sl_data() const { return sl_; }
  const std::optional<FormData>& form_data() const { return form_; }

  /// Coordinates of a matrix over the coefficient field (length n^2, or
  /// 2 n^2 when the coefficient field is the base of the matrix field).
  Vector vectorize(const Matrix& m) const;
  Matrix unvectorize(const Vector& coords) const;
  int vec_len() const { return split_ ? 2 * n_ * n_ : n_ * n_; }

  bool contains(const LieElement& x) const;
  /// The algebra as a subspace of the coordinate vectorization.
  const Subspace& span_subspace() const { return span_; }
  std::optional<std::vector<Scalar>> coordinates(const LieElement& x) const;
  LieElement from_coordinates(const std::vector<Scalar>& coords) const;
  /// Scales an element by a coefficient-field scalar (lifting if needed).
  LieElement scale(const LieElement& x, const Scalar& c) const;
  /// Projectively canonical representative: first nonzero basis coordinate 1.
  LieElement canonical_rep(const LieElement& x, std::vector<Scalar>* coords_out = nullptr) const;

  /// Extremality test: checks [x,[x,b_i]] against Eq-span for every basis
  /// element, determines the extremal functional, and verifies both Premet
  /// identities on all basis pairs (in every characteristic).
  Extremality classify_extremal(const LieElement& x) const;

  /// The extremal form g(x, y); requires x extremal. On a transvection
  /// t_{v,phi} this is -phi(y(v)); the bilinear extension to the whole
  /// algebra coincides with -tr(xy).
  Scalar extremal_form(const LieElement& x, const LieElement& y) const;
  /// Unchecked bilinear form -tr(xy) as a coefficient-field value.
  Scalar trace_form(const LieElement& x, const LieElement& y) const;
  Scalar gram_at(int i, int j) const { return gram_.at(i, j); }

  /// Coordinates of [b_i, b_j] in the basis (cached structure constants).
  const std::vector<Scalar>& bracket_coords(int i, int j) const;
  /// gamma([b_i, b_j]) for a functional given by its basis values.
  Scalar gamma_of_bracket(int i, int j, const std::vector<Scalar>& gamma) const;

  /// Enumeration cap for brute scans (number of span elements).
  static constexpr std::int64_t kDefaultEnumerationBound = INT64_C(1) << 24;

 private:
  friend class ExpMap;
  struct GammaResult {
    bool ok = false;
    bool lhs_all_zero = true;
    std::vector<Scalar> gamma;
  };
  GammaResult premet_gamma_char2(const LieElement& x,
                                 const std::vector<LieElement>& xb) const;

  Kind kind_ = Kind::custom;
  const Field* mf_ = nullptr;
  const Field* cf_ = nullptr;
  bool split_ = false;  // coeff field is the base of the matrix field
  int n_ = 0;
  std::vector<LieElement> gens_;
  std::vector<LieElement> basis_;
  Subspace span_;  // of the coordinate vectorization
  std::vector<std::vector<Scalar>> struct_;  // [pair(i<j)] -> coords of [b_i,b_j]
  Matrix gram_;
  std::optional<SlData> sl_;
  std::optional<FormData> form_;
  bool contains_reflections_ = false;
};

/// The five-way classification of a pair of pure extremal elements.
PairCase classify_pair(const LieAlgebra& a, const LieElement& x, const LieElement& y);

/// Formula-based classification of two transvection classes from their flag
/// labels alone: independent of the bracket/extremality machinery, used as
/// the second route in cross-checks.
PairCase classify_pair_by_flags(const FlagLabel& a, const FlagLabel& b);

/// Projective classes of pure extremal elements. Brute mode scans the whole
/// span (finite coefficient fields, bounded); parametric mode emits the
/// transvection classes of the construction directly.
std::vector<ExtremalPoint> enumerate_extremal(
    const LieAlgebra& a, EnumerationMode mode,
    std::int64_t bound = LieAlgebra::kDefaultEnumerationBound);

/// Center as a subspace of the coordinate space of the handle basis.
Subspace center(const LieAlgebra& a);
/// Smallest ideal containing the seed, as a subspace of the coordinate space.
Subspace ideal_closure(const LieAlgebra& a, const LieElement& seed);
/// Trivial center and every basis seed generates the whole algebra.
bool is_simple(const LieAlgebra& a);

/// exp(x, lambda) y = y + lambda [x,y] + lambda^2 g(x,y) x; an automorphism
/// for pure extremal x (verified at construction).
class ExpMap {
 public:
  ExpMap(const LieAlgebra& a, LieElement x, Scalar lambda);
  LieElement operator()(const LieElement& y) const;
  const LieElement& direction() const { return x_; }
  const Scalar& parameter() const { return lambda_; }

 private:
  const LieAlgebra* a_;
  LieElement x_;
  Scalar lambda_;
};

}  // namespace extremal
