#include "extremal/lie.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace extremal {

namespace {
constexpr size_t kMaxDecompositionTerms = 16;

std::optional<std::vector<RankOneTerm>> merge_terms(
    const std::optional<std::vector<RankOneTerm>>& a,
    const std::optional<std::vector<RankOneTerm>>& b) {
  if (!a || !b) return std::nullopt;
  if (a->size() + b->size() > kMaxDecompositionTerms) return std::nullopt;
  std::vector<RankOneTerm> out = *a;
  out.insert(out.end(), b->begin(), b->end());
  return out;
}

Matrix expand_terms(const Field& f, int n, const std::vector<RankOneTerm>& terms) {
  Matrix m(f, n, n);
  for (const auto& t : terms) m = m + Matrix::outer(t.v, t.phi);
  return m;
}
}  // namespace

LieElement::LieElement(Matrix m, std::vector<RankOneTerm> terms)
    : mat_(std::move(m)) {
  if (!(expand_terms(mat_.field(), mat_.rows(), terms) == mat_))
    throw std::invalid_argument("rank-one decomposition does not expand to the matrix");
  terms_ = std::move(terms);
}

LieElement LieElement::operator+(const LieElement& o) const {
  LieElement r(mat_ + o.mat_);
  r.terms_ = merge_terms(terms_, o.terms_);
  return r;
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + (-o); }

LieElement LieElement::operator*(const Scalar& s) const {
  LieElement r(mat_ * s);
  if (terms_) {
    std::vector<RankOneTerm> scaled;
    scaled.reserve(terms_->size());
    for (const auto& t : *terms_) {
      if ((t.v * s).is_zero()) continue;
      scaled.push_back(RankOneTerm{t.v * s, t.phi});
    }
    r.terms_ = std::move(scaled);
  }
  return r;
}

LieElement LieElement::operator-() const {
  return *this * (-field().one());
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  LieElement r(x * y - y * x);
  if (a.decomposition() && b.decomposition()) {
    std::vector<RankOneTerm> terms;
    bool keep = a.decomposition()->size() * b.decomposition()->size() * 2 <=
                kMaxDecompositionTerms;
    if (keep) {
      for (const auto& s : *a.decomposition()) {
        for (const auto& t : *b.decomposition()) {
          // [v(x)phi, w(x)psi] = phi(w) v(x)psi - psi(v) w(x)phi
          Scalar pw = s.phi(t.v);
          Scalar pv = t.phi(s.v);
          if (!pw.is_zero()) terms.push_back(RankOneTerm{s.v * pw, t.phi});
          if (!pv.is_zero()) terms.push_back(RankOneTerm{t.v * (-pv), s.phi});
        }
      }
      return LieElement(r.matrix(), std::move(terms));
    }
  }
  return r;
}

Transvection::Transvection(Vector v, Functional phi)
    : v_(std::move(v)), phi_(std::move(phi)) {
  if (v_.is_zero() || phi_.is_zero())
    throw std::invalid_argument("transvection needs nonzero vector and functional");
  if (!phi_(v_).is_zero())
    throw std::invalid_argument("transvection requires phi(v) = 0");
}

LieElement Transvection::element() const {
  return LieElement(Matrix::outer(v_, phi_), {RankOneTerm{v_, phi_}});
}

// ---------------------------------------------------------------------------
// LieAlgebra construction
// ---------------------------------------------------------------------------

LieAlgebra LieAlgebra::special_linear(int n, const Field& f) {
  if (n < 2) throw std::invalid_argument("special linear algebra needs dimension >= 2");
  std::vector<LieElement> gens;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Vector v(f, n);
      v[i] = f.one();
      Vector phi(f, n);
      phi[j] = f.one();
      gens.push_back(Transvection(v, Functional(phi)).element());
    }
  }
  SlData sl{Subspace::full(f, n), Subspace::full(f, n)};
  return from_parts(Kind::special_linear, f, f, n, std::move(gens), std::move(sl));
}

LieAlgebra LieAlgebra::from_transvections(const Field& f, int n,
                                          const std::vector<Transvection>& gens) {
  std::vector<LieElement> els;
  els.reserve(gens.size());
  for (const auto& t : gens) {
    if (t.v().dim() != n) throw std::invalid_argument("transvection dimension mismatch");
    els.push_back(t.element());
  }
  return from_parts(Kind::custom, f, f, n, std::move(els));
}

LieAlgebra LieAlgebra::from_parts(Kind kind, const Field& matrix_field,
                                  const Field& coeff_field, int n,
                                  std::vector<LieElement> gens,
                                  std::optional<SlData> sl,
                                  std::optional<FormData> form,
                                  bool contains_reflections) {
  LieAlgebra a;
  a.kind_ = kind;
  a.mf_ = &matrix_field;
  a.cf_ = &coeff_field;
  a.n_ = n;
  if (&coeff_field == &matrix_field) {
    a.split_ = false;
  } else if (matrix_field.base_field() == &coeff_field) {
    a.split_ = true;
  } else {
    throw std::invalid_argument("coefficient field must be the matrix field or its base");
  }
  a.sl_ = std::move(sl);
  a.form_ = std::move(form);
  a.contains_reflections_ = contains_reflections;
  a.gens_ = std::move(gens);

  for (const auto& g : a.gens_) {
    if (g.ambient_dim() != n || &g.field() != &matrix_field)
      throw std::invalid_argument("generator shape or field mismatch");
  }

  // Closure of the linear span under the bracket.
  SpanBuilder sb(coeff_field, a.vec_len());
  for (const auto& g : a.gens_) sb.insert(a.vectorize(g.matrix()));
  for (;;) {
    Subspace cur = sb.subspace();
    std::vector<LieElement> elems;
    elems.reserve(cur.dim());
    for (int i = 0; i < cur.dim(); ++i)
      elems.push_back(LieElement(a.unvectorize(cur.basis_vector(i))));
    bool grew = false;
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = i + 1; j < elems.size(); ++j)
        grew |= sb.insert(a.vectorize(bracket(elems[i], elems[j]).matrix()));
    if (!grew) break;
  }
  a.span_ = sb.subspace();
  a.basis_.clear();
  for (int i = 0; i < a.span_.dim(); ++i)
    a.basis_.push_back(LieElement(a.unvectorize(a.span_.basis_vector(i))));

  // Construction invariants: generators lie in the span and the basis is
  // closed under the bracket. The pairwise bracket coordinates double as the
  // structure-constant cache.
  for (const auto& g : a.gens_) {
    if (!a.span_.contains(a.vectorize(g.matrix())))
      throw std::logic_error("generator escaped its own span");
  }
  int d = a.dim();
  a.struct_.reserve(static_cast<size_t>(d) * (d - 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto coords = a.span_.coordinates_of(
          a.vectorize(bracket(a.basis_[i], a.basis_[j]).matrix()));
      if (!coords) throw std::logic_error("basis is not closed under the bracket");
      a.struct_.push_back(std::move(*coords));
    }

  // Gram matrix of the extremal form on the basis.
  a.gram_ = Matrix(coeff_field, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Scalar g = a.trace_form(a.basis_[i], a.basis_[j]);
      a.gram_.at(i, j) = g;
      a.gram_.at(j, i) = g;
    }
  return a;
}

Vector LieAlgebra::vectorize(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_ || &m.field() != mf_)
    throw std::invalid_argument("matrix does not match the algebra ambient");
  Vector out(*cf_, vec_len());
  int idx = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Scalar& e = m.at(i, j);
      if (split_) {
        out[idx++] = cf_->from_rat(e.coord_a());
        out[idx++] = cf_->from_rat(e.coord_b());
      } else {
        out[idx++] = e;
      }
    }
  }
  return out;
}

Matrix LieAlgebra::unvectorize(const Vector& coords) const {
  if (coords.dim() != vec_len())
    throw std::invalid_argument("coordinate length mismatch");
  Matrix m(*mf_, n_, n_);
  int idx = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (split_) {
        Rat ca = coords[idx++].coord_a();
        Rat cb = coords[idx++].coord_a();
        m.at(i, j) = mf_->from_coords(ca, cb);
      } else {
        m.at(i, j) = coords[idx++];
      }
    }
  }
  return m;
}

bool LieAlgebra::contains(const LieElement& x) const {
  return span_.contains(vectorize(x.matrix()));
}

std::optional<std::vector<Scalar>> LieAlgebra::coordinates(const LieElement& x) const {
  return span_.coordinates_of(vectorize(x.matrix()));
}

LieElement LieAlgebra::from_coordinates(const std::vector<Scalar>& coords) const {
  if (static_cast<int>(coords.size()) != dim())
    throw std::invalid_argument("coordinate count mismatch");
  Matrix m(*mf_, n_, n_);
  for (int k = 0; k < dim(); ++k) {
    if (coords[k].is_zero()) continue;
    m = m + scale(basis_[k], coords[k]).matrix();
  }
  return LieElement(std::move(m));
}

LieElement LieAlgebra::scale(const LieElement& x, const Scalar& c) const {
  if (split_) return x * c.lift_to(*mf_);
  return x * c;
}

const std::vector<Scalar>& LieAlgebra::bracket_coords(int i, int j) const {
  if (i >= j) throw std::invalid_argument("bracket_coords expects i < j");
  // Row-major upper triangle: offset of (i, j).
  size_t idx = static_cast<size_t>(i) * dim() - static_cast<size_t>(i) * (i + 1) / 2 +
               (j - i - 1);
  return struct_[idx];
}

Scalar LieAlgebra::gamma_of_bracket(int i, int j,
                                    const std::vector<Scalar>& gamma) const {
  if (i == j) return cf_->zero();
  bool flip = i > j;
  if (flip) std::swap(i, j);
  const auto& coords = bracket_coords(i, j);
  Scalar acc = cf_->zero();
  for (int k = 0; k < dim(); ++k)
    if (!coords[k].is_zero()) acc += coords[k] * gamma[k];
  return flip ? -acc : acc;
}

LieElement LieAlgebra::canonical_rep(const LieElement& x,
                                     std::vector<Scalar>* coords_out) const {
  auto coords = coordinates(x);
  if (!coords) throw std::invalid_argument("element lies outside the algebra");
  for (int k = 0; k < dim(); ++k) {
    if (!(*coords)[k].is_zero()) {
      Scalar inv = (*coords)[k].inverse();
      if (!inv.is_one()) {
        for (int l = k; l < dim(); ++l) (*coords)[l] = (*coords)[l] * inv;
        LieElement r = scale(x, inv);
        if (coords_out) *coords_out = std::move(*coords);
        return r;
      }
      break;
    }
  }
  if (coords_out) *coords_out = std::move(*coords);
  return x;
}

// ---------------------------------------------------------------------------
// Extremality
// ---------------------------------------------------------------------------

namespace {

/// Incremental exact solver for rows [coeffs | rhs]; reports inconsistency.
class AugmentedSolver {
 public:
  AugmentedSolver(const Field& f, int unknowns)
      : field_(&f), width_(unknowns + 1) {}

  /// Returns false when the row is inconsistent with the system.
  bool insert(Vector row) {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& c = row[pivots_[i]];
      if (!c.is_zero()) row = row - rows_[i] * c;
    }
    int piv = -1;
    for (int j = 0; j < width_ - 1; ++j) {
      if (!row[j].is_zero()) {
        piv = j;
        break;
      }
    }
    if (piv < 0) return row[width_ - 1].is_zero();
    row = row * row[piv].inverse();
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& c = rows_[i][piv];
      if (!c.is_zero()) rows_[i] = rows_[i] - row * c;
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(row));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
  }

  /// Any solution, with free unknowns set to zero.
  std::vector<Scalar> solution() const {
    std::vector<Scalar> x(width_ - 1, field_->zero());
    for (size_t i = 0; i < rows_.size(); ++i) x[pivots_[i]] = rows_[i][width_ - 1];
    return x;
  }

 private:
  const Field* field_;
  int width_;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
};

/// Extracts (v, phi) from a rank-one matrix so that m = v phi^T, or nullopt.
std::optional<RankOneTerm> rank_one_split(const Matrix& m) {
  const Field& f = m.field();
  int n = m.rows();
  int r0 = -1, c0 = -1;
  for (int i = 0; i < n && r0 < 0; ++i)
    for (int j = 0; j < n; ++j)
      if (!m.at(i, j).is_zero()) {
        r0 = i;
        c0 = j;
        break;
      }
  if (r0 < 0) return std::nullopt;
  Vector v = m.col(c0);
  Scalar pivot = m.at(r0, c0);
  Vector phi(f, n);
  for (int j = 0; j < n; ++j) phi[j] = m.at(r0, j) / v[r0];
  // v[r0] = pivot, so phi[c0] = 1 after scaling; rescale v to compensate.
  (void)pivot;
  if (!(Matrix::outer(v, Functional(phi)) == m)) return std::nullopt;
  return RankOneTerm{std::move(v), Functional(std::move(phi))};
}

}  // namespace

LieAlgebra::GammaResult LieAlgebra::premet_gamma_char2(
    const LieElement& x, const std::vector<LieElement>& xb) const {
  GammaResult res;
  int d = dim();
  const Field& cf = *cf_;
  AugmentedSolver solver(cf, d);
  Vector xv = vectorize(x.matrix());
  std::vector<Vector> xbv;
  xbv.reserve(d);
  for (int i = 0; i < d; ++i) xbv.push_back(vectorize(xb[i].matrix()));

  auto add_equation = [&](const std::vector<Scalar>& br_coords, int i, int j,
                          const Vector& lhs, bool p2) -> bool {
    // gamma(br) x +- gamma_j xb_i - gamma_i xb_j = lhs, componentwise.
    Scalar sgn_j = p2 ? -cf.one() : cf.one();
    for (int l = 0; l < vec_len(); ++l) {
      Vector row(cf, d + 1);
      bool nontrivial = false;
      for (int k = 0; k < d; ++k) {
        Scalar c = br_coords[k] * xv[l];
        if (k == j) c += sgn_j * xbv[i][l];
        if (k == i) c -= xbv[j][l];
        row[k] = c;
        nontrivial |= !c.is_zero();
      }
      row[d] = lhs[l];
      nontrivial |= !lhs[l].is_zero();
      if (!nontrivial) continue;
      if (!solver.insert(std::move(row))) return false;
    }
    return true;
  };

  auto ordered_bracket_coords = [&](int i, int j) {
    std::vector<Scalar> br(d, cf.zero());
    if (i == j) return br;
    const auto& bc = i < j ? bracket_coords(i, j) : bracket_coords(j, i);
    for (int k = 0; k < d; ++k) br[k] = i < j ? bc[k] : -bc[k];
    return br;
  };

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::vector<Scalar> br = ordered_bracket_coords(i, j);
      if (i < j) {
        Vector lhs1 = vectorize(bracket(xb[i], xb[j]).matrix());
        if (!lhs1.is_zero()) res.lhs_all_zero = false;
        if (!add_equation(br, i, j, lhs1, false)) return res;
      }
      Vector lhs2 = vectorize(bracket(x, bracket(basis_[i], xb[j])).matrix());
      if (!lhs2.is_zero()) res.lhs_all_zero = false;
      if (!add_equation(br, i, j, lhs2, true)) return res;
    }
  }
  res.ok = true;
  res.gamma = solver.solution();
  return res;
}

Extremality LieAlgebra::classify_extremal(const LieElement& x) const {
  if (x.is_zero()) throw std::invalid_argument("extremality of the zero element");
  if (!contains(x)) throw std::invalid_argument("element lies outside the algebra");

  const Field& cf = *cf_;
  const bool char2 = cf.characteristic() == 2;
  int d = dim();

  std::vector<LieElement> xb;
  xb.reserve(d);
  for (int i = 0; i < d; ++i) xb.push_back(bracket(x, basis_[i]));

  // Step 1: [x,[x,b_i]] must equal 2 gamma_i x (hence vanish in char 2).
  std::vector<Scalar> c(d, cf.zero());
  bool all_double_zero = true;
  int pr = -1, pc = -1;  // first nonzero position of x
  for (int i = 0; i < n_ && pr < 0; ++i)
    for (int j = 0; j < n_; ++j)
      if (!x.matrix().at(i, j).is_zero()) {
        pr = i;
        pc = j;
        break;
      }
  for (int i = 0; i < d; ++i) {
    LieElement dbl = bracket(x, xb[i]);
    if (dbl.is_zero()) continue;
    all_double_zero = false;
    if (char2) return Extremality::not_extremal;
    Scalar ratio_mf = dbl.matrix().at(pr, pc) / x.matrix().at(pr, pc);
    if (!(x.matrix() * ratio_mf == dbl.matrix())) return Extremality::not_extremal;
    Scalar ratio = ratio_mf;
    if (split_) {
      auto r = ratio_mf.restrict_to_base();
      if (!r) return Extremality::not_extremal;
      ratio = *r;
    }
    c[i] = ratio;
  }

  // Step 2: determine the extremal functional gamma on the basis.
  std::vector<Scalar> gamma(d, cf.zero());
  bool gamma_known = false;
  if (!char2) {
    Scalar half = cf.from_integer(2).inverse();
    for (int i = 0; i < d; ++i) gamma[i] = c[i] * half;
    gamma_known = true;
  } else {
    // Closed form -phi(b_i(v)) when x is rank one with phi(v) = 0.
    auto split1 = rank_one_split(x.matrix());
    if (split1 && split1->phi(split1->v).is_zero()) {
      bool ok = true;
      for (int i = 0; i < d && ok; ++i) {
        Scalar val = -split1->phi(basis_[i].matrix().apply(split1->v));
        if (split_) {
          auto r = val.restrict_to_base();
          if (!r) ok = false;
          else gamma[i] = *r;
        } else {
          gamma[i] = val;
        }
      }
      gamma_known = ok;
    }
    if (!gamma_known) {
      GammaResult res = premet_gamma_char2(x, xb);
      if (!res.ok) return Extremality::not_extremal;
      // The solver consumed both Premet identities, so they hold for its
      // gamma; only the sandwich distinction is left.
      return (all_double_zero && res.lhs_all_zero) ? Extremality::sandwich
                                                   : Extremality::pure_extremal;
    }
  }

  // Step 3: verify (P1) and (P2) on all basis pairs with this gamma.
  bool lhs_all_zero = true;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Scalar gbr = gamma_of_bracket(i, j, gamma);
      if (i < j) {
        LieElement lhs1 = bracket(xb[i], xb[j]);
        LieElement rhs1 = scale(x, gbr) + scale(xb[i], gamma[j]) - scale(xb[j], gamma[i]);
        if (!(lhs1 == rhs1)) return Extremality::not_extremal;
        if (!lhs1.is_zero()) lhs_all_zero = false;
      }
      LieElement lhs2 = bracket(x, bracket(basis_[i], xb[j]));
      LieElement rhs2 = scale(x, gbr) - scale(xb[i], gamma[j]) - scale(xb[j], gamma[i]);
      if (!(lhs2 == rhs2)) return Extremality::not_extremal;
      if (!lhs2.is_zero()) lhs_all_zero = false;
    }
  }
  return (all_double_zero && lhs_all_zero) ? Extremality::sandwich
                                           : Extremality::pure_extremal;
}

Scalar LieAlgebra::trace_form(const LieElement& x, const LieElement& y) const {
  const Field& mf = *mf_;
  Scalar acc = mf.zero();
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Scalar& a = x.matrix().at(i, k);
      if (a.is_zero()) continue;
      const Scalar& b = y.matrix().at(k, i);
      if (b.is_zero()) continue;
      acc += a * b;
    }
  acc = -acc;
  if (!split_) return acc;
  auto r = acc.restrict_to_base();
  if (!r) throw std::domain_error("extremal form value lies outside the coefficient field");
  return *r;
}

Scalar LieAlgebra::extremal_form(const LieElement& x, const LieElement& y) const {
  if (classify_extremal(x) == Extremality::not_extremal)
    throw std::invalid_argument("extremal form requires an extremal first argument");
  if (x.decomposition() && x.decomposition()->size() == 1) {
    const RankOneTerm& t = x.decomposition()->front();
    Scalar val = -t.phi(y.matrix().apply(t.v));
    if (!split_) return val;
    auto r = val.restrict_to_base();
    if (!r) throw std::domain_error("extremal form value lies outside the coefficient field");
    return *r;
  }
  return trace_form(x, y);
}

// ---------------------------------------------------------------------------
// Pair classification
// ---------------------------------------------------------------------------

PairCase classify_pair(const LieAlgebra& a, const LieElement& x, const LieElement& y) {
  if (a.classify_extremal(x) != Extremality::pure_extremal ||
      a.classify_extremal(y) != Extremality::pure_extremal)
    throw std::invalid_argument("pair classification requires pure extremal inputs");

  std::vector<Scalar> cx, cy;
  a.canonical_rep(x, &cx);
  a.canonical_rep(y, &cy);
  if (cx == cy) return PairCase::a;

  LieElement z = bracket(x, y);
  if (z.is_zero()) {
    LieElement s = x + y;
    if (s.is_zero()) return PairCase::b;
    return a.classify_extremal(s) != Extremality::not_extremal ? PairCase::b
                                                               : PairCase::c;
  }
  Scalar g = a.trace_form(x, y);
  if (!g.is_zero()) return PairCase::e;
  if (a.classify_extremal(z) != Extremality::not_extremal) return PairCase::d;
  throw std::runtime_error("pair classification fell outside cases (a)-(e)");
}

PairCase classify_pair_by_flags(const FlagLabel& a, const FlagLabel& b) {
  bool same_point = a.point.projective_normal_form() == b.point.projective_normal_form();
  bool same_hyp = a.functional.projective_normal_form() == b.functional.projective_normal_form();
  if (same_point && same_hyp) return PairCase::a;
  if (same_point || same_hyp) return PairCase::b;
  bool phi_a_on_b = a.functional(b.point).is_zero();  // q in H
  bool phi_b_on_a = b.functional(a.point).is_zero();  // p in K
  if (phi_a_on_b && phi_b_on_a) return PairCase::c;
  if (phi_a_on_b || phi_b_on_a) return PairCase::d;
  return PairCase::e;
}

// ---------------------------------------------------------------------------
// Enumeration of extremal points
// ---------------------------------------------------------------------------

namespace {

/// Iterates projective representatives (first nonzero coordinate = 1) of
/// F^dim for a finite field F.
template <typename Fn>
void for_each_projective(const Field& f, int dim, Fn&& fn) {
  std::int64_t q = f.order();
  std::vector<Scalar> coords(dim, f.zero());
  for (int lead = dim - 1; lead >= 0; --lead) {
    for (int i = 0; i < dim; ++i) coords[i] = f.zero();
    coords[lead] = f.one();
    int tail = dim - 1 - lead;
    std::vector<std::int64_t> odo(tail, 0);
    for (;;) {
      for (int t = 0; t < tail; ++t) coords[lead + 1 + t] = f.element(odo[t]);
      fn(coords);
      int t = 0;
      while (t < tail && ++odo[t] == q) odo[t++] = 0;
      if (t == tail) break;
    }
  }
}

/// Projective points of a subspace, as ambient vectors.
std::vector<Vector> projective_points(const Subspace& s) {
  const Field& f = s.field();
  if (!f.is_finite()) throw std::domain_error("projective enumeration needs a finite field");
  std::vector<Vector> pts;
  for_each_projective(f, s.dim(), [&](const std::vector<Scalar>& coords) {
    Vector v(f, s.ambient());
    for (int k = 0; k < s.dim(); ++k) {
      if (coords[k].is_zero()) continue;
      v = v + s.basis_vector(k) * coords[k];
    }
    pts.push_back(v.projective_normal_form());
  });
  return pts;
}

void sort_points(std::vector<ExtremalPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const ExtremalPoint& a, const ExtremalPoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                        b.coords.begin(), b.coords.end(),
                                        [](const Scalar& s, const Scalar& t) { return s < t; });
  });
}

}  // namespace

std::vector<ExtremalPoint> enumerate_extremal(const LieAlgebra& a,
                                              EnumerationMode mode,
                                              std::int64_t bound) {
  std::vector<ExtremalPoint> pts;
  const Field& cf = a.coeff_field();
  const Field& mf = a.matrix_field();

  if (mode == EnumerationMode::brute) {
    if (!cf.is_finite())
      throw std::domain_error("brute enumeration needs a finite coefficient field");
    std::int64_t q = cf.order();
    double total = 1.0;
    for (int i = 0; i < a.dim(); ++i) total *= static_cast<double>(q);
    if (total > static_cast<double>(bound))
      throw std::domain_error("enumeration bound exceeded");
    for_each_projective(cf, a.dim(), [&](const std::vector<Scalar>& coords) {
      LieElement el = a.from_coordinates(coords);
      if (a.classify_extremal(el) != Extremality::pure_extremal) return;
      ExtremalPoint p;
      p.rep = std::move(el);
      p.coords = coords;
      if (auto split = rank_one_split(p.rep.matrix());
          split && split->phi(split->v).is_zero()) {
        p.flag = FlagLabel{split->v.projective_normal_form(),
                           split->phi.projective_normal_form()};
      }
      pts.push_back(std::move(p));
    });
    sort_points(pts);
    return pts;
  }

  // Parametric: transvection classes of the construction.
  auto push_flag = [&](const Vector& v, const Functional& phi) {
    LieElement el = Transvection(v, phi).element();
    std::vector<Scalar> coords;
    LieElement rep = a.canonical_rep(el, &coords);
    ExtremalPoint p;
    p.rep = std::move(rep);
    p.coords = std::move(coords);
    p.flag = FlagLabel{v.projective_normal_form(), phi.projective_normal_form()};
    pts.push_back(std::move(p));
  };

  if (a.sl_data()) {
    const auto& sl = *a.sl_data();
    for (const Vector& v : projective_points(sl.U)) {
      // Functionals of Phi vanishing on v form a hyperplane of Phi.
      Matrix cond(mf, 1, sl.Phi.dim());
      for (int k = 0; k < sl.Phi.dim(); ++k)
        cond.at(0, k) = Functional(sl.Phi.basis_vector(k))(v);
      Subspace sols = kernel(cond);
      for (const Vector& pc : projective_points(sols)) {
        Vector phi(mf, a.ambient_dim());
        for (int k = 0; k < sl.Phi.dim(); ++k) {
          if (pc[k].is_zero()) continue;
          phi = phi + sl.Phi.basis_vector(k) * pc[k];
        }
        push_flag(v, Functional(phi));
      }
    }
  } else if (a.form_data()) {
    const auto& fd = *a.form_data();
    for (const Vector& v : projective_points(Subspace::full(mf, a.ambient_dim()))) {
      Vector conj = fd.hermitian ? [&] {
        Vector c(mf, v.dim());
        for (int i = 0; i < v.dim(); ++i) c[i] = v[i].sigma();
        return c;
      }() : v;
      Functional phi(fd.gram.transposed().apply(conj));
      if (!phi(v).is_zero()) continue;  // anisotropic point
      push_flag(v, phi);
    }
  } else {
    throw std::domain_error("parametric enumeration unavailable for this construction");
  }
  sort_points(pts);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const ExtremalPoint& x, const ExtremalPoint& y) {
                          return x.coords == y.coords;
                        }),
            pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// Center, ideals, simplicity
// ---------------------------------------------------------------------------

namespace {

/// Coordinates of [u, b_j] from the structure-constant cache, for u given in
/// basis coordinates.
Vector coord_bracket_with_basis(const LieAlgebra& a, const Vector& u, int j) {
  const Field& cf = a.coeff_field();
  int d = a.dim();
  Vector out(cf, d);
  for (int k = 0; k < d; ++k) {
    if (u[k].is_zero() || k == j) continue;
    const auto& coords = k < j ? a.bracket_coords(k, j) : a.bracket_coords(j, k);
    if (k < j) {
      for (int l = 0; l < d; ++l)
        if (!coords[l].is_zero()) out[l] += u[k] * coords[l];
    } else {
      for (int l = 0; l < d; ++l)
        if (!coords[l].is_zero()) out[l] -= u[k] * coords[l];
    }
  }
  return out;
}

}  // namespace

Subspace center(const LieAlgebra& a) {
  const Field& cf = a.coeff_field();
  int d = a.dim();
  Matrix sys(cf, d * d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (k == j) continue;
      const auto& coords = k < j ? a.bracket_coords(k, j) : a.bracket_coords(j, k);
      for (int l = 0; l < d; ++l) {
        Scalar c = k < j ? coords[l] : -coords[l];
        sys.at(j * d + l, k) = c;
      }
    }
  }
  return kernel(sys);
}

Subspace ideal_closure(const LieAlgebra& a, const LieElement& seed) {
  const Field& cf = a.coeff_field();
  int d = a.dim();
  auto coords = a.coordinates(seed);
  if (!coords) throw std::invalid_argument("seed lies outside the algebra");
  SpanBuilder sb(cf, d);
  std::vector<Vector> work;
  Vector seed_vec(cf, d);
  for (int k = 0; k < d; ++k) seed_vec[k] = (*coords)[k];
  if (sb.insert(seed_vec)) work.push_back(seed_vec);
  while (!work.empty() && sb.dim() < d) {
    Vector u = work.back();
    work.pop_back();
    for (int j = 0; j < d && sb.dim() < d; ++j) {
      Vector bv = coord_bracket_with_basis(a, u, j);
      if (sb.insert(bv)) work.push_back(bv);
    }
  }
  return sb.subspace();
}

bool is_simple(const LieAlgebra& a) {
  if (a.dim() == 0) return false;
  if (center(a).dim() != 0) return false;
  for (const LieElement& b : a.basis()) {
    if (ideal_closure(a, b).dim() != a.dim()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// exp
// ---------------------------------------------------------------------------

ExpMap::ExpMap(const LieAlgebra& a, LieElement x, Scalar lambda)
    : a_(&a), x_(std::move(x)), lambda_(std::move(lambda)) {
  if (a.classify_extremal(x_) != Extremality::pure_extremal)
    throw std::invalid_argument("exp requires a pure extremal direction");
  if (lambda_.field_ptr() != &a.coeff_field())
    throw std::invalid_argument("exp parameter must lie in the coefficient field");
}

LieElement ExpMap::operator()(const LieElement& y) const {
  Scalar g = a_->trace_form(x_, y);
  LieElement r = y + a_->scale(bracket(x_, y), lambda_);
  if (!g.is_zero()) r = r + a_->scale(x_, lambda_ * lambda_ * g);
  return r;
}

}  // namespace extremal
