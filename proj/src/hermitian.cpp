#include "extremal/hermitian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace extremal {

namespace {

std::vector<Vector> projective_points_of(const Field& f, int n) {
  std::vector<Vector> pts;
  std::int64_t q = f.order();
  for (int lead = n - 1; lead >= 0; --lead) {
    int tail = n - 1 - lead;
    std::vector<std::int64_t> odo(tail, 0);
    for (;;) {
      Vector v(f, n);
      v[lead] = f.one();
      for (int t = 0; t < tail; ++t) v[lead + 1 + t] = f.element(odo[t]);
      pts.push_back(std::move(v));
      int t = 0;
      while (t < tail && ++odo[t] == q) odo[t++] = 0;
      if (t == tail) break;
    }
  }
  return pts;
}

std::int64_t projective_point_count(std::int64_t q, int n) {
  std::int64_t acc = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

}  // namespace

SesquiForm::SesquiForm(const Field& f, Matrix gram, bool tau_is_involution, Scalar eps)
    : field_(&f), gram_(std::move(gram)), tau_inv_(tau_is_involution), eps_(eps) {
  if (gram_.rows() != gram_.cols() || &gram_.field() != &f)
    throw std::invalid_argument("Gram matrix must be square over the form's field");
  if (tau_inv_ && !f.has_involution())
    throw std::invalid_argument("tau = sigma requires a field with involution");
  if (eps_.is_zero()) throw std::invalid_argument("eps must be nonzero");
  if (!(eps_ * tau(eps_)).is_one())
    throw std::invalid_argument("eps must satisfy eps^tau = eps^-1");
  for (int i = 0; i < gram_.rows(); ++i)
    for (int j = 0; j < gram_.cols(); ++j)
      if (!(gram_.at(i, j) == eps_ * tau(gram_.at(j, i))))
        throw std::invalid_argument("Gram matrix violates the reflexivity law");
}

SesquiForm SesquiForm::skew_hermitian(const Field& f, Matrix gram) {
  return SesquiForm(f, std::move(gram), true, -f.one());
}

SesquiForm SesquiForm::alternating(const Field& f, Matrix gram) {
  for (int i = 0; i < gram.rows(); ++i)
    if (!gram.at(i, i).is_zero())
      throw std::invalid_argument("alternating Gram matrix needs a zero diagonal");
  return SesquiForm(f, std::move(gram), false, -f.one());
}

SesquiForm SesquiForm::standard_skew_hermitian(const Field& f, int n) {
  if (!f.has_involution())
    throw std::invalid_argument("skew-Hermitian forms need a field involution");
  Scalar delta;
  if (f.characteristic() == 2) {
    delta = f.one();
  } else {
    // delta = lin/2 + t satisfies sigma(delta) = -delta.
    Scalar half = f.from_integer(2).inverse();
    delta = f.from_integer(f.kind() == Field::Kind::quadratic_ext ? f.poly_lin() : 0) * half +
            f.generator();
  }
  if (!(delta.sigma() == -delta) || delta.is_zero())
    throw std::logic_error("failed to build a skew generator");
  return skew_hermitian(f, Matrix::identity(f, n) * delta);
}

SesquiForm SesquiForm::standard_alternating(const Field& f, int n) {
  if (n % 2 != 0) throw std::invalid_argument("alternating forms need even dimension");
  Matrix g(f, n, n);
  int m = n / 2;
  for (int i = 0; i < m; ++i) {
    g.at(i, m + i) = f.one();
    g.at(m + i, i) = -f.one();
  }
  return alternating(f, std::move(g));
}

Scalar SesquiForm::eval(const Vector& v, const Vector& w) const {
  if (v.dim() != dim() || w.dim() != dim())
    throw std::invalid_argument("form evaluation dimension mismatch");
  Vector gw = gram_.apply(w);
  Scalar acc = field_->zero();
  for (int i = 0; i < dim(); ++i) {
    if (v[i].is_zero() || gw[i].is_zero()) continue;
    acc += tau(v[i]) * gw[i];
  }
  return acc;
}

Functional SesquiForm::functional_of(const Vector& v) const {
  Vector vt(*field_, dim());
  for (int i = 0; i < dim(); ++i) vt[i] = tau(v[i]);
  return Functional(gram_.transposed().apply(vt));
}

bool SesquiForm::non_degenerate() const { return rank(gram_) == dim(); }

// ---------------------------------------------------------------------------
// Isotropy and trace values
// ---------------------------------------------------------------------------

namespace {

/// First nonzero isotropic vector: projective scan over finite fields,
/// bounded height search over the rationals and their quadratic extensions.
std::optional<Vector> find_isotropic(const SesquiForm& h) {
  const Field& f = h.field();
  int n = h.dim();
  if (!h.tau_is_involution()) {  // alternating: everything is isotropic
    Vector e(f, n);
    e[0] = f.one();
    return e;
  }
  if (f.is_finite()) {
    for (const Vector& v : projective_points_of(f, n))
      if (h.is_isotropic(v)) return v;
    return std::nullopt;
  }
  // height-bounded search with coordinates a + b*t, |a|,|b| <= height
  for (std::int64_t height = 1; height <= 4; ++height) {
    std::vector<std::int64_t> odo(2 * n, 0);
    std::int64_t radix = 2 * height + 1;
    for (;;) {
      Vector v(f, n);
      bool nz = false;
      for (int i = 0; i < n; ++i) {
        Rat a{odo[2 * i] - height, 1};
        Rat b{odo[2 * i + 1] - height, 1};
        v[i] = f.from_coords(a, f.has_involution() ? b : Rat{0, 1});
        nz |= !v[i].is_zero();
      }
      if (nz && h.is_isotropic(v)) return v;
      int t = 0;
      while (t < 2 * n && ++odo[t] == radix) odo[t++] = 0;
      if (t == 2 * n) break;
    }
  }
  return std::nullopt;
}

void require_skew_hermitian(const SesquiForm& h) {
  if (!h.tau_is_involution())
    throw std::domain_error("operation applies to skew-Hermitian forms");
  if (!h.non_degenerate()) throw std::domain_error("degenerate form");
}

}  // namespace

bool is_trace_valued(const SesquiForm& h) {
  require_skew_hermitian(h);
  if (!find_isotropic(h)) throw std::domain_error("no isotropic vector");
  const Field& f = h.field();
  int n = h.dim();
  // Membership in {lambda - lambda^sigma}, which over the supported fields is
  // exactly the set fixed to its own negative by sigma.
  auto in_trace_set = [](const Scalar& mu) { return mu.sigma() == -mu; };
  for (int i = 0; i < n; ++i) {
    Vector bi(f, n);
    bi[i] = f.one();
    if (!in_trace_set(h.eval(bi, bi))) return false;
    for (int j = i + 1; j < n; ++j) {
      Vector s(f, n);
      s[i] = f.one();
      s[j] = f.one();
      if (!in_trace_set(h.eval(s, s))) return false;
    }
  }
  return true;
}

Subspace isotropic_span(const SesquiForm& h, std::int64_t bound) {
  const Field& f = h.field();
  int n = h.dim();
  if (!h.non_degenerate()) throw std::domain_error("degenerate form");
  if (!h.tau_is_involution()) return Subspace::full(f, n);  // alternating

  if (f.is_finite()) {
    if (projective_point_count(f.order(), n) > bound)
      throw std::domain_error("enumeration bound exceeded");
    SpanBuilder sb(f, n);
    for (const Vector& v : projective_points_of(f, n))
      if (h.is_isotropic(v)) sb.insert(v);
    return sb.subspace();
  }

  // Hyperbolic extension over Q(sqrt d): from one isotropic v0, every basis
  // vector w is corrected to an isotropic w + mu v0.
  auto v0 = find_isotropic(h);
  if (!v0) throw std::domain_error("no isotropic vector found within the search bound");
  SpanBuilder sb(f, n);
  sb.insert(*v0);
  Vector ustar(f, n);
  bool have_ustar = false;
  for (int i = 0; i < n && !have_ustar; ++i) {
    Vector e(f, n);
    e[i] = f.one();
    if (!h.eval(*v0, e).is_zero()) {
      ustar = e;
      have_ustar = true;
    }
  }
  if (!have_ustar) throw std::domain_error("degenerate form");
  Scalar half = f.from_integer(2).inverse();
  for (int i = 0; i < n; ++i) {
    Vector w(f, n);
    w[i] = f.one();
    if (sb.contains(w)) continue;
    if (h.eval(*v0, w).is_zero()) w = w + ustar;
    Scalar c = h.eval(*v0, w);
    // solve nu - nu^sigma = h(w,w); in characteristic zero nu = h(w,w)/2
    Scalar nu = h.eval(w, w) * half;
    Scalar mu = nu / c.sigma();
    Vector wp = w + *v0 * mu;
    if (!h.is_isotropic(wp)) throw std::logic_error("hyperbolic correction failed");
    sb.insert(wp);
  }
  return sb.subspace();
}

bool is_hyperbolic_2space(const SesquiForm& h, const Vector& v, const Vector& w) {
  const Field& f = h.field();
  Subspace u = Subspace::span(f, h.dim(), {v, w});
  if (u.dim() != 2) return false;
  std::vector<Vector> iso;
  if (f.is_finite()) {
    std::int64_t q = f.order();
    // the q+1 projective points of <v, w>
    for (std::int64_t c = 0; c <= q; ++c) {
      Vector p = c == q ? u.basis_vector(1)
                        : u.basis_vector(0) + u.basis_vector(1) * f.element(c);
      if (h.is_isotropic(p)) iso.push_back(p);
    }
  } else {
    // bounded scan of small-coefficient combinations
    for (std::int64_t a = -3; a <= 3; ++a)
      for (std::int64_t b = -3; b <= 3; ++b) {
        if (a == 0 && b == 0) continue;
        Vector p = u.basis_vector(0) * f.from_integer(a) +
                   u.basis_vector(1) * f.from_integer(b);
        if (h.is_isotropic(p)) iso.push_back(p);
      }
  }
  for (size_t i = 0; i < iso.size(); ++i)
    for (size_t j = i + 1; j < iso.size(); ++j)
      if (!h.eval(iso[i], iso[j]).is_zero() &&
          Subspace::span(f, h.dim(), {iso[i], iso[j]}).dim() == 2)
        return true;
  return false;
}

DeltaCertificate delta_graph_connected(const SesquiForm& h, std::int64_t bound) {
  require_skew_hermitian(h);
  const Field& f = h.field();
  if (!f.is_finite())
    throw std::domain_error("Delta graph enumeration needs a finite field");
  if (projective_point_count(f.order(), h.dim()) > bound)
    throw std::domain_error("enumeration bound exceeded");
  DeltaCertificate cert;
  for (const Vector& v : projective_points_of(f, h.dim()))
    if (!h.is_isotropic(v)) cert.vertices.push_back(v);
  cert.vertex_count = static_cast<int>(cert.vertices.size());
  if (cert.vertex_count == 0) {
    cert.connected = true;  // empty graph, nothing to connect
    return cert;
  }
  std::vector<char> seen(cert.vertex_count, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (size_t qh = 0; qh < queue.size(); ++qh) {
    int u = queue[qh];
    for (int w = 0; w < cert.vertex_count; ++w) {
      if (seen[w]) continue;
      if (is_hyperbolic_2space(h, cert.vertices[u], cert.vertices[w])) {
        seen[w] = 1;
        cert.spanning_tree.emplace_back(u, w);
        queue.push_back(w);
      }
    }
  }
  cert.connected =
      std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  return cert;
}

// ---------------------------------------------------------------------------
// Unitary and symplectic construction
// ---------------------------------------------------------------------------

namespace {

/// Solution space of h(x v, w) + h(v, x w) = 0 (all v, w) plus, optionally,
/// tr x = 0, as a subspace of the coefficient-field vectorization.
Subspace form_solution_space(const SesquiForm& h, const Field& cf, bool traceless) {
  const Field& mf = h.field();
  int n = h.dim();
  bool split = &cf != &mf;
  int unknowns = split ? 2 * n * n : n * n;

  // One probe handle supplies the vectorization convention.
  auto vec_split = [&](const Matrix& m) {
    Vector out(cf, unknowns);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (split) {
          out[idx++] = cf.from_rat(m.at(i, j).coord_a());
          out[idx++] = cf.from_rat(m.at(i, j).coord_b());
        } else {
          out[idx++] = m.at(i, j);
        }
      }
    return out;
  };

  const Matrix& g = h.gram();
  int cond_len = unknowns + (traceless ? (split ? 2 : 1) : 0);
  Matrix sys(cf, cond_len, unknowns);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int parts = split ? 2 : 1;
      for (int part = 0; part < parts; ++part) {
        Matrix e(mf, n, n);
        e.at(i, j) = part == 0 ? mf.one() : mf.generator();
        Matrix estar = h.tau_is_involution() ? e.sigma_entrywise().transposed()
                                             : e.transposed();
        Matrix cond = estar * g + g * e;
        Vector cv = vec_split(cond);
        for (int r = 0; r < unknowns; ++r) sys.at(r, col) = cv[r];
        if (traceless) {
          Scalar tr = e.trace();
          if (split) {
            sys.at(unknowns, col) = cf.from_rat(tr.coord_a());
            sys.at(unknowns + 1, col) = cf.from_rat(tr.coord_b());
          } else {
            sys.at(unknowns, col) = tr;
          }
        }
        ++col;
      }
    }
  }
  return kernel(sys);
}

std::vector<Vector> isotropic_generating_vectors(const SesquiForm& h, std::int64_t bound) {
  const Field& f = h.field();
  int n = h.dim();
  std::vector<Vector> out;
  if (!h.tau_is_involution()) {
    // alternating: every vector is isotropic
    if (f.is_finite()) {
      if (projective_point_count(f.order(), n) > bound)
        throw std::domain_error("enumeration bound exceeded");
      return projective_points_of(f, n);
    }
    for (int i = 0; i < n; ++i) {
      Vector e(f, n);
      e[i] = f.one();
      out.push_back(e);
      for (int j = i + 1; j < n; ++j) {
        Vector s(f, n);
        s[i] = f.one();
        s[j] = f.one();
        out.push_back(s);
      }
    }
    return out;
  }
  if (f.is_finite()) {
    if (projective_point_count(f.order(), n) > bound)
      throw std::domain_error("enumeration bound exceeded");
    for (const Vector& v : projective_points_of(f, n))
      if (h.is_isotropic(v)) out.push_back(v);
    return out;
  }
  // infinite field: the constructive spanning list of isotropic vectors
  auto v0 = find_isotropic(h);
  if (!v0) return out;
  out.push_back(*v0);
  Vector ustar(f, n);
  bool have = false;
  for (int i = 0; i < n && !have; ++i) {
    Vector e(f, n);
    e[i] = f.one();
    if (!h.eval(*v0, e).is_zero()) {
      ustar = e;
      have = true;
    }
  }
  Scalar half = f.from_integer(2).inverse();
  for (int i = 0; i < n; ++i) {
    Vector w(f, n);
    w[i] = f.one();
    if (h.eval(*v0, w).is_zero()) w = w + ustar;
    Scalar nu = h.eval(w, w) * half;
    Vector wp = w + *v0 * (nu / h.eval(*v0, w).sigma());
    if (h.is_isotropic(wp)) out.push_back(wp);
  }
  return out;
}

UnitaryConstruction build_from_form(const SesquiForm& h, bool hermitian) {
  if (!h.non_degenerate()) throw std::domain_error("degenerate form");
  const Field& mf = h.field();
  const Field& cf = hermitian ? *mf.base_field() : mf;
  int n = h.dim();

  std::vector<LieElement> gens;
  for (const Vector& v : isotropic_generating_vectors(h, LieAlgebra::kDefaultEnumerationBound)) {
    Functional phi = h.functional_of(v);
    if (phi.is_zero()) throw std::logic_error("degenerate form produced a zero functional");
    gens.push_back(Transvection(v, phi).element());
  }
  LieAlgebra::FormData fd{h.gram(), hermitian};
  LieAlgebra alg = LieAlgebra::from_parts(
      hermitian ? LieAlgebra::Kind::unitary : LieAlgebra::Kind::symplectic, mf,
      cf, n, std::move(gens), std::nullopt, fd);
  UnitaryConstruction out{std::move(alg), form_solution_space(h, cf, true), false};
  out.spans_match = out.algebra.span_subspace() == out.solution_space;
  return out;
}

}  // namespace

UnitaryConstruction build_unitary(const SesquiForm& h) {
  if (!h.tau_is_involution()) return build_symplectic(h);
  return build_from_form(h, true);
}

UnitaryConstruction build_symplectic(const SesquiForm& f) {
  if (f.tau_is_involution())
    throw std::invalid_argument("build_symplectic needs an alternating form");
  return build_from_form(f, false);
}

// ---------------------------------------------------------------------------
// Spanning reflections
// ---------------------------------------------------------------------------

std::vector<LieElement> spanning_reflection_basis(const SesquiForm& h) {
  require_skew_hermitian(h);
  const Field& f = h.field();
  const Field& cf = *f.base_field();
  int n = h.dim();

  // Diagonalize by Gram-Schmidt with anisotropic pivoting.
  std::vector<Vector> diag;
  std::vector<Vector> complement;
  for (int i = 0; i < n; ++i) {
    Vector e(f, n);
    e[i] = f.one();
    complement.push_back(e);
  }
  while (static_cast<int>(diag.size()) < n) {
    int pick = -1;
    for (size_t i = 0; i < complement.size(); ++i)
      if (!h.is_isotropic(complement[i])) {
        pick = static_cast<int>(i);
        break;
      }
    Vector u(f, n);
    if (pick >= 0) {
      u = complement[pick];
    } else {
      // all complement basis vectors isotropic: mix two with nonzero pairing
      bool done = false;
      for (size_t i = 0; i < complement.size() && !done; ++i)
        for (size_t j = i + 1; j < complement.size() && !done; ++j) {
          Scalar c = h.eval(complement[i], complement[j]);
          if (c.is_zero()) continue;
          Scalar nu = f.generator();  // nu != nu^sigma
          Vector cand = complement[i] + complement[j] * (nu / c);
          if (!h.is_isotropic(cand)) {
            u = cand;
            done = true;
          }
        }
      if (!done) throw std::logic_error("failed to find an anisotropic pivot");
    }
    diag.push_back(u);
    Scalar huu = h.eval(u, u);
    std::vector<Vector> next;
    SpanBuilder sb(f, n);
    for (const Vector& c : complement) {
      Vector proj = c - u * (h.eval(u, c) / huu);
      if (sb.insert(proj)) next.push_back(proj);
    }
    complement = std::move(next);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar v = h.eval(diag[i], diag[j]);
      if (i != j && !v.is_zero()) throw std::logic_error("diagonalization failed");
      if (i == j && v.is_zero()) throw std::logic_error("diagonalization failed");
    }

  Scalar mu = f.generator();
  if (mu.sigma() == mu) throw std::logic_error("no valid mu with mu^sigma != mu");

  auto reflection = [&](const Vector& v) {
    Functional phi = h.functional_of(v);
    return LieElement(Matrix::outer(v, phi), {RankOneTerm{v, phi}});
  };
  std::vector<LieElement> out;
  for (int i = 0; i < n; ++i) out.push_back(reflection(diag[i]));
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l) {
      out.push_back(reflection(diag[j] + diag[l]));
      out.push_back(reflection(diag[j] + diag[l] * mu));
    }

  // Certify: independent over the fixed field and spanning the full unitary
  // algebra (solution space without the trace condition, dimension n^2).
  Subspace usol = form_solution_space(h, cf, false);
  if (usol.dim() != n * n)
    throw std::logic_error("unitary algebra has unexpected dimension");
  SpanBuilder sb(cf, 2 * n * n);
  auto vec_split = [&](const Matrix& m) {
    Vector v(cf, 2 * n * n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        v[idx++] = cf.from_rat(m.at(i, j).coord_a());
        v[idx++] = cf.from_rat(m.at(i, j).coord_b());
      }
    return v;
  };
  for (const auto& el : out) {
    Vector v = vec_split(el.matrix());
    if (!usol.contains(v))
      throw std::logic_error("spanning element escapes the unitary algebra");
    if (!sb.insert(v))
      throw std::logic_error("spanning reflection set is dependent");
  }
  if (sb.dim() != n * n) throw std::logic_error("spanning reflection set is short");
  return out;
}

// ---------------------------------------------------------------------------
// Polarity extraction and realization
// ---------------------------------------------------------------------------

LieElement form_involution(const SesquiForm& h, const LieElement& x) {
  const Matrix& g = h.gram();
  Matrix xstar = h.tau_is_involution() ? x.matrix().sigma_entrywise().transposed()
                                       : x.matrix().transposed();
  return LieElement(-(inverse(g) * xstar * g));
}

LieAlgebra unitary_fixed_algebra(const SesquiForm& h) {
  require_skew_hermitian(h);
  const Field& mf = h.field();
  const Field& cf = *mf.base_field();
  int n = h.dim();
  Subspace sol = form_solution_space(h, cf, true);
  std::vector<LieElement> gens;
  // unvectorize the kernel basis (split convention, row-major)
  for (int r = 0; r < sol.dim(); ++r) {
    Matrix m(mf, n, n);
    Vector row = sol.basis_vector(r);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat a = row[idx++].coord_a();
        Rat b = row[idx++].coord_a();
        m.at(i, j) = mf.from_coords(a, b);
      }
    gens.push_back(LieElement(std::move(m)));
  }
  LieAlgebra::FormData fd{h.gram(), true};
  return LieAlgebra::from_parts(LieAlgebra::Kind::unitary, mf, cf, n,
                                std::move(gens), std::nullopt, fd);
}

std::vector<int> induced_point_permutation(const GeometryGraph& g,
                                           const LieAlgebra& a,
                                           const SesquiForm& h) {
  struct CoordsLess {
    bool operator()(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
      return std::lexicographical_compare(
          x.begin(), x.end(), y.begin(), y.end(),
          [](const Scalar& s, const Scalar& t) { return s < t; });
    }
  };
  std::map<std::vector<Scalar>, int, CoordsLess> index_of;
  for (int i = 0; i < g.point_count(); ++i) index_of.emplace(g.points[i].coords, i);
  std::vector<int> perm(g.point_count(), -1);
  for (int i = 0; i < g.point_count(); ++i) {
    LieElement img = form_involution(h, *g.points[i].rep);
    std::vector<Scalar> coords;
    a.canonical_rep(img, &coords);
    auto it = index_of.find(coords);
    if (it == index_of.end())
      throw std::logic_error("involution does not preserve the extremal point set");
    perm[i] = it->second;
  }
  return perm;
}

PolaritySpec extract_polarity(const GeometryGraph& g, const std::vector<int>& sigma_action) {
  int n = g.point_count();
  if (static_cast<int>(sigma_action.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<char> hit(n, 0);
  for (int v : sigma_action) {
    if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("not a permutation");
    hit[v] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (sigma_action[sigma_action[i]] != i)
      throw std::invalid_argument("action is not an involution");

  // Automorphism: lines map onto lines; no line may be fixed setwise.
  {
    std::map<std::vector<int>, int> line_set;
    for (size_t li = 0; li < g.lines.size(); ++li) line_set.emplace(g.lines[li], static_cast<int>(li));
    for (size_t li = 0; li < g.lines.size(); ++li) {
      std::vector<int> img;
      for (int p : g.lines[li]) img.push_back(sigma_action[p]);
      std::sort(img.begin(), img.end());
      auto it = line_set.find(img);
      if (it == line_set.end())
        throw std::invalid_argument("action is not an automorphism of the geometry");
      if (it->second == static_cast<int>(li))
        throw std::domain_error("action fixes a line");
    }
  }
  PolaritySpec spec;
  for (int i = 0; i < n; ++i)
    if (sigma_action[i] == i) spec.fixed_points.push_back(i);
  if (spec.fixed_points.empty()) throw std::domain_error("action fixes no point");

  for (int i = 0; i < n; ++i)
    if (!g.points[i].flag)
      throw std::invalid_argument("polarity extraction needs flag labels");

  auto cliques = maximal_cliques(g);
  CliquePartition parts = classify_partition(g, cliques);

  std::map<std::vector<int>, const Clique*> hyp_by_members;
  for (const auto& c : parts.hyperplane_cliques) hyp_by_members.emplace(c.members, &c);

  spec.field = g.label_field;
  spec.n = g.ambient_dim;
  for (const auto& pc : parts.point_cliques) {
    std::vector<int> img;
    for (int m : pc.members) img.push_back(sigma_action[m]);
    std::sort(img.begin(), img.end());
    auto it = hyp_by_members.find(img);
    if (it == hyp_by_members.end())
      throw std::domain_error("action does not swap the point and hyperplane families");
    Vector p = g.points[pc.members[0]].flag->point;
    Functional phi = g.points[it->second->members[0]].flag->functional;
    spec.point_to_hyperplane.emplace_back(p, phi);
  }
  return spec;
}

FormRealization realize_form(const PolaritySpec& p, const Vector& v0, std::int64_t bound) {
  const Field& k = *p.field;
  int n = p.n;
  if (v0.dim() != n) throw std::invalid_argument("v0 dimension mismatch");

  auto solve_gram = [&](bool tau_inv) -> std::optional<Matrix> {
    std::vector<Vector> rows;
    for (const auto& [pt, phi] : p.point_to_hyperplane) {
      Matrix phim(k, 1, n);
      for (int j = 0; j < n; ++j) phim.at(0, j) = phi[j];
      Subspace hyp = kernel(phim);
      for (int r = 0; r < hyp.dim(); ++r) {
        Vector w = hyp.basis_vector(r);
        Vector row(k, n * n);
        for (int i = 0; i < n; ++i) {
          Scalar pi = tau_inv ? pt[i].sigma() : pt[i];
          if (pi.is_zero()) continue;
          for (int j = 0; j < n; ++j) row[i * n + j] = pi * w[j];
        }
        rows.push_back(std::move(row));
      }
    }
    Matrix sys(k, static_cast<int>(rows.size()), n * n);
    for (size_t r = 0; r < rows.size(); ++r) sys.set_row(static_cast<int>(r), rows[r]);
    Subspace ker = kernel(sys);
    if (ker.dim() != 1) return std::nullopt;
    Matrix g(k, n, n);
    Vector row = ker.basis_vector(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.at(i, j) = row[i * n + j];
    if (rank(g) != n) return std::nullopt;
    return g;
  };

  bool tau_inv = true;
  std::optional<Matrix> gram;
  if (k.has_involution()) gram = solve_gram(true);
  if (!gram) {
    gram = solve_gram(false);
    if (gram)
      throw std::domain_error(
          "realized form is alternating; the geometry of a unitary polarity must come "
          "from tau = sigma");
    throw std::domain_error("Gram solve inconsistent: input is not a quasi-polarity");
  }

  auto eps_of = [&](const Matrix& g) {
    std::optional<Scalar> eps;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Scalar& num = g.at(i, j);
        Scalar den = tau_inv ? g.at(j, i).sigma() : g.at(j, i);
        if (den.is_zero()) {
          if (!num.is_zero()) throw std::domain_error("Gram matrix is not reflexive");
          continue;
        }
        Scalar cand = num / den;
        if (!eps) eps = cand;
        else if (!(*eps == cand)) throw std::domain_error("Gram matrix is not reflexive");
      }
    if (!eps) throw std::domain_error("zero Gram matrix");
    return *eps;
  };
  (void)eps_of(*gram);  // reflexivity check before scaling

  // Scale so that v0 (x) h(v0, .) is fixed by the induced involution.
  auto functional_raw = [&](const Matrix& g, const Vector& v) {
    Vector vt(k, n);
    for (int i = 0; i < n; ++i) vt[i] = tau_inv ? v[i].sigma() : v[i];
    return Functional(g.transposed().apply(vt));
  };
  {
    Functional phi0 = functional_raw(*gram, v0);
    if (!phi0(v0).is_zero()) throw std::invalid_argument("v0 is not isotropic for the polarity");
  }
  Matrix t0 = Matrix::outer(v0, functional_raw(*gram, v0));
  Matrix ginv = inverse(*gram);
  Matrix theta_t0 = -(ginv * t0.sigma_entrywise().transposed() * *gram);
  // theta(t0) = mu t0 for some scalar mu with N(mu) = 1
  Scalar mu;
  {
    bool found = false;
    for (int i = 0; i < n && !found; ++i)
      for (int j = 0; j < n && !found; ++j)
        if (!t0.at(i, j).is_zero()) {
          mu = theta_t0.at(i, j) / t0.at(i, j);
          found = true;
        }
    if (!found || !(t0 * mu == theta_t0))
      throw std::domain_error("fixed flag does not span an involution-stable class");
  }
  Scalar c;
  for (const Scalar& z : {k.one(), k.generator()}) {
    Scalar cand = z + mu * z.sigma();
    if (!cand.is_zero()) {
      c = cand;
      break;
    }
  }
  if (c.is_zero()) throw std::logic_error("Hilbert-90 scaling failed");
  Matrix gfin = *gram * c;
  Scalar eps_fin = eps_of(gfin);

  SesquiForm form(k, gfin, tau_inv, eps_fin);
  {
    // the scaled flag must now be exactly fixed
    LieElement t0s(Matrix::outer(v0, form.functional_of(v0)));
    if (!(form_involution(form, t0s) == t0s))
      throw std::logic_error("scaling did not stabilize v0 (x) h(v0, .)");
  }

  // exp-stability of extremal classes under exp(v0 (x) h(v0,.), lambda) for
  // lambda in the fixed field.
  {
    const Field& cf = *k.base_field();
    LieElement x0(Matrix::outer(v0, form.functional_of(v0)),
                  {RankOneTerm{v0, form.functional_of(v0)}});
    std::vector<Scalar> lambdas;
    if (cf.is_finite())
      for (std::int64_t i = 0; i < cf.order(); ++i) lambdas.push_back(cf.element(i));
    else
      for (std::int64_t i = -2; i <= 2; ++i) lambdas.push_back(cf.from_integer(i));
    int checked = 0;
    for (const auto& [pt, phi] : p.point_to_hyperplane) {
      if (checked >= 20) break;
      if (!form.is_isotropic(pt)) continue;
      Scalar pairing = form.eval(v0, pt);
      if (pairing.is_zero()) continue;
      ++checked;
      LieElement y(Matrix::outer(pt, form.functional_of(pt)));
      for (const Scalar& lam : lambdas) {
        Scalar laml = lam.field_ptr() == &k ? lam : lam.lift_to(k);
        Scalar g0 = -(x0.matrix() * y.matrix()).trace();
        LieElement img = y + bracket(x0, y) * laml + x0 * (laml * laml * g0);
        Vector u = pt + v0 * (laml * pairing);
        LieElement expect(Matrix::outer(u, form.functional_of(u)));
        if (!(img == expect))
          throw std::logic_error("exp-stability verification failed");
      }
    }
    if (checked == 0) throw std::logic_error("no isotropic witness for exp-stability");
  }

  FormRealization out{form, unitary_fixed_algebra(form), false};

  // E-description: the extremal classes of the fixed algebra are exactly the
  // isotropic classes alpha v (x) h(v, .), checked within the bound.
  const Field& cf = *k.base_field();
  if (cf.is_finite()) {
    double total = 1.0;
    for (int i = 0; i < out.fixed_algebra.dim(); ++i) total *= static_cast<double>(cf.order());
    if (total <= static_cast<double>(bound)) {
      auto brute = enumerate_extremal(out.fixed_algebra, EnumerationMode::brute, bound);
      auto param = enumerate_extremal(out.fixed_algebra, EnumerationMode::parametric, bound);
      if (brute.size() != param.size())
        throw std::logic_error("extremal classes do not match the isotropic classes");
      for (size_t i = 0; i < brute.size(); ++i)
        if (!(brute[i].coords == param[i].coords))
          throw std::logic_error("extremal classes do not match the isotropic classes");
      out.e_description_checked = true;
    }
  }
  return out;
}

}  // namespace extremal
