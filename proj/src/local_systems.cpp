#include "extremal/local_systems.hpp"

#include <stdexcept>

namespace extremal {

namespace {

/// Pairing matrix phi_b(u_a); the index is non-degenerate iff it is invertible.
Matrix pairing_matrix(const Subspace& u, const Subspace& phi) {
  const Field& f = u.field();
  Matrix m(f, phi.dim(), u.dim());
  for (int b = 0; b < phi.dim(); ++b) {
    Functional pb(phi.basis_vector(b));
    for (int a = 0; a < u.dim(); ++a) m.at(b, a) = pb(u.basis_vector(a));
  }
  return m;
}

bool divisible_by_char(const Field& f, int d) {
  return f.characteristic() != 0 && d % f.characteristic() == 0;
}

}  // namespace

DirectedIndex make_index(Subspace u, Subspace phi) {
  if (&u.field() != &phi.field() || u.ambient() != phi.ambient())
    throw std::invalid_argument("index spaces must share the ambient");
  if (u.dim() != phi.dim()) throw std::invalid_argument("index spaces must have equal dimension");
  if (u.dim() < 3) throw std::invalid_argument("index dimension must be at least 3");
  if (divisible_by_char(u.field(), u.dim()))
    throw std::invalid_argument("index dimension must not be divisible by the characteristic");
  if (rank(pairing_matrix(u, phi)) != u.dim())
    throw std::invalid_argument("index is degenerate: ann_U(Phi) is nonzero");
  return DirectedIndex{std::move(u), std::move(phi)};
}

bool leq(const DirectedIndex& i, const DirectedIndex& j) {
  if (&i.U.field() != &j.U.field() || i.U.ambient() != j.U.ambient())
    throw std::invalid_argument("indices live in different ambients");
  return j.U.contains(i.U) && j.Phi.contains(i.Phi);
}

DirectedIndex complete_index(const Subspace& pi, const Subspace& u_seed,
                             const Subspace& phi_seed) {
  const Field& f = pi.field();
  int n = pi.ambient();

  // Pad the functional seed from Pi until its dimension is at least 3.
  SpanBuilder phis(f, n);
  for (int i = 0; i < phi_seed.dim(); ++i) phis.insert(phi_seed.basis_vector(i));
  for (int i = 0; i < pi.dim() && phis.dim() < 3; ++i) phis.insert(pi.basis_vector(i));
  if (phis.dim() < 3) throw std::domain_error("Pi is too small to host an index");
  Subspace phi0 = phis.subspace();
  int m = phi0.dim();

  // Dual vectors u_1..u_m with phi_i(u_j) = delta_ij. Solutions inside the
  // U seed are preferred (this makes completion idempotent on valid indices);
  // otherwise the lexicographically-first ambient solution is taken.
  Matrix a(f, m, n);
  for (int i = 0; i < m; ++i) a.set_row(i, phi0.basis_vector(i));
  Matrix a_in_u(f, m, u_seed.dim());
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < u_seed.dim(); ++c)
      a_in_u.at(i, c) = Functional(phi0.basis_vector(i))(u_seed.basis_vector(c));
  std::vector<Vector> us;
  for (int j = 0; j < m; ++j) {
    Vector rhs(f, m);
    rhs[j] = f.one();
    if (u_seed.dim() > 0) {
      if (auto cu = solve(a_in_u, rhs)) {
        Vector u(f, n);
        for (int c = 0; c < u_seed.dim(); ++c)
          if (!(*cu)[c].is_zero()) u = u + u_seed.basis_vector(c) * (*cu)[c];
        us.push_back(std::move(u));
        continue;
      }
    }
    auto u = solve(a, rhs);
    if (!u) throw std::domain_error("ambient too small to complete the dual basis");
    us.push_back(std::move(*u));
  }

  // Extend to a basis of <u_1..u_m> + U_seed, keeping the new vectors inside
  // the kernel of phi_1..phi_m.
  SpanBuilder ubuild(f, n);
  for (const Vector& u : us) ubuild.insert(u);
  for (int i = 0; i < u_seed.dim(); ++i) {
    Vector cand = u_seed.basis_vector(i);
    for (int k = 0; k < m; ++k) {
      Scalar val = Functional(phi0.basis_vector(k))(cand);
      if (!val.is_zero()) cand = cand - us[k] * val;
    }
    if (ubuild.insert(cand)) us.push_back(cand);
  }
  int nd = static_cast<int>(us.size());

  // Functionals phi_{m+1}..phi_nd inside Pi dual to the extension vectors.
  std::vector<Vector> phis_full;
  for (int i = 0; i < m; ++i) phis_full.push_back(phi0.basis_vector(i));
  if (nd > m) {
    Matrix cond(f, nd, pi.dim());
    for (int r = 0; r < nd; ++r)
      for (int c = 0; c < pi.dim(); ++c)
        cond.at(r, c) = Functional(pi.basis_vector(c))(us[r]);
    for (int j = m; j < nd; ++j) {
      Vector rhs(f, nd);
      rhs[j] = f.one();
      auto sol = solve(cond, rhs);
      if (!sol) throw std::domain_error("ambient too small to complete the dual basis");
      Vector phi(f, n);
      for (int c = 0; c < pi.dim(); ++c)
        if (!(*sol)[c].is_zero()) phi = phi + pi.basis_vector(c) * (*sol)[c];
      phis_full.push_back(std::move(phi));
    }
  }

  // Characteristic fix: append a pair (u, phi) with phi(u) = 1 orthogonal to
  // everything chosen so far.
  if (divisible_by_char(f, nd)) {
    Matrix conds(f, nd, n);
    for (int i = 0; i < nd; ++i) conds.set_row(i, phis_full[i]);
    Subspace ann = kernel(conds);
    bool fixed = false;
    for (int c = 0; c < ann.dim() && !fixed; ++c) {
      Vector u = ann.basis_vector(c);
      Matrix cond(f, nd + 1, pi.dim());
      for (int r = 0; r < nd; ++r)
        for (int cc = 0; cc < pi.dim(); ++cc)
          cond.at(r, cc) = Functional(pi.basis_vector(cc))(us[r]);
      for (int cc = 0; cc < pi.dim(); ++cc)
        cond.at(nd, cc) = Functional(pi.basis_vector(cc))(u);
      Vector rhs(f, nd + 1);
      rhs[nd] = f.one();
      auto sol = solve(cond, rhs);
      if (!sol) continue;
      Vector phi(f, n);
      for (int cc = 0; cc < pi.dim(); ++cc)
        if (!(*sol)[cc].is_zero()) phi = phi + pi.basis_vector(cc) * (*sol)[cc];
      us.push_back(u);
      phis_full.push_back(phi);
      fixed = true;
    }
    if (!fixed) throw std::domain_error("ambient too small for the characteristic fix");
  }

  DirectedIndex out = make_index(Subspace::span(f, n, us), Subspace::span(f, n, phis_full));
  if (!out.U.contains(u_seed) || !out.Phi.contains(phi_seed))
    throw std::logic_error("index completion lost a seed");
  return out;
}

DirectedIndex join(const Subspace& pi, const DirectedIndex& i1, const DirectedIndex& i2) {
  DirectedIndex out = complete_index(pi, i1.U + i2.U, i1.Phi + i2.Phi);
  if (!leq(i1, out) || !leq(i2, out)) throw std::logic_error("join is not an upper bound");
  return out;
}

LieAlgebra sl_of_index(const DirectedIndex& idx) {
  const Field& f = idx.U.field();
  int n = idx.U.ambient();
  int m = idx.dim();
  // Adjust the U basis so that phi_b(v_a) = delta_ab, then the off-diagonal
  // pairs are elementary transvections generating sl(U).
  Matrix pairing = pairing_matrix(idx.U, idx.Phi);
  Matrix minv = inverse(pairing);
  std::vector<Vector> vs;
  for (int a = 0; a < m; ++a) {
    Vector v(f, n);
    for (int c = 0; c < m; ++c)
      if (!minv.at(c, a).is_zero()) v = v + idx.U.basis_vector(c) * minv.at(c, a);
    vs.push_back(std::move(v));
  }
  std::vector<LieElement> gens;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      gens.push_back(Transvection(vs[a], Functional(idx.Phi.basis_vector(b))).element());
    }
  LieAlgebra::SlData sl{idx.U, idx.Phi};
  LieAlgebra out = LieAlgebra::from_parts(LieAlgebra::Kind::special_linear, f, f, n,
                                          std::move(gens), std::move(sl));
  if (out.dim() != m * m - 1)
    throw std::logic_error("sl(I) closure has unexpected dimension");
  if (center(out).dim() != 0)
    throw std::logic_error("sl(I) has a nontrivial center despite the divisibility invariant");
  return out;
}

CoverReport local_cover_check(const Subspace& pi,
                              const std::vector<std::vector<Transvection>>& samples) {
  const Field& f = pi.field();
  int n = pi.ambient();
  CoverReport report;
  for (const auto& terms : samples) {
    CoverWitness w;
    Matrix sum(f, n, n);
    for (const auto& t : terms) {
      sum = sum + t.element().matrix();
      w.term_indices.push_back(complete_index(
          pi, Subspace::span(f, n, {t.v()}), Subspace::span(f, n, {t.phi().coords()})));
    }
    DirectedIndex acc = w.term_indices.front();
    for (size_t k = 1; k < w.term_indices.size(); ++k) acc = join(pi, acc, w.term_indices[k]);
    w.witness = acc;
    LieAlgebra alg = sl_of_index(acc);
    w.contained = alg.contains(LieElement(sum));
    report.all_contained &= w.contained;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

Scalar compatibility_scalar(
    const LieAlgebra& g_i, const LieAlgebra& sl_i,
    const std::function<LieElement(const LieElement&)>& iso_i,
    const LieAlgebra& sl_j,
    const std::function<LieElement(const LieElement&)>& iso_j) {
  const Field& cf = sl_i.coeff_field();
  int d = sl_i.dim();
  if (g_i.dim() != d)
    throw std::invalid_argument("g_I and sl(I) must have equal dimension");

  // Restriction of iso_j to g_I must land inside sl(I); otherwise the input
  // does not fix the extremal points of the small algebra.
  Matrix mj(cf, d, d);
  Matrix mi(cf, d, d);
  for (int c = 0; c < d; ++c) {
    const LieElement& b = g_i.basis()[c];
    if (!sl_j.contains(b))
      throw std::invalid_argument("g_I is not a subalgebra of sl(J)");
    auto cj = sl_i.coordinates(iso_j(b));
    if (!cj)
      throw std::invalid_argument(
          "psi is not defined: iso_J does not fix the extremal points of sl(I)");
    auto ci = sl_i.coordinates(iso_i(b));
    if (!ci) throw std::invalid_argument("iso_I does not map into sl(I)");
    for (int r = 0; r < d; ++r) {
      mj.at(r, c) = (*cj)[r];
      mi.at(r, c) = (*ci)[r];
    }
  }
  Matrix psi = mi * inverse(mj);

  // Certification: psi is a scalar map.
  Scalar lambda = psi.at(0, 0);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const Scalar& expect = r == c ? lambda : cf.zero();
      if (!(psi.at(r, c) == expect))
        throw std::invalid_argument(
            "psi is not scalar multiplication (inputs do not fix all extremal points)");
    }
  if (lambda.is_zero()) throw std::invalid_argument("psi is singular");

  // Certification: psi preserves the bracket. For a scalar map this is the
  // lambda^2 = lambda argument on any non-commuting pair.
  bool saw_noncommuting = false;
  for (int a = 0; a < d && !saw_noncommuting; ++a)
    for (int b = 0; b < d && !saw_noncommuting; ++b) {
      LieElement br = bracket(sl_i.basis()[a], sl_i.basis()[b]);
      if (br.is_zero()) continue;
      saw_noncommuting = true;
      LieElement lhs = sl_i.scale(br, lambda);  // psi([a, b])
      LieElement rhs = sl_i.scale(br, lambda * lambda);
      if (!(lhs == rhs))
        throw std::invalid_argument("psi does not preserve the bracket");
    }
  if (!saw_noncommuting)
    throw std::invalid_argument("sl(I) is abelian; the scalar cannot be pinned");
  if (!lambda.is_one()) throw std::logic_error("compatibility scalar is not 1");
  return lambda;
}

}  // namespace extremal
