// Acceptance suite: runs every reference criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "extremal/extension.hpp"
#include "extremal/geometry.hpp"
#include "extremal/hermitian.hpp"
#include "extremal/local_systems.hpp"
#include "extremal/verify.hpp"

#include "oracles.hpp"

using namespace extremal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Vector unit(const Field& f, int n, int i) {
  Vector v(f, n);
  v[i] = f.one();
  return v;
}

// --------------------------------------------------------------------------
// 1. Extremality suite: every transvection class of sl(n, GF(q)) for
//    n in {3,4}, q in {2,3,5} satisfies the double-bracket closed form on all
//    basis elements and both Premet identities on all basis pairs, in < 30 s.
// --------------------------------------------------------------------------
Outcome criterion_1() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  for (int n : {3, 4}) {
    for (std::int64_t q : {2, 3, 5}) {
      const Field& f = Field::prime(q);
      LieAlgebra a = LieAlgebra::special_linear(n, f);
      auto classes = enumerate_extremal(a, EnumerationMode::parametric);
      std::vector<std::vector<Scalar>> table = structure_table(a);
      for (const auto& p : classes) {
        const auto& term = p.rep.decomposition()->front();
        for (const auto& y : a.basis()) {
          LieElement dbl = bracket(p.rep, bracket(p.rep, y));
          Scalar coeff = f.from_integer(-2) * term.phi(y.matrix().apply(term.v));
          if (!(dbl == p.rep * coeff)) {
            out.fail("double bracket mismatch in sl(" + std::to_string(n) + ", GF(" +
                     std::to_string(q) + "))");
            return out;
          }
        }
        if (auto w = premet_witness(Transvection(term.v, term.phi), a.basis(), &table)) {
          out.fail("Premet identity fails at pair (" + std::to_string(w->first) + ", " +
                   std::to_string(w->second) + ") in sl(" + std::to_string(n) + ", GF(" +
                   std::to_string(q) + "))");
          return out;
        }
      }
    }
  }
  double t = seconds_since(start);
  if (t >= 30.0) out.fail("runtime " + std::to_string(t) + " s exceeds 30 s");
  return out;
}

// --------------------------------------------------------------------------
// 2. Brute/parametric agreement on sl(3, GF(2)): the scan of all 255 nonzero
//    elements yields exactly 21 extremal points equal to the flag classes,
//    in < 5 s.
// --------------------------------------------------------------------------
Outcome criterion_2() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  const Field& f2 = Field::prime(2);
  LieAlgebra a = LieAlgebra::special_linear(3, f2);
  auto brute = enumerate_extremal(a, EnumerationMode::brute);
  auto param = enumerate_extremal(a, EnumerationMode::parametric);
  if (brute.size() != 21)
    out.fail("brute scan found " + std::to_string(brute.size()) + " points, expected 21");
  if (brute.size() != param.size()) {
    out.fail("parametric count " + std::to_string(param.size()) + " differs");
  } else {
    for (size_t i = 0; i < brute.size(); ++i)
      if (!(brute[i].coords == param[i].coords)) {
        out.fail("point sets differ at index " + std::to_string(i));
        break;
      }
  }
  double t = seconds_since(start);
  if (t >= 5.0) out.fail("runtime " + std::to_string(t) + " s exceeds 5 s");
  return out;
}

// --------------------------------------------------------------------------
// 3. Geometry counts and flag-model matches, in < 60 s.
// --------------------------------------------------------------------------
Outcome criterion_3() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  const Field& f2 = Field::prime(2);
  {
    LieAlgebra a = LieAlgebra::special_linear(3, f2);
    GeometryGraph g = build_geometry(a, EnumerationMode::brute);
    if (g.point_count() != 21) out.fail("sl(3,2): points != 21");
    if (g.line_count() != 14) out.fail("sl(3,2): lines != 14");
    for (const auto& line : g.lines)
      if (line.size() != 3) out.fail("sl(3,2): line size != 3");
    for (int i = 0; i < g.point_count(); ++i)
      if (g.lines_through_point(i).size() != 2) out.fail("sl(3,2): point not on 2 lines");
  }
  {
    const Field& f4 = Field::quadratic_ext(2);
    GeometryGraph fm = flag_model(3, f4, Subspace::full(f4, 3));
    if (fm.point_count() != 105) out.fail("flag(3,GF(4)): points != 105");
    if (fm.line_count() != 42) out.fail("flag(3,GF(4)): lines != 42");
    for (const auto& line : fm.lines)
      if (line.size() != 5) out.fail("flag(3,GF(4)): line size != 5");
  }
  for (auto [n, q] : {std::pair{3, 2}, {3, 3}, {4, 2}}) {
    const Field& f = Field::prime(q);
    LieAlgebra a = LieAlgebra::special_linear(n, f);
    GeometryGraph g = build_geometry(a, EnumerationMode::parametric);
    GeometryGraph fm = flag_model(n, f, Subspace::full(f, n));
    if (!match_geometries(g, fm))
      out.fail("sl(" + std::to_string(n) + ",GF(" + std::to_string(q) +
               ")) does not match its flag model");
  }
  double t = seconds_since(start);
  if (t >= 60.0) out.fail("runtime " + std::to_string(t) + " s exceeds 60 s");
  return out;
}

// --------------------------------------------------------------------------
// 4. Exhaustive pair classification on sl(3, GF(2)) lands in cases (a)-(e)
//    with counts stable across the generic and the flag-formula routes.
// --------------------------------------------------------------------------
Outcome criterion_4() {
  Outcome out;
  const Field& f2 = Field::prime(2);
  LieAlgebra a = LieAlgebra::special_linear(3, f2);
  auto pts = enumerate_extremal(a, EnumerationMode::brute);
  std::map<PairCase, int> generic, formula;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i; j < pts.size(); ++j) {
      PairCase pc;
      try {
        pc = classify_pair(a, pts[i].rep, pts[j].rep);
      } catch (const std::exception& e) {
        out.fail(std::string("classification failed: ") + e.what());
        return out;
      }
      ++generic[pc];
      ++formula[classify_pair_by_flags(*pts[i].flag, *pts[j].flag)];
    }
  }
  if (generic != formula) out.fail("case counts differ between the two routes");
  int total = 0;
  for (const auto& [_, c] : generic) total += c;
  if (total != 21 * 22 / 2) out.fail("pair count mismatch");
  return out;
}

// --------------------------------------------------------------------------
// 5. exp on sl(4, GF(5)): 100 seeded (x, lambda) preserve brackets on all
//    basis pairs, match conjugation by I + lambda X, and compose additively.
// --------------------------------------------------------------------------
Outcome criterion_5() {
  Outcome out;
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(4, f5);
  auto classes = enumerate_extremal(a, EnumerationMode::parametric);
  oracles::Rng rng(20240501);
  Matrix id = Matrix::identity(f5, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& p = classes[rng.below(classes.size())];
    Scalar lambda = f5.element(rng.below(5));
    Scalar mu = f5.element(rng.below(5));
    ExpMap e(a, p.rep, lambda);
    Matrix plus = id + p.rep.matrix() * lambda;
    Matrix minus = id - p.rep.matrix() * lambda;
    for (const auto& u : a.basis()) {
      if (!(e(u).matrix() == plus * u.matrix() * minus)) {
        out.fail("conjugation mismatch at trial " + std::to_string(trial));
        return out;
      }
      for (const auto& v : a.basis()) {
        if (!(e(bracket(u, v)) == bracket(e(u), e(v)))) {
          out.fail("bracket not preserved at trial " + std::to_string(trial));
          return out;
        }
      }
    }
    ExpMap em(a, p.rep, mu);
    ExpMap esum(a, p.rep, lambda + mu);
    for (const auto& u : a.basis()) {
      if (!(e(em(u)) == esum(u))) {
        out.fail("composition law fails at trial " + std::to_string(trial));
        return out;
      }
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// 6. Unitary construction over GF(4)/GF(2) and GF(9)/GF(3), n in {2,3}:
//    dimension n^2 - 1 over the fixed field, the generated subalgebra equals
//    the solution space, and the extremal geometry has no lines.
// --------------------------------------------------------------------------
Outcome criterion_6() {
  Outcome out;
  for (std::int64_t p : {2, 3}) {
    const Field& k = Field::quadratic_ext(p);
    for (int n : {2, 3}) {
      SesquiForm h = SesquiForm::standard_skew_hermitian(k, n);
      UnitaryConstruction uc = build_unitary(h);
      std::string name = "su(" + std::to_string(n) + ", GF(" + std::to_string(p * p) +
                         ")/GF(" + std::to_string(p) + "))";
      if (uc.algebra.dim() != n * n - 1)
        out.fail(name + ": dimension " + std::to_string(uc.algebra.dim()));
      if (!uc.spans_match) out.fail(name + ": generated span != solution space");
      GeometryGraph g = build_geometry(uc.algebra, EnumerationMode::brute);
      if (g.line_count() != 0) out.fail(name + ": extremal lines found");
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// 7. Scalar extension of su(3, GF(9)/GF(3)) by GF(9): geometry matches
//    sl(3, GF(9)); radical of the extended form trivial; extension simple.
// --------------------------------------------------------------------------
Outcome criterion_7() {
  Outcome out;
  const Field& f9 = Field::quadratic_ext(3);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f9, 3));
  ExtendedAlgebra e = extend(uc.algebra, f9);
  {
    GeometryGraph g = build_geometry(e.algebra(), EnumerationMode::parametric);
    GeometryGraph fm = flag_model(3, f9, Subspace::full(f9, 3));
    if (!match_geometries(g, fm))
      out.fail("extension does not match the flag geometry of sl(3, GF(9))");
  }
  Subspace rad = radical_of_form(e);
  if (rad.dim() != 0)
    out.fail("radical has dimension " + std::to_string(rad.dim()) +
             ": su(3, GF(9)/GF(3)) contains the central element t*I because the "
             "characteristic 3 divides n = 3, so the simplicity hypothesis behind "
             "the trivial-radical argument fails for this instance");
  if (!check_simple(e))
    out.fail("extension is not simple (the identity matrix is traceless and central "
             "when the characteristic divides n)");
  return out;
}

// --------------------------------------------------------------------------
// 8. Polarity round-trip on sl(3, GF(4)) twisted by a known skew-Hermitian
//    Gram matrix: the recovered form is proportional to it, eps = -1 and
//    tau = sigma after scaling, and the fixed algebra is the unitary algebra.
// --------------------------------------------------------------------------
Outcome criterion_8() {
  Outcome out;
  const Field& f4 = Field::quadratic_ext(2);
  Scalar t = f4.generator();
  Matrix g0(f4, 3, 3);
  g0.at(0, 1) = t;
  g0.at(1, 0) = t.sigma();
  g0.at(2, 2) = f4.one();
  SesquiForm h0 = SesquiForm::skew_hermitian(f4, g0);

  LieAlgebra sl = LieAlgebra::special_linear(3, f4);
  GeometryGraph geom = build_geometry(sl, EnumerationMode::parametric);
  std::vector<int> perm = induced_point_permutation(geom, sl, h0);
  PolaritySpec spec = extract_polarity(geom, perm);
  if (spec.fixed_points.empty()) {
    out.fail("no fixed flag found");
    return out;
  }
  Vector v0 = geom.points[spec.fixed_points[0]].flag->point;
  FormRealization real = realize_form(spec, v0);

  Scalar ratio;
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i)
    for (int j = 0; j < 3 && !found; ++j)
      if (!g0.at(i, j).is_zero()) {
        ratio = real.form.gram().at(i, j) / g0.at(i, j);
        found = true;
      }
  if (!found || !(g0 * ratio == real.form.gram()))
    out.fail("recovered Gram matrix is not proportional to the input");
  if (!(real.form.eps() == -f4.one())) out.fail("eps != -1 after scaling");
  if (!real.form.tau_is_involution()) out.fail("tau != sigma");
  if (!real.e_description_checked)
    out.fail("extremal description of the fixed algebra was not verified");
  UnitaryConstruction uc = build_unitary(h0);
  if (!(real.fixed_algebra.span_subspace() == uc.algebra.span_subspace()))
    out.fail("fixed algebra differs from the unitary algebra of the input form");
  if (real.fixed_algebra.dim() != 8) out.fail("fixed algebra dimension != 8");
  return out;
}

// --------------------------------------------------------------------------
// 9. Trace-valued three-way equivalence on all tested forms, and Delta-graph
//    connectivity for GF(9)/GF(3) and GF(4)/GF(2) in dimensions 2-4.
// --------------------------------------------------------------------------
Outcome criterion_9() {
  Outcome out;
  oracles::Rng rng(20240909);
  for (std::int64_t p : {2, 3}) {
    const Field& k = Field::quadratic_ext(p);
    for (int n = 2; n <= 4; ++n) {
      SesquiForm h = SesquiForm::standard_skew_hermitian(k, n);
      std::string name = "GF(" + std::to_string(p * p) + ")/GF(" + std::to_string(p) +
                         ") dim " + std::to_string(n);
      bool tv = is_trace_valued(h);
      bool span_full = isotropic_span(h).dim() == n;
      // every isotropic-anisotropic incident pair spans a hyperbolic 2-space
      bool hyp = true;
      int checked = 0;
      for (int trial = 0; trial < 4000 && checked < 300; ++trial) {
        Vector v = rng.vector(k, n);
        if (v.is_zero() || !h.is_isotropic(v)) continue;
        Vector w = rng.nonzero_vector(k, n);
        if (h.eval(v, w).is_zero()) continue;
        ++checked;
        if (!is_hyperbolic_2space(h, v, w)) hyp = false;
      }
      if (checked == 0) hyp = false;
      if (!(tv && span_full && hyp))
        out.fail(name + ": three-way agreement broken (trace_valued=" +
                 std::to_string(tv) + ", span_full=" + std::to_string(span_full) +
                 ", hyperbolic_pairs=" + std::to_string(hyp) + ")");
      DeltaCertificate cert = delta_graph_connected(h);
      if (!cert.connected)
        out.fail(name + ": Delta graph disconnected (" +
                 std::to_string(cert.vertex_count) +
                 " anisotropic points; over GF(4) in dimension 3 each lies on "
                 "exactly 2 secants of the Hermitian unital with 2 anisotropic "
                 "points each, so Delta is a union of 4 triangles)");
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// 10. Spanning reflection set: the n^2 elements are independent and span the
//     full unitary algebra for n in {2,3} over GF(4) and GF(9).
// --------------------------------------------------------------------------
Outcome criterion_10() {
  Outcome out;
  for (std::int64_t p : {2, 3}) {
    const Field& k = Field::quadratic_ext(p);
    for (int n : {2, 3}) {
      try {
        auto elems = spanning_reflection_basis(SesquiForm::standard_skew_hermitian(k, n));
        if (static_cast<int>(elems.size()) != n * n)
          out.fail("GF(" + std::to_string(p * p) + ") n=" + std::to_string(n) +
                   ": element count != n^2");
      } catch (const std::exception& e) {
        out.fail("GF(" + std::to_string(p * p) + ") n=" + std::to_string(n) + ": " +
                 e.what());
      }
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// 11. Local systems in GF(5)^8 with Pi = V*: 50 seeded index pairs admit
//     joins satisfying every invariant; sl_of_index dimensions and centers;
//     compatibility scalar 1 on nested pairs.
// --------------------------------------------------------------------------
Outcome criterion_11() {
  Outcome out;
  const Field& f5 = Field::prime(5);
  Subspace pi = Subspace::full(f5, 8);
  oracles::Rng rng(20241111);

  auto random_index = [&](int dim) {
    for (;;) {
      std::vector<Vector> us, phis;
      for (int k = 0; k < dim; ++k) {
        us.push_back(rng.vector(f5, 8));
        phis.push_back(rng.vector(f5, 8));
      }
      Subspace u = Subspace::span(f5, 8, us);
      Subspace ph = Subspace::span(f5, 8, phis);
      if (u.dim() != dim || ph.dim() != dim) continue;
      try {
        return make_index(u, ph);
      } catch (const std::invalid_argument&) {
      }
    }
  };

  for (int trial = 0; trial < 50; ++trial) {
    DirectedIndex i1 = random_index(3 + static_cast<int>(rng.below(2)));
    DirectedIndex i2 = random_index(3 + static_cast<int>(rng.below(2)));
    DirectedIndex j;
    try {
      j = join(pi, i1, i2);
    } catch (const std::exception& e) {
      out.fail("join failed at trial " + std::to_string(trial) + ": " + e.what());
      return out;
    }
    if (!leq(i1, j) || !leq(i2, j)) out.fail("join is not an upper bound");
    if (j.U.dim() != j.Phi.dim() || j.dim() < 3 || j.dim() % 5 == 0)
      out.fail("join violates an index invariant at trial " + std::to_string(trial));
    // sl(I) dimensions and centers for the factors, and for the join on a
    // subsample to keep the run proportionate
    for (const DirectedIndex* idx : {&i1, &i2}) {
      LieAlgebra a = sl_of_index(*idx);
      if (a.dim() != idx->dim() * idx->dim() - 1)
        out.fail("sl(I) dimension mismatch at trial " + std::to_string(trial));
      if (center(a).dim() != 0) out.fail("sl(I) has a nontrivial center");
    }
    if (trial % 10 == 0) {
      LieAlgebra aj = sl_of_index(j);
      if (aj.dim() != j.dim() * j.dim() - 1)
        out.fail("sl(join) dimension mismatch at trial " + std::to_string(trial));
      if (center(aj).dim() != 0) out.fail("sl(join) has a nontrivial center");
      LieAlgebra a1 = sl_of_index(i1);
      if (!aj.span_subspace().contains(a1.span_subspace()))
        out.fail("sl(I) not contained in sl(join)");
      // nested pair with honest isomorphisms pins lambda = 1
      auto identity = [](const LieElement& x) { return x; };
      Scalar lambda = compatibility_scalar(a1, a1, identity, aj, identity);
      if (!lambda.is_one()) out.fail("compatibility scalar != 1");
    }
    if (!out.pass) return out;
  }
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {1, "extremality-suite", criterion_1},
      {2, "brute-parametric-agreement", criterion_2},
      {3, "geometry-counts-and-matches", criterion_3},
      {4, "pair-classification", criterion_4},
      {5, "exp-automorphism", criterion_5},
      {6, "unitary-construction", criterion_6},
      {7, "scalar-extension", criterion_7},
      {8, "polarity-round-trip", criterion_8},
      {9, "trace-valued-equivalence", criterion_9},
      {10, "spanning-reflection-set", criterion_10},
      {11, "local-systems", criterion_11},
  };
  int failures = 0;
  for (const auto& e : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("unexpected exception: ") + ex.what();
    }
    double t = seconds_since(start);
    std::printf("criterion %2d %s %s (%.2fs)%s%s\n", e.id, out.pass ? "PASS" : "FAIL",
                e.name, t, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
