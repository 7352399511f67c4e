#include "doctest.h"

#include <stdexcept>

#include "extremal/hermitian.hpp"
#include "oracles.hpp"

using namespace extremal;

TEST_SUITE_BEGIN("hermitian");

namespace {

Matrix hermitian_g0(const Field& f4) {
  // [[0, t, 0], [1+t, 0, 0], [0, 0, 1]] over GF(4); equal to its conjugate
  // transpose, hence skew-Hermitian in characteristic 2.
  Scalar t = f4.generator();
  Matrix g(f4, 3, 3);
  g.at(0, 1) = t;
  g.at(1, 0) = t.sigma();
  g.at(2, 2) = f4.one();
  return g;
}

}  // namespace

TEST_CASE("reflexivity law is verified at construction") {
  const Field& f9 = Field::quadratic_ext(3);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f9, 3);
  CHECK(h.eps() == -f9.one());
  CHECK(h.tau_is_involution());
  // h(v, w) = -h(w, v)^sigma on random pairs
  oracles::Rng rng(301);
  for (int k = 0; k < 30; ++k) {
    Vector v = rng.vector(f9, 3), w = rng.vector(f9, 3);
    CHECK(h.eval(v, w) == -h.eval(w, v).sigma());
  }
  Matrix bad(f9, 2, 2);
  bad.at(0, 0) = f9.one();
  CHECK_THROWS_AS(SesquiForm::skew_hermitian(f9, bad), std::invalid_argument);
}

TEST_CASE("trace-valuedness and isotropic span over GF(9)^3") {
  const Field& f9 = Field::quadratic_ext(3);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f9, 3);  // diag(t, t, t)
  CHECK(h.gram().at(0, 0) == f9.generator());
  CHECK(is_trace_valued(h));
  Subspace span = isotropic_span(h);
  CHECK(span.dim() == 3);
}

TEST_CASE("hyperbolic 2-space over GF(4)/GF(2) is trace-valued") {
  const Field& f4 = Field::quadratic_ext(2);
  Matrix g(f4, 2, 2);
  g.at(0, 1) = f4.one();
  g.at(1, 0) = f4.one();  // -1 = 1
  SesquiForm h = SesquiForm::skew_hermitian(f4, g);
  CHECK(is_trace_valued(h));
  CHECK(isotropic_span(h).dim() == 2);
  CHECK(is_hyperbolic_2space(h, isotropic_span(h).basis_vector(0),
                             isotropic_span(h).basis_vector(1)));
}

TEST_CASE("alternating form: every vector isotropic, span is V") {
  const Field& f5 = Field::prime(5);
  SesquiForm f = SesquiForm::standard_alternating(f5, 4);
  oracles::Rng rng(303);
  for (int k = 0; k < 20; ++k) CHECK(f.is_isotropic(rng.vector(f5, 4)));
  CHECK(isotropic_span(f).dim() == 4);
}

TEST_CASE("isotropic span over Q(sqrt -1) by hyperbolic extension") {
  const Field& qi = Field::quadratic_rationals(-1);
  Matrix g(qi, 2, 2);
  g.at(0, 1) = qi.one();
  g.at(1, 0) = -qi.one();
  SesquiForm h = SesquiForm::skew_hermitian(qi, g);
  CHECK(is_trace_valued(h));
  CHECK(isotropic_span(h).dim() == 2);
}

TEST_CASE("Delta graph connectivity") {
  const Field& f9 = Field::quadratic_ext(3);
  // dim 2 hyperbolic
  Matrix g2(f9, 2, 2);
  g2.at(0, 1) = f9.one();
  g2.at(1, 0) = -f9.one();
  DeltaCertificate c2 = delta_graph_connected(SesquiForm::skew_hermitian(f9, g2));
  CHECK(c2.connected);
  CHECK(c2.vertex_count > 0);
  CHECK(static_cast<int>(c2.spanning_tree.size()) == c2.vertex_count - 1);

  // GF(4), dim 3 is the genuine exception: each anisotropic point of
  // PG(2,4) lies on exactly 2 secants of the Hermitian unital and each
  // secant carries exactly 2 anisotropic points, so Delta is a disjoint
  // union of 4 triangles.
  const Field& f4 = Field::quadratic_ext(2);
  DeltaCertificate c3 = delta_graph_connected(SesquiForm::standard_skew_hermitian(f4, 3));
  CHECK_FALSE(c3.connected);
  CHECK(c3.vertex_count == 12);
  {
    int edges = 0;
    for (int i = 0; i < c3.vertex_count; ++i)
      for (int j = i + 1; j < c3.vertex_count; ++j)
        if (is_hyperbolic_2space(SesquiForm::standard_skew_hermitian(f4, 3),
                                 c3.vertices[i], c3.vertices[j]))
          ++edges;
    CHECK(edges == 12);
  }
  // dim 2 and dim 4 over GF(4) are connected
  CHECK(delta_graph_connected(SesquiForm::standard_skew_hermitian(f4, 2)).connected);
  CHECK(delta_graph_connected(SesquiForm::standard_skew_hermitian(f4, 4)).connected);
  CHECK(delta_graph_connected(SesquiForm::standard_skew_hermitian(f9, 3)).connected);
  CHECK(delta_graph_connected(SesquiForm::standard_skew_hermitian(f9, 4)).connected);

  // dim 1 anisotropic: a single vertex class, trivially connected
  Matrix g1(f9, 1, 1);
  g1.at(0, 0) = f9.generator();
  DeltaCertificate c1 = delta_graph_connected(SesquiForm::skew_hermitian(f9, g1));
  CHECK(c1.connected);
  CHECK(c1.vertex_count == 1);
}

TEST_CASE("unitary bracket identity for rank-one form elements") {
  const Field& f9 = Field::quadratic_ext(3);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f9, 3);
  oracles::Rng rng(307);
  for (int k = 0; k < 40; ++k) {
    Vector v = rng.nonzero_vector(f9, 3);
    Vector w = rng.nonzero_vector(f9, 3);
    Matrix xv = Matrix::outer(v, h.functional_of(v));
    Matrix xw = Matrix::outer(w, h.functional_of(w));
    Matrix lhs = oracles::commutator(xv, xw);
    Scalar hvw = h.eval(v, w);
    Vector u = v * hvw + w;
    Matrix rhs = Matrix::outer(u, h.functional_of(u)) - xv * (hvw * hvw.sigma()) - xw;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("build_unitary over GF(4)/GF(2), n = 3") {
  const Field& f4 = Field::quadratic_ext(2);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f4, 3);
  UnitaryConstruction uc = build_unitary(h);
  CHECK(&uc.algebra.coeff_field() == &Field::prime(2));
  CHECK(uc.algebra.dim() == 8);  // 3^2 - 1 over the fixed field
  CHECK(uc.solution_space.dim() == 8);
  CHECK(uc.spans_match);
  for (const auto& b : uc.algebra.basis()) {
    CHECK(b.trace().is_zero());
    // h(x v, w) + h(v, x w) = 0 on all basis pairs of V
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Vector ei(f4, 3), ej(f4, 3);
        ei[i] = f4.one();
        ej[j] = f4.one();
        CHECK((h.eval(b.matrix().apply(ei), ej) + h.eval(ei, b.matrix().apply(ej)))
                  .is_zero());
      }
  }
}

TEST_CASE("unitary geometries contain no lines") {
  const Field& f4 = Field::quadratic_ext(2);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f4, 3));
  GeometryGraph g = build_geometry(uc.algebra, EnumerationMode::brute);
  CHECK(g.point_count() == 9);  // isotropic points of the Hermitian curve in PG(2,4)
  CHECK(g.line_count() == 0);
  auto param = enumerate_extremal(uc.algebra, EnumerationMode::parametric);
  CHECK(param.size() == 9);
}

TEST_CASE("build_symplectic over GF(3)^4") {
  const Field& f3 = Field::prime(3);
  SesquiForm f = SesquiForm::standard_alternating(f3, 4);
  UnitaryConstruction uc = build_symplectic(f);
  CHECK(uc.algebra.dim() == 10);
  CHECK(uc.spans_match);
  GeometryGraph g = build_geometry(uc.algebra, EnumerationMode::parametric);
  CHECK(g.point_count() == 40);  // the points of PG(3, 3)
  CHECK(g.line_count() == 0);
  // alternating input is routed through build_unitary as well
  UnitaryConstruction uc2 = build_unitary(f);
  CHECK(uc2.algebra.dim() == 10);
}

TEST_CASE("unitary construction over Q(sqrt -1)") {
  const Field& qi = Field::quadratic_rationals(-1);
  Matrix g(qi, 2, 2);
  g.at(0, 1) = qi.one();
  g.at(1, 0) = -qi.one();
  UnitaryConstruction uc = build_unitary(SesquiForm::skew_hermitian(qi, g));
  CHECK(uc.algebra.dim() == 3);  // su(2) over Q
  CHECK(uc.spans_match);
}

TEST_CASE("spanning reflection basis sizes and certification") {
  const Field& f4 = Field::quadratic_ext(2);
  auto b2 = spanning_reflection_basis(SesquiForm::standard_skew_hermitian(f4, 2));
  CHECK(b2.size() == 4);
  const Field& f9 = Field::quadratic_ext(3);
  auto b3 = spanning_reflection_basis(SesquiForm::standard_skew_hermitian(f9, 3));
  CHECK(b3.size() == 9);
}

TEST_CASE("spanning set degenerates when mu is fixed by sigma") {
  // Same construction with mu = 1 from the fixed field: the two pencil
  // elements coincide and the set cannot reach rank n^2.
  const Field& f4 = Field::quadratic_ext(2);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f4, 2);
  Vector e0(f4, 2), e1(f4, 2);
  e0[0] = f4.one();
  e1[1] = f4.one();
  Scalar mu = f4.one();  // mu^sigma == mu: invalid choice
  std::vector<Matrix> elems = {
      Matrix::outer(e0, h.functional_of(e0)), Matrix::outer(e1, h.functional_of(e1)),
      Matrix::outer(e0 + e1, h.functional_of(e0 + e1)),
      Matrix::outer(e0 + e1 * mu, h.functional_of(e0 + e1 * mu))};
  const Field& f2 = Field::prime(2);
  SpanBuilder sb(f2, 8);
  for (const auto& m : elems) {
    Vector v(f2, 8);
    int idx = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        v[idx++] = f2.from_rat(m.at(i, j).coord_a());
        v[idx++] = f2.from_rat(m.at(i, j).coord_b());
      }
    sb.insert(v);
  }
  CHECK(sb.dim() < 4);
}

TEST_CASE("isotropic-anisotropic pairs span hyperbolic 2-spaces when trace-valued") {
  const Field& f9 = Field::quadratic_ext(3);
  SesquiForm h = SesquiForm::standard_skew_hermitian(f9, 3);
  oracles::Rng rng(311);
  Subspace iso = isotropic_span(h);
  int checked = 0;
  for (int k = 0; k < 200 && checked < 40; ++k) {
    Vector v = rng.vector(f9, 3);
    if (v.is_zero() || !h.is_isotropic(v)) continue;
    Vector w = rng.nonzero_vector(f9, 3);
    if (h.eval(v, w).is_zero()) continue;
    ++checked;
    CHECK(is_hyperbolic_2space(h, v, w));
  }
  CHECK(checked > 0);
}

TEST_CASE("polarity round trip over GF(4)") {
  const Field& f4 = Field::quadratic_ext(2);
  SesquiForm h0 = SesquiForm::skew_hermitian(f4, hermitian_g0(f4));
  LieAlgebra sl3 = LieAlgebra::special_linear(3, f4);
  GeometryGraph geom = build_geometry(sl3, EnumerationMode::parametric);

  std::vector<int> perm = induced_point_permutation(geom, sl3, h0);
  PolaritySpec spec = extract_polarity(geom, perm);
  CHECK(spec.point_to_hyperplane.size() == 21);  // the points of PG(2, 4)
  REQUIRE_FALSE(spec.fixed_points.empty());

  Vector v0 = geom.points[spec.fixed_points[0]].flag->point;
  FormRealization real = realize_form(spec, v0);

  // recovered Gram is proportional to G0
  const Matrix& g = real.form.gram();
  Scalar ratio;
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i)
    for (int j = 0; j < 3 && !found; ++j)
      if (!h0.gram().at(i, j).is_zero()) {
        ratio = g.at(i, j) / h0.gram().at(i, j);
        found = true;
      }
  REQUIRE(found);
  CHECK(h0.gram() * ratio == g);

  // after scaling: eps = -1 and tau = sigma
  CHECK(real.form.eps() == -f4.one());
  CHECK(real.form.tau_is_involution());
  CHECK(real.e_description_checked);

  // the fixed algebra is the unitary algebra of G0 as a matrix space
  UnitaryConstruction uc = build_unitary(h0);
  CHECK(real.fixed_algebra.dim() == 8);
  CHECK(real.fixed_algebra.span_subspace() == uc.algebra.span_subspace());
}

TEST_CASE("identity permutation is rejected as a polarity action") {
  const Field& f4 = Field::quadratic_ext(2);
  LieAlgebra sl3 = LieAlgebra::special_linear(3, f4);
  GeometryGraph geom = build_geometry(sl3, EnumerationMode::parametric);
  std::vector<int> identity(geom.point_count());
  for (int i = 0; i < geom.point_count(); ++i) identity[i] = i;
  CHECK_THROWS_AS(extract_polarity(geom, identity), std::domain_error);
}

TEST_SUITE_END();
