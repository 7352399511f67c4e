#include "doctest.h"

#include <stdexcept>

#include "extremal/extension.hpp"
#include "extremal/geometry.hpp"
#include "extremal/hermitian.hpp"
#include "oracles.hpp"

using namespace extremal;

TEST_SUITE_BEGIN("extension");

TEST_CASE("su(3, GF(4)/GF(2)) extended by GF(4) is sl(3, GF(4))") {
  const Field& f4 = Field::quadratic_ext(2);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f4, 3));
  REQUIRE(uc.algebra.dim() == 8);
  ExtendedAlgebra e = extend(uc.algebra, f4);
  CHECK(e.algebra().dim() == 8);
  CHECK(&e.algebra().coeff_field() == &f4);
  // same matrix space as sl(3, GF(4))
  LieAlgebra sl34 = LieAlgebra::special_linear(3, f4);
  CHECK(e.algebra().span_subspace() == sl34.span_subspace());
  // and the same extremal geometry as the flag model
  GeometryGraph g = build_geometry(e.algebra(), EnumerationMode::parametric);
  CHECK(g.point_count() == 105);
  CHECK(g.line_count() == 42);
  GeometryGraph fm = flag_model(3, f4, Subspace::full(f4, 3));
  CHECK(match_geometries(g, fm).has_value());
}

TEST_CASE("sigma fixes exactly the base algebra") {
  const Field& f9 = Field::quadratic_ext(3);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f9, 3));
  ExtendedAlgebra e = extend(uc.algebra, f9);
  // lifted base basis elements are fixed
  for (const auto& b : e.base().basis()) {
    LieElement l = e.lift(b);
    CHECK(e.is_sigma_fixed(l));
    CHECK(e.sigma(l) == l);
  }
  // scaling by the generator breaks fixedness, and sigma undoes itself
  Scalar t = f9.generator();
  LieElement tw = e.lift(e.base().basis()[0]) * t;
  CHECK_FALSE(e.is_sigma_fixed(tw));
  CHECK(e.sigma(e.sigma(tw)) == tw);
  CHECK(e.sigma(tw) == e.lift(e.base().basis()[0]) * t.sigma());
}

TEST_CASE("sigma preserves brackets and the extremal point set") {
  const Field& f4 = Field::quadratic_ext(2);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f4, 3));
  ExtendedAlgebra e = extend(uc.algebra, f4);
  oracles::Rng rng(401);
  const auto& basis = e.algebra().basis();
  for (int k = 0; k < 20; ++k) {
    LieElement x = basis[rng.below(basis.size())] * rng.nonzero_scalar(f4);
    LieElement y = basis[rng.below(basis.size())] * rng.nonzero_scalar(f4);
    CHECK(e.sigma(bracket(x, y)) == bracket(e.sigma(x), e.sigma(y)));
  }
  auto pts = enumerate_extremal(e.algebra(), EnumerationMode::parametric);
  for (size_t i = 0; i < pts.size(); i += 7) {
    LieElement img = e.sigma(pts[i].rep);
    CHECK(e.algebra().classify_extremal(img) == Extremality::pure_extremal);
  }
}

TEST_CASE("extremal form extends multiplicatively") {
  const Field& f3 = Field::prime(3);
  const Field& f9 = Field::quadratic_ext(3);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  ExtendedAlgebra e = extend(a, f9);
  Scalar t = f9.generator();
  oracles::Rng rng(409);
  auto pts = enumerate_extremal(a, EnumerationMode::parametric);
  for (int k = 0; k < 25; ++k) {
    const LieElement& x = pts[rng.below(pts.size())].rep;
    const LieElement& y = pts[rng.below(pts.size())].rep;
    Scalar g = a.trace_form(x, y);
    Scalar lambda = t.pow(1 + rng.below(3));
    Scalar mu = t.pow(1 + rng.below(3));
    Scalar ghat = e.algebra().trace_form(e.lift(x) * lambda, e.lift(y) * mu);
    CHECK(ghat == g.lift_to(f9) * lambda * mu);
  }
}

TEST_CASE("radical is trivial after extension when the base is simple") {
  // su(2, GF(9)/GF(3)): simple base, so the extension keeps a trivial radical
  const Field& f9 = Field::quadratic_ext(3);
  {
    UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f9, 2));
    REQUIRE(is_simple(uc.algebra));
    ExtendedAlgebra e = extend(uc.algebra, f9);
    CHECK(radical_of_form(e).dim() == 0);
    CHECK(check_simple(e));
  }
  // su(3, GF(4)/GF(2)) likewise (2 does not divide 3)
  {
    const Field& f4 = Field::quadratic_ext(2);
    UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f4, 3));
    REQUIRE(is_simple(uc.algebra));
    ExtendedAlgebra e = extend(uc.algebra, f4);
    CHECK(radical_of_form(e).dim() == 0);
    CHECK(check_simple(e));
  }
}

TEST_CASE("characteristic dividing the rank puts skew scalars in the center") {
  // su(3, GF(9)/GF(3)): 3 | 3 makes t*I traceless and central, so the base is
  // NOT simple and the extension keeps the one-dimensional radical <I>.
  const Field& f9 = Field::quadratic_ext(3);
  UnitaryConstruction uc = build_unitary(SesquiForm::standard_skew_hermitian(f9, 3));
  CHECK(uc.algebra.contains(LieElement(Matrix::identity(f9, 3) * f9.generator())));
  CHECK(center(uc.algebra).dim() == 1);
  CHECK_FALSE(is_simple(uc.algebra));
  CHECK(kernel(uc.algebra.gram()).dim() == 1);
  ExtendedAlgebra e = extend(uc.algebra, f9);
  CHECK(radical_of_form(e).dim() == 1);
  CHECK_FALSE(check_simple(e));
  // the geometry is unaffected: it is still the flag geometry of PG(2, 9)
  GeometryGraph g = build_geometry(e.algebra(), EnumerationMode::parametric);
  CHECK(g.point_count() == 910);
}

TEST_CASE("radical and simplicity controls") {
  const Field& f9 = Field::quadratic_ext(3);
  // negative control: sl(3, GF(3)) has the identity in its center and in the
  // radical of the form, before and after extension
  const Field& f3 = Field::prime(3);
  LieAlgebra sl33 = LieAlgebra::special_linear(3, f3);
  ExtendedAlgebra esl = extend(sl33, f9);
  Subspace rad = radical_of_form(esl);
  CHECK(rad.dim() >= 1);
  auto idc = esl.algebra().coordinates(LieElement(Matrix::identity(f9, 3)));
  REQUIRE(idc.has_value());
  Vector idvec(f9, esl.algebra().dim());
  for (int i = 0; i < esl.algebra().dim(); ++i) idvec[i] = (*idc)[i];
  CHECK(rad.contains(idvec));
  CHECK_FALSE(check_simple(esl));

  // symplectic sp(4, GF(5)) (x) GF(25): trivial radical
  const Field& f5 = Field::prime(5);
  const Field& f25 = Field::quadratic_ext(5);
  UnitaryConstruction sp = build_symplectic(SesquiForm::standard_alternating(f5, 4));
  ExtendedAlgebra esp = extend(sp.algebra, f25);
  CHECK(esp.algebra().dim() == 10);
  CHECK(radical_of_form(esp).dim() == 0);
}

TEST_CASE("extension argument checks") {
  const Field& f3 = Field::prime(3);
  const Field& f25 = Field::quadratic_ext(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  CHECK_THROWS_AS(extend(a, f25), std::invalid_argument);
  CHECK_THROWS_AS(extend(a, f3), std::invalid_argument);
}

TEST_SUITE_END();
