#include "doctest.h"

#include <stdexcept>

#include "extremal/lie.hpp"
#include "oracles.hpp"

using namespace extremal;

TEST_SUITE_BEGIN("lie");

namespace {

Vector unit(const Field& f, int n, int i) {
  Vector v(f, n);
  v[i] = f.one();
  return v;
}

LieElement elementary(const Field& f, int n, int i, int j) {
  return Transvection(unit(f, n, i), Functional(unit(f, n, j))).element();
}

}  // namespace

TEST_CASE("bracket of dual-basis transvections") {
  const Field& f5 = Field::prime(5);
  LieElement x = elementary(f5, 3, 0, 1);  // e1 (x) phi2
  LieElement y = elementary(f5, 3, 1, 0);  // e2 (x) phi1
  LieElement b = bracket(x, y);
  // e1 (x) phi1 - e2 (x) phi2
  Matrix expect(f5, 3, 3);
  expect.at(0, 0) = f5.one();
  expect.at(1, 1) = -f5.one();
  CHECK(b.matrix() == expect);
  CHECK(b.matrix() == oracles::commutator(x.matrix(), y.matrix()));
  REQUIRE(b.decomposition().has_value());
  Matrix expanded(f5, 3, 3);
  for (const auto& t : *b.decomposition()) expanded = expanded + Matrix::outer(t.v, t.phi);
  CHECK(expanded == b.matrix());
}

TEST_CASE("bracket is alternating and vanishes on disjoint supports") {
  const Field& f3 = Field::prime(3);
  LieElement a = elementary(f3, 4, 0, 1);
  CHECK(bracket(a, a).is_zero());
  LieElement b = elementary(f3, 4, 2, 3);
  CHECK(bracket(a, b).is_zero());
}

TEST_CASE("bracket decomposition matches the dense commutator on random pairs") {
  oracles::Rng rng(101);
  const Field& f7 = Field::prime(7);
  for (int k = 0; k < 50; ++k) {
    Vector v = rng.nonzero_vector(f7, 4);
    Vector w = rng.nonzero_vector(f7, 4);
    Functional phi(rng.nonzero_vector(f7, 4));
    Functional psi(rng.nonzero_vector(f7, 4));
    LieElement a(Matrix::outer(v, phi), {RankOneTerm{v, phi}});
    LieElement b(Matrix::outer(w, psi), {RankOneTerm{w, psi}});
    LieElement c = bracket(a, b);
    CHECK(c.matrix() == oracles::commutator(a.matrix(), b.matrix()));
    REQUIRE(c.decomposition().has_value());
  }
}

TEST_CASE("transvection preconditions") {
  const Field& f5 = Field::prime(5);
  CHECK_THROWS_AS(Transvection(unit(f5, 3, 0), Functional(unit(f5, 3, 0))),
                  std::invalid_argument);
  CHECK_THROWS_AS(Transvection(Vector(f5, 3), Functional(unit(f5, 3, 1))),
                  std::invalid_argument);
}

TEST_CASE("special linear handles have the expected dimension and traceless basis") {
  for (auto [n, p] : {std::pair{3, 2}, {3, 5}, {4, 3}}) {
    const Field& f = Field::prime(p);
    LieAlgebra a = LieAlgebra::special_linear(n, f);
    CHECK(a.dim() == n * n - 1);
    for (const auto& b : a.basis()) CHECK(b.trace().is_zero());
  }
}

TEST_CASE("Jacobi identity on all basis triples of sl(3, GF(2)) and sl(3, Q)") {
  for (const Field* f : {&Field::prime(2), &Field::rationals()}) {
    LieAlgebra a = LieAlgebra::special_linear(3, *f);
    for (const auto& x : a.basis())
      for (const auto& y : a.basis())
        for (const auto& z : a.basis()) {
          LieElement jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                           bracket(z, bracket(x, y));
          CHECK(jac.is_zero());
        }
  }
}

TEST_CASE("transvections are pure extremal in fsl") {
  for (auto [n, p] : {std::pair{3, 2}, {3, 3}, {4, 5}}) {
    const Field& f = Field::prime(p);
    LieAlgebra a = LieAlgebra::special_linear(n, f);
    for (const auto& g : a.generators())
      CHECK(a.classify_extremal(g) == Extremality::pure_extremal);
  }
}

TEST_CASE("double bracket closed form for transvections in every characteristic") {
  oracles::Rng rng(7);
  for (const Field* f : {&Field::prime(2), &Field::prime(3), &Field::prime(7),
                         &Field::rationals()}) {
    LieAlgebra a = LieAlgebra::special_linear(3, *f);
    for (int k = 0; k < 10; ++k) {
      Vector v = rng.nonzero_vector(*f, 3);
      Vector pv = rng.vector(*f, 3);
      // force phi(v) = 0: project a random functional onto v's annihilator
      Functional phi(pv);
      if (!phi(v).is_zero()) {
        int idx = 0;
        while (v[idx].is_zero()) ++idx;
        pv[idx] = pv[idx] - phi(v) / v[idx];
        phi = Functional(pv);
      }
      if (phi.is_zero()) continue;
      Transvection t(v, phi);
      LieElement te = t.element();
      for (const auto& y : a.basis()) {
        LieElement dbl = bracket(te, bracket(te, y));
        Scalar coeff = f->from_integer(-2) * phi(y.matrix().apply(v));
        CHECK(dbl == te * coeff);
      }
    }
  }
}

TEST_CASE("diag(1,-1,0) is not extremal in sl(3, GF(5))") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  Matrix m(f5, 3, 3);
  m.at(0, 0) = f5.one();
  m.at(1, 1) = -f5.one();
  LieElement x(m);
  // Oracle: find a basis witness whose double bracket leaves the span of x.
  bool witness = false;
  for (const auto& y : a.basis()) {
    Matrix dbl = oracles::commutator(m, oracles::commutator(m, y.matrix()));
    if (!oracles::in_matrix_span(dbl, m)) witness = true;
  }
  CHECK(witness);
  CHECK(a.classify_extremal(x) == Extremality::not_extremal);
}

TEST_CASE("rank-2 square-zero elements are not extremal") {
  // e1 (x) phi2 + e3 (x) phi4, checked both in odd and even characteristic.
  for (const Field* f : {&Field::prime(3), &Field::prime(2)}) {
    LieAlgebra a = LieAlgebra::special_linear(4, *f);
    LieElement x = elementary(*f, 4, 0, 1) + elementary(*f, 4, 2, 3);
    CHECK((x.matrix() * x.matrix()).is_zero());
    CHECK(a.classify_extremal(x) == Extremality::not_extremal);
  }
}

TEST_CASE("Heisenberg algebra consists of sandwiches") {
  const Field& f5 = Field::prime(5);
  std::vector<Transvection> gens;
  gens.emplace_back(unit(f5, 3, 0), Functional(unit(f5, 3, 1)));  // E12
  gens.emplace_back(unit(f5, 3, 1), Functional(unit(f5, 3, 2)));  // E23
  LieAlgebra heis = LieAlgebra::from_transvections(f5, 3, gens);
  CHECK(heis.dim() == 3);
  for (const auto& b : heis.basis())
    CHECK(heis.classify_extremal(b) == Extremality::sandwich);
  // The same matrices are pure extremal inside the full sl(3, GF(5)).
  LieAlgebra sl3 = LieAlgebra::special_linear(3, f5);
  CHECK(sl3.classify_extremal(gens[0].element()) == Extremality::pure_extremal);
}

TEST_CASE("extremality argument checks") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  CHECK_THROWS_AS(a.classify_extremal(LieElement::zero(f5, 3)), std::invalid_argument);
  Matrix outside(f5, 3, 3);
  outside.at(0, 0) = f5.one();  // nonzero trace, outside sl
  CHECK_THROWS_AS(a.classify_extremal(LieElement(outside)), std::invalid_argument);
}

TEST_CASE("extremal form values") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  LieElement x = elementary(f5, 3, 0, 1);
  LieElement y = elementary(f5, 3, 1, 0);
  CHECK(a.extremal_form(x, y) == -f5.one());
  // disjoint supports commute and pair to zero
  LieAlgebra a4 = LieAlgebra::special_linear(4, f5);
  CHECK(a4.extremal_form(elementary(f5, 4, 0, 1), elementary(f5, 4, 2, 3)).is_zero());
  CHECK_THROWS_AS(a.extremal_form(bracket(x, y), y), std::invalid_argument);
}

TEST_CASE("extremal form is symmetric on random transvection pairs in sl(4, GF(7))") {
  oracles::Rng rng(13);
  const Field& f7 = Field::prime(7);
  LieAlgebra a = LieAlgebra::special_linear(4, f7);
  for (int k = 0; k < 200; ++k) {
    Vector v = rng.nonzero_vector(f7, 4);
    Vector w = rng.nonzero_vector(f7, 4);
    Vector pv = rng.vector(f7, 4), pw = rng.vector(f7, 4);
    auto fix = [&](Vector& coeffs, const Vector& vec) {
      Functional phi(coeffs);
      if (!phi(vec).is_zero()) {
        int idx = 0;
        while (vec[idx].is_zero()) ++idx;
        coeffs[idx] = coeffs[idx] - phi(vec) / vec[idx];
      }
    };
    fix(pv, v);
    fix(pw, w);
    if (pv.is_zero() || pw.is_zero()) continue;
    LieElement x = Transvection(v, Functional(pv)).element();
    LieElement y = Transvection(w, Functional(pw)).element();
    CHECK(a.extremal_form(x, y) == a.extremal_form(y, x));
    // g(t_{v,phi}, t_{w,psi}) = -psi(v) phi(w)
    CHECK(a.extremal_form(x, y) ==
          -(Functional(pw)(v) * Functional(pv)(w)));
  }
}

TEST_CASE("extremal form is associative on basis triples") {
  for (const Field* f : {&Field::prime(2), &Field::prime(5)}) {
    LieAlgebra a = LieAlgebra::special_linear(3, *f);
    for (const auto& x : a.basis())
      for (const auto& y : a.basis())
        for (const auto& z : a.basis())
          CHECK(a.trace_form(bracket(x, y), z) == a.trace_form(x, bracket(y, z)));
  }
}

TEST_CASE("exp against the conjugation oracle") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  LieElement x = elementary(f5, 3, 0, 1);
  LieElement y = elementary(f5, 3, 1, 0);
  for (std::int64_t l = 0; l < 5; ++l) {
    Scalar lambda = f5.from_integer(l);
    ExpMap e(a, x, lambda);
    LieElement img = e(y);
    CHECK(img.matrix() == oracles::conjugation_exp(x.matrix(), y.matrix(), lambda));
  }
  // spec example at lambda generic: y + lambda(e11 - e22) - lambda^2 x
  Scalar two = f5.from_integer(2);
  ExpMap e2(a, x, two);
  LieElement expect = y + bracket(x, y) * two - x * (two * two);
  CHECK(e2(y) == expect);
}

TEST_CASE("exp at zero is the identity and composition adds parameters") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  LieElement x = elementary(f5, 3, 1, 2);
  ExpMap e0(a, x, f5.zero());
  for (const auto& b : a.basis()) CHECK(e0(b) == b);
  for (std::int64_t l = 0; l < 5; ++l) {
    for (std::int64_t m = 0; m < 5; ++m) {
      ExpMap el(a, x, f5.from_integer(l));
      ExpMap em(a, x, f5.from_integer(m));
      ExpMap esum(a, x, f5.from_integer(l + m));
      for (const auto& b : a.basis()) CHECK(el(em(b)) == esum(b));
    }
  }
}

TEST_CASE("exp preserves brackets on all basis pairs") {
  const Field& f3 = Field::prime(3);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  LieElement x = elementary(f3, 3, 0, 2);
  ExpMap e(a, x, f3.from_integer(2));
  for (const auto& u : a.basis())
    for (const auto& v : a.basis())
      CHECK(e(bracket(u, v)) == bracket(e(u), e(v)));
}

TEST_CASE("exp rejects non-extremal directions") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a = LieAlgebra::special_linear(3, f5);
  LieElement h = bracket(elementary(f5, 3, 0, 1), elementary(f5, 3, 1, 0));
  CHECK_THROWS_AS(ExpMap(a, h, f5.one()), std::invalid_argument);
}

TEST_CASE("pair classification spec cases") {
  const Field& f5 = Field::prime(5);
  LieAlgebra a3 = LieAlgebra::special_linear(3, f5);
  LieAlgebra a4 = LieAlgebra::special_linear(4, f5);
  CHECK(classify_pair(a3, elementary(f5, 3, 0, 1), elementary(f5, 3, 0, 1) * f5.from_integer(3)) ==
        PairCase::a);
  CHECK(classify_pair(a3, elementary(f5, 3, 0, 1), elementary(f5, 3, 0, 2)) == PairCase::b);
  CHECK(classify_pair(a4, elementary(f5, 4, 0, 1), elementary(f5, 4, 2, 3)) == PairCase::c);
  CHECK(classify_pair(a3, elementary(f5, 3, 0, 1), elementary(f5, 3, 1, 2)) == PairCase::d);
  CHECK(classify_pair(a3, elementary(f5, 3, 0, 1), elementary(f5, 3, 1, 0)) == PairCase::e);
  LieElement h = bracket(elementary(f5, 3, 0, 1), elementary(f5, 3, 1, 0));
  CHECK_THROWS_AS(classify_pair(a3, h, elementary(f5, 3, 0, 1)), std::invalid_argument);
}

TEST_CASE("brute scan of sl(3, GF(2)) finds the 21 flags of PG(2, 2)") {
  const Field& f2 = Field::prime(2);
  LieAlgebra a = LieAlgebra::special_linear(3, f2);
  auto pts = enumerate_extremal(a, EnumerationMode::brute);
  CHECK(pts.size() == 21);
  CHECK(static_cast<std::int64_t>(pts.size()) == oracles::pg_flags(3, 2));
  for (const auto& p : pts) {
    REQUIRE(p.flag.has_value());
    CHECK(p.flag->functional(p.flag->point).is_zero());
  }
}

TEST_CASE("sl(2, GF(3)) has the four extremal points of PG(1, 3)") {
  const Field& f3 = Field::prime(3);
  LieAlgebra a = LieAlgebra::special_linear(2, f3);
  auto brute = enumerate_extremal(a, EnumerationMode::brute);
  auto param = enumerate_extremal(a, EnumerationMode::parametric);
  CHECK(brute.size() == 4);
  REQUIRE(brute.size() == param.size());
  for (size_t i = 0; i < brute.size(); ++i) CHECK(brute[i].coords == param[i].coords);
}

TEST_CASE("parametric and brute enumeration agree on sl(3, GF(3))") {
  const Field& f3 = Field::prime(3);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  auto brute = enumerate_extremal(a, EnumerationMode::brute);
  auto param = enumerate_extremal(a, EnumerationMode::parametric);
  REQUIRE(brute.size() == param.size());
  CHECK(static_cast<std::int64_t>(brute.size()) == oracles::pg_flags(3, 3));
  for (size_t i = 0; i < brute.size(); ++i) {
    CHECK(brute[i].coords == param[i].coords);
    CHECK(brute[i].rep == param[i].rep);
  }
}

TEST_CASE("brute scan of sl(4, GF(2)) separates flags from square-zero impostors") {
  // Characteristic 2 makes [x,[x,y]] vanish for every square-zero x, so the
  // 210 rank-2 square-zero classes pass the double-bracket test and only the
  // Premet identities reject them; the survivors are the 105 flags of
  // PG(3, 2).
  const Field& f2 = Field::prime(2);
  LieAlgebra a = LieAlgebra::special_linear(4, f2);
  auto brute = enumerate_extremal(a, EnumerationMode::brute);
  CHECK(static_cast<std::int64_t>(brute.size()) == oracles::pg_flags(4, 2));
  auto param = enumerate_extremal(a, EnumerationMode::parametric);
  REQUIRE(brute.size() == param.size());
  for (size_t i = 0; i < brute.size(); ++i) CHECK(brute[i].coords == param[i].coords);
  // recount the square-zero classes and how many the Premet solve rejected
  int square_zero = 0;
  int rejected = 0;
  {
    std::vector<Scalar> coords(a.dim(), f2.zero());
    std::vector<int> odo(a.dim(), 0);
    // iterate all nonzero coefficient vectors over GF(2)
    for (;;) {
      int t = 0;
      while (t < a.dim() && ++odo[t] == 2) odo[t++] = 0;
      if (t == a.dim()) break;
      for (int k = 0; k < a.dim(); ++k) coords[k] = f2.from_integer(odo[k]);
      LieElement el = a.from_coordinates(coords);
      if (el.is_zero()) continue;
      Matrix sq = el.matrix() * el.matrix();
      if (!sq.is_zero()) continue;
      ++square_zero;
      if (a.classify_extremal(el) == Extremality::not_extremal) ++rejected;
    }
  }
  CHECK(square_zero == 105 + 210);
  CHECK(rejected == 210);
}

TEST_CASE("brute enumeration bound is enforced") {
  const Field& f3 = Field::prime(3);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  CHECK_THROWS_AS(enumerate_extremal(a, EnumerationMode::brute, 100), std::domain_error);
}

TEST_CASE("linear span of transvection classes equals the generated algebra") {
  const Field& f3 = Field::prime(3);
  LieAlgebra a = LieAlgebra::special_linear(3, f3);
  auto pts = enumerate_extremal(a, EnumerationMode::parametric);
  SpanBuilder sb(a.coeff_field(), a.vec_len());
  for (const auto& p : pts) sb.insert(a.vectorize(p.rep.matrix()));
  CHECK(sb.dim() == a.dim());
}

TEST_CASE("simplicity and centers") {
  const Field& f2 = Field::prime(2);
  LieAlgebra sl32 = LieAlgebra::special_linear(3, f2);
  CHECK(center(sl32).dim() == 0);
  CHECK(is_simple(sl32));

  // char | n: the identity is traceless and central
  const Field& f3 = Field::prime(3);
  LieAlgebra sl33 = LieAlgebra::special_linear(3, f3);
  Subspace z = center(sl33);
  CHECK(z.dim() == 1);
  auto idc = sl33.coordinates(LieElement(Matrix::identity(f3, 3)));
  REQUIRE(idc.has_value());
  Vector idvec(f3, sl33.dim());
  for (int k = 0; k < sl33.dim(); ++k) idvec[k] = (*idc)[k];
  CHECK(z.contains(idvec));
  CHECK_FALSE(is_simple(sl33));

  const Field& f5 = Field::prime(5);
  LieAlgebra sl45 = LieAlgebra::special_linear(4, f5);
  LieElement t = elementary(f5, 4, 0, 1);
  CHECK(ideal_closure(sl45, t).dim() == sl45.dim());
}

TEST_SUITE_END();
