#include "extremal/extension.hpp"

#include <stdexcept>

namespace extremal {

namespace {

Matrix lift_matrix(const Matrix& m, const Field& k) {
  Matrix out(k, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).lift_to(k);
  return out;
}

Subspace lift_subspace(const Subspace& s, const Field& k) {
  Matrix rows = lift_matrix(s.basis_matrix(), k);
  return Subspace::from_rref(std::move(rows), s.pivots(), s.ambient());
}

}  // namespace

ExtendedAlgebra extend(const LieAlgebra& a, const Field& k) {
  if (k.base_field() != &a.coeff_field())
    throw std::invalid_argument(
        "K must be a quadratic Galois extension of the algebra's coefficient field");

  ExtendedAlgebra e;
  e.base_ = a;
  e.k_ = &k;

  std::vector<LieElement> gens;
  std::optional<LieAlgebra::SlData> sl;
  std::optional<LieAlgebra::FormData> form;

  if (&a.coeff_field() == &a.matrix_field()) {
    // Lift the basis matrices entrywise into K.
    e.lifted_entries_ = true;
    for (const auto& b : a.basis()) gens.push_back(LieElement(lift_matrix(b.matrix(), k)));
    if (a.sl_data())
      sl = LieAlgebra::SlData{lift_subspace(a.sl_data()->U, k),
                              lift_subspace(a.sl_data()->Phi, k)};
    if (a.form_data())
      form = LieAlgebra::FormData{lift_matrix(a.form_data()->gram, k),
                                  a.form_data()->hermitian};
  } else {
    // Unitary-type handle: the matrices already live over K = matrix field.
    if (&a.matrix_field() != &k)
      throw std::invalid_argument(
          "for a split handle the extension must be its matrix field");
    e.lifted_entries_ = false;
    for (const auto& b : a.basis()) gens.push_back(b);
  }

  e.ext_ = LieAlgebra::from_parts(LieAlgebra::Kind::extended, k, k, a.ambient_dim(),
                                  std::move(gens), std::move(sl), std::move(form));
  if (e.ext_.dim() != a.dim())
    throw std::logic_error("basis lost independence under scalar extension");

  // A split handle whose K-span is the full traceless matrix space is a
  // special linear algebra in disguise: record the flag parametrization.
  if (!e.ext_.sl_data() && e.ext_.dim() == a.ambient_dim() * a.ambient_dim() - 1) {
    bool traceless = true;
    for (const auto& b : e.ext_.basis())
      if (!b.trace().is_zero()) traceless = false;
    if (traceless) {
      int n = a.ambient_dim();
      LieAlgebra::SlData full{Subspace::full(k, n), Subspace::full(k, n)};
      LieAlgebra rebuilt = LieAlgebra::from_parts(
          LieAlgebra::Kind::extended, k, k, n,
          std::vector<LieElement>(e.ext_.basis()), std::move(full), std::nullopt);
      if (rebuilt.dim() == e.ext_.dim()) e.ext_ = std::move(rebuilt);
    }
  }
  return e;
}

LieElement ExtendedAlgebra::lift(const LieElement& x) const {
  if (lifted_entries_) return LieElement(lift_matrix(x.matrix(), *k_));
  return x;
}

// Coordinates with respect to the lifted BASE basis. Conjugating these is the
// tensor-product sigma; the K-normalized basis of the extended handle is not
// rational over the base field in the split case, so it cannot be used here.
std::vector<Scalar> ExtendedAlgebra::base_coordinates(const LieElement& x) const {
  int d = base_.dim();
  int len = ext_.vec_len();
  Matrix sys(*k_, len, d);
  for (int c = 0; c < d; ++c) {
    Vector col = ext_.vectorize(lift(base_.basis()[c]).matrix());
    for (int r = 0; r < len; ++r) sys.at(r, c) = col[r];
  }
  auto sol = solve(sys, ext_.vectorize(x.matrix()));
  if (!sol) throw std::invalid_argument("element lies outside the extended algebra");
  return std::vector<Scalar>(sol->coords());
}

LieElement ExtendedAlgebra::sigma(const LieElement& x) const {
  std::vector<Scalar> coords = base_coordinates(x);
  Matrix m(*k_, ext_.ambient_dim(), ext_.ambient_dim());
  for (int i = 0; i < base_.dim(); ++i) {
    Scalar c = coords[i].sigma();
    if (c.is_zero()) continue;
    m = m + lift(base_.basis()[i]).matrix() * c;
  }
  return LieElement(std::move(m));
}

bool ExtendedAlgebra::is_sigma_fixed(const LieElement& x) const {
  for (const Scalar& c : base_coordinates(x))
    if (!(c.sigma() == c)) return false;
  return true;
}

Subspace radical_of_form(const ExtendedAlgebra& e) { return kernel(e.algebra().gram()); }

bool check_simple(const ExtendedAlgebra& e) { return is_simple(e.algebra()); }

}  // namespace extremal
