#pragma once

#include "extremal/lie.hpp"

namespace extremal {

/// The algebra tensored with a quadratic Galois extension of its coefficient
/// field: the same basis matrices with scalars extended, together with the
/// induced sigma-map (coefficient conjugation in basis coordinates), whose
/// fixed set is the base algebra.
class ExtendedAlgebra {
 public:
  const LieAlgebra& base() const { return base_; }
  const LieAlgebra& algebra() const { return ext_; }
  const Field& extension_field() const { return *k_; }

  /// Coefficient conjugation: (x (x) lambda)^sigma = x (x) lambda^sigma.
  LieElement sigma(const LieElement& x) const;
  /// Whether sigma fixes x, i.e. all basis coordinates lie in the base field.
  bool is_sigma_fixed(const LieElement& x) const;
  /// Lift of a base-algebra element into the extended algebra.
  LieElement lift(const LieElement& x) const;
  /// Coordinates with respect to the lifted base basis (the tensor frame).
  std::vector<Scalar> base_coordinates(const LieElement& x) const;

 private:
  friend ExtendedAlgebra extend(const LieAlgebra& a, const Field& k);
  LieAlgebra base_;
  LieAlgebra ext_;
  const Field* k_ = nullptr;
  bool lifted_entries_ = false;  // base matrices were lifted entrywise
};

/// Tensors the algebra with a quadratic Galois extension K of its coefficient
/// field. The basis is reused (structure constants are field-independent);
/// K-independence of the basis is verified.
ExtendedAlgebra extend(const LieAlgebra& a, const Field& k);

/// Kernel of the Gram matrix of the extremal form on the extended basis.
Subspace radical_of_form(const ExtendedAlgebra& e);

/// Ideal-closure simplicity check on the extended algebra.
bool check_simple(const ExtendedAlgebra& e);

}  // namespace extremal
