#pragma once

#include <functional>
#include <vector>

#include "extremal/lie.hpp"

namespace extremal {

/// Index (U, Phi) of the directed set: subspaces of V and of Pi of the same
/// finite dimension, at least 3 and not divisible by the characteristic, with
/// ann_U(Phi) = {0}.
struct DirectedIndex {
  Subspace U;
  Subspace Phi;

  int dim() const { return U.dim(); }
  bool operator==(const DirectedIndex& o) const { return U == o.U && Phi == o.Phi; }
};

/// Validates the index invariants; throws std::invalid_argument on violation.
DirectedIndex make_index(Subspace u, Subspace phi);

/// (U, Phi) <= (U', Phi') iff U <= U' and Phi <= Phi'.
bool leq(const DirectedIndex& i, const DirectedIndex& j);

/// Smallest practical completion of the seeds to a valid index inside
/// (V, Pi): dual-basis completion with lexicographically-first choices and
/// the +1-dimension fix when the characteristic divides the dimension.
DirectedIndex complete_index(const Subspace& pi, const Subspace& u_seed,
                             const Subspace& phi_seed);

/// Upper bound of two indices in the directed set.
DirectedIndex join(const Subspace& pi, const DirectedIndex& i1, const DirectedIndex& i2);

/// sl(I): the subalgebra of fsl(V, Pi) generated by the transvections with
/// vector in U and functional in Phi; dimension (dim U)^2 - 1 with trivial
/// center (guaranteed by the divisibility invariant).
LieAlgebra sl_of_index(const DirectedIndex& i);

/// Containment witnesses for sampled elements (finite sums of transvections).
struct CoverWitness {
  std::vector<DirectedIndex> term_indices;
  DirectedIndex witness;
  bool contained = false;
};
struct CoverReport {
  std::vector<CoverWitness> witnesses;
  bool all_contained = true;
};
CoverReport local_cover_check(const Subspace& pi,
                              const std::vector<std::vector<Transvection>>& samples);

/// The discrepancy automorphism psi = iso_i o (iso_j | g_i)^-1 of sl(I):
/// certifies that psi is a scalar map and bracket-preserving, extracts the
/// scalar, and asserts lambda = 1 (the bracket argument lambda^2 = lambda).
Scalar compatibility_scalar(
    const LieAlgebra& g_i, const LieAlgebra& sl_i,
    const std::function<LieElement(const LieElement&)>& iso_i,
    const LieAlgebra& sl_j,
    const std::function<LieElement(const LieElement&)>& iso_j);

}  // namespace extremal
