#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extremal/lie.hpp"

namespace extremal {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample dump on failure
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// First basis pair violating a Premet identity for the transvection, using
/// the closed-form extremal functional -phi(.(v)). When a structure-constant
/// table is supplied (flattened upper triangle of the coordinates of
/// [b_i, b_j] in the basis), gamma of bracket values is evaluated through it,
/// so a corrupted table is caught with a witness pair; the matrix identities
/// alone hold universally and cannot see such corruption.
std::optional<std::pair<int, int>> premet_witness(
    const Transvection& t, const std::vector<LieElement>& basis,
    const std::vector<std::vector<Scalar>>* bracket_table = nullptr);

/// The handle's structure constants as a flattened upper-triangle table.
std::vector<std::vector<Scalar>> structure_table(const LieAlgebra& a);

/// The per-construction identity suite: double-bracket closed form, Premet
/// identities, extremal-form symmetry and associativity, Jacobi, traceless
/// basis, exp automorphism and conjugation, transvection span, and (for
/// unitary or symplectic constructions) absence of extremal lines. Sampling
/// is seeded and capped, so a run is deterministic for a given seed.
VerifyReport verify_algebra(const LieAlgebra& a, std::uint64_t seed = 1,
                            int sample_cap = 200,
                            std::int64_t enum_bound = LieAlgebra::kDefaultEnumerationBound);

}  // namespace extremal
