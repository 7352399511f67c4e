#pragma once

#include <optional>
#include <vector>

#include "extremal/geometry.hpp"
#include "extremal/lie.hpp"

namespace extremal {

/// Reflexive sesquilinear form h(v, w) = (v^tau)^T G w, linear in the second
/// coordinate, with h(v, w) = eps * h(w, v)^tau. The library constructs the
/// skew-Hermitian (eps = -1, tau = sigma) and alternating (tau = id) cases;
/// eps and tau are stored explicitly so that realize_form can report what it
/// finds rather than assume it.
class SesquiForm {
 public:
  SesquiForm() = default;
  /// General constructor; verifies the reflexivity law on all basis pairs.
  SesquiForm(const Field& f, Matrix gram, bool tau_is_involution, Scalar eps);
  /// Skew-Hermitian over a field with involution: G^(sigma T) = -G.
  static SesquiForm skew_hermitian(const Field& f, Matrix gram);
  /// Alternating bilinear: G^T = -G with zero diagonal.
  static SesquiForm alternating(const Field& f, Matrix gram);
  /// delta * identity with delta^sigma = -delta (delta = 1 in char 2).
  static SesquiForm standard_skew_hermitian(const Field& f, int n);
  /// Block form [[0, I], [-I, 0]]; n must be even.
  static SesquiForm standard_alternating(const Field& f, int n);

  const Field& field() const { return *field_; }
  int dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  bool tau_is_involution() const { return tau_inv_; }
  const Scalar& eps() const { return eps_; }

  Scalar tau(const Scalar& s) const { return tau_inv_ ? s.sigma() : s; }
  Scalar eval(const Vector& v, const Vector& w) const;
  /// The functional h(v, .) as a coordinate vector (= G^T v^tau).
  Functional functional_of(const Vector& v) const;
  bool is_isotropic(const Vector& v) const { return eval(v, v).is_zero(); }
  bool non_degenerate() const;

 private:
  const Field* field_ = nullptr;
  Matrix gram_;
  bool tau_inv_ = false;
  Scalar eps_;
};

/// Membership of every h(b_i, b_i) (and of the polarization closure of the
/// basis) in the trace set {lambda - lambda^sigma}. Requires a nonzero
/// isotropic vector to exist.
bool is_trace_valued(const SesquiForm& h);

/// Span of the isotropic vectors. Enumerates projective points over finite
/// fields; over Q(sqrt d) finds one isotropic vector by bounded height search
/// and extends hyperbolically. Trace-valued forms yield the full space.
Subspace isotropic_span(const SesquiForm& h,
                        std::int64_t bound = LieAlgebra::kDefaultEnumerationBound);

/// Whether <v, w> is a hyperbolic 2-space: spanned by two isotropic vectors
/// with nonzero pairing.
bool is_hyperbolic_2space(const SesquiForm& h, const Vector& v, const Vector& w);

/// Connectivity certificate for the graph Delta on anisotropic projective
/// points, adjacent when they span a hyperbolic 2-space.
struct DeltaCertificate {
  bool connected = false;
  int vertex_count = 0;
  std::vector<std::pair<int, int>> spanning_tree;
  std::vector<Vector> vertices;
};
DeltaCertificate delta_graph_connected(const SesquiForm& h,
                                       std::int64_t bound = LieAlgebra::kDefaultEnumerationBound);

/// Both routes to the special unitary (or symplectic) algebra: the subalgebra
/// generated by isotropic transvections v (x) h(v, .), and the solution space
/// of h(x v, w) + h(v, x w) = 0, tr x = 0 over the fixed field. spans_match
/// records whether they coincide (the trace-valued case).
struct UnitaryConstruction {
  LieAlgebra algebra;      // generated route
  Subspace solution_space; // in the algebra's vectorization coordinates
  bool spans_match = false;
};
UnitaryConstruction build_unitary(const SesquiForm& h);
UnitaryConstruction build_symplectic(const SesquiForm& f);

/// The n^2 spanning elements of the full unitary algebra built from a
/// diagonalizing basis: v_i (x) h(v_i, .), (v_j + v_l) (x) ..., and
/// (v_j + mu v_l) (x) ... with mu^sigma != mu. Certified independent and
/// spanning the solution space of h(x v, w) + h(v, x w) = 0 (dimension n^2).
std::vector<LieElement> spanning_reflection_basis(const SesquiForm& h);

/// The semilinear involution x -> -G^{-1} (x^tau)^T G whose fixed points are
/// the unitary algebra of the form.
LieElement form_involution(const SesquiForm& h, const LieElement& x);

/// Fixed-point algebra of form_involution inside sl(n, K), over the base
/// field (the solution-space route as a handle).
LieAlgebra unitary_fixed_algebra(const SesquiForm& h);

/// The point permutation that form_involution induces on an extremal
/// geometry built from the algebra (used to drive extract_polarity).
std::vector<int> induced_point_permutation(const GeometryGraph& g,
                                           const LieAlgebra& a,
                                           const SesquiForm& h);

/// Quasi-polarity extracted from an involutory geometry automorphism that
/// fixes a point and no line: maps the point of each p-bar clique to the
/// hyperplane of the H-bar clique it lands on.
struct PolaritySpec {
  const Field* field = nullptr;
  int n = 0;
  /// point representative -> functional cutting out the image hyperplane
  std::vector<std::pair<Vector, Functional>> point_to_hyperplane;
  std::vector<int> fixed_points;  // geometry indices fixed by the action
};
PolaritySpec extract_polarity(const GeometryGraph& g, const std::vector<int>& sigma_action);

/// Sesquilinear realization of a quasi-polarity: solves for the Gram matrix
/// (unique up to a scalar), scales so that v0 (x) h(v0, .) is fixed by the
/// induced involution, and reports the resulting (eps, tau) together with the
/// fixed-point algebra. Verifies the exp-stability of extremal classes and,
/// within the enumeration bound, that the fixed algebra's extremal elements
/// are exactly the isotropic classes.
struct FormRealization {
  SesquiForm form;
  LieAlgebra fixed_algebra;
  bool e_description_checked = false;
};
FormRealization realize_form(const PolaritySpec& p, const Vector& v0,
                             std::int64_t bound = LieAlgebra::kDefaultEnumerationBound);

}  // namespace extremal
