#include "extremal/verify.hpp"

#include <sstream>

#include "extremal/geometry.hpp"

namespace extremal {

namespace {

/// Deterministic generator for the seeded samples.
class Splitmix {
 public:
  explicit Splitmix(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % n); }

 private:
  std::uint64_t s_;
};

std::string pair_str(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

std::vector<std::vector<Scalar>> structure_table(const LieAlgebra& a) {
  std::vector<std::vector<Scalar>> table;
  int d = a.dim();
  table.reserve(static_cast<size_t>(d) * (d - 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) table.push_back(a.bracket_coords(i, j));
  return table;
}

std::optional<std::pair<int, int>> premet_witness(
    const Transvection& t, const std::vector<LieElement>& basis,
    const std::vector<std::vector<Scalar>>* bracket_table) {
  const LieElement x = t.element();
  const Field& f = x.field();
  int d = static_cast<int>(basis.size());
  auto gamma = [&](const LieElement& y) { return -t.phi()(y.matrix().apply(t.v())); };
  std::vector<LieElement> xb;
  xb.reserve(d);
  for (int i = 0; i < d; ++i) xb.push_back(bracket(x, basis[i]));
  std::vector<Scalar> g(d, f.zero());
  for (int i = 0; i < d; ++i) g[i] = gamma(basis[i]);
  auto table_gamma = [&](int i, int j) {
    if (i == j) return f.zero();
    bool flip = i > j;
    if (flip) std::swap(i, j);
    size_t idx = static_cast<size_t>(i) * d - static_cast<size_t>(i) * (i + 1) / 2 +
                 (j - i - 1);
    const auto& coords = (*bracket_table)[idx];
    Scalar acc = f.zero();
    for (int k = 0; k < d; ++k) {
      if (coords[k].is_zero()) continue;
      Scalar c = coords[k].field_ptr() == &f ? coords[k] : coords[k].lift_to(f);
      acc += c * g[k];
    }
    return flip ? -acc : acc;
  };
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Scalar gbr = bracket_table != nullptr ? table_gamma(i, j)
                                            : gamma(bracket(basis[i], basis[j]));
      if (i < j) {
        LieElement lhs1 = bracket(xb[i], xb[j]);
        LieElement rhs1 = x * gbr + xb[i] * g[j] - xb[j] * g[i];
        if (!(lhs1 == rhs1)) return std::make_pair(i, j);
      }
      LieElement lhs2 = bracket(x, bracket(basis[i], xb[j]));
      LieElement rhs2 = x * gbr - xb[i] * g[j] - xb[j] * g[i];
      if (!(lhs2 == rhs2)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

VerifyReport verify_algebra(const LieAlgebra& a, std::uint64_t seed, int sample_cap,
                            std::int64_t enum_bound) {
  VerifyReport report;
  Splitmix rng(seed ? seed : 1);
  const Field& cf = a.coeff_field();
  int d = a.dim();
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    report.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  };

  // Transvection classes from the parametric route, sampled down to the cap.
  std::vector<ExtremalPoint> classes;
  bool have_classes = true;
  try {
    classes = enumerate_extremal(a, EnumerationMode::parametric, enum_bound);
  } catch (const std::exception&) {
    have_classes = false;
  }
  if (have_classes && static_cast<int>(classes.size()) > sample_cap) {
    std::vector<ExtremalPoint> sampled;
    for (int k = 0; k < sample_cap; ++k)
      sampled.push_back(classes[rng.below(classes.size())]);
    classes = std::move(sampled);
  }

  if (have_classes && !classes.empty()) {
    // Eq-(1) closed form: [t,[t,y]] = -2 phi(y(v)) t on all basis elements.
    bool ok = true;
    std::string detail;
    for (const auto& p : classes) {
      const auto& term = p.rep.decomposition()->front();
      for (int i = 0; i < d && ok; ++i) {
        LieElement dbl = bracket(p.rep, bracket(p.rep, a.basis()[i]));
        Scalar coeff = a.matrix_field().from_integer(-2) *
                       term.phi(a.basis()[i].matrix().apply(term.v));
        if (!(dbl == p.rep * coeff)) {
          ok = false;
          detail = "class " + term.v.to_string() + " vs basis " + std::to_string(i);
        }
      }
      if (!ok) break;
    }
    add("eq1-double-bracket", ok, detail);

    // Premet identities, with gamma of brackets routed through the handle's
    // structure constants so that a corrupted table would be caught.
    ok = true;
    detail.clear();
    std::vector<std::vector<Scalar>> table = structure_table(a);
    for (const auto& p : classes) {
      const auto& term = p.rep.decomposition()->front();
      Transvection t(term.v, term.phi);
      if (auto w = premet_witness(t, a.basis(), &table)) {
        ok = false;
        detail = "witness pair " + pair_str(w->first, w->second) + " for class " +
                 term.v.to_string();
        break;
      }
    }
    add("premet-identities", ok, detail);

    // Full extremality classification.
    ok = true;
    detail.clear();
    for (const auto& p : classes) {
      if (a.classify_extremal(p.rep) != Extremality::pure_extremal) {
        ok = false;
        detail = "class not pure extremal";
        break;
      }
    }
    add("extremal-classification", ok, detail);

    // exp is an automorphism and matches conjugation by I + lambda X.
    ok = true;
    detail.clear();
    for (int trial = 0; trial < 8 && ok; ++trial) {
      const auto& p = classes[rng.below(classes.size())];
      Scalar lambda =
          cf.is_finite() ? cf.element(rng.below(cf.order())) : cf.from_integer(rng.below(7) - 3);
      ExpMap e(a, p.rep, lambda);
      Matrix x = p.rep.matrix();
      Matrix id = Matrix::identity(a.matrix_field(), a.ambient_dim());
      Scalar lam_m = &cf == &a.matrix_field() ? lambda : lambda.lift_to(a.matrix_field());
      Matrix plus = id + x * lam_m;
      Matrix minus = id - x * lam_m;
      for (int q = 0; q < 30 && ok; ++q) {
        int i = static_cast<int>(rng.below(d)), j = static_cast<int>(rng.below(d));
        if (!(e(bracket(a.basis()[i], a.basis()[j])) ==
              bracket(e(a.basis()[i]), e(a.basis()[j])))) {
          ok = false;
          detail = "bracket not preserved at basis pair " + pair_str(i, j);
        }
        if (ok && !(e(a.basis()[i]).matrix() == plus * a.basis()[i].matrix() * minus)) {
          ok = false;
          detail = "conjugation mismatch at basis " + std::to_string(i);
        }
      }
    }
    add("exp-automorphism", ok, detail);

    // The transvection classes span the algebra.
    SpanBuilder sb(cf, a.vec_len());
    for (const auto& p : classes) sb.insert(a.vectorize(p.rep.matrix()));
    bool spans = sb.dim() == d;
    if (static_cast<int>(classes.size()) == sample_cap && !spans) {
      // the sample might be short; retry with the full class list
      try {
        sb = SpanBuilder(cf, a.vec_len());
        for (const auto& p : enumerate_extremal(a, EnumerationMode::parametric, enum_bound))
          sb.insert(a.vectorize(p.rep.matrix()));
        spans = sb.dim() == d;
      } catch (const std::exception&) {
      }
    }
    add("transvection-span", spans,
        spans ? "" : "span dimension " + std::to_string(sb.dim()) + " of " + std::to_string(d));
  }

  // Extremal-form symmetry on all basis pairs.
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j)
        if (!(a.trace_form(a.basis()[i], a.basis()[j]) ==
              a.trace_form(a.basis()[j], a.basis()[i]))) {
          ok = false;
          detail = "pair " + pair_str(i, j);
        }
    add("gram-symmetry", ok, detail);
  }

  // Associativity and Jacobi on sampled triples.
  {
    bool assoc = true, jacobi = true;
    std::string da, dj;
    std::int64_t total = static_cast<std::int64_t>(d) * d * d;
    std::int64_t trials = total <= 4096 ? total : 4096;
    for (std::int64_t k = 0; k < trials; ++k) {
      int i, j, l;
      if (total <= 4096) {
        i = static_cast<int>(k / (d * d));
        j = static_cast<int>((k / d) % d);
        l = static_cast<int>(k % d);
      } else {
        i = static_cast<int>(rng.below(d));
        j = static_cast<int>(rng.below(d));
        l = static_cast<int>(rng.below(d));
      }
      const LieElement &x = a.basis()[i], &y = a.basis()[j], &z = a.basis()[l];
      if (assoc && !(a.trace_form(bracket(x, y), z) == a.trace_form(x, bracket(y, z)))) {
        assoc = false;
        da = "triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
             std::to_string(l) + ")";
      }
      if (jacobi) {
        LieElement sum = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                         bracket(z, bracket(x, y));
        if (!sum.is_zero()) {
          jacobi = false;
          dj = "triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
               std::to_string(l) + ")";
        }
      }
    }
    add("gram-associativity", assoc, da);
    add("jacobi-identity", jacobi, dj);
  }

  // Traceless basis.
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < d; ++i)
      if (!a.basis()[i].trace().is_zero()) {
        ok = false;
        detail = "basis " + std::to_string(i);
        break;
      }
    add("traceless-basis", ok, detail);
  }

  // Unitary and symplectic geometries carry no extremal lines.
  if (a.kind() == LieAlgebra::Kind::unitary || a.kind() == LieAlgebra::Kind::symplectic) {
    try {
      GeometryGraph g = build_geometry(a, EnumerationMode::parametric, enum_bound);
      add("no-extremal-lines", g.line_count() == 0,
          g.line_count() == 0 ? "" : std::to_string(g.line_count()) + " lines found");
    } catch (const std::exception& e) {
      add("no-extremal-lines", false, std::string("geometry construction failed: ") + e.what());
    }
  }
  return report;
}

}  // namespace extremal
