#include "extremal/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace extremal {

namespace {

std::int64_t encode_pair(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return static_cast<std::int64_t>(i) * n + j;
}

struct VecLess {
  bool operator()(const Vector& a, const Vector& b) const { return a < b; }
};

struct FlagLess {
  bool operator()(const std::pair<Vector, Vector>& a,
                  const std::pair<Vector, Vector>& b) const {
    if (!(a.first == b.first)) return a.first < b.first;
    return a.second < b.second;
  }
};

struct CoordsLess {
  bool operator()(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](const Scalar& x, const Scalar& y) { return x < y; });
  }
};

/// All 2-dimensional subspaces of a given subspace, as canonical Subspaces.
std::vector<Subspace> two_dim_subspaces(const Subspace& s) {
  const Field& f = s.field();
  std::vector<Subspace> out;
  std::map<std::vector<Scalar>, int, CoordsLess> seen;
  if (s.dim() < 2) return out;
  // Span pairs of projective points in coordinate space of s.
  std::vector<std::vector<Scalar>> reps;
  {
    std::int64_t q = f.order();
    std::vector<std::int64_t> odo;
    for (int lead = s.dim() - 1; lead >= 0; --lead) {
      int tail = s.dim() - 1 - lead;
      odo.assign(tail, 0);
      for (;;) {
        std::vector<Scalar> c(s.dim(), f.zero());
        c[lead] = f.one();
        for (int t = 0; t < tail; ++t) c[lead + 1 + t] = f.element(odo[t]);
        reps.push_back(std::move(c));
        int t = 0;
        while (t < tail && ++odo[t] == q) odo[t++] = 0;
        if (t == tail) break;
      }
    }
  }
  auto to_ambient = [&](const std::vector<Scalar>& c) {
    Vector v(f, s.ambient());
    for (int k = 0; k < s.dim(); ++k)
      if (!c[k].is_zero()) v = v + s.basis_vector(k) * c[k];
    return v;
  };
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t j = i + 1; j < reps.size(); ++j) {
      Subspace plane = Subspace::span(f, s.ambient(), {to_ambient(reps[i]), to_ambient(reps[j])});
      if (plane.dim() != 2) continue;
      std::vector<Scalar> key;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < s.ambient(); ++c) key.push_back(plane.basis_matrix().at(r, c));
      if (seen.emplace(std::move(key), 1).second) out.push_back(plane);
    }
  }
  return out;
}

std::vector<Vector> subspace_projective_points(const Subspace& s) {
  const Field& f = s.field();
  std::vector<Vector> pts;
  if (!f.is_finite()) throw std::domain_error("projective enumeration needs a finite field");
  std::int64_t q = f.order();
  for (int lead = s.dim() - 1; lead >= 0; --lead) {
    int tail = s.dim() - 1 - lead;
    std::vector<std::int64_t> odo(tail, 0);
    for (;;) {
      Vector v = s.basis_vector(lead);
      for (int t = 0; t < tail; ++t) {
        Scalar c = f.element(odo[t]);
        if (!c.is_zero()) v = v + s.basis_vector(lead + 1 + t) * c;
      }
      pts.push_back(v.projective_normal_form());
      int t = 0;
      while (t < tail && ++odo[t] == q) odo[t++] = 0;
      if (t == tail) break;
    }
  }
  return pts;
}

}  // namespace

int GeometryGraph::line_through(int i, int j) const {
  std::int64_t key = encode_pair(i, j, point_count());
  auto it = std::lower_bound(pair_line_.begin(), pair_line_.end(),
                             std::make_pair(key, -1));
  if (it != pair_line_.end() && it->first == key) return it->second;
  return -1;
}

void GeometryGraph::finalize() {
  size_t n = points.size();
  collinear_.assign(n * n, 0);
  if (sl2_.size() != n * n) sl2_.assign(n * n, 0);
  lines_through_.assign(n, {});
  pair_line_.clear();
  for (size_t li = 0; li < lines.size(); ++li) {
    auto& line = lines[li];
    std::sort(line.begin(), line.end());
    for (size_t a = 0; a < line.size(); ++a) {
      lines_through_[line[a]].push_back(static_cast<int>(li));
      for (size_t b = a + 1; b < line.size(); ++b) {
        adj_set(collinear_, line[a], line[b]);
        pair_line_.emplace_back(encode_pair(line[a], line[b], static_cast<int>(n)),
                                static_cast<int>(li));
      }
    }
  }
  std::sort(pair_line_.begin(), pair_line_.end());
  for (size_t k = 1; k < pair_line_.size(); ++k) {
    if (pair_line_[k].first == pair_line_[k - 1].first)
      throw std::logic_error("two points lie on more than one line");
  }
}

GeometryGraph build_geometry(const LieAlgebra& a, EnumerationMode mode,
                             std::int64_t bound) {
  GeometryGraph g;
  g.label_field = &a.matrix_field();
  g.ambient_dim = a.ambient_dim();

  std::vector<ExtremalPoint> pts = enumerate_extremal(a, mode, bound);
  g.points.reserve(pts.size());
  for (auto& p : pts) {
    GeometryGraph::Point gp;
    gp.rep = std::move(p.rep);
    gp.coords = std::move(p.coords);
    gp.flag = std::move(p.flag);
    g.points.push_back(std::move(gp));
  }
  int n = g.point_count();

  // sl2 adjacency from the extremal form.
  g.sl2_.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!a.trace_form(*g.points[i].rep, *g.points[j].rep).is_zero())
        g.adj_set(g.sl2_, i, j);

  // Extremal lines: commuting case-(b) pairs, each closed to its 2-space.
  // For flag-labelled points the case-(b) criterion is sharing the point or
  // the hyperplane of the flag; otherwise test x+y for extremality.
  std::map<std::vector<Scalar>, int, CoordsLess> index_of;
  for (int i = 0; i < n; ++i) index_of.emplace(g.points[i].coords, i);

  const Field& cf = a.coeff_field();
  if (!cf.is_finite())
    throw std::domain_error("geometry construction needs a finite coefficient field");
  std::int64_t q = cf.order();

  std::map<std::vector<int>, int> line_ids;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& pi = g.points[i];
      const auto& pj = g.points[j];
      if (!bracket(*pi.rep, *pj.rep).is_zero()) continue;
      bool case_b;
      if (pi.flag && pj.flag) {
        case_b = pi.flag->point == pj.flag->point ||
                 pi.flag->functional == pj.flag->functional;
      } else {
        LieElement s = *pi.rep + *pj.rep;
        case_b = s.is_zero() || a.classify_extremal(s) != Extremality::not_extremal;
      }
      if (!case_b) continue;
      // Close the 2-space <x, y>: classes of y and x + c y.
      std::vector<int> line;
      line.push_back(j);
      for (std::int64_t ci = 0; ci < q; ++ci) {
        Scalar c = cf.element(ci);
        LieElement el = *pi.rep + a.scale(*pj.rep, c);
        std::vector<Scalar> coords;
        a.canonical_rep(el, &coords);
        auto it = index_of.find(coords);
        if (it == index_of.end())
          throw std::logic_error("line closure leaves the extremal point set");
        line.push_back(it->second);
      }
      std::sort(line.begin(), line.end());
      line.erase(std::unique(line.begin(), line.end()), line.end());
      if (static_cast<std::int64_t>(line.size()) != q + 1)
        throw std::logic_error("extremal line has unexpected size");
      line_ids.emplace(line, 1);
    }
  }
  for (const auto& [line, _] : line_ids) g.lines.push_back(line);
  g.finalize();
  return g;
}

GeometryGraph flag_model(int n, const Field& f, const Subspace& pi) {
  if (pi.ambient() != n || &pi.field() != &f)
    throw std::invalid_argument("pi must be a subspace of the dual of F^n");
  if (annihilator(pi, n).dim() != 0)
    throw std::invalid_argument("degenerate pi: its annihilator is nonzero");
  if (n < 2) throw std::invalid_argument("flag model needs dimension >= 2");

  GeometryGraph g;
  g.label_field = &f;
  g.ambient_dim = n;

  std::vector<Vector> vpoints = subspace_projective_points(Subspace::full(f, n));
  std::vector<Vector> phis = subspace_projective_points(pi);

  std::map<std::pair<Vector, Vector>, int, FlagLess> index_of;
  for (const Vector& v : vpoints) {
    for (const Vector& ph : phis) {
      if (!Functional(ph)(v).is_zero()) continue;
      GeometryGraph::Point p;
      p.flag = FlagLabel{v, Functional(ph)};
      index_of.emplace(std::make_pair(v, ph), static_cast<int>(g.points.size()));
      g.points.push_back(std::move(p));
    }
  }
  int npts = g.point_count();

  // sl2 adjacency: g(x, y) = -psi(v) phi(w) is nonzero iff both pairings are.
  g.sl2_.assign(static_cast<size_t>(npts) * npts, 0);
  for (int i = 0; i < npts; ++i)
    for (int j = i + 1; j < npts; ++j) {
      const auto& a = *g.points[i].flag;
      const auto& b = *g.points[j].flag;
      if (!a.functional(b.point).is_zero() && !b.functional(a.point).is_zero())
        g.adj_set(g.sl2_, i, j);
    }

  // Hyperplane pencils: a projective line l inside ker(phi).
  for (const Vector& ph : phis) {
    Matrix row(f, 1, n);
    for (int c = 0; c < n; ++c) row.at(0, c) = ph[c];
    Subspace ker_phi = kernel(row);
    for (const Subspace& l : two_dim_subspaces(ker_phi)) {
      std::vector<int> line;
      for (const Vector& p : subspace_projective_points(l))
        line.push_back(index_of.at({p, ph}));
      g.lines.push_back(std::move(line));
    }
  }
  // Point pencils: a 2-space of functionals annihilating a point.
  for (const Vector& v : vpoints) {
    Matrix cond(f, 1, pi.dim());
    for (int k = 0; k < pi.dim(); ++k)
      cond.at(0, k) = Functional(pi.basis_vector(k))(v);
    Subspace sols = kernel(cond);  // coordinates relative to the pi basis
    std::vector<Vector> ambient_basis;
    for (int r = 0; r < sols.dim(); ++r) {
      Vector ph(f, n);
      for (int k = 0; k < pi.dim(); ++k) {
        const Scalar& c = sols.basis_matrix().at(r, k);
        if (!c.is_zero()) ph = ph + pi.basis_vector(k) * c;
      }
      ambient_basis.push_back(ph);
    }
    Subspace pi_v = Subspace::span(f, n, ambient_basis);
    for (const Subspace& psi2 : two_dim_subspaces(pi_v)) {
      std::vector<int> line;
      for (const Vector& ph : subspace_projective_points(psi2))
        line.push_back(index_of.at({v, ph}));
      g.lines.push_back(std::move(line));
    }
  }
  g.finalize();
  return g;
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> point_signatures(const GeometryGraph& g) {
  std::vector<std::vector<int>> sig(g.point_count());
  for (int i = 0; i < g.point_count(); ++i) {
    std::vector<int> s;
    int cdeg = 0;
    for (int j = 0; j < g.point_count(); ++j)
      if (j != i && g.collinear(i, j)) ++cdeg;
    std::vector<int> lsizes;
    for (int li : g.lines_through_point(i))
      lsizes.push_back(static_cast<int>(g.lines[li].size()));
    std::sort(lsizes.begin(), lsizes.end());
    s.push_back(cdeg);
    s.insert(s.end(), lsizes.begin(), lsizes.end());
    sig[i] = std::move(s);
  }
  return sig;
}

bool verify_line_bijection(const GeometryGraph& g1, const GeometryGraph& g2,
                           const std::vector<int>& map) {
  std::map<std::vector<int>, int> lines2;
  for (size_t li = 0; li < g2.lines.size(); ++li) lines2.emplace(g2.lines[li], 1);
  std::map<std::vector<int>, int> used;
  for (const auto& line : g1.lines) {
    std::vector<int> img;
    img.reserve(line.size());
    for (int p : line) img.push_back(map[p]);
    std::sort(img.begin(), img.end());
    if (lines2.find(img) == lines2.end()) return false;
    if (!used.emplace(img, 1).second) return false;
  }
  return used.size() == g2.lines.size();
}

struct MatchState {
  const GeometryGraph* g1;
  const GeometryGraph* g2;
  const std::vector<std::vector<int>>* sig1;
  const std::vector<std::vector<int>>* sig2;
  std::vector<int> order;    // g1 points in assignment order
  std::vector<int> map;      // g1 -> g2 (-1 unset)
  std::vector<char> used;    // g2 points already taken
  std::int64_t nodes = 0;
  static constexpr std::int64_t kNodeBudget = 50'000'000;

  bool compatible(int u, int v) const {
    if ((*sig1)[u] != (*sig2)[v]) return false;
    for (int w = 0; w < g1->point_count(); ++w) {
      if (map[w] < 0 || w == u) continue;
      if (g1->collinear(u, w) != g2->collinear(v, map[w])) return false;
      int l1 = g1->line_through(u, w);
      int l2 = g2->line_through(v, map[w]);
      if ((l1 >= 0) != (l2 >= 0)) return false;
      if (l1 >= 0 && g1->lines[l1].size() != g2->lines[l2].size()) return false;
    }
    return true;
  }

  bool search(size_t k) {
    if (++nodes > kNodeBudget)
      throw std::runtime_error("isomorphism search exceeded its node budget");
    if (k == order.size()) return verify_line_bijection(*g1, *g2, map);
    int u = order[k];
    for (int v = 0; v < g2->point_count(); ++v) {
      if (used[v] || !compatible(u, v)) continue;
      map[u] = v;
      used[v] = 1;
      if (search(k + 1)) return true;
      map[u] = -1;
      used[v] = 0;
    }
    return false;
  }
};

/// Fast path: both geometries carry flag labels over the same field and the
/// label sets coincide; the label-identity map is then checked in full.
std::optional<std::vector<int>> label_identity_match(const GeometryGraph& g1,
                                                     const GeometryGraph& g2) {
  if (g1.label_field != g2.label_field || g1.ambient_dim != g2.ambient_dim)
    return std::nullopt;
  std::map<std::pair<Vector, Vector>, int, FlagLess> idx2;
  for (int i = 0; i < g2.point_count(); ++i) {
    if (!g2.points[i].flag) return std::nullopt;
    idx2.emplace(std::make_pair(g2.points[i].flag->point,
                                g2.points[i].flag->functional.coords()),
                 i);
  }
  std::vector<int> map(g1.point_count(), -1);
  for (int i = 0; i < g1.point_count(); ++i) {
    if (!g1.points[i].flag) return std::nullopt;
    auto it = idx2.find({g1.points[i].flag->point, g1.points[i].flag->functional.coords()});
    if (it == idx2.end()) return std::nullopt;
    map[i] = it->second;
  }
  if (!verify_line_bijection(g1, g2, map)) return std::nullopt;
  return map;
}

}  // namespace

std::optional<std::vector<int>> match_geometries(const GeometryGraph& g1,
                                                 const GeometryGraph& g2) {
  if (g1.point_count() != g2.point_count() || g1.line_count() != g2.line_count())
    return std::nullopt;

  auto sig1 = point_signatures(g1);
  auto sig2 = point_signatures(g2);
  {
    auto m1 = sig1, m2 = sig2;
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    if (m1 != m2) return std::nullopt;
  }

  if (g1.point_count() == g2.point_count()) {
    if (auto fast = label_identity_match(g1, g2)) return fast;
  }

  MatchState st;
  st.g1 = &g1;
  st.g2 = &g2;
  st.sig1 = &sig1;
  st.sig2 = &sig2;
  st.map.assign(g1.point_count(), -1);
  st.used.assign(g2.point_count(), 0);

  // BFS order over the collinearity graph keeps candidates constrained.
  std::vector<char> seen(g1.point_count(), 0);
  for (int start = 0; start < g1.point_count(); ++start) {
    if (seen[start]) continue;
    std::vector<int> queue{start};
    seen[start] = 1;
    for (size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      st.order.push_back(u);
      for (int w = 0; w < g1.point_count(); ++w) {
        if (!seen[w] && g1.collinear(u, w)) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  if (st.search(0)) return st.map;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cliques and the two families
// ---------------------------------------------------------------------------

std::vector<Clique> maximal_cliques(const GeometryGraph& g) {
  int n = g.point_count();
  std::map<std::vector<int>, int> seen;
  std::vector<Clique> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.collinear(i, j)) continue;
      std::vector<int> grown{i, j};
      for (int w = 0; w < n; ++w) {
        if (w == i || w == j) continue;
        bool adj_all = true;
        for (int m : grown)
          if (!g.collinear(w, m)) {
            adj_all = false;
            break;
          }
        if (adj_all) grown.push_back(w);
      }
      std::sort(grown.begin(), grown.end());
      // Verify it is a clique and maximal.
      for (size_t a = 0; a < grown.size(); ++a)
        for (size_t b = a + 1; b < grown.size(); ++b)
          if (!g.collinear(grown[a], grown[b]))
            throw std::logic_error("greedy clique growth produced a non-clique");
      for (int w = 0; w < n; ++w) {
        if (std::binary_search(grown.begin(), grown.end(), w)) continue;
        bool adj_all = true;
        for (int m : grown)
          if (!g.collinear(w, m)) {
            adj_all = false;
            break;
          }
        if (adj_all)
          throw std::domain_error("geometry not of flag type: edge extends to two cliques");
      }
      if (seen.emplace(grown, 1).second) {
        Clique c;
        c.members = grown;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

CliquePartition classify_partition(const GeometryGraph& g,
                                   const std::vector<Clique>& cliques) {
  int m = static_cast<int>(cliques.size());
  if (m == 0) throw std::domain_error("no cliques to classify");
  auto meets = [&](int a, int b) {
    const auto& x = cliques[a].members;
    const auto& y = cliques[b].members;
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return true;
      if (x[i] < y[j]) ++i;
      else ++j;
    }
    return false;
  };
  // Same part iff a third clique meets both.
  std::vector<int> part(m, -1);
  std::vector<int> stack;
  int parts = 0;
  for (int s = 0; s < m; ++s) {
    if (part[s] >= 0) continue;
    if (parts == 2)
      throw std::domain_error("geometry not of flag type: more than two clique families");
    part[s] = parts;
    stack.push_back(s);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < m; ++b) {
        if (part[b] >= 0) continue;
        bool same = false;
        for (int c = 0; c < m && !same; ++c) {
          if (c == a || c == b) continue;
          if (meets(a, c) && meets(b, c)) same = true;
        }
        if (same) {
          part[b] = part[a];
          stack.push_back(b);
        }
      }
    }
    ++parts;
  }
  if (parts != 2)
    throw std::domain_error("geometry not of flag type: clique families != 2");

  // Each family must partition the point set.
  for (int p = 0; p < 2; ++p) {
    std::vector<int> cover(g.point_count(), 0);
    for (int a = 0; a < m; ++a) {
      if (part[a] != p) continue;
      for (int x : cliques[a].members) ++cover[x];
    }
    for (int x = 0; x < g.point_count(); ++x)
      if (cover[x] != 1)
        throw std::domain_error("clique family does not partition the point set");
  }

  // Orient using the flag labels when available: the p-bar family has all
  // members on a common point.
  int point_part = 0;
  bool oriented = false;
  for (int a = 0; a < m && !oriented; ++a) {
    const auto& mem = cliques[a].members;
    if (mem.size() < 2) continue;
    const auto& f0 = g.points[mem[0]].flag;
    const auto& f1 = g.points[mem[1]].flag;
    if (!f0 || !f1) break;
    point_part = (f0->point == f1->point) ? part[a] : 1 - part[a];
    oriented = true;
  }

  CliquePartition out;
  for (int a = 0; a < m; ++a) {
    Clique c = cliques[a];
    if (part[a] == point_part) {
      c.kind = CliqueKind::point_type;
      out.point_cliques.push_back(std::move(c));
    } else {
      c.kind = CliqueKind::hyperplane_type;
      out.hyperplane_cliques.push_back(std::move(c));
    }
  }
  return out;
}

bool incidence_via_cliques(const Clique& p_bar, const Clique& h_bar) {
  if (p_bar.kind == CliqueKind::unassigned || h_bar.kind == CliqueKind::unassigned)
    throw std::invalid_argument("cliques must be classified first");
  if (p_bar.kind == h_bar.kind)
    throw std::invalid_argument("incidence needs cliques from opposite families");
  size_t i = 0, j = 0;
  const auto& x = p_bar.members;
  const auto& y = h_bar.members;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return true;
    if (x[i] < y[j]) ++i;
    else ++j;
  }
  return false;
}

bool sl2_connected(const GeometryGraph& g) {
  int n = g.point_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (size_t h = 0; h < queue.size(); ++h) {
    for (int w = 0; w < n; ++w) {
      if (!seen[w] && g.sl2_adjacent(queue[h], w)) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace extremal
