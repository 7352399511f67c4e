#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "extremal/lie.hpp"

namespace extremal {

enum class CliqueKind { unassigned, point_type, hyperplane_type };

/// Maximal clique of the collinearity graph. After classification the kind
/// records whether it is a p-bar (all flags on one point) or an H-bar (all
/// flags in one hyperplane).
struct Clique {
  CliqueKind kind = CliqueKind::unassigned;
  std::vector<int> members;  // sorted point indices
};

struct CliquePartition {
  std::vector<Clique> point_cliques;       // the p-bar family
  std::vector<Clique> hyperplane_cliques;  // the H-bar family
};

/// Point-line geometry on extremal points: extremal lines, the collinearity
/// graph, and the sl2 graph (adjacency where the extremal form is nonzero).
class GeometryGraph {
 public:
  struct Point {
    std::optional<LieElement> rep;   // canonical algebra representative
    std::vector<Scalar> coords;      // basis coordinates (algebra route)
    std::optional<FlagLabel> flag;   // (p, phi) label when parametric
  };

  const Field* label_field = nullptr;  // field of the flag labels
  int ambient_dim = 0;                 // dimension of V
  std::vector<Point> points;
  std::vector<std::vector<int>> lines;  // sorted point index sets

  int point_count() const { return static_cast<int>(points.size()); }
  int line_count() const { return static_cast<int>(lines.size()); }
  bool collinear(int i, int j) const { return adj_get(collinear_, i, j); }
  bool sl2_adjacent(int i, int j) const { return adj_get(sl2_, i, j); }
  /// Index of the unique line through two collinear points, or -1.
  int line_through(int i, int j) const;
  const std::vector<int>& lines_through_point(int i) const { return lines_through_[i]; }

  /// Called once after points/lines are filled in.
  void finalize();

 private:
  friend GeometryGraph build_geometry(const LieAlgebra&, EnumerationMode, std::int64_t);
  friend GeometryGraph flag_model(int, const Field&, const Subspace&);
  bool adj_get(const std::vector<std::uint8_t>& a, int i, int j) const {
    return a[static_cast<size_t>(i) * points.size() + j] != 0;
  }
  void adj_set(std::vector<std::uint8_t>& a, int i, int j) {
    a[static_cast<size_t>(i) * points.size() + j] = 1;
    a[static_cast<size_t>(j) * points.size() + i] = 1;
  }

  std::vector<std::uint8_t> collinear_;
  std::vector<std::uint8_t> sl2_;
  std::vector<std::vector<int>> lines_through_;
  std::vector<std::pair<std::int64_t, int>> pair_line_;  // encoded pair -> line
};

/// Extremal geometry of an algebra: points from enumerate_extremal, lines
/// from commuting case-(b) pairs closed to full 2-spaces.
GeometryGraph build_geometry(const LieAlgebra& a, EnumerationMode mode,
                             std::int64_t bound = LieAlgebra::kDefaultEnumerationBound);

/// The flag geometry of incident point-hyperplane pairs (p, ker phi) with
/// phi in pi, together with its two pencil families of lines.
GeometryGraph flag_model(int n, const Field& f, const Subspace& pi);

/// Point bijection preserving lines and non-lines, found by backtracking over
/// degree and line-type invariants; nullopt when none exists.
std::optional<std::vector<int>> match_geometries(const GeometryGraph& g1,
                                                 const GeometryGraph& g2);

/// Maximal cliques of the collinearity graph containing at least one edge,
/// grown greedily from edges and verified maximal. Fails when some edge
/// extends to more than one maximal clique (geometry not of flag type).
std::vector<Clique> maximal_cliques(const GeometryGraph& g);

/// Splits the maximal cliques into the two families using the third-clique
/// criterion, verifying that each family partitions the point set.
CliquePartition classify_partition(const GeometryGraph& g, const std::vector<Clique>& cliques);

/// p is incident with H iff the corresponding cliques meet.
bool incidence_via_cliques(const Clique& p_bar, const Clique& h_bar);

/// Connectivity of the sl2 graph.
bool sl2_connected(const GeometryGraph& g);

}  // namespace extremal
