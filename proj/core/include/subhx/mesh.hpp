#pragma once

#include <array>
#include <vector>

#include "subhx/types.hpp"

namespace subhx {

using Tet = std::array<Index, 4>;
using Edge = std::array<Index, 2>;
using Face = std::array<Index, 3>;

/// Local edge numbering inside a tetrahedron: edge k joins local vertices
/// kTetEdgeVertices[k][0] and kTetEdgeVertices[k][1].
inline constexpr std::array<std::array<int, 2>, 6> kTetEdgeVertices = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Structured Kuhn triangulation of the unit box, partitioned into a grid of
/// box-shaped subdomains. Immutable after construction.
struct BoxMesh {
  Grid3 cells_per_axis;
  Grid3 subdomain_grid;
  std::vector<Point3> vertex_coords;
  std::vector<Tet> tets;
  std::vector<int> tet_subdomain;
  /// Sorted lexicographically, a < b.
  std::vector<Edge> edges;
  /// Global edge index of each local tet edge (see kTetEdgeVertices).
  std::vector<std::array<Index, 6>> tet_edges;
  /// Tets of each subdomain, ascending.
  std::vector<std::vector<Index>> subdomain_tets;

  [[nodiscard]] Index num_vertices() const { return static_cast<Index>(vertex_coords.size()); }
  [[nodiscard]] Index num_tets() const { return static_cast<Index>(tets.size()); }
  [[nodiscard]] Index num_edges() const { return static_cast<Index>(edges.size()); }
  [[nodiscard]] int num_subdomains() const { return static_cast<int>(subdomain_tets.size()); }

  [[nodiscard]] double signed_volume(Index tet) const;
  [[nodiscard]] std::array<Point3, 4> tet_coords(Index tet) const;
  /// Index of edge (a,b) in `edges`, or -1. Order of a, b is irrelevant.
  [[nodiscard]] Index find_edge(Index a, Index b) const;
  [[nodiscard]] Index vertex_index(int i, int j, int k) const;
};

struct SkeletonIndex {
  std::vector<Index> skeleton_vertices;
  std::vector<Index> skeleton_edges;
  std::vector<std::vector<Index>> per_subdomain_boundary_vertices;
  std::vector<std::vector<Index>> per_subdomain_boundary_edges;
  /// Boundary faces of each subdomain (sorted vertex triples, ascending).
  std::vector<std::vector<Face>> per_subdomain_boundary_faces;
  /// deg(x) for each entry of skeleton_vertices (same order).
  std::vector<int> vertex_degree;

  /// deg of global vertex v; 0 when v is not on the skeleton.
  [[nodiscard]] int degree_of(Index v) const;
};

/// Throws ConfigError naming the axis when a subdomain count does not divide
/// the matching cell count.
BoxMesh build_box_mesh(Grid3 cells_per_axis, Grid3 subdomain_grid);

SkeletonIndex extract_skeleton(const BoxMesh& mesh);

double signed_volume(const std::array<Point3, 4>& p);

}  // namespace subhx
