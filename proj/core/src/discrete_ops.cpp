#include "subhx/discrete_ops.hpp"

#include <vector>

namespace subhx {

namespace {

struct RowLayout {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> row_edges;          // global edge of each row
  const std::vector<Index>* column_of;   // global vertex -> column (or -1)
};

RowLayout layout(Variant variant, const BoxMesh& mesh, const DofSpaces& spaces) {
  RowLayout l;
  if (variant == Variant::Volume) {
    l.rows = mesh.num_edges();
    l.cols = mesh.num_vertices();
    l.row_edges.resize(static_cast<std::size_t>(l.rows));
    for (Index e = 0; e < l.rows; ++e) l.row_edges[static_cast<std::size_t>(e)] = e;
    l.column_of = nullptr;
  } else {
    l.rows = spaces.edge.skeleton.dim;
    l.cols = spaces.scalar.skeleton.dim;
    l.row_edges = spaces.edge.skeleton_to_global;
    l.column_of = &spaces.scalar.global_to_skeleton;
  }
  return l;
}

Index column(const RowLayout& l, Index vertex) {
  if (!l.column_of) return vertex;
  const Index c = (*l.column_of)[static_cast<std::size_t>(vertex)];
  if (c < 0) throw AssemblyError("skeleton edge endpoint not on the skeleton");
  return c;
}

}  // namespace

GradientMap build_gradient(Variant variant, const BoxMesh& mesh, const DofSpaces& spaces) {
  const RowLayout l = layout(variant, mesh, spaces);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(2 * l.rows));
  for (Index r = 0; r < l.rows; ++r) {
    const auto& e = mesh.edges[static_cast<std::size_t>(l.row_edges[static_cast<std::size_t>(r)])];
    trips.emplace_back(r, column(l, e[0]), -1.0);
    trips.emplace_back(r, column(l, e[1]), 1.0);
  }
  GradientMap g{variant, SparseMatrix(l.rows, l.cols)};
  g.matrix.setFromTriplets(trips.begin(), trips.end());
  return g;
}

NodalInterpMap build_nodal_interp(Variant variant, int direction, const BoxMesh& mesh, const DofSpaces& spaces) {
  if (direction < 0 || direction > 2) throw ConfigError("interpolation direction must be 0, 1 or 2");
  const RowLayout l = layout(variant, mesh, spaces);
  std::vector<Eigen::Triplet<double>> trips;
  for (Index r = 0; r < l.rows; ++r) {
    const auto& e = mesh.edges[static_cast<std::size_t>(l.row_edges[static_cast<std::size_t>(r)])];
    const double half =
        0.5 * (mesh.vertex_coords[static_cast<std::size_t>(e[1])][direction] - mesh.vertex_coords[static_cast<std::size_t>(e[0])][direction]);
    if (half == 0.0) continue;
    trips.emplace_back(r, column(l, e[0]), half);
    trips.emplace_back(r, column(l, e[1]), half);
  }
  NodalInterpMap m{variant, direction, SparseMatrix(l.rows, l.cols)};
  m.matrix.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace subhx
