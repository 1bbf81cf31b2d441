#include "subhx/mesh.hpp"

#include <algorithm>
#include <map>

namespace subhx {

std::string to_string(const Grid3& g) {
  return std::to_string(g.x) + "," + std::to_string(g.y) + "," + std::to_string(g.z);
}

double signed_volume(const std::array<Point3, 4>& p) {
  const double a[3] = {p[1][0] - p[0][0], p[1][1] - p[0][1], p[1][2] - p[0][2]};
  const double b[3] = {p[2][0] - p[0][0], p[2][1] - p[0][1], p[2][2] - p[0][2]};
  const double c[3] = {p[3][0] - p[0][0], p[3][1] - p[0][1], p[3][2] - p[0][2]};
  const double det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                     a[2] * (b[0] * c[1] - b[1] * c[0]);
  return det / 6.0;
}

double BoxMesh::signed_volume(Index tet) const { return subhx::signed_volume(tet_coords(tet)); }

std::array<Point3, 4> BoxMesh::tet_coords(Index tet) const {
  const auto& t = tets[static_cast<std::size_t>(tet)];
  return {vertex_coords[t[0]], vertex_coords[t[1]], vertex_coords[t[2]], vertex_coords[t[3]]};
}

Index BoxMesh::find_edge(Index a, Index b) const {
  const Edge key = {std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<Index>(it - edges.begin());
}

Index BoxMesh::vertex_index(int i, int j, int k) const {
  const Index nx1 = cells_per_axis.x + 1;
  const Index ny1 = cells_per_axis.y + 1;
  return i + nx1 * (j + ny1 * k);
}

BoxMesh build_box_mesh(Grid3 cells, Grid3 subs) {
  static constexpr const char* kAxis[3] = {"x", "y", "z"};
  for (int axis = 0; axis < 3; ++axis) {
    if (cells[axis] <= 0 || subs[axis] <= 0) {
      throw ConfigError(std::string("non-positive grid size along axis ") + kAxis[axis]);
    }
    if (cells[axis] % subs[axis] != 0) {
      throw ConfigError(std::string("subdomain count ") + std::to_string(subs[axis]) +
                        " does not divide cell count " + std::to_string(cells[axis]) +
                        " along axis " + kAxis[axis]);
    }
  }

  BoxMesh mesh;
  mesh.cells_per_axis = cells;
  mesh.subdomain_grid = subs;

  for (int k = 0; k <= cells.z; ++k)
    for (int j = 0; j <= cells.y; ++j)
      for (int i = 0; i <= cells.x; ++i)
        mesh.vertex_coords.push_back({static_cast<double>(i) / cells.x,
                                      static_cast<double>(j) / cells.y,
                                      static_cast<double>(k) / cells.z});

  // Kuhn split: one tet per monotone lattice path from the lower to the upper
  // cell corner. All cells share the body diagonal direction, so faces conform.
  static constexpr std::array<std::array<int, 3>, 6> kPaths = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  const int cells_per_sub[3] = {cells.x / subs.x, cells.y / subs.y, cells.z / subs.z};
  mesh.subdomain_tets.resize(static_cast<std::size_t>(subs.count()));

  for (int k = 0; k < cells.z; ++k)
    for (int j = 0; j < cells.y; ++j)
      for (int i = 0; i < cells.x; ++i) {
        const int sub = (i / cells_per_sub[0]) +
                        subs.x * ((j / cells_per_sub[1]) + subs.y * (k / cells_per_sub[2]));
        for (const auto& path : kPaths) {
          int c[3] = {i, j, k};
          Tet t;
          t[0] = mesh.vertex_index(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[path[s]];
            t[s + 1] = mesh.vertex_index(c[0], c[1], c[2]);
          }
          const std::array<Point3, 4> p = {mesh.vertex_coords[t[0]], mesh.vertex_coords[t[1]],
                                           mesh.vertex_coords[t[2]], mesh.vertex_coords[t[3]]};
          if (signed_volume(p) < 0.0) std::swap(t[2], t[3]);
          mesh.subdomain_tets[static_cast<std::size_t>(sub)].push_back(mesh.num_tets());
          mesh.tets.push_back(t);
          mesh.tet_subdomain.push_back(sub);
        }
      }

  mesh.edges.reserve(mesh.tets.size() * 2);
  for (const auto& t : mesh.tets)
    for (const auto& le : kTetEdgeVertices)
      mesh.edges.push_back({std::min(t[le[0]], t[le[1]]), std::max(t[le[0]], t[le[1]])});
  std::sort(mesh.edges.begin(), mesh.edges.end());
  mesh.edges.erase(std::unique(mesh.edges.begin(), mesh.edges.end()), mesh.edges.end());

  mesh.tet_edges.reserve(mesh.tets.size());
  for (const auto& t : mesh.tets) {
    std::array<Index, 6> te{};
    for (int e = 0; e < 6; ++e) te[e] = mesh.find_edge(t[kTetEdgeVertices[e][0]], t[kTetEdgeVertices[e][1]]);
    mesh.tet_edges.push_back(te);
  }
  return mesh;
}

int SkeletonIndex::degree_of(Index v) const {
  auto it = std::lower_bound(skeleton_vertices.begin(), skeleton_vertices.end(), v);
  if (it == skeleton_vertices.end() || *it != v) return 0;
  return vertex_degree[static_cast<std::size_t>(it - skeleton_vertices.begin())];
}

namespace {

void sort_unique(std::vector<Index>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SkeletonIndex extract_skeleton(const BoxMesh& mesh) {
  static constexpr std::array<std::array<int, 3>, 4> kTetFaces = {
      {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

  const int num_sub = mesh.num_subdomains();
  SkeletonIndex skel;
  skel.per_subdomain_boundary_vertices.resize(static_cast<std::size_t>(num_sub));
  skel.per_subdomain_boundary_edges.resize(static_cast<std::size_t>(num_sub));
  skel.per_subdomain_boundary_faces.resize(static_cast<std::size_t>(num_sub));

  std::vector<int> degree(static_cast<std::size_t>(mesh.num_vertices()), 0);

  for (int j = 0; j < num_sub; ++j) {
    // A face of Ω_j is on Γ_j iff exactly one tet of Ω_j carries it.
    std::map<Face, int> face_count;
    for (Index t : mesh.subdomain_tets[static_cast<std::size_t>(j)]) {
      const auto& tet = mesh.tets[static_cast<std::size_t>(t)];
      for (const auto& lf : kTetFaces) {
        Face f = {tet[lf[0]], tet[lf[1]], tet[lf[2]]};
        std::sort(f.begin(), f.end());
        ++face_count[f];
      }
    }
    auto& faces = skel.per_subdomain_boundary_faces[static_cast<std::size_t>(j)];
    auto& bverts = skel.per_subdomain_boundary_vertices[static_cast<std::size_t>(j)];
    auto& bedges = skel.per_subdomain_boundary_edges[static_cast<std::size_t>(j)];
    for (const auto& [f, count] : face_count) {
      if (count != 1) continue;
      faces.push_back(f);
      bverts.insert(bverts.end(), f.begin(), f.end());
      bedges.push_back(mesh.find_edge(f[0], f[1]));
      bedges.push_back(mesh.find_edge(f[0], f[2]));
      bedges.push_back(mesh.find_edge(f[1], f[2]));
    }
    sort_unique(bverts);
    sort_unique(bedges);
    for (Index v : bverts) ++degree[static_cast<std::size_t>(v)];
    skel.skeleton_edges.insert(skel.skeleton_edges.end(), bedges.begin(), bedges.end());
  }
  sort_unique(skel.skeleton_edges);

  for (Index v = 0; v < mesh.num_vertices(); ++v) {
    if (degree[static_cast<std::size_t>(v)] > 0) {
      skel.skeleton_vertices.push_back(v);
      skel.vertex_degree.push_back(degree[static_cast<std::size_t>(v)]);
    }
  }
  return skel;
}

}  // namespace subhx
