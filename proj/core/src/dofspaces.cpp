#include "subhx/dofspaces.hpp"

#include <algorithm>

namespace subhx {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::ScalarVolume: return "V_h(Omega)";
    case SpaceKind::ScalarBroken: return "VV_h(Omega)";
    case SpaceKind::ScalarSkeleton: return "V_h(Sigma)";
    case SpaceKind::ScalarBoundaryTuple: return "VV_h(Sigma)";
    case SpaceKind::EdgeVolume: return "W_h(Omega)";
    case SpaceKind::EdgeBroken: return "WW_h(Omega)";
    case SpaceKind::EdgeSkeleton: return "W_h(Sigma)";
    case SpaceKind::EdgeBoundaryTuple: return "WW_h(Sigma)";
  }
  return "?";
}

namespace {

FieldSpaces build_field(FieldKind field, const BoxMesh& mesh, const SkeletonIndex& skel) {
  const bool scalar = field == FieldKind::Scalar;
  const int num_sub = mesh.num_subdomains();
  FieldSpaces fs;
  fs.field = field;

  const Index volume_dim = scalar ? mesh.num_vertices() : mesh.num_edges();
  fs.volume = {scalar ? SpaceKind::ScalarVolume : SpaceKind::EdgeVolume, volume_dim, {}};

  fs.skeleton_to_global = scalar ? skel.skeleton_vertices : skel.skeleton_edges;
  fs.global_to_skeleton.assign(static_cast<std::size_t>(volume_dim), -1);
  for (std::size_t s = 0; s < fs.skeleton_to_global.size(); ++s)
    fs.global_to_skeleton[static_cast<std::size_t>(fs.skeleton_to_global[s])] = static_cast<Index>(s);
  fs.skeleton = {scalar ? SpaceKind::ScalarSkeleton : SpaceKind::EdgeSkeleton,
                 static_cast<Index>(fs.skeleton_to_global.size()),
                 {}};

  fs.broken = {scalar ? SpaceKind::ScalarBroken : SpaceKind::EdgeBroken, 0, {0}};
  fs.boundary_tuple = {scalar ? SpaceKind::ScalarBoundaryTuple : SpaceKind::EdgeBoundaryTuple, 0, {0}};

  fs.subdomains.resize(static_cast<std::size_t>(num_sub));
  for (int j = 0; j < num_sub; ++j) {
    auto& sd = fs.subdomains[static_cast<std::size_t>(j)];
    for (Index t : mesh.subdomain_tets[static_cast<std::size_t>(j)]) {
      if (scalar) {
        const auto& tet = mesh.tets[static_cast<std::size_t>(t)];
        sd.local_to_global.insert(sd.local_to_global.end(), tet.begin(), tet.end());
      } else {
        const auto& te = mesh.tet_edges[static_cast<std::size_t>(t)];
        sd.local_to_global.insert(sd.local_to_global.end(), te.begin(), te.end());
      }
    }
    std::sort(sd.local_to_global.begin(), sd.local_to_global.end());
    sd.local_to_global.erase(std::unique(sd.local_to_global.begin(), sd.local_to_global.end()),
                             sd.local_to_global.end());

    const auto& on_gamma = scalar ? skel.per_subdomain_boundary_vertices[static_cast<std::size_t>(j)]
                                  : skel.per_subdomain_boundary_edges[static_cast<std::size_t>(j)];
    for (Index l = 0; l < sd.num_local(); ++l) {
      const Index g = sd.local_to_global[static_cast<std::size_t>(l)];
      if (std::binary_search(on_gamma.begin(), on_gamma.end(), g)) {
        sd.boundary_local.push_back(l);
        sd.boundary_skeleton.push_back(fs.global_to_skeleton[static_cast<std::size_t>(g)]);
      } else {
        sd.interior_local.push_back(l);
      }
    }
    if (sd.num_boundary() != static_cast<Index>(on_gamma.size())) {
      throw AssemblyError("subdomain boundary dofs not contained in subdomain closure");
    }
    fs.broken.dim += sd.num_local();
    fs.broken.block_offsets.push_back(fs.broken.dim);
    fs.boundary_tuple.dim += sd.num_boundary();
    fs.boundary_tuple.block_offsets.push_back(fs.boundary_tuple.dim);
  }
  return fs;
}

}  // namespace

DofSpaces build_spaces(const BoxMesh& mesh, const SkeletonIndex& skeleton) {
  return {build_field(FieldKind::Scalar, mesh, skeleton), build_field(FieldKind::Edge, mesh, skeleton)};
}

IndexMap::IndexMap(SpaceKind source, Index source_dim, SpaceKind target, Index target_dim,
                   std::vector<MapEntry> entries)
    : source_kind_(source),
      target_kind_(target),
      source_dim_(source_dim),
      target_dim_(target_dim),
      entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.target < 0 || e.target >= target_dim_ || e.source < 0 || e.source >= source_dim_) {
      throw DimensionError("index map entry out of range");
    }
  }
}

Vector IndexMap::apply(const Vector& x) const {
  require_dim(x.size(), source_dim_, "IndexMap::apply");
  Vector y = Vector::Zero(target_dim_);
  for (const auto& e : entries_) y[e.target] += e.sign * x[e.source];
  return y;
}

Vector IndexMap::apply_transpose(const Vector& y) const {
  require_dim(y.size(), target_dim_, "IndexMap::apply_transpose");
  Vector x = Vector::Zero(source_dim_);
  for (const auto& e : entries_) x[e.source] += e.sign * y[e.target];
  return x;
}

SparseMatrix IndexMap::to_sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(entries_.size());
  for (const auto& e : entries_) trips.emplace_back(e.target, e.source, static_cast<double>(e.sign));
  SparseMatrix m(target_dim_, source_dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

bool IndexMap::is_selection() const {
  std::vector<int> hits(static_cast<std::size_t>(target_dim_), 0);
  for (const auto& e : entries_)
    if (++hits[static_cast<std::size_t>(e.target)] > 1) return false;
  return true;
}

bool IndexMap::is_surjective() const {
  std::vector<char> hit(static_cast<std::size_t>(target_dim_), 0);
  for (const auto& e : entries_) hit[static_cast<std::size_t>(e.target)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool IndexMap::is_injective() const {
  // 0/±1 maps whose rows each hold a single entry: injective iff every
  // source column is hit.
  std::vector<int> row_count(static_cast<std::size_t>(target_dim_), 0);
  std::vector<char> col_hit(static_cast<std::size_t>(source_dim_), 0);
  for (const auto& e : entries_) {
    ++row_count[static_cast<std::size_t>(e.target)];
    col_hit[static_cast<std::size_t>(e.source)] = 1;
  }
  if (std::any_of(row_count.begin(), row_count.end(), [](int c) { return c > 1; })) return false;
  return std::all_of(col_hit.begin(), col_hit.end(), [](char c) { return c != 0; });
}

namespace {

// Sign between the local orientation of a dof and its global orientation.
// Scalar dofs carry no orientation; edges are oriented low → high vertex id
// both globally and in every subdomain/trace, so the sign is always +1.
int orientation_sign(FieldKind kind, const BoxMesh& mesh, Index global) {
  if (kind == FieldKind::Scalar) return 1;
  const auto& e = mesh.edges[static_cast<std::size_t>(global)];
  return e[0] < e[1] ? 1 : -1;
}

}  // namespace

TransferOps build_transfer(FieldKind kind, const BoxMesh& mesh, const DofSpaces& spaces) {
  const FieldSpaces& fs = spaces.field(kind);
  TransferOps ops;

  std::vector<MapEntry> sb;
  for (Index s = 0; s < fs.skeleton.dim; ++s) {
    const Index g = fs.skeleton_to_global[static_cast<std::size_t>(s)];
    sb.push_back({s, g, orientation_sign(kind, mesh, g)});
  }
  ops.skeleton_trace = IndexMap(fs.volume.kind, fs.volume.dim, fs.skeleton.kind, fs.skeleton.dim, std::move(sb));

  std::vector<MapEntry> b, vr, sr;
  for (int j = 0; j < spaces.num_subdomains(); ++j) {
    const auto& sd = fs.subdomains[static_cast<std::size_t>(j)];
    const Index broken0 = fs.broken.block_begin(j);
    const Index tuple0 = fs.boundary_tuple.block_begin(j);
    for (Index l = 0; l < sd.num_local(); ++l) {
      const Index g = sd.local_to_global[static_cast<std::size_t>(l)];
      vr.push_back({broken0 + l, g, orientation_sign(kind, mesh, g)});
    }
    for (Index k = 0; k < sd.num_boundary(); ++k) {
      const Index l = sd.boundary_local[static_cast<std::size_t>(k)];
      const Index g = sd.local_to_global[static_cast<std::size_t>(l)];
      b.push_back({tuple0 + k, broken0 + l, 1});
      sr.push_back({tuple0 + k, sd.boundary_skeleton[static_cast<std::size_t>(k)], orientation_sign(kind, mesh, g)});
    }
  }
  ops.trace = IndexMap(fs.broken.kind, fs.broken.dim, fs.boundary_tuple.kind, fs.boundary_tuple.dim, std::move(b));
  ops.volume_restriction =
      IndexMap(fs.volume.kind, fs.volume.dim, fs.broken.kind, fs.broken.dim, std::move(vr));
  ops.skeleton_restriction =
      IndexMap(fs.skeleton.kind, fs.skeleton.dim, fs.boundary_tuple.kind, fs.boundary_tuple.dim, std::move(sr));
  return ops;
}

Multiplicity build_multiplicity(const SkeletonIndex& skeleton, const IndexMap& r) {
  Multiplicity m;
  m.tuple_weights = Vector::Ones(r.target_dim());
  m.skeleton_degree = Vector::Zero(r.source_dim());
  for (const auto& e : r.entries())
    m.skeleton_degree[e.source] += e.sign * m.tuple_weights[e.target] * e.sign;

  require_dim(r.source_dim(), static_cast<Index>(skeleton.vertex_degree.size()), "build_multiplicity");
  for (Index s = 0; s < r.source_dim(); ++s) {
    if (m.skeleton_degree[s] != skeleton.vertex_degree[static_cast<std::size_t>(s)] || m.skeleton_degree[s] < 1.0) {
      throw AssemblyError("R^T D R disagrees with vertex degree at skeleton vertex " + std::to_string(s));
    }
  }
  return m;
}

}  // namespace subhx
