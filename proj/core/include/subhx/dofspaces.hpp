#pragma once

#include <vector>

#include "subhx/mesh.hpp"
#include "subhx/types.hpp"

namespace subhx {

enum class SpaceKind {
  ScalarVolume,         // V_h(Ω): one dof per vertex
  ScalarBroken,         // V_h(Ω_1) × ... × V_h(Ω_J)
  ScalarSkeleton,       // V_h(Σ)
  ScalarBoundaryTuple,  // V_h(Γ_1) × ... × V_h(Γ_J)
  EdgeVolume,
  EdgeBroken,
  EdgeSkeleton,
  EdgeBoundaryTuple,
};

enum class FieldKind { Scalar, Edge };

const char* to_string(SpaceKind kind);

struct DofSpace {
  SpaceKind kind = SpaceKind::ScalarVolume;
  Index dim = 0;
  /// J+1 offsets for tuple spaces (last entry == dim); empty otherwise.
  std::vector<Index> block_offsets;

  [[nodiscard]] bool is_tuple() const { return !block_offsets.empty(); }
  [[nodiscard]] int num_blocks() const { return is_tuple() ? static_cast<int>(block_offsets.size()) - 1 : 1; }
  [[nodiscard]] Index block_begin(int j) const { return block_offsets[static_cast<std::size_t>(j)]; }
  [[nodiscard]] Index block_size(int j) const {
    return block_offsets[static_cast<std::size_t>(j) + 1] - block_offsets[static_cast<std::size_t>(j)];
  }
};

/// Local numbering of one subdomain for one field kind. Local dofs are the
/// global dofs (vertices or edges) touched by the subdomain's tets, ascending.
struct SubdomainDofs {
  std::vector<Index> local_to_global;
  /// Local indices of dofs on Γ_j, ascending; their order defines the block of
  /// the boundary tuple space.
  std::vector<Index> boundary_local;
  std::vector<Index> interior_local;
  /// Skeleton index of each boundary dof (aligned with boundary_local).
  std::vector<Index> boundary_skeleton;

  [[nodiscard]] Index num_local() const { return static_cast<Index>(local_to_global.size()); }
  [[nodiscard]] Index num_boundary() const { return static_cast<Index>(boundary_local.size()); }
  [[nodiscard]] Index num_interior() const { return static_cast<Index>(interior_local.size()); }
};

struct FieldSpaces {
  FieldKind field = FieldKind::Scalar;
  DofSpace volume;
  DofSpace broken;
  DofSpace skeleton;
  DofSpace boundary_tuple;
  std::vector<SubdomainDofs> subdomains;
  /// Skeleton global ids (vertices or edges), ascending.
  std::vector<Index> skeleton_to_global;
  /// -1 for volume dofs off the skeleton.
  std::vector<Index> global_to_skeleton;
};

/// All eight spaces: scalar and edge variants of volume/broken/skeleton/tuple.
struct DofSpaces {
  FieldSpaces scalar;
  FieldSpaces edge;

  [[nodiscard]] const FieldSpaces& field(FieldKind k) const { return k == FieldKind::Scalar ? scalar : edge; }
  [[nodiscard]] int num_subdomains() const { return static_cast<int>(scalar.subdomains.size()); }
};

DofSpaces build_spaces(const BoxMesh& mesh, const SkeletonIndex& skeleton);

struct MapEntry {
  Index target = 0;
  Index source = 0;
  int sign = 1;
};

/// Sparse 0/±1 map between dof spaces, stored as (target, source, sign).
class IndexMap {
 public:
  IndexMap() = default;
  IndexMap(SpaceKind source, Index source_dim, SpaceKind target, Index target_dim,
           std::vector<MapEntry> entries);

  [[nodiscard]] SpaceKind source_kind() const { return source_kind_; }
  [[nodiscard]] SpaceKind target_kind() const { return target_kind_; }
  [[nodiscard]] Index source_dim() const { return source_dim_; }
  [[nodiscard]] Index target_dim() const { return target_dim_; }
  [[nodiscard]] const std::vector<MapEntry>& entries() const { return entries_; }

  /// y = A x.
  [[nodiscard]] Vector apply(const Vector& x) const;
  /// x = A^T y, summed in entry order.
  [[nodiscard]] Vector apply_transpose(const Vector& y) const;
  [[nodiscard]] SparseMatrix to_sparse() const;

  /// Every target index hit at most once.
  [[nodiscard]] bool is_selection() const;
  [[nodiscard]] bool is_surjective() const;
  [[nodiscard]] bool is_injective() const;

 private:
  SpaceKind source_kind_ = SpaceKind::ScalarVolume;
  SpaceKind target_kind_ = SpaceKind::ScalarVolume;
  Index source_dim_ = 0;
  Index target_dim_ = 0;
  std::vector<MapEntry> entries_;
};

/// The four trace/restriction maps of one field kind.
struct TransferOps {
  IndexMap skeleton_trace;        // 𝓑: volume → skeleton
  IndexMap trace;                 // B: broken → boundary tuple
  IndexMap volume_restriction;    // 𝓡: volume → broken
  IndexMap skeleton_restriction;  // R: skeleton → boundary tuple
};

TransferOps build_transfer(FieldKind kind, const BoxMesh& mesh, const DofSpaces& spaces);

struct Multiplicity {
  /// Diagonal of D on the scalar boundary tuple space (all ones).
  Vector tuple_weights;
  /// Diagonal of D_Σ = R^T D R on V_h(Σ), i.e. deg(x).
  Vector skeleton_degree;
};

/// Computes D_Σ as the triple product R^T D R and checks it against the
/// skeleton's vertex degrees.
Multiplicity build_multiplicity(const SkeletonIndex& skeleton, const IndexMap& skeleton_restriction);

}  // namespace subhx
