#pragma once

#include <array>
#include <memory>

#include "subhx/assemble.hpp"
#include "subhx/discrete_ops.hpp"
#include "subhx/dofspaces.hpp"
#include "subhx/mesh.hpp"
#include "subhx/precond.hpp"
#include "subhx/schur.hpp"

namespace subhx {

/// Mesh, skeleton, spaces and transfer maps shared by both problems.
struct Discretization {
  BoxMesh mesh;
  SkeletonIndex skeleton;
  DofSpaces spaces;
  TransferOps scalar_transfer;
  TransferOps edge_transfer;
  Multiplicity multiplicity;
};

Discretization build_discretization(Grid3 cells_per_axis, Grid3 subdomain_grid);

struct ScalarSubstructure {
  SparseSymOp global;  // 𝓛
  SparseSymOp blocks;  // L
  std::shared_ptr<const SchurSystem> schur;
  std::shared_ptr<const NeumannNeumann> qnn;
};

ScalarSubstructure build_scalar(const Discretization& disc, const Coefficients& coeffs);

struct MaxwellSubstructure {
  SparseSymOp global;  // 𝓜
  SparseSymOp blocks;  // M
  Vector jacobi;       // diag(𝓜)
  std::shared_ptr<const SchurSystem> schur;
  GradientMap gradient_skeleton;
  std::array<NodalInterpMap, 3> interp_skeleton;
  /// Auxiliary scalar problem with (α, β) feeding Q_NN inside Q_HX.
  ScalarSubstructure auxiliary;
  std::shared_ptr<const HiptmairXu> qhx;
};

MaxwellSubstructure build_maxwell(const Discretization& disc, const Coefficients& coeffs);

}  // namespace subhx
