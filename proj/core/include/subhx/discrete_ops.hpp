#pragma once

#include "subhx/dofspaces.hpp"
#include "subhx/mesh.hpp"
#include "subhx/types.hpp"

namespace subhx {

enum class Variant { Volume, Skeleton };

/// G_Ω : V_h(Ω) → W_h(Ω) or G_Σ : V_h(Σ) → W_h(Σ). Row of edge (a,b) holds
/// −1 at a and +1 at b.
struct GradientMap {
  Variant variant = Variant::Volume;
  SparseMatrix matrix;
};

/// Π^{e_j}: edge dof of e_j·u on edge (a,b) is (x_b − x_a)_j (u(a) + u(b)) / 2.
struct NodalInterpMap {
  Variant variant = Variant::Volume;
  int direction = 0;  // 0, 1, 2 for e_1, e_2, e_3
  SparseMatrix matrix;
};

GradientMap build_gradient(Variant variant, const BoxMesh& mesh, const DofSpaces& spaces);

NodalInterpMap build_nodal_interp(Variant variant, int direction, const BoxMesh& mesh, const DofSpaces& spaces);

}  // namespace subhx
