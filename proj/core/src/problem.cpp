#include "subhx/problem.hpp"

namespace subhx {

Discretization build_discretization(Grid3 cells_per_axis, Grid3 subdomain_grid) {
  Discretization d;
  d.mesh = build_box_mesh(cells_per_axis, subdomain_grid);
  d.skeleton = extract_skeleton(d.mesh);
  d.spaces = build_spaces(d.mesh, d.skeleton);
  d.scalar_transfer = build_transfer(FieldKind::Scalar, d.mesh, d.spaces);
  d.edge_transfer = build_transfer(FieldKind::Edge, d.mesh, d.spaces);
  d.multiplicity = build_multiplicity(d.skeleton, d.scalar_transfer.skeleton_restriction);
  return d;
}

ScalarSubstructure build_scalar(const Discretization& disc, const Coefficients& coeffs) {
  ScalarSubstructure s;
  s.global = assemble_scalar(disc.mesh, disc.spaces, coeffs, Scope::Global);
  s.blocks = assemble_scalar(disc.mesh, disc.spaces, coeffs, Scope::PerSubdomain);
  s.schur = std::make_shared<const SchurSystem>(FieldKind::Scalar, disc.spaces.scalar, s.blocks,
                                                disc.scalar_transfer.skeleton_restriction);
  s.qnn = std::make_shared<const NeumannNeumann>(s.schur, disc.multiplicity);
  return s;
}

MaxwellSubstructure build_maxwell(const Discretization& disc, const Coefficients& coeffs) {
  MaxwellSubstructure m;
  m.global = assemble_edge(disc.mesh, disc.spaces, coeffs, Scope::Global);
  m.blocks = assemble_edge(disc.mesh, disc.spaces, coeffs, Scope::PerSubdomain);
  m.jacobi = jacobi_diagonal(m.global);
  m.schur = std::make_shared<const SchurSystem>(FieldKind::Edge, disc.spaces.edge, m.blocks,
                                                disc.edge_transfer.skeleton_restriction);
  m.gradient_skeleton = build_gradient(Variant::Skeleton, disc.mesh, disc.spaces);
  for (int j = 0; j < 3; ++j)
    m.interp_skeleton[static_cast<std::size_t>(j)] = build_nodal_interp(Variant::Skeleton, j, disc.mesh, disc.spaces);
  m.auxiliary = build_scalar(disc, coeffs);

  std::shared_ptr<const NeumannNeumann> qnn = m.auxiliary.qnn;
  m.qhx = std::make_shared<const HiptmairXu>(
      skeleton_jacobi(m.jacobi, disc.spaces.edge), m.gradient_skeleton.matrix,
      std::array<SparseMatrix, 3>{m.interp_skeleton[0].matrix, m.interp_skeleton[1].matrix,
                                  m.interp_skeleton[2].matrix},
      [qnn](const Vector& f) { return qnn->apply(f); });
  return m;
}

}  // namespace subhx
