#pragma once

#include <iosfwd>
#include <string>

#include "subhx/mesh.hpp"
#include "subhx/types.hpp"

namespace subhx {

/// Legacy ASCII VTK unstructured grid, tets as cell type 10, with the
/// subdomain index as cell data.
void write_vtk(std::ostream& os, const BoxMesh& mesh);
void write_vtk(const std::string& path, const BoxMesh& mesh);

/// Matrix Market coordinate real general, 1-based.
void write_matrix_market(std::ostream& os, const SparseMatrix& m);
void write_matrix_market(const std::string& path, const SparseMatrix& m);

}  // namespace subhx
