#include "subhx/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace subhx {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  return os;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_vtk(std::ostream& os, const BoxMesh& mesh) {
  os << "# vtk DataFile Version 3.0\nsubhx box mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertex_coords) os << g17(p[0]) << ' ' << g17(p[1]) << ' ' << g17(p[2]) << '\n';
  const Index nt = mesh.num_tets();
  os << "CELLS " << nt << ' ' << 5 * nt << '\n';
  for (const auto& t : mesh.tets) os << "4 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
  os << "CELL_TYPES " << nt << '\n';
  for (Index t = 0; t < nt; ++t) os << "10\n";
  os << "CELL_DATA " << nt << "\nSCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (int s : mesh.tet_subdomain) os << s << '\n';
}

void write_vtk(const std::string& path, const BoxMesh& mesh) {
  auto os = open_or_throw(path);
  write_vtk(os, mesh);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& m) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Index c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it)
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << g17(it.value()) << '\n';
}

void write_matrix_market(const std::string& path, const SparseMatrix& m) {
  auto os = open_or_throw(path);
  write_matrix_market(os, m);
}

}  // namespace subhx
