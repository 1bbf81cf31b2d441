#include "subhx/assemble.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace subhx {

Coefficients Coefficients::uniform(const BoxMesh& mesh, double alpha, double beta, double gamma) {
  Coefficients c;
  c.alpha.assign(static_cast<std::size_t>(mesh.num_tets()), alpha);
  c.beta.assign(static_cast<std::size_t>(mesh.num_tets()), beta);
  c.gamma = gamma;
  return c;
}

void Coefficients::validate(const BoxMesh& mesh) const {
  if (static_cast<Index>(alpha.size()) != mesh.num_tets() || static_cast<Index>(beta.size()) != mesh.num_tets()) {
    throw ConfigError("coefficient arrays must have one entry per tet");
  }
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    if (!(alpha[t] > 0.0) || !(beta[t] > 0.0)) {
      throw ConfigError("coefficients alpha and beta must be strictly positive (tet " + std::to_string(t) + ")");
    }
  }
  if (!(gamma > 0.0)) throw ConfigError("coefficient gamma must be strictly positive");
}

Vector SparseSymOp::apply(const Vector& x) const {
  require_dim(x.size(), dim(), "SparseSymOp::apply");
  return matrix * x;
}

namespace {

double dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Point3 cross3(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

std::array<Point3, 4> barycentric_gradients(const std::array<Point3, 4>& p, double* volume) {
  Eigen::Matrix3d jac;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) jac(r, c) = p[c + 1][r] - p[0][r];
  const double det = jac.determinant();
  double scale = 0.0;
  for (int c = 0; c < 3; ++c) scale = std::max(scale, jac.col(c).norm());
  if (std::abs(det) <= 1e-14 * scale * scale * scale) throw AssemblyError("degenerate tetrahedron (zero volume)");
  if (volume) *volume = std::abs(det) / 6.0;

  const Eigen::Matrix3d inv = jac.inverse();
  std::array<Point3, 4> g{};
  for (int i = 0; i < 3; ++i) g[i + 1] = {inv(i, 0), inv(i, 1), inv(i, 2)};
  for (int d = 0; d < 3; ++d) g[0][d] = -(g[1][d] + g[2][d] + g[3][d]);
  return g;
}

ElementMatrix4 p1_element_matrix(const std::array<Point3, 4>& p, double alpha, double beta) {
  double vol = 0.0;
  const auto g = barycentric_gradients(p, &vol);
  ElementMatrix4 k{};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double mass = vol / 20.0 * (i == j ? 2.0 : 1.0);
      k[i][j] = alpha * vol * dot3(g[i], g[j]) + beta * mass;
      k[j][i] = k[i][j];
    }
  return k;
}

ElementMatrix6 whitney_element_matrix(const std::array<Point3, 4>& p, const Tet& global_ids, double curl_weight,
                                      double mass_weight) {
  double vol = 0.0;
  const auto g = barycentric_gradients(p, &vol);

  std::array<std::array<int, 2>, 6> ab{};
  std::array<Point3, 6> curl{};
  for (int k = 0; k < 6; ++k) {
    int a = kTetEdgeVertices[k][0];
    int b = kTetEdgeVertices[k][1];
    if (global_ids[a] > global_ids[b]) std::swap(a, b);
    ab[k] = {a, b};
    const Point3 c = cross3(g[a], g[b]);
    curl[k] = {2.0 * c[0], 2.0 * c[1], 2.0 * c[2]};
  }

  auto delta = [](int i, int j) { return i == j ? 2.0 : 1.0; };
  ElementMatrix6 m{};
  for (int k = 0; k < 6; ++k)
    for (int l = k; l < 6; ++l) {
      const int a = ab[k][0], b = ab[k][1], c = ab[l][0], d = ab[l][1];
      // ∫ λ_i λ_j = vol (1 + δ_ij) / 20
      const double mass = vol / 20.0 *
                          (delta(a, c) * dot3(g[b], g[d]) - delta(a, d) * dot3(g[b], g[c]) -
                           delta(b, c) * dot3(g[a], g[d]) + delta(b, d) * dot3(g[a], g[c]));
      const double stiff = vol * dot3(curl[k], curl[l]);
      m[k][l] = curl_weight * stiff + mass_weight * mass;
      m[l][k] = m[k][l];
    }
  return m;
}

namespace {

template <class ElementFn>
SparseSymOp assemble_field(const BoxMesh& mesh, const FieldSpaces& fs, Scope scope, bool scalar,
                           ElementFn&& element) {
  const int num_sub = mesh.num_subdomains();
  SparseSymOp op;
  op.blocks.resize(static_cast<std::size_t>(num_sub));

  std::vector<Index> g2l(static_cast<std::size_t>(fs.volume.dim), -1);
  for (int j = 0; j < num_sub; ++j) {
    const auto& sd = fs.subdomains[static_cast<std::size_t>(j)];
    for (Index l = 0; l < sd.num_local(); ++l) g2l[static_cast<std::size_t>(sd.local_to_global[static_cast<std::size_t>(l)])] = l;

    std::vector<Eigen::Triplet<double>> trips;
    const int n = scalar ? 4 : 6;
    trips.reserve(mesh.subdomain_tets[static_cast<std::size_t>(j)].size() * static_cast<std::size_t>(n * n));
    for (Index t : mesh.subdomain_tets[static_cast<std::size_t>(j)]) {
      const auto ke = element(t);
      for (int r = 0; r < n; ++r) {
        const Index gr = scalar ? mesh.tets[static_cast<std::size_t>(t)][r] : mesh.tet_edges[static_cast<std::size_t>(t)][r];
        for (int c = 0; c < n; ++c) {
          const Index gc = scalar ? mesh.tets[static_cast<std::size_t>(t)][c] : mesh.tet_edges[static_cast<std::size_t>(t)][c];
          trips.emplace_back(g2l[static_cast<std::size_t>(gr)], g2l[static_cast<std::size_t>(gc)], ke[r][c]);
        }
      }
    }
    auto& block = op.blocks[static_cast<std::size_t>(j)];
    block.resize(sd.num_local(), sd.num_local());
    block.setFromTriplets(trips.begin(), trips.end());
    block.makeCompressed();
    for (Index l = 0; l < sd.num_local(); ++l) g2l[static_cast<std::size_t>(sd.local_to_global[static_cast<std::size_t>(l)])] = -1;
  }

  std::vector<Eigen::Triplet<double>> trips;
  if (scope == Scope::PerSubdomain) {
    op.kind = scalar ? OperatorKind::ScalarBlock : OperatorKind::EdgeBlock;
    op.block_offsets = fs.broken.block_offsets;
    for (int j = 0; j < num_sub; ++j) {
      const auto& block = op.blocks[static_cast<std::size_t>(j)];
      const Index off = fs.broken.block_begin(j);
      for (Index c = 0; c < block.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(block, c); it; ++it)
          trips.emplace_back(off + it.row(), off + it.col(), it.value());
    }
    op.matrix.resize(fs.broken.dim, fs.broken.dim);
  } else {
    op.kind = scalar ? OperatorKind::ScalarGlobal : OperatorKind::EdgeGlobal;
    for (int j = 0; j < num_sub; ++j) {
      const auto& block = op.blocks[static_cast<std::size_t>(j)];
      const auto& l2g = fs.subdomains[static_cast<std::size_t>(j)].local_to_global;
      for (Index c = 0; c < block.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(block, c); it; ++it)
          trips.emplace_back(l2g[static_cast<std::size_t>(it.row())], l2g[static_cast<std::size_t>(it.col())], it.value());
    }
    op.blocks.clear();
    op.matrix.resize(fs.volume.dim, fs.volume.dim);
  }
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  op.matrix.makeCompressed();
  return op;
}

}  // namespace

SparseSymOp assemble_scalar(const BoxMesh& mesh, const DofSpaces& spaces, const Coefficients& coeffs, Scope scope) {
  coeffs.validate(mesh);
  return assemble_field(mesh, spaces.scalar, scope, true, [&](Index t) {
    return p1_element_matrix(mesh.tet_coords(t), coeffs.alpha[static_cast<std::size_t>(t)],
                             coeffs.beta[static_cast<std::size_t>(t)]);
  });
}

SparseSymOp assemble_edge_form(const BoxMesh& mesh, const DofSpaces& spaces, double curl_weight, double mass_weight,
                               Scope scope) {
  if (curl_weight < 0.0 || mass_weight < 0.0) throw ConfigError("edge form weights must be non-negative");
  return assemble_field(mesh, spaces.edge, scope, false, [&](Index t) {
    return whitney_element_matrix(mesh.tet_coords(t), mesh.tets[static_cast<std::size_t>(t)], curl_weight,
                                  mass_weight);
  });
}

SparseSymOp assemble_edge(const BoxMesh& mesh, const DofSpaces& spaces, const Coefficients& coeffs, Scope scope) {
  coeffs.validate(mesh);
  return assemble_edge_form(mesh, spaces, 1.0, coeffs.gamma * coeffs.gamma, scope);
}

Vector jacobi_diagonal(const SparseSymOp& edge_global) {
  if (edge_global.kind != OperatorKind::EdgeGlobal) throw DimensionError("jacobi_diagonal expects the global edge operator");
  Vector d = edge_global.matrix.diagonal();
  for (Index e = 0; e < d.size(); ++e)
    if (!(d[e] > 0.0)) throw AssemblyError("non-positive Jacobi diagonal entry at edge " + std::to_string(e));
  return d;
}

}  // namespace subhx
