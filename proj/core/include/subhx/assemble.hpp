#pragma once

#include <array>
#include <vector>

#include "subhx/dofspaces.hpp"
#include "subhx/mesh.hpp"
#include "subhx/types.hpp"

namespace subhx {

/// Piecewise-constant coefficients: α, β per tet, γ global.
struct Coefficients {
  std::vector<double> alpha;
  std::vector<double> beta;
  double gamma = 1.0;

  static Coefficients uniform(const BoxMesh& mesh, double alpha, double beta, double gamma);
  /// Throws ConfigError on size mismatch or a non-positive entry.
  void validate(const BoxMesh& mesh) const;
};

enum class OperatorKind { ScalarGlobal, ScalarBlock, EdgeGlobal, EdgeBlock };
enum class Scope { Global, PerSubdomain };

struct SparseSymOp {
  OperatorKind kind = OperatorKind::ScalarGlobal;
  /// Global matrix, or block-diagonal diag(A_1, ..., A_J) in broken numbering.
  SparseMatrix matrix;
  /// Per-subdomain blocks in local numbering; empty for global operators.
  std::vector<SparseMatrix> blocks;
  /// J+1 offsets of the blocks; empty for global operators.
  std::vector<Index> block_offsets;

  [[nodiscard]] Index dim() const { return matrix.rows(); }
  [[nodiscard]] Vector apply(const Vector& x) const;
};

using ElementMatrix4 = std::array<std::array<double, 4>, 4>;
using ElementMatrix6 = std::array<std::array<double, 6>, 6>;

/// ∫ α ∇λ_i·∇λ_j + β λ_i λ_j over one tet.
ElementMatrix4 p1_element_matrix(const std::array<Point3, 4>& p, double alpha, double beta);

/// ∫ curl_weight curl w_k·curl w_l + mass_weight w_k·w_l for the six Whitney
/// functions w = λ_a∇λ_b − λ_b∇λ_a of one tet, local edges per
/// kTetEdgeVertices, each oriented from the lower to the higher global vertex
/// id in `global_ids`. Exact: the curl is constant and the mass integrand is
/// quadratic in the barycentrics.
ElementMatrix6 whitney_element_matrix(const std::array<Point3, 4>& p, const Tet& global_ids,
                                      double curl_weight, double mass_weight);

/// Gradients of the four barycentric coordinates; throws AssemblyError on a
/// degenerate tet.
std::array<Point3, 4> barycentric_gradients(const std::array<Point3, 4>& p, double* volume = nullptr);

/// 𝓛 (Global) or L = diag(L_Ω1, …, L_ΩJ) (PerSubdomain). The global operator
/// is accumulated from the subdomain blocks in ascending subdomain order, so
/// 𝓛 == 𝓡^T L 𝓡 holds bit for bit.
SparseSymOp assemble_scalar(const BoxMesh& mesh, const DofSpaces& spaces, const Coefficients& coeffs,
                            Scope scope);

/// 𝓜 or M with curl weight 1 and mass weight γ².
SparseSymOp assemble_edge(const BoxMesh& mesh, const DofSpaces& spaces, const Coefficients& coeffs,
                          Scope scope);

/// Edge operator with arbitrary non-negative curl and mass weights.
SparseSymOp assemble_edge_form(const BoxMesh& mesh, const DofSpaces& spaces, double curl_weight,
                               double mass_weight, Scope scope);

/// diag(𝓜): entry e is <𝓜 φ_e, φ_e>.
Vector jacobi_diagonal(const SparseSymOp& edge_global);

}  // namespace subhx
