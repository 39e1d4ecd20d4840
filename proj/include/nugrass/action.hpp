#pragma once

#include <optional>

#include "nugrass/atlas.hpp"
#include "nugrass/linalg.hpp"

namespace nugrass {

struct NoChartFound : AlgebraError {
  NoChartFound() : AlgebraError("no chart has an invertible minor for X·P") {}
};
struct RankDeficient : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotInGroup : AlgebraError {
  using AlgebraError::AlgebraError;
};

/// Lambda_r-point of GL(m|n).
struct GLPoint {
  SuperMatrix<GrassmannNumber> mat;

  int r() const { return mat.context(); }
  /// Throws NotInGroup unless parity-valid with invertible body.
  void validate() const;
  static GLPoint identity(int r, int m, int n);
  GLPoint operator*(const GLPoint& o) const { return {smat_mul(mat, o.mat)}; }
  GLPoint inverse() const { return {smat_inv(mat)}; }
  bool operator==(const GLPoint&) const = default;

  nlohmann::json to_json() const;
  static GLPoint from_json(const nlohmann::json& j);
};

/// Random invertible element; unit_triangular keeps the body upper unitriangular.
GLPoint sample_gl(int r, int m, int n, Sampler& s, bool unit_triangular = false);

/// Base point (p1 0; 0 p2) with full-row-rank rational blocks.
struct BasePoint {
  QMatrix p1;  // k x m
  QMatrix p2;  // l x n

  SuperMatrix<GrassmannNumber> hat(const Dimensions& d, int r) const;
  nlohmann::json to_json() const;
  static BasePoint from_json(const nlohmann::json& j);
};

/// X·P landing in chart dst: D((M'(XP))^-1 XP) read in dst. Throws
/// MinorNotInvertible when dst does not cover X·P.
GrassPoint act_to(const Atlas& atlas, const GrassPoint& x, const GLPoint& p, const IndexPair& dst);

/// X·P in X's own chart when it covers the result, else in the first
/// covering chart: standard charts first, each group in enumeration order.
GrassPoint act(const Atlas& atlas, const GrassPoint& x, const GLPoint& p);

/// Reads a plain (k+l) x (m+n) matrix as a point of `prefer` if usable,
/// otherwise of the first covering chart in the order used by act.
GrassPoint point_of_matrix(const Atlas& atlas, const SuperMatrix<GrassmannNumber>& mat,
                           const std::optional<IndexPair>& prefer = std::nullopt);

/// Compares two points that may sit in different charts by moving b into a's
/// chart (or a into b's). nullopt when neither transport is defined.
std::optional<bool> same_point(const Atlas& atlas, const GrassPoint& a, const GrassPoint& b);

Report verify_action_gluing(const Dimensions& d, int r, int samples, std::uint64_t seed, bool standard_only = false);
Report verify_action_axioms(const Dimensions& d, int r, int samples, std::uint64_t seed);

/// V in GL(m|n)(Lambda_r) with p_hat · V realizing W. Non-standard W is first
/// moved to a standard chart.
GLPoint transitivity_witness(const Atlas& atlas, const GrassPoint& w, const BasePoint& p);

/// Whether P fixes p_hat (as a point of the first chart covering it).
bool stabilizer_membership(const Atlas& atlas, const GLPoint& p, const BasePoint& base);

}  // namespace nugrass
