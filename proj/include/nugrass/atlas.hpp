#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nugrass/report.hpp"
#include "nugrass/supermatrix.hpp"

namespace nugrass {

struct InvalidDimensions : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct UnknownChart : AlgebraError {
  using AlgebraError::AlgebraError;
};
/// The transition direction is not produced by the gluing construction.
struct UncoveredCase : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct GenericallySingular : AlgebraError {
  GenericallySingular() : AlgebraError("minor has identically zero body determinant") {}
};
struct MinorNotInvertible : AlgebraError {
  MinorNotInvertible() : AlgebraError("point lies outside the overlap: minor body is singular") {}
};
struct BodySolveFailed : AlgebraError {
  BodySolveFailed() : AlgebraError("no unique body solution for the inverse transition") {}
};
struct SingularJacobian : AlgebraError {
  SingularJacobian() : AlgebraError("nilpotent correction step is singular") {}
};

/// (k|l) planes in (m|n) space.
struct Dimensions {
  int k = 0, l = 0, m = 0, n = 0;

  /// Throws InvalidDimensions unless 0 <= k <= m and 0 <= l <= n.
  void validate() const;
  int alpha() const { return k * (m - k) + l * (n - l); }
  int beta() const { return l * (m - k) + k * (n - l); }
  std::string to_string() const;
  nlohmann::json to_json() const;
  bool operator==(const Dimensions&) const = default;
};

/// I|R with I in {1..m}, R in {1..n}, both strictly increasing (1-based).
struct IndexPair {
  std::vector<int> I, R;

  int p() const { return static_cast<int>(I.size()); }
  int q() const { return static_cast<int>(R.size()); }
  bool standard(int k) const { return p() == k; }
  /// "{1,2}|{3}", with "∅" for an empty set.
  std::string to_string() const;
  /// Accepts "{i,j}|{r,s}", "∅" or "{}" for empty sets, spaces ignored.
  static IndexPair parse(const std::string& text);
  auto operator<=>(const IndexPair&) const = default;
};

enum class SlotKind { Zero, One, NuOne, Coord, NuCoord };

/// What a label position holds. For Coord/NuCoord, `odd` and `index`
/// (0-based) name the chart coordinate.
struct Slot {
  SlotKind kind = SlotKind::Zero;
  bool odd = false;
  int index = -1;
};

struct Chart {
  Dimensions dims;
  IndexPair index;
  ContextPtr ctx;
  std::vector<std::vector<Slot>> layout;  // (k+l) x (m+n)
  SuperMatrix<SuperFunction> label;       // layout realized over ctx

  int alpha() const { return dims.alpha(); }
  int beta() const { return dims.beta(); }
  bool standard() const { return index.standard(dims.k); }
  const std::string& even_name(int i) const { return ctx->even_names.at(static_cast<std::size_t>(i)); }
  const std::string& odd_name(int i) const { return ctx->odd_names.at(static_cast<std::size_t>(i)); }
};

/// Coordinate names shared by every chart: x1..x_alpha, e1..e_beta, or plain
/// x / e when there is only one of a kind.
ContextPtr chart_context(const Dimensions& d);

/// Label A_{I|R}: identity or non-standard identity on I∪R, coordinates
/// elsewhere, nu applied where a coordinate's parity differs from its block.
Chart build_label(const Dimensions& d, const IndexPair& index);

/// All p|q-indices with p+q = k+l, ordered lexicographically by (I, R).
std::vector<Chart> enumerate_charts(const Dimensions& d);

class Atlas {
 public:
  explicit Atlas(const Dimensions& d);
  const Dimensions& dims() const { return dims_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& chart(const IndexPair& idx) const;
  std::size_t position(const IndexPair& idx) const;
  const ContextPtr& context() const { return ctx_; }

 private:
  Dimensions dims_;
  ContextPtr ctx_;
  std::vector<Chart> charts_;
};

/// Entry tokens as displayed: 0, 1, 1ν, x1, ν(x1), ...
std::vector<std::vector<std::string>> label_tokens(const Chart& c);
std::string pretty_label(const Chart& c);
nlohmann::json to_json(const Chart& c);

/// Images of the target chart's coordinates as functions on the source chart.
struct TransitionMap {
  IndexPair source, target;
  ContextPtr ctx;
  std::vector<SuperFunction> even_images, odd_images;
  SuperMatrix<SuperFunction> minor;  // M or M' of the source label
  bool primed = false;

  /// One "name ↦ value" line per target coordinate.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Reads the target coordinates off D((M or M')^-1 A_src). Throws
/// UncoveredCase for a non-standard source with a standard target,
/// GenericallySingular if the minor is not invertible as a function.
TransitionMap transition_symbolic(const Chart& src, const Chart& dst);

/// Lambda_r-valued point of a chart.
struct GrassPoint {
  IndexPair chart;
  int r = 0;
  std::vector<GrassmannNumber> even, odd;

  bool operator==(const GrassPoint&) const = default;
  nlohmann::json to_json() const;
  static GrassPoint from_json(const nlohmann::json& j);
  std::string to_string(const Chart& c) const;
};

/// [X]: the chart layout with the point's values substituted; positions that
/// hold nu(c) get nu of the value.
SuperMatrix<GrassmannNumber> realize(const Chart& c, const GrassPoint& x);
/// Inverse of realize on coordinate positions.
GrassPoint read_point(const Chart& c, const SuperMatrix<GrassmannNumber>& m);

GrassPoint sample_point(const Chart& c, int r, Sampler& s);

/// Moves a point to chart dst: D((M or M')^-1 [X]). A non-standard source
/// with a standard target goes through newton_invert_transition. Throws
/// MinorNotInvertible outside the overlap.
GrassPoint point_transition(const Atlas& atlas, const GrassPoint& x, const IndexPair& dst);

/// Solves point_transition(Q, dst) = target for Q in chart src, order by
/// order in the nilpotent part. src must be standard (or equal to dst).
GrassPoint newton_invert_transition(const Atlas& atlas, const GrassPoint& target, const IndexPair& src,
                                    const IndexPair& dst);

/// Identity, round-trip and triple-loop checks over the whole atlas.
Report verify_cocycle(const Dimensions& d, int r, int samples, std::uint64_t seed);

}  // namespace nugrass
