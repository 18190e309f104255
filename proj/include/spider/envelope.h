#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spider/arrangement.h"
#include "spider/scene.h"
#include "spider/torus.h"

namespace spider {

/// Breakpoint and coverage-endpoint tolerance on u.
inline constexpr double kEpsU = 1e-12 * kTwoPi;

enum class Direction { Upper, Lower };

struct ChainEntry {
  double lo = 0.0;
  double hi = 0.0;
  const TorusPiece* piece = nullptr;
};

/// Upper or lower envelope over the lifted u line [0, 2π]. Pieces are held
/// by pointer and must outlive the chain.
struct EnvelopeChain {
  Direction direction = Direction::Upper;
  std::vector<ChainEntry> entries;
  /// Entries shorter than kEpsU removed while merging.
  std::vector<ChainEntry> dropped;

  bool empty() const { return entries.empty(); }
  /// Entries whose closed interval contains u (at most two).
  std::vector<const ChainEntry*> entries_at(double u) const;
  /// Extreme value over the entries containing u; false when undefined.
  bool value_at(double u, double& out) const;
  /// Entry whose interior contains u, or nullptr.
  const ChainEntry* entry_inside(double u) const;
};

/// Envelope of pieces over their lifted u ranges (a piece wrapping through
/// u = 0 contributes two ranges). Divide-and-conquer merge; crossings are
/// bisected to kEpsU.
EnvelopeChain envelope(std::span<const TorusPiece> pieces, Direction direction);
EnvelopeChain envelope(std::span<const TorusPiece* const> pieces, Direction direction);

struct CircleLabel {
  std::size_t i = 0;
  friend bool operator==(const CircleLabel&, const CircleLabel&) = default;
};

/// Foothold pair (i < j) whose segment carries the adjacent boundary edge.
struct SegmentLabel {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const SegmentLabel&, const SegmentLabel&) = default;
};

using ArcLabel = std::variant<std::monostate, CircleLabel, SegmentLabel>;

std::string to_string(const ArcLabel& label);

/// Closed interval [lo, hi] of the lifted u line (lo == hi for a point).
struct CoverageInterval {
  double lo = 0.0;
  double hi = 0.0;
  ArcLabel lo_label;
  ArcLabel hi_label;
};

/// Set of u in [0, 2π] where the Ω1 and Ω2 regions together cover the whole
/// θ circle. Throws std::runtime_error("inconsistent lifts") when a chain
/// misses its anchor line (w = π/2 for Ω1, w = -π/2 for Ω2).
std::vector<CoverageInterval> coverage_intervals(const EnvelopeChain& omega1_upper, const EnvelopeChain& omega1_lower,
                                                 const EnvelopeChain& omega2_upper, const EnvelopeChain& omega2_lower);

/// Piece of C_{i0} ∩ ∂F. Arcs run counterclockwise from `arc.start`; a
/// zero-extent arc is an isolated boundary point.
struct LabeledArc {
  std::size_t i0 = 0;
  AngleInterval arc;
  ArcLabel start_label;
  ArcLabel end_label;

  bool degenerate() const { return arc.extent == 0.0; }
};

struct CircleAnalysis {
  std::size_t i0 = 0;
  std::vector<TorusPiece> pieces;
  std::vector<CoverageInterval> sigma;
  std::vector<CoverageInterval> sigma_prime;
  std::vector<LabeledArc> arcs;
  std::vector<std::string> diagnostics;
};

CircleAnalysis analyze_circle(std::size_t i0, const Scene& scene, const NeighborTable& table,
                              double eps = kDefaultEps);

std::vector<LabeledArc> circle_boundary_arcs(std::size_t i0, const Scene& scene, const NeighborTable& table,
                                             double eps = kDefaultEps);

}  // namespace spider
