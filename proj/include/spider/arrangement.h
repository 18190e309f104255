#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spider/geom.h"
#include "spider/scene.h"

namespace spider {

/// One circle C_i meeting C_{i0}. theta1/theta3 are the parameters on C_{i0}
/// of the two intersection points, ordered so that C_{i0} runs inside
/// disk(s_i, R) from theta1 counterclockwise to theta3.
struct Neighbor {
  std::size_t i = 0;
  double d = 0.0;
  /// Polar angle of s_i - s_{i0}.
  double beta = 0.0;
  Angle theta1;
  Angle theta3;
};

struct NeighborTable {
  std::vector<std::vector<Neighbor>> rows;

  std::size_t size() const { return rows.size(); }
  const std::vector<Neighbor>& operator[](std::size_t i0) const { return rows[i0]; }
};

NeighborTable build_neighbor_table(const Scene& scene);

struct ArrangementStats {
  std::size_t n = 0;
  std::size_t intersecting_pairs = 0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
};

ArrangementStats arrangement_stats(const NeighborTable& table);

/// |A|: vertices plus edges of the arrangement.
inline std::size_t arrangement_size(const ArrangementStats& st) { return st.vertex_count + st.edge_count; }

enum class ViolationKind { DuplicateFoothold, DistanceR, Distance2R, TriplePoint, TwoCirclesSegment, CircleTwoSegments };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> footholds;
  std::string message;
};

/// General-position report for a point-foothold scene. Near-coincidences are
/// detected within eps * R. Segments are the foothold pairs at distance <= 2R,
/// the only ones that can carry an edge of the free space.
std::vector<Violation> validate_general_position(const Scene& scene, double eps = kDefaultEps);

class GeneralPositionError : public std::runtime_error {
 public:
  explicit GeneralPositionError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace spider
