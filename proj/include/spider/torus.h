#pragma once

#include <cstddef>
#include <vector>

#include "spider/arrangement.h"
#include "spider/geom.h"
#include "spider/scene.h"

namespace spider {

enum class DistanceCase { Self, Near, Mid, Far, OutOfRange };

const char* to_string(DistanceCase c);

/// Case of neighbor distance d. Throws std::domain_error when d is within
/// eps*R of R or 2R (a general-position violation).
DistanceCase classify_distance_case(double d, double R, double eps = kDefaultEps);

enum class Omega { One, Two };

/// Band of w = θ - u that a piece lives in once lifted.
enum class WBand { Low, High, LowShift };

double band_center(WBand band);
const char* to_string(WBand band);

/// One u-monotone piece ρ_i^{k±} of the boundary of Z_i on the torus of
/// C_{i0}, or a synthetic linear piece θ = slope·u + offset.
struct TorusPiece {
  enum class Kind { Spoke, Linear };

  std::size_t i0 = 0;
  std::size_t i = 0;
  int k = 1;
  /// +1 for ρ^+ (upper edge of Z_i), -1 for ρ^- (lower edge).
  int sign = 1;
  AngleInterval u_interval;
  Omega omega = Omega::One;
  WBand band = WBand::Low;
  /// Piece ends that sit on a vertex C_i ∩ C_{i0}.
  bool vertex_at_start = false;
  bool vertex_at_end = false;

  Kind kind = Kind::Spoke;
  Point2 center;  // s_{i0}
  Point2 site;    // s_i
  double R = 1.0;
  /// Linear pieces that stand for no foothold leave this unset.
  bool has_site = true;
  double slope = 0.0;
  double offset = 0.0;

  /// Lifted θ at lifted parameter u (u may exceed 2π for wrapping pieces).
  double theta(double u) const;
  double w(double u) const { return theta(u) - u; }
};

/// A Linear piece over [lo, hi] of the lifted u line.
TorusPiece linear_piece(double lo, double hi, double slope, double offset, int sign, Omega omega, WBand band);

/// θ of ρ_i^{±}(u): the half-disk direction whose boundary spoke of C_i
/// passes through U(u) = s_{i0} + R e(u). Throws std::domain_error
/// "spoke cannot reach" when |U(u) - s_i| > R.
Angle rho_theta(Angle u, const Scene& scene, std::size_t i0, std::size_t i, int sign, double eps = kDefaultEps);

/// Pieces of all Z_i on the torus of C_{i0}, including the two Z_{i0}
/// band pieces. Upper and lower pieces come in pairs with equal k.
std::vector<TorusPiece> build_pieces(std::size_t i0, const Scene& scene, const NeighborTable& table,
                                     double eps = kDefaultEps);

}  // namespace spider
