#include "spider/torus.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spider {

const char* to_string(DistanceCase c) {
  switch (c) {
    case DistanceCase::Self: return "self";
    case DistanceCase::Near: return "near";
    case DistanceCase::Mid: return "mid";
    case DistanceCase::Far: return "far";
    case DistanceCase::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

DistanceCase classify_distance_case(double d, double R, double eps) {
  if (!(d >= 0.0) || !(R > 0.0)) throw std::invalid_argument("distance must be non-negative and R positive");
  double tol = eps * R;
  if (std::abs(d - R) <= tol || std::abs(d - 2.0 * R) <= tol)
    throw std::domain_error("general-position violation");
  if (d == 0.0) return DistanceCase::Self;
  if (d < R) return DistanceCase::Near;
  if (d < std::sqrt(2.0) * R) return DistanceCase::Mid;
  if (d < 2.0 * R) return DistanceCase::Far;
  return DistanceCase::OutOfRange;
}

double band_center(WBand band) {
  switch (band) {
    case WBand::Low: return 0.0;
    case WBand::High: return kPi;
    case WBand::LowShift: return -kPi;
  }
  return 0.0;
}

const char* to_string(WBand band) {
  switch (band) {
    case WBand::Low: return "low";
    case WBand::High: return "high";
    case WBand::LowShift: return "low_shift";
  }
  return "unknown";
}

double TorusPiece::theta(double u) const {
  if (kind == Kind::Linear) return slope * u + offset;
  Point2 U = center + R * unit_vector(u);
  double phi = polar_angle(U - site);
  if (sign < 0) phi -= kPi;
  return u + lift_near(phi - u, band_center(band));
}

TorusPiece linear_piece(double lo, double hi, double slope, double offset, int sign, Omega omega, WBand band) {
  TorusPiece p;
  p.kind = TorusPiece::Kind::Linear;
  p.has_site = false;
  p.u_interval = AngleInterval::from_lifted(lo, hi);
  p.slope = slope;
  p.offset = offset;
  p.sign = sign;
  p.omega = omega;
  p.band = band;
  return p;
}

Angle rho_theta(Angle u, const Scene& scene, std::size_t i0, std::size_t i, int sign, double eps) {
  Point2 c = scene.footholds.at(i0);
  Point2 s = scene.footholds.at(i);
  Point2 U = c + scene.R * unit_vector(u.value());
  if (distance(U, s) > scene.R * (1.0 + eps)) throw std::domain_error("spoke cannot reach");
  double phi = polar_angle(U - s);
  return Angle(sign > 0 ? phi : phi - kPi);
}

namespace {

void add_pair(std::vector<TorusPiece>& out, TorusPiece proto, double lo, double hi, WBand upper_band,
              WBand lower_band, bool vstart, bool vend) {
  proto.u_interval = AngleInterval::from_lifted(lo, hi);
  proto.vertex_at_start = vstart;
  proto.vertex_at_end = vend;
  proto.sign = 1;
  proto.band = upper_band;
  out.push_back(proto);
  proto.sign = -1;
  proto.band = lower_band;
  out.push_back(proto);
}

}  // namespace

std::vector<TorusPiece> build_pieces(std::size_t i0, const Scene& scene, const NeighborTable& table, double eps) {
  const double R = scene.R;
  Point2 c = scene.footholds.at(i0);
  std::vector<TorusPiece> out;

  // Z_{i0}: θ ≤ u ≤ θ + π, i.e. w in [-π, 0], cut at u = π.
  for (auto [lo, hi] : {std::pair{0.0, kPi}, std::pair{kPi, kTwoPi}}) {
    TorusPiece up = linear_piece(lo, hi, 1.0, 0.0, 1, Omega::Two, WBand::Low);
    TorusPiece down = linear_piece(lo, hi, 1.0, -kPi, -1, Omega::Two, WBand::LowShift);
    for (TorusPiece* p : {&up, &down}) {
      p->i0 = p->i = i0;
      p->k = lo == 0.0 ? 1 : 2;
      p->center = p->site = c;
      p->R = R;
      p->has_site = true;
      out.push_back(*p);
    }
  }

  for (const Neighbor& nb : table[i0]) {
    DistanceCase dc = classify_distance_case(nb.d, R, eps);
    TorusPiece proto;
    proto.i0 = i0;
    proto.i = nb.i;
    proto.center = c;
    proto.site = scene.footholds.at(nb.i);
    proto.R = R;
    double half = std::acos(std::clamp(nb.d / (2.0 * R), -1.0, 1.0));
    double lo = nb.beta - half;
    double hi = nb.beta + half;
    switch (dc) {
      case DistanceCase::Far:
        proto.k = 1;
        proto.omega = Omega::One;
        add_pair(out, proto, lo, hi, WBand::High, WBand::Low, true, true);
        break;
      case DistanceCase::Mid: {
        double tan_off = std::acos(std::clamp(R / nb.d, -1.0, 1.0));
        proto.omega = Omega::Two;
        proto.k = 1;
        add_pair(out, proto, lo, nb.beta - tan_off, WBand::Low, WBand::LowShift, true, false);
        proto.omega = Omega::One;
        proto.k = 2;
        add_pair(out, proto, nb.beta - tan_off, nb.beta + tan_off, WBand::High, WBand::Low, false, false);
        proto.omega = Omega::Two;
        proto.k = 3;
        add_pair(out, proto, nb.beta + tan_off, hi, WBand::Low, WBand::LowShift, false, true);
        break;
      }
      case DistanceCase::Near:
        proto.omega = Omega::Two;
        proto.k = 1;
        add_pair(out, proto, lo, nb.beta, WBand::Low, WBand::LowShift, true, false);
        proto.k = 2;
        add_pair(out, proto, nb.beta, hi, WBand::Low, WBand::LowShift, false, true);
        break;
      case DistanceCase::Self:
      case DistanceCase::OutOfRange:
        break;
    }
  }
  return out;
}

}  // namespace spider
