#include "spider/envelope.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spider {

namespace {

// Relative slack for tangential contacts when testing closed coverage.
constexpr double kCoverTol = 1e-9;
// A coverage endpoint counts as caused by a curve crossing below this gap.
constexpr double kLabelTol = 1e-8;
// Anchor-line slack for the lift check.
constexpr double kAnchorTol = 1e-7;
// Maximal distance between a bisected root and its closed-form snap target.
constexpr double kSnapWindow = 1e-7;
// Sub-arcs shorter than this are treated as single points.
constexpr double kClampU = 1e-9;

struct Span {
  double lo;
  double hi;
  const TorusPiece* piece;
};

// Parameters on C_{i0} where U lies on the line through both sites; the only
// places two spoke curves can meet.
std::vector<double> crossing_candidates(const TorusPiece& a, const TorusPiece& b) {
  if (!a.has_site || !b.has_site || a.site == b.site) return {};
  std::vector<double> out;
  for (double t : line_circle_parameters(a.site, b.site, a.center, a.R))
    out.push_back(canonical_angle(polar_angle(lerp(a.site, b.site, t) - a.center)));
  return out;
}

double lift_towards(double c, double ref) { return ref + std::remainder(c - ref, kTwoPi); }

double snap(double root, double lo, double hi, const std::vector<double>& cands) {
  for (double c : cands) {
    double cl = lift_towards(c, root);
    if (std::abs(cl - root) <= kSnapWindow) return std::clamp(cl, lo, hi);
  }
  return root;
}

template <typename F>
std::vector<double> find_roots(const F& f, double lo, double hi, const std::vector<double>& cands) {
  constexpr int kSamples = 9;
  std::vector<double> xs(kSamples), fs(kSamples);
  for (int s = 0; s < kSamples; ++s) {
    xs[s] = s == kSamples - 1 ? hi : lo + (hi - lo) * s / (kSamples - 1);
    fs[s] = f(xs[s]);
  }
  std::vector<double> roots;
  for (int s = 0; s + 1 < kSamples; ++s) {
    if (fs[s] == 0.0) {
      roots.push_back(xs[s]);
      continue;
    }
    if ((fs[s] < 0.0) == (fs[s + 1] < 0.0) || fs[s + 1] == 0.0) continue;
    double a = xs[s], b = xs[s + 1];
    double fa = fs[s];
    while (b - a > kEpsU) {
      double m = 0.5 * (a + b);
      double fm = f(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(snap(0.5 * (a + b), lo, hi, cands));
  }
  if (fs.back() == 0.0) roots.push_back(hi);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

void coalesce(EnvelopeChain& chain) {
  std::vector<ChainEntry> out;
  for (const ChainEntry& e : chain.entries) {
    if (e.hi - e.lo < kEpsU && !out.empty() && out.back().hi >= e.lo) {
      chain.dropped.push_back(e);
      out.back().hi = std::max(out.back().hi, e.hi);
      continue;
    }
    if (!out.empty() && out.back().piece == e.piece && out.back().hi >= e.lo) {
      out.back().hi = std::max(out.back().hi, e.hi);
      continue;
    }
    out.push_back(e);
  }
  // A leading sliver has no predecessor to absorb it.
  if (out.size() > 1 && out[0].hi - out[0].lo < kEpsU && out[1].lo <= out[0].hi) {
    chain.dropped.push_back(out[0]);
    out[1].lo = out[0].lo;
    out.erase(out.begin());
  }
  chain.entries = std::move(out);
}

EnvelopeChain merge(const EnvelopeChain& A, const EnvelopeChain& B) {
  EnvelopeChain out;
  out.direction = A.direction;
  out.dropped = A.dropped;
  out.dropped.insert(out.dropped.end(), B.dropped.begin(), B.dropped.end());
  std::vector<double> xs;
  for (const auto* c : {&A, &B})
    for (const ChainEntry& e : c->entries) {
      xs.push_back(e.lo);
      xs.push_back(e.hi);
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  bool upper = A.direction == Direction::Upper;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    double x0 = xs[k], x1 = xs[k + 1];
    double m = 0.5 * (x0 + x1);
    const ChainEntry* ea = A.entry_inside(m);
    const ChainEntry* eb = B.entry_inside(m);
    if (!ea && !eb) continue;
    if (!ea || !eb) {
      out.entries.push_back({x0, x1, (ea ? ea : eb)->piece});
      continue;
    }
    const TorusPiece* pa = ea->piece;
    const TorusPiece* pb = eb->piece;
    auto f = [&](double u) { return pa->theta(u) - pb->theta(u); };
    auto cuts = find_roots(f, x0, x1, crossing_candidates(*pa, *pb));
    cuts.insert(cuts.begin(), x0);
    cuts.push_back(x1);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double c0 = cuts[c], c1 = cuts[c + 1];
      if (c1 <= c0) continue;
      double fm = f(0.5 * (c0 + c1));
      bool a_wins = upper ? fm >= 0.0 : fm <= 0.0;
      out.entries.push_back({c0, c1, a_wins ? pa : pb});
    }
  }
  coalesce(out);
  return out;
}

EnvelopeChain build(std::span<const Span> spans, Direction direction) {
  if (spans.empty()) return EnvelopeChain{direction, {}, {}};
  if (spans.size() == 1) return EnvelopeChain{direction, {{spans[0].lo, spans[0].hi, spans[0].piece}}, {}};
  std::size_t half = spans.size() / 2;
  return merge(build(spans.subspan(0, half), direction), build(spans.subspan(half), direction));
}

std::vector<Span> spans_of(std::span<const TorusPiece* const> pieces) {
  std::vector<Span> spans;
  for (const TorusPiece* p : pieces)
    for (auto [lo, hi] : p->u_interval.lifted_ranges()) spans.push_back({lo, hi, p});
  return spans;
}

}  // namespace

std::vector<const ChainEntry*> EnvelopeChain::entries_at(double u) const {
  std::vector<const ChainEntry*> out;
  auto it = std::upper_bound(entries.begin(), entries.end(), u, [](double x, const ChainEntry& e) { return x < e.lo; });
  // Walk back over entries starting at or before u; at most two can still reach u.
  while (it != entries.begin()) {
    --it;
    if (it->hi >= u) out.insert(out.begin(), &*it);
    if (out.size() == 2 || it->hi < u) break;
  }
  return out;
}

bool EnvelopeChain::value_at(double u, double& out) const {
  auto es = entries_at(u);
  if (es.empty()) return false;
  bool upper = direction == Direction::Upper;
  out = upper ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (const ChainEntry* e : es) {
    double v = e->piece->theta(u);
    out = upper ? std::max(out, v) : std::min(out, v);
  }
  return true;
}

const ChainEntry* EnvelopeChain::entry_inside(double u) const {
  auto it = std::upper_bound(entries.begin(), entries.end(), u, [](double x, const ChainEntry& e) { return x < e.lo; });
  if (it == entries.begin()) return nullptr;
  --it;
  return (it->lo < u && u < it->hi) ? &*it : nullptr;
}

EnvelopeChain envelope(std::span<const TorusPiece* const> pieces, Direction direction) {
  auto spans = spans_of(pieces);
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
  return build(spans, direction);
}

EnvelopeChain envelope(std::span<const TorusPiece> pieces, Direction direction) {
  std::vector<const TorusPiece*> ptrs;
  for (const TorusPiece& p : pieces) ptrs.push_back(&p);
  return envelope(std::span<const TorusPiece* const>(ptrs), direction);
}

std::string to_string(const ArcLabel& label) {
  if (auto* c = std::get_if<CircleLabel>(&label)) return "circle(" + std::to_string(c->i) + ")";
  if (auto* s = std::get_if<SegmentLabel>(&label))
    return "segment(" + std::to_string(s->i) + "," + std::to_string(s->j) + ")";
  return "none";
}

namespace {

struct Coverage {
  const EnvelopeChain& U1;
  const EnvelopeChain& L1;
  const EnvelopeChain& U2;
  const EnvelopeChain& L2;

  bool covered_point(double u) const {
    double u1, l1, u2, l2;
    if (!U1.value_at(u, u1) || !L1.value_at(u, l1) || !U2.value_at(u, u2) || !L2.value_at(u, l2)) return false;
    return u2 - l1 >= -kCoverTol && u1 - l2 - kTwoPi >= -kCoverTol;
  }

  // Label of a coverage endpoint; `side` points into the covered interval.
  ArcLabel label_at(double u, int side) const {
    auto ordered = [&](const EnvelopeChain& c) {
      auto es = c.entries_at(u);
      std::stable_sort(es.begin(), es.end(), [&](const ChainEntry* a, const ChainEntry* b) {
        auto reach = [&](const ChainEntry* e) { return side > 0 ? e->hi > u : e->lo < u; };
        return reach(a) && !reach(b);
      });
      return es;
    };
    auto tight = [&](const EnvelopeChain& up, const EnvelopeChain& low, double shift) -> ArcLabel {
      for (const ChainEntry* a : ordered(up))
        for (const ChainEntry* b : ordered(low)) {
          if (std::abs(a->piece->theta(u) - b->piece->theta(u) - shift) > kLabelTol) continue;
          if (!a->piece->has_site || !b->piece->has_site) continue;
          std::size_t x = a->piece->i, y = b->piece->i;
          if (x == y) continue;
          return SegmentLabel{std::min(x, y), std::max(x, y)};
        }
      return std::monostate{};
    };
    ArcLabel l = tight(U2, L1, 0.0);
    if (!std::holds_alternative<std::monostate>(l)) return l;
    l = tight(U1, L2, kTwoPi);
    if (!std::holds_alternative<std::monostate>(l)) return l;
    for (const auto* c : {&U1, &L1, &U2, &L2})
      for (const ChainEntry* e : c->entries_at(u)) {
        const TorusPiece& p = *e->piece;
        if (p.kind != TorusPiece::Kind::Spoke) continue;
        Angle a(u);
        if (p.vertex_at_start && std::abs(angular_difference(a, p.u_interval.start)) <= kClampU) return CircleLabel{p.i};
        if (p.vertex_at_end && std::abs(angular_difference(a, p.u_interval.end())) <= kClampU) return CircleLabel{p.i};
      }
    return std::monostate{};
  }

  void check_anchor(double m) const {
    double u1, l1, u2, l2;
    bool has1 = U1.value_at(m, u1) && L1.value_at(m, l1);
    bool has2 = U2.value_at(m, u2) && L2.value_at(m, l2);
    if (has1 && (u1 < m + kHalfPi - kAnchorTol || l1 > m + kHalfPi + kAnchorTol))
      throw std::runtime_error("inconsistent lifts");
    if (has2 && (u2 < m - kHalfPi - kAnchorTol || l2 > m - kHalfPi + kAnchorTol))
      throw std::runtime_error("inconsistent lifts");
  }
};

}  // namespace

std::vector<CoverageInterval> coverage_intervals(const EnvelopeChain& omega1_upper, const EnvelopeChain& omega1_lower,
                                                 const EnvelopeChain& omega2_upper, const EnvelopeChain& omega2_lower) {
  Coverage cov{omega1_upper, omega1_lower, omega2_upper, omega2_lower};
  std::vector<double> xs{0.0, kTwoPi};
  for (const auto* c : {&cov.U1, &cov.L1, &cov.U2, &cov.L2})
    for (const ChainEntry& e : c->entries) {
      xs.push_back(e.lo);
      xs.push_back(e.hi);
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::pair<double, double>> pieces;
  std::vector<double> points = xs;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    double x0 = xs[k], x1 = xs[k + 1];
    double m = 0.5 * (x0 + x1);
    cov.check_anchor(m);
    const ChainEntry* u1 = cov.U1.entry_inside(m);
    const ChainEntry* l1 = cov.L1.entry_inside(m);
    const ChainEntry* u2 = cov.U2.entry_inside(m);
    const ChainEntry* l2 = cov.L2.entry_inside(m);
    if (!u1 || !l1 || !u2 || !l2) continue;
    auto fa = [&](double u) { return u2->piece->theta(u) - l1->piece->theta(u); };
    auto fb = [&](double u) { return u1->piece->theta(u) - l2->piece->theta(u) - kTwoPi; };
    auto ca = crossing_candidates(*u2->piece, *l1->piece);
    auto cb = crossing_candidates(*u1->piece, *l2->piece);
    std::vector<double> cuts{x0, x1};
    for (double r : find_roots(fa, x0, x1, ca)) cuts.push_back(r);
    for (double r : find_roots(fb, x0, x1, cb)) cuts.push_back(r);
    for (const auto* cands : {&ca, &cb})
      for (double c : *cands) {
        for (double cl : {c, c + kTwoPi})
          if (cl > x0 && cl < x1) cuts.push_back(cl);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double c0 = cuts[c], c1 = cuts[c + 1];
      double mid = 0.5 * (c0 + c1);
      if (fa(mid) >= -1e-12 && fb(mid) >= -1e-12) pieces.push_back({c0, c1});
    }
    points.insert(points.end(), cuts.begin(), cuts.end());
  }
  for (double p : points)
    if (cov.covered_point(p)) pieces.push_back({p, p});

  std::sort(pieces.begin(), pieces.end());
  std::vector<std::pair<double, double>> merged;
  for (auto [lo, hi] : pieces) {
    if (!merged.empty() && lo <= merged.back().second + kEpsU) {
      merged.back().second = std::max(merged.back().second, hi);
      continue;
    }
    merged.push_back({lo, hi});
  }
  std::vector<CoverageInterval> out;
  for (auto [lo, hi] : merged) out.push_back({lo, hi, cov.label_at(lo, +1), cov.label_at(hi, -1)});
  return out;
}

namespace {

std::vector<CoverageInterval> coverage_of(const std::vector<const TorusPiece*>& pieces,
                                          std::vector<std::string>& diagnostics) {
  std::vector<const TorusPiece*> groups[2][2];  // [omega][upper?]
  for (const TorusPiece* p : pieces) groups[p->omega == Omega::One ? 0 : 1][p->sign > 0 ? 0 : 1].push_back(p);
  auto u1 = envelope(std::span<const TorusPiece* const>(groups[0][0]), Direction::Upper);
  auto l1 = envelope(std::span<const TorusPiece* const>(groups[0][1]), Direction::Lower);
  auto u2 = envelope(std::span<const TorusPiece* const>(groups[1][0]), Direction::Upper);
  auto l2 = envelope(std::span<const TorusPiece* const>(groups[1][1]), Direction::Lower);
  for (const auto* c : {&u1, &l1, &u2, &l2})
    for (const ChainEntry& e : c->dropped) {
      std::ostringstream os;
      os.precision(17);
      os << "dropped sliver of piece (" << e.piece->i << ", k=" << e.piece->k << ", sign=" << e.piece->sign
         << ") on u in [" << e.lo << ", " << e.hi << "]";
      diagnostics.push_back(os.str());
    }
  return coverage_intervals(u1, l1, u2, l2);
}

// closure(Σ) minus the interior of Σ′, on the lifted line.
std::vector<CoverageInterval> subtract_interior(std::vector<CoverageInterval> sigma,
                                                const std::vector<CoverageInterval>& sigma_prime) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  bool wraps_low = false, wraps_high = false;
  for (const auto& o : sigma_prime) {
    if (o.lo <= kClampU) wraps_low = true;
    if (o.hi >= kTwoPi - kClampU) wraps_high = true;
  }
  for (auto o : sigma_prime) {
    // Σ′ arcs through the seam have the seam in their interior.
    if (wraps_low && wraps_high) {
      if (o.lo <= kClampU) o.lo = -kInf;
      if (o.hi >= kTwoPi - kClampU) o.hi = kInf;
    }
    if (o.hi - o.lo <= kClampU) continue;  // a point has empty interior
    std::vector<CoverageInterval> next;
    for (const auto& r : sigma) {
      if (r.hi < o.lo - kClampU || r.lo > o.hi + kClampU) {
        next.push_back(r);
        continue;
      }
      if (r.lo < o.lo - kClampU) next.push_back({r.lo, o.lo, r.lo_label, o.lo_label});
      else if (std::abs(r.lo - o.lo) <= kClampU) next.push_back({r.lo, r.lo, r.lo_label, o.lo_label});
      if (r.hi > o.hi + kClampU) next.push_back({o.hi, r.hi, o.hi_label, r.hi_label});
      else if (std::abs(r.hi - o.hi) <= kClampU) next.push_back({r.hi, r.hi, o.hi_label, r.hi_label});
    }
    sigma = std::move(next);
  }
  std::sort(sigma.begin(), sigma.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return sigma;
}

std::vector<LabeledArc> to_arcs(std::size_t i0, std::vector<CoverageInterval> ivs) {
  std::vector<CoverageInterval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kClampU) {
      if (iv.hi > merged.back().hi) {
        merged.back().hi = iv.hi;
        merged.back().hi_label = iv.hi_label;
      }
      continue;
    }
    merged.push_back(iv);
  }
  for (auto& iv : merged)
    if (iv.hi - iv.lo <= kClampU) iv.hi = iv.lo;

  std::vector<LabeledArc> arcs;
  if (merged.empty()) return arcs;
  if (merged.size() == 1 && merged[0].lo <= kClampU && merged[0].hi >= kTwoPi - kClampU) {
    arcs.push_back({i0, AngleInterval::full(), std::monostate{}, std::monostate{}});
    return arcs;
  }
  bool seam = merged.size() > 1 && merged.front().lo <= kClampU && merged.back().hi >= kTwoPi - kClampU;
  std::size_t first = seam ? 1 : 0;
  for (std::size_t k = first; k < merged.size(); ++k) {
    const auto& iv = merged[k];
    if (seam && k + 1 == merged.size()) {
      const auto& head = merged.front();
      double hi = head.hi + kTwoPi;
      double extent = hi - iv.lo <= kClampU ? 0.0 : hi - iv.lo;
      arcs.push_back({i0, AngleInterval(Angle(iv.lo), extent), iv.lo_label, head.hi_label});
      continue;
    }
    double extent = iv.hi - iv.lo <= kClampU ? 0.0 : iv.hi - iv.lo;
    arcs.push_back({i0, AngleInterval(Angle(iv.lo), extent), iv.lo_label, iv.hi_label});
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const LabeledArc& a, const LabeledArc& b) { return a.arc.start.value() < b.arc.start.value(); });
  return arcs;
}

}  // namespace

CircleAnalysis analyze_circle(std::size_t i0, const Scene& scene, const NeighborTable& table, double eps) {
  CircleAnalysis out;
  out.i0 = i0;
  out.pieces = build_pieces(i0, scene, table, eps);
  std::vector<const TorusPiece*> all, others;
  for (const TorusPiece& p : out.pieces) {
    all.push_back(&p);
    if (p.i != i0) others.push_back(&p);
  }
  out.sigma = coverage_of(all, out.diagnostics);
  out.sigma_prime = coverage_of(others, out.diagnostics);
  out.arcs = to_arcs(i0, subtract_interior(out.sigma, out.sigma_prime));
  return out;
}

std::vector<LabeledArc> circle_boundary_arcs(std::size_t i0, const Scene& scene, const NeighborTable& table,
                                             double eps) {
  return analyze_circle(i0, scene, table, eps).arcs;
}

}  // namespace spider
