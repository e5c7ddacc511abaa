// Signed-distance rasterization of Cp curves on a Cartesian grid, and the
// inverse: reading Cp curves back out of (possibly generated) grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foilgen/aero.hpp"
#include "foilgen/common.hpp"

namespace foilgen::sdf {

// Plotting domain of the grid; x spans 1.0, Cp spans 2.65 (the longer axis).
inline constexpr double kDomainXLo = 0.0, kDomainXHi = 1.0;
inline constexpr double kDomainYLo = aero::kCpDomainLo, kDomainYHi = aero::kCpDomainHi;
inline constexpr double kDomainYSpan = kDomainYHi - kDomainYLo;

// Row-major R x R signed distances. Distances are stored in grid units of
// the longer (Cp) axis: one unit equals kDomainYSpan / resolution in raw
// units. Sign is +1 inside the closed Cp loop, -1 outside; sdf_abs stores
// the unsigned variant.
struct SdfGrid {
  int resolution = 0;
  bool sdf_abs = false;
  std::vector<float> values;  // values[iy * R + ix], iy increasing with Cp

  float at(int ix, int iy) const { return values[static_cast<size_t>(iy) * resolution + ix]; }
  float& at(int ix, int iy) { return values[static_cast<size_t>(iy) * resolution + ix]; }
  double cell_unit() const { return kDomainYSpan / resolution; }  // raw units per grid unit
  double cx(int ix) const { return kDomainXLo + (ix + 0.5) / resolution * (kDomainXHi - kDomainXLo); }
  double cy(int iy) const { return kDomainYLo + (iy + 0.5) / resolution * kDomainYSpan; }
  double diagonal_units() const {
    return std::hypot(kDomainXHi - kDomainXLo, kDomainYSpan) / cell_unit();
  }
};

namespace detail {

struct Pt {
  double x, y;
};

inline double seg_dist2(Pt p, Pt a, Pt b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p.x - (a.x + t * dx), ey = p.y - (a.y + t * dy);
  return ex * ex + ey * ey;
}

// Closed loop: upper curve (x descending), LE closure, lower curve
// (x ascending), TE closure back to the start.
inline std::vector<Pt> cp_loop(const aero::CpDistribution& cp) {
  const int n = cp.size();
  std::vector<Pt> loop;
  loop.reserve(2 * n);
  for (int k = n - 1; k >= 0; --k) loop.push_back({cp.xs[k], cp.cp_upper[k]});
  for (int k = 0; k < n; ++k) loop.push_back({cp.xs[k], cp.cp_lower[k]});
  return loop;
}

inline bool point_inside(Pt p, const std::vector<Pt>& loop) {
  // even-odd rule, ray toward +x
  bool inside = false;
  const int n = static_cast<int>(loop.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Pt &a = loop[j], &b = loop[i];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (xint > p.x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// encode: per-cell minimum Euclidean distance (raw x/Cp units) to the closed
// polyline, signed by even-odd ray casting, stored in longer-axis grid units.
// ---------------------------------------------------------------------------
inline SdfGrid encode(const aero::CpDistribution& cp, int resolution, bool sdf_abs = false) {
  if (resolution < 8) throw std::invalid_argument("encode: resolution too small");
  if (!cp.in_domain)
    throw OutOfDomainError("encode: distribution flagged outside the Cp domain");
  for (int k = 0; k < cp.size(); ++k) {
    for (double v : {cp.cp_upper[k], cp.cp_lower[k]}) {
      if (!(v >= kDomainYLo && v <= kDomainYHi))
        throw OutOfDomainError("encode: Cp value outside domain at station " +
                               std::to_string(k));
    }
  }

  const auto loop = detail::cp_loop(cp);
  const int nseg = static_cast<int>(loop.size());
  SdfGrid g;
  g.resolution = resolution;
  g.sdf_abs = sdf_abs;
  g.values.resize(static_cast<size_t>(resolution) * resolution);
  const double unit = g.cell_unit();

#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const detail::Pt p{g.cx(ix), g.cy(iy)};
      double d2 = 1e300;
      for (int i = 0, j = nseg - 1; i < nseg; j = i++)
        d2 = std::min(d2, detail::seg_dist2(p, loop[j], loop[i]));
      double v = std::sqrt(d2) / unit;
      if (!sdf_abs && !detail::point_inside(p, loop)) v = -v;
      g.at(ix, iy) = static_cast<float>(v);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// decode: per-column zero crossings of the signed field. Single-cell sign
// islands are treated as noise (morphological cleanup). A short run of
// columns with fewer than two crossings is a pinch (the loop thins below the
// cell size near closures or curve crossings) and is interpolated over;
// anything longer, or a column with more than two crossings, raises
// DecodeError with the column index. The curve ends beyond the outermost
// cell centers are recovered from the distance values themselves: each
// near-boundary margin cell is walked along its distance gradient to a
// sub-cell boundary point. Both curves are then resampled onto the shared
// cosine abscissae.
// ---------------------------------------------------------------------------
inline aero::CpDistribution decode(const SdfGrid& g) {
  if (g.sdf_abs)
    throw DecodeError("decode: unsigned grids carry no inside/outside information");
  const int r = g.resolution;
  const int max_gap = std::max(2, r / 32);

  int first_pos = -1, last_pos = -1;
  for (int ix = 0; ix < r; ++ix) {
    bool pos = false;
    for (int iy = 0; iy < r && !pos; ++iy) pos = g.at(ix, iy) > 0.0f;
    if (pos) {
      if (first_pos < 0) first_pos = ix;
      last_pos = ix;
    }
  }
  if (first_pos < 0) throw DecodeError("decode: grid has no positive region");

  std::vector<double> col_x, col_up, col_lo;
  int gap_run = 0;
  for (int ix = first_pos; ix <= last_pos; ++ix) {
    // sign sequence with single-cell islands merged into their neighbours
    std::vector<bool> pos(static_cast<size_t>(r));
    for (int iy = 0; iy < r; ++iy) pos[iy] = g.at(ix, iy) > 0.0f;
    for (int iy = 1; iy + 1 < r; ++iy)
      if (pos[iy - 1] == pos[iy + 1] && pos[iy] != pos[iy - 1]) pos[iy] = pos[iy - 1];

    std::vector<double> crossings;
    for (int iy = 0; iy + 1 < r; ++iy) {
      if (pos[iy] == pos[iy + 1]) continue;
      const double v0 = g.at(ix, iy), v1 = g.at(ix, iy + 1);
      double t = 0.5;
      if ((v0 > 0.0) != (v1 > 0.0) && v1 != v0) t = v0 / (v0 - v1);
      crossings.push_back(g.cy(iy) + t * (g.cy(iy + 1) - g.cy(iy)));
    }
    if (crossings.size() > 2)
      throw DecodeError("decode: column " + std::to_string(ix) + " has " +
                            std::to_string(crossings.size()) + " crossings",
                        ix);
    if (crossings.size() < 2) {
      if (++gap_run > max_gap)
        throw DecodeError("decode: column " + std::to_string(ix) + " has " +
                              std::to_string(crossings.size()) + " crossings",
                          ix);
      continue;
    }
    gap_run = 0;
    col_x.push_back(g.cx(ix));
    col_up.push_back(std::min(crossings[0], crossings[1]));  // suction side sits lower
    col_lo.push_back(std::max(crossings[0], crossings[1]));
  }
  if (col_x.size() < 2) throw DecodeError("decode: fewer than two decodable columns");

  // Margin recovery. The loop extends beyond the outermost cell centers
  // (closures sit between the hull and the domain edge, and the curves turn
  // near-vertical there); the distance values still locate it: every
  // near-boundary margin cell is walked along its distance gradient,
  // boundary = center - v * grad(v)/|grad(v)|. The resulting point cloud is
  // chained onto each curve end by greedy nearest-neighbour steps so corners
  // survive, and stations are later resampled as polyline crossings.
  const double unit = g.cell_unit();
  const double dxr = (kDomainXHi - kDomainXLo) / r, dyr = kDomainYSpan / r;
  auto margin_scan = [&](int ix, bool left_side, double x_edge,
                         std::vector<std::pair<double, double>>& pts) {
    for (int iy = 1; iy + 1 < r; ++iy) {
      const double v = g.at(ix, iy) * unit;  // raw units
      if (std::fabs(v) > 1.5 * std::max(dxr, dyr)) continue;
      // One-sided differences toward the smaller-|v| neighbour stay inside
      // one distance cone, so creases between features do not corrupt the
      // direction estimate.
      double gx;
      if (ix == 0) {
        gx = (g.at(1, iy) - g.at(0, iy)) * unit / dxr;
      } else if (ix + 1 == r) {
        gx = (g.at(ix, iy) - g.at(ix - 1, iy)) * unit / dxr;
      } else if (std::fabs(g.at(ix - 1, iy)) < std::fabs(g.at(ix + 1, iy))) {
        gx = (g.at(ix, iy) - g.at(ix - 1, iy)) * unit / dxr;
      } else {
        gx = (g.at(ix + 1, iy) - g.at(ix, iy)) * unit / dxr;
      }
      double gy;
      if (std::fabs(g.at(ix, iy - 1)) < std::fabs(g.at(ix, iy + 1)))
        gy = (g.at(ix, iy) - g.at(ix, iy - 1)) * unit / dyr;
      else
        gy = (g.at(ix, iy + 1) - g.at(ix, iy)) * unit / dyr;
      const double norm = std::hypot(gx, gy);
      if (norm < 0.35 || norm > 2.5) continue;  // not a distance field here
      const double bx = g.cx(ix) - v * gx / norm;
      const double by = g.cy(iy) - v * gy / norm;
      const bool outside_span = left_side ? bx < x_edge + 1.0 * dxr : bx > x_edge - 1.0 * dxr;
      if (!outside_span || bx < kDomainXLo || bx > kDomainXHi) continue;
      if (by < kDomainYLo || by > kDomainYHi) continue;
      pts.emplace_back(bx, by);
    }
  };
  std::vector<std::pair<double, double>> left_pts, right_pts;
  for (int d = 0; d < 3; ++d) {
    if (first_pos + d < r) margin_scan(first_pos + d, true, col_x.front(), left_pts);
    if (last_pos - d >= 0) margin_scan(last_pos - d, false, col_x.back(), right_pts);
  }

  // Greedy chains in cell-scaled metric from a curve endpoint through the
  // margin cloud; each stops when no unvisited point is within reach. The
  // walk from an anchor sets off along one loop direction and a second pass
  // picks up the other; both branches carry real curve pieces.
  using Poly = std::vector<std::pair<double, double>>;
  auto chains_from = [&](std::pair<double, double> start, const Poly& pts) {
    std::vector<bool> used(pts.size(), false);
    const double reach2 = 4.0 * 4.0;
    auto walk = [&]() {
      Poly out;
      out.push_back(start);
      auto cur = start;
      for (size_t step = 0; step < pts.size(); ++step) {
        int best = -1;
        double best_d2 = reach2;
        for (size_t i = 0; i < pts.size(); ++i) {
          if (used[i]) continue;
          const double dx = (pts[i].first - cur.first) / dxr;
          const double dy = (pts[i].second - cur.second) / dyr;
          const double d2 = dx * dx + dy * dy;
          if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(i);
          }
        }
        if (best < 0) break;
        used[best] = true;
        cur = pts[best];
        out.push_back(cur);
      }
      return out;
    };
    std::vector<Poly> branches;
    branches.push_back(walk());
    branches.push_back(walk());
    return branches;
  };

  // Each curve is a union of polyline pieces: the interior column samples
  // plus the margin branches hanging off both curve ends.
  auto assemble = [&](const std::vector<double>& vals) {
    std::vector<Poly> pieces;
    Poly cols;
    for (size_t k = 0; k < col_x.size(); ++k) cols.emplace_back(col_x[k], vals[k]);
    pieces.push_back(std::move(cols));
    for (auto& b : chains_from({col_x.front(), vals.front()}, left_pts))
      if (b.size() > 1) pieces.push_back(std::move(b));
    for (auto& b : chains_from({col_x.back(), vals.back()}, right_pts))
      if (b.size() > 1) pieces.push_back(std::move(b));
    return pieces;
  };
  const auto pieces_up = assemble(col_up);
  const auto pieces_lo = assemble(col_lo);

  // Station value = extreme crossing of the piece union with the vertical
  // line at the station (min for the suction side, max for the lower side).
  auto resample = [&](const std::vector<Poly>& pieces, bool take_min) {
    const auto xs = aero::surface_abscissae();
    std::vector<double> out(xs.size());
    double x_lo = 1e300, x_hi = -1e300;
    std::pair<double, double> p_lo{0, 0}, p_hi{0, 0};
    for (const auto& poly : pieces)
      for (const auto& p : poly) {
        if (p.first < x_lo) {
          x_lo = p.first;
          p_lo = p;
        }
        if (p.first > x_hi) {
          x_hi = p.first;
          p_hi = p;
        }
      }
    auto crossing = [&](double x, bool& found) {
      double best = 0.0;
      found = false;
      for (size_t pi = 0; pi < pieces.size(); ++pi) {
        const auto& poly = pieces[pi];
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
          const auto& a = poly[i];
          const auto& b = poly[i + 1];
          // margin chains (pieces beyond the column samples at index 0) may
          // hop between loop pieces; skip those long jumps
          if (pi > 0) {
            const double ddx = (b.first - a.first) / dxr, ddy = (b.second - a.second) / dyr;
            if (ddx * ddx + ddy * ddy > 2.5 * 2.5) continue;
          }
          const double xm = std::min(a.first, b.first), xM = std::max(a.first, b.first);
          if (x < xm || x > xM) continue;
          const double w = xM > xm ? (x - a.first) / (b.first - a.first) : 0.0;
          const double y = a.second + w * (b.second - a.second);
          if (!found || (take_min ? y < best : y > best)) {
            best = y;
            found = true;
          }
        }
      }
      return best;
    };
    for (size_t k = 0; k < xs.size(); ++k) {
      // Stations outside the reconstructed x-extent re-evaluate just inside
      // it, so corner noise at the closures cannot leave them valueless.
      const double eps = 0.05 * dxr;
      const double x = std::clamp(xs[k], x_lo + eps, x_hi - eps);
      bool found = false;
      double best = crossing(x, found);
      if (!found) best = xs[k] <= x_lo ? p_lo.second : p_hi.second;
      out[k] = best;
    }
    return out;
  };

  aero::CpDistribution cp;
  cp.xs = aero::surface_abscissae();
  cp.cp_upper = resample(pieces_up, /*take_min=*/true);
  cp.cp_lower = resample(pieces_lo, /*take_min=*/false);
  cp.in_domain = true;
  return cp;
}

// ---------------------------------------------------------------------------
// Grid file: one JSON header line {domain, resolution, sdf_abs}, then
// row-major little-endian float32 payload.
// ---------------------------------------------------------------------------
inline void write_grid(std::ostream& os, const SdfGrid& g) {
  nlohmann::json hdr;
  hdr["resolution"] = g.resolution;
  hdr["domain"] = {{kDomainXLo, kDomainXHi}, {kDomainYLo, kDomainYHi}};
  hdr["sdf_abs"] = g.sdf_abs;
  os << hdr.dump() << "\n";
  static_assert(sizeof(float) == 4);
  os.write(reinterpret_cast<const char*>(g.values.data()),
           static_cast<std::streamsize>(g.values.size() * sizeof(float)));
}

inline void write_grid(const std::string& path, const SdfGrid& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  write_grid(os, g);
}

inline SdfGrid read_grid(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("grid file: missing header");
  const auto hdr = nlohmann::json::parse(line);
  SdfGrid g;
  g.resolution = hdr.at("resolution").get<int>();
  g.sdf_abs = hdr.at("sdf_abs").get<bool>();
  g.values.resize(static_cast<size_t>(g.resolution) * g.resolution);
  is.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(g.values.size() * sizeof(float)));
  if (!is) throw IoError("grid file: truncated payload");
  return g;
}

inline SdfGrid read_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  return read_grid(is);
}

}  // namespace foilgen::sdf
