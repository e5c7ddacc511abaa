// Extraction of the six pressure-coefficient features from a CpDistribution:
// suction peak, shock position, shock strength, pressure gradient, lower
// surface minimum, and suction-platform fluctuation area.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "foilgen/aero.hpp"
#include "foilgen/common.hpp"

namespace foilgen::features {

inline constexpr double kSuctionWindow = 0.15;   // leading-edge search window
inline constexpr double kShockSearchHi = 0.95;   // shock search upper bound; the
                                                 // inviscid trailing-edge recovery
                                                 // otherwise wins the slope argmax
inline constexpr double kSlopeFraction = 0.1;    // shock boundary threshold
inline constexpr int kSmoothWindow = 5;          // moving-average width

// How the shock position feature is reported: the chordwise location of the
// steepest rise (default) or the literal maximum slope value.
enum class FswMode { Position, Slope };
// Where the pressure gradient and fluctuation area are anchored: at the
// suction peak (default) or at the window edge x = 0.15.
enum class AnchorMode { SuctionPeak, WindowEdge };

struct FeatureConfig {
  FswMode fsw_mode = FswMode::Position;
  AnchorMode anchor_mode = AnchorMode::SuctionPeak;
};

struct PressureFeatures {
  double f_sp = 0.0;    // suction peak Cp
  double f_sw = 0.0;    // shock position (x/c) or max slope, per config
  double f_ss = 0.0;    // shock strength (delta Cp)
  double f_pg = 0.0;    // pressure gradient (delta Cp per chord)
  double f_lm = 0.0;    // minimum lower-surface Cp
  double f_area = 0.0;  // suction-platform fluctuation area
  bool degenerate = false;

  std::array<double, 6> as_array() const { return {f_sp, f_sw, f_ss, f_pg, f_lm, f_area}; }
  static PressureFeatures from_array(const std::array<double, 6>& a, bool degen = false) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], degen};
  }
};

inline const std::array<const char*, 6> kFeatureNames = {"f_sp", "f_sw", "f_ss",
                                                         "f_pg", "f_lm", "f_area"};

struct ShockAnchors {
  double x_sp = 0.0, x2 = 0.0, x3 = 0.0, x_sw = 0.0;
  int i_sp = 0, i2 = 0, i3 = 0;  // grid indices of the node anchors
  bool degenerate = false;
};

namespace detail {

inline std::vector<double> moving_average(const std::vector<double>& v, int window) {
  const int n = static_cast<int>(v.size());
  const int hw = window / 2;
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int a = std::max(0, i - hw), b = std::min(n - 1, i + hw);
    double s = 0.0;
    for (int k = a; k <= b; ++k) s += v[k];
    out[i] = s / (b - a + 1);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Anchor detection. The suction peak is the raw minimum inside the window;
// the shock center comes from the smoothed forward-difference slope; the
// start/end anchors x2/x3 are then walked outward on the raw slopes until
// they stay below kSlopeFraction * max_slope (two consecutive quiet
// segments), which keeps the boundaries within a grid cell of sharp kinks.
// ---------------------------------------------------------------------------
inline ShockAnchors detect_anchors(const aero::CpDistribution& cp) {
  const int n = cp.size();
  if (n < 8) throw std::invalid_argument("detect_anchors: too few stations");

  ShockAnchors an;
  int isp = 0;
  for (int k = 1; k < n && cp.xs[k] <= kSuctionWindow; ++k)
    if (cp.cp_upper[k] < cp.cp_upper[isp]) isp = k;
  an.i_sp = isp;
  an.x_sp = cp.xs[isp];

  const auto smooth = detail::moving_average(cp.cp_upper, kSmoothWindow);
  std::vector<double> slope_raw(static_cast<size_t>(n - 1), 0.0);
  std::vector<double> slope_sm(static_cast<size_t>(n - 1), 0.0);
  // slope segment k spans [xs[k], xs[k+1]]; search window is (0.15, 1)
  int ksw = -1;
  double smax_sm = -1e300, smax_raw = -1e300;
  for (int k = 0; k + 1 < n; ++k) {
    const double dx = cp.xs[k + 1] - cp.xs[k];
    slope_raw[k] = (cp.cp_upper[k + 1] - cp.cp_upper[k]) / dx;
    slope_sm[k] = (smooth[k + 1] - smooth[k]) / dx;
    if (cp.xs[k] > kSuctionWindow && cp.xs[k + 1] <= kShockSearchHi) {
      if (slope_sm[k] > smax_sm) {
        smax_sm = slope_sm[k];
        ksw = k;
      }
      smax_raw = std::max(smax_raw, slope_raw[k]);
    }
  }
  if (ksw < 0) throw std::invalid_argument("detect_anchors: empty slope window");
  // Smoothing spreads the ramp over neighbouring segments; re-center on the
  // raw slopes so node anchors stay within a cell of sharp kinks.
  int kref = ksw;
  for (int k = std::max(0, ksw - 2); k <= std::min(n - 2, ksw + 2); ++k) {
    if (!(cp.xs[k] > kSuctionWindow && cp.xs[k + 1] <= kShockSearchHi)) continue;
    if (slope_raw[k] > slope_raw[kref]) kref = k;
  }
  ksw = kref;
  // The shock center is the midpoint of the steep run (raw slope above half
  // the peak) so flat-topped ramps report their center, not an edge segment.
  int r0 = ksw, r1 = ksw;
  const double half_peak = 0.5 * slope_raw[ksw];
  while (r0 - 1 >= 0 && cp.xs[r0 - 1] > kSuctionWindow && slope_raw[r0 - 1] >= half_peak)
    --r0;
  while (r1 + 2 < n && cp.xs[r1 + 2] <= kShockSearchHi && slope_raw[r1 + 1] >= half_peak)
    ++r1;
  an.x_sw = 0.5 * (cp.xs[r0] + cp.xs[r1 + 1]);

  if (!(smax_sm > 0.0)) {  // monotonically falling Cp: degenerate shock
    an.degenerate = true;
    an.i2 = an.i3 = ksw;
    an.x2 = an.x3 = an.x_sw;
    return an;
  }

  const double thresh = kSlopeFraction * smax_raw;
  auto quiet = [&](int k) { return slope_raw[k] < thresh; };
  // upstream boundary: first node below which the raw slope stays quiet
  int i2 = ksw;
  for (int k = ksw - 1; k >= 0 && cp.xs[k] > kSuctionWindow; --k) {
    if (quiet(k) && (k == 0 || quiet(k - 1))) break;
    if (quiet(k)) continue;  // single quiet segment inside the ramp
    i2 = k;
  }
  // downstream boundary
  int i3 = ksw + 1;
  for (int k = ksw + 1; k + 1 < n && cp.xs[k + 1] <= kShockSearchHi; ++k) {
    if (quiet(k) && (k + 2 >= n || quiet(k + 1))) break;
    if (quiet(k)) continue;
    i3 = k + 1;
  }
  an.i2 = i2;
  an.i3 = i3;
  an.x2 = cp.xs[i2];
  an.x3 = cp.xs[i3];
  return an;
}

// Linear interpolation of a surface value at an arbitrary abscissa.
inline double interp_at(const std::vector<double>& xs, const std::vector<double>& vs,
                        double x) {
  if (x <= xs.front()) return vs.front();
  if (x >= xs.back()) return vs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t hi = static_cast<size_t>(it - xs.begin());
  const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
  return vs[hi - 1] + w * (vs[hi] - vs[hi - 1]);
}

inline PressureFeatures extract_features(const aero::CpDistribution& cp,
                                         const FeatureConfig& cfg = {}) {
  const auto an = detect_anchors(cp);
  PressureFeatures f;
  f.f_sp = cp.cp_upper[an.i_sp];
  f.f_lm = *std::min_element(cp.cp_lower.begin(), cp.cp_lower.end());
  f.degenerate = an.degenerate;

  if (cfg.fsw_mode == FswMode::Position) {
    f.f_sw = an.x_sw;
  } else {
    double smax = 0.0;
    for (int k = 0; k + 1 < cp.size(); ++k) {
      if (!(cp.xs[k] > kSuctionWindow && cp.xs[k + 1] <= kShockSearchHi)) continue;
      smax = std::max(smax, (cp.cp_upper[k + 1] - cp.cp_upper[k]) / (cp.xs[k + 1] - cp.xs[k]));
    }
    f.f_sw = smax;
  }

  if (an.degenerate) {
    f.f_ss = 0.0;
    f.f_pg = 0.0;
    f.f_area = 0.0;
    return f;
  }

  f.f_ss = cp.cp_upper[an.i3] - cp.cp_upper[an.i2];

  // gradient / area anchor: suction peak node or the window edge x = 0.15
  double xa;
  double cpa;
  int ia;
  if (cfg.anchor_mode == AnchorMode::SuctionPeak) {
    xa = an.x_sp;
    ia = an.i_sp;
    cpa = cp.cp_upper[ia];
  } else {
    xa = kSuctionWindow;
    cpa = interp_at(cp.xs, cp.cp_upper, xa);
    ia = 0;
    while (ia + 1 < cp.size() && cp.xs[ia + 1] <= xa) ++ia;
  }
  const double dx = an.x2 - xa;
  f.f_pg = dx > 0.0 ? (cp.cp_upper[an.i2] - cpa) / dx : 0.0;

  // area between the upper curve and its chord line from the anchor to x2
  if (an.i2 > ia) {
    auto line = [&](double x) {
      return cpa + (cp.cp_upper[an.i2] - cpa) * (x - xa) / dx;
    };
    double area = 0.0;
    for (int k = ia; k < an.i2; ++k) {
      const double g0 = std::fabs(cp.cp_upper[k] - line(cp.xs[k]));
      const double g1 = std::fabs(cp.cp_upper[k + 1] - line(cp.xs[k + 1]));
      area += 0.5 * (g0 + g1) * (cp.xs[k + 1] - cp.xs[k]);
    }
    f.f_area = area;
  }
  return f;
}

inline std::array<double, 6> feature_error(const PressureFeatures& target,
                                           const PressureFeatures& observed) {
  const auto a = target.as_array(), b = observed.as_array();
  std::array<double, 6> e{};
  for (int i = 0; i < 6; ++i) e[i] = std::fabs(a[i] - b[i]);
  return e;
}

// Per-feature mean absolute error over a batch.
inline std::array<double, 6> batch_mae(const std::vector<PressureFeatures>& target,
                                       const std::vector<PressureFeatures>& observed) {
  if (target.size() != observed.size() || target.empty())
    throw std::invalid_argument("batch_mae: size mismatch");
  std::array<double, 6> acc{};
  for (size_t i = 0; i < target.size(); ++i) {
    const auto e = feature_error(target[i], observed[i]);
    for (int k = 0; k < 6; ++k) acc[k] += e[k];
  }
  for (auto& v : acc) v /= static_cast<double>(target.size());
  return acc;
}

// ---------------------------------------------------------------------------
// Feature CSV: id,f_sp,f_sw,f_ss,f_pg,f_lm,f_area,degenerate_flag
// ---------------------------------------------------------------------------
inline void write_features_csv(std::ostream& os,
                               const std::vector<std::pair<std::string, PressureFeatures>>& rows) {
  os << "id,f_sp,f_sw,f_ss,f_pg,f_lm,f_area,degenerate_flag\n";
  for (const auto& [id, f] : rows) {
    os << id;
    for (double v : f.as_array()) os << "," << format_double(v);
    os << "," << (f.degenerate ? 1 : 0) << "\n";
  }
}

inline std::vector<std::pair<std::string, PressureFeatures>> read_features_csv(
    std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("id,f_sp", 0) != 0)
    throw IoError("features csv: bad header");
  std::vector<std::pair<std::string, PressureFeatures>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw IoError("features csv: bad row '" + line + "'");
    std::array<double, 6> a{};
    for (int i = 0; i < 6; ++i) a[i] = parse_double(cells[i + 1]);
    rows.emplace_back(cells[0], PressureFeatures::from_array(a, cells[7] == "1"));
  }
  return rows;
}

}  // namespace foilgen::features
