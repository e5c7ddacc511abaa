// Deterministic pseudo-transonic pressure solver: incompressible
// constant-source + constant-vortex panel method with a Kutta condition,
// Karman-Tsien compressibility correction, and synthetic shock insertion.
// Stands in for a CFD solver so the inverse-design loop closes exactly.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "foilgen/common.hpp"
#include "foilgen/geometry.hpp"
#include "foilgen/linalg.hpp"

namespace foilgen::aero {

// Plotting window for pressure coefficients; distributions outside it are
// flagged, never clamped.
inline constexpr double kCpDomainLo = -1.5;
inline constexpr double kCpDomainHi = 1.15;

struct FlowConditions {
  double mach = 0.734;
  double alpha_deg = 2.79;
  double gamma = 1.4;
  double reynolds = 6.5e6;  // informational only
};

// Upper/lower surface pressure coefficients on the shared ascending cosine
// abscissae (65 per surface, leading-edge station x = 0 excluded).
struct CpDistribution {
  std::vector<double> xs;
  std::vector<double> cp_upper;
  std::vector<double> cp_lower;
  bool in_domain = true;

  int size() const { return static_cast<int>(xs.size()); }
};

// Shared surface abscissae for a `count`-panel contour (count/2 per surface).
inline std::vector<double> surface_abscissae(int count = 130) {
  const auto grid = geometry::cosine_x_grid(count);
  const int half = count / 2;
  std::vector<double> xs(static_cast<size_t>(half));
  for (int k = 0; k < half; ++k) xs[k] = grid[half - 1 - k];
  return xs;
}

struct PanelResult {
  CpDistribution cp;
  double cl_cp = 0.0;           // normal-force coefficient from the Cp integral
  double cl_circulation = 0.0;  // Kutta-Joukowski lift from the bound vortex
};

// ---------------------------------------------------------------------------
// Hess-Smith panel method. Nodes are traversed counterclockwise from the
// trailing edge, so outward normals point to the right of travel. Unknowns
// are one source strength per panel plus a single vortex strength; the
// closing equation enforces equal trailing-edge tangential speeds.
// ---------------------------------------------------------------------------
inline PanelResult panel_solve(const geometry::AirfoilCoords& airfoil, double alpha_deg) {
  const int np = airfoil.size() - 1;
  if (np < 8) throw std::invalid_argument("panel_solve: too few panels");
  if (airfoil.y_scale != 1.0)
    throw std::invalid_argument("panel_solve: expects raw (unscaled) ordinates");

  std::vector<double> mx(np), my(np), len(np), tx(np), ty(np), nx(np), ny(np);
  for (int j = 0; j < np; ++j) {
    const double dx = airfoil.x[j + 1] - airfoil.x[j];
    const double dy = airfoil.y[j + 1] - airfoil.y[j];
    len[j] = std::hypot(dx, dy);
    if (!(len[j] > 1e-12))
      throw SolverError("panel_solve: degenerate panel " + std::to_string(j));
    tx[j] = dx / len[j];
    ty[j] = dy / len[j];
    nx[j] = ty[j];
    ny[j] = -tx[j];
    mx[j] = 0.5 * (airfoil.x[j] + airfoil.x[j + 1]);
    my[j] = 0.5 * (airfoil.y[j] + airfoil.y[j + 1]);
  }

  // Velocity at point p from unit-strength source and vortex sheets on panel j.
  auto influence = [&](int j, double px, double py, bool self, double out[4]) {
    const double rx = px - airfoil.x[j];
    const double ry = py - airfoil.y[j];
    const double xi = rx * tx[j] + ry * ty[j];
    const double eta = rx * nx[j] + ry * ny[j];
    double lnr, dth;
    if (self) {
      lnr = 0.0;
      dth = M_PI;
    } else {
      const double r1 = xi * xi + eta * eta;
      const double r2 = (xi - len[j]) * (xi - len[j]) + eta * eta;
      lnr = 0.5 * std::log(r1 / r2);
      dth = std::atan2(eta, xi - len[j]) - std::atan2(eta, xi);
    }
    const double su = lnr / (2.0 * M_PI), sv = dth / (2.0 * M_PI);
    const double vu = -dth / (2.0 * M_PI), vv = lnr / (2.0 * M_PI);
    out[0] = su * tx[j] + sv * nx[j];  // source, global x
    out[1] = su * ty[j] + sv * ny[j];  // source, global y
    out[2] = vu * tx[j] + vv * nx[j];  // vortex, global x
    out[3] = vu * ty[j] + vv * ny[j];  // vortex, global y
  };

  const double alpha = alpha_deg * M_PI / 180.0;
  const double vinf_x = std::cos(alpha), vinf_y = std::sin(alpha);

  const int n = np + 1;
  linalg::Matrix A(n, n);
  std::vector<double> rhs(static_cast<size_t>(n), 0.0);
  double infl[4];
  for (int i = 0; i < np; ++i) {
    double vsum = 0.0;
    for (int j = 0; j < np; ++j) {
      influence(j, mx[i], my[i], i == j, infl);
      A(i, j) = infl[0] * nx[i] + infl[1] * ny[i];
      vsum += infl[2] * nx[i] + infl[3] * ny[i];
    }
    A(i, np) = vsum;
    rhs[i] = -(vinf_x * nx[i] + vinf_y * ny[i]);
  }
  {  // Kutta row: tangential speeds cancel across the trailing edge
    const int k0 = 0, k1 = np - 1;
    double vsum = 0.0;
    for (int j = 0; j < np; ++j) {
      influence(j, mx[k0], my[k0], j == k0, infl);
      A(np, j) = infl[0] * tx[k0] + infl[1] * ty[k0];
      vsum += infl[2] * tx[k0] + infl[3] * ty[k0];
      influence(j, mx[k1], my[k1], j == k1, infl);
      A(np, j) += infl[0] * tx[k1] + infl[1] * ty[k1];
      vsum += infl[2] * tx[k1] + infl[3] * ty[k1];
    }
    A(np, np) = vsum;
    rhs[np] = -(vinf_x * (tx[k0] + tx[k1]) + vinf_y * (ty[k0] + ty[k1]));
  }

  std::vector<double> sol;
  try {
    sol = linalg::lu_solve(std::move(A), std::move(rhs));
  } catch (const SolverError&) {
    throw SolverError("panel_solve: singular influence matrix");
  }
  const double gamma = sol[np];

  // Tangential velocity and Cp at panel midpoints.
  std::vector<double> cpm(np);
  for (int i = 0; i < np; ++i) {
    double vt = vinf_x * tx[i] + vinf_y * ty[i];
    for (int j = 0; j < np; ++j) {
      influence(j, mx[i], my[i], i == j, infl);
      vt += sol[j] * (infl[0] * tx[i] + infl[1] * ty[i]);
      vt += gamma * (infl[2] * tx[i] + infl[3] * ty[i]);
    }
    cpm[i] = 1.0 - vt * vt;
  }

  // Interpolate midpoint Cp onto the shared node abscissae per surface.
  const int half = np / 2;
  PanelResult res;
  res.cp.xs = surface_abscissae(np);
  auto interp_surface = [&](int p0, int p1, bool reverse) {
    // panels p0..p1 belong to one surface; build ascending (x, cp) samples
    std::vector<double> sx, sc;
    sx.reserve(p1 - p0 + 1);
    if (reverse) {
      for (int j = p1; j >= p0; --j) sx.push_back(mx[j]), sc.push_back(cpm[j]);
    } else {
      for (int j = p0; j <= p1; ++j) sx.push_back(mx[j]), sc.push_back(cpm[j]);
    }
    std::vector<double> out(res.cp.xs.size());
    for (size_t k = 0; k < res.cp.xs.size(); ++k) {
      const double x = res.cp.xs[k];
      if (x <= sx.front()) {
        out[k] = sc.front();
      } else if (x >= sx.back()) {
        out[k] = sc.back();
      } else {
        const auto it = std::upper_bound(sx.begin(), sx.end(), x);
        const size_t hi = static_cast<size_t>(it - sx.begin());
        const double w = (x - sx[hi - 1]) / (sx[hi] - sx[hi - 1]);
        out[k] = sc[hi - 1] + w * (sc[hi] - sc[hi - 1]);
      }
    }
    return out;
  };
  res.cp.cp_upper = interp_surface(0, half - 1, /*reverse=*/true);
  res.cp.cp_lower = interp_surface(half, np - 1, /*reverse=*/false);

  double perimeter = 0.0;
  for (int j = 0; j < np; ++j) perimeter += len[j];
  // Positive vortex strength in this panel frame corresponds to clockwise
  // physical circulation, hence positive lift.
  res.cl_circulation = 2.0 * gamma * perimeter;

  double cl = 0.0;
  for (size_t k = 1; k < res.cp.xs.size(); ++k) {
    const double d0 = res.cp.cp_lower[k - 1] - res.cp.cp_upper[k - 1];
    const double d1 = res.cp.cp_lower[k] - res.cp.cp_upper[k];
    cl += 0.5 * (d0 + d1) * (res.cp.xs[k] - res.cp.xs[k - 1]);
  }
  res.cl_cp = cl;
  return res;
}

// ---------------------------------------------------------------------------
// Isentropic sonic threshold: Cp at which the local flow reaches Mach 1.
// ---------------------------------------------------------------------------
inline double critical_cp(double mach, double gamma = 1.4) {
  if (!(mach > 0.0)) throw std::invalid_argument("critical_cp: mach must be > 0");
  const double m2 = mach * mach;
  const double g1 = (gamma - 1.0) / 2.0;
  const double ratio = (1.0 + g1 * m2) / (1.0 + g1);
  return 2.0 / (gamma * m2) * (std::pow(ratio, gamma / (gamma - 1.0)) - 1.0);
}

// Karman-Tsien compressibility correction.
inline double karman_tsien(double cp_inc, double mach) {
  const double beta = std::sqrt(1.0 - mach * mach);
  const double denom = beta + cp_inc * mach * mach / (2.0 * (1.0 + beta));
  if (!(denom > 0.0))
    throw SolverError("karman_tsien: correction breakdown (Cp too negative)");
  return cp_inc / denom;
}

namespace detail {

// Replaces the supersonic pocket [x_a, x_b] with a rooftop plateau at
// (min + cp_star) / 2, led in linearly from Cp(x_a) and recovered through a
// tanh ramp of half-width w centered at x_b. Values outside
// [x_a, x_b + w] are untouched.
inline void insert_shock(const std::vector<double>& xs, std::vector<double>& cp,
                         double cp_star, double w) {
  const int n = static_cast<int>(cp.size());
  int imin = 0;
  for (int i = 1; i < n; ++i)
    if (cp[i] < cp[imin]) imin = i;
  if (!(cp[imin] < cp_star)) return;  // subsonic everywhere

  int ia = imin, ib = imin;
  while (ia > 0 && cp[ia - 1] < cp_star) --ia;
  while (ib + 1 < n && cp[ib + 1] < cp_star) ++ib;
  const int ia0 = std::max(ia - 1, 0);  // anchor just outside the pocket
  const double xa = xs[ia0], xb = xs[ib];
  const double cpa = cp[ia0];
  const double level = 0.5 * (cp[imin] + cp_star);
  const double lead = std::min(2.0 * w, 0.5 * (xb - xa));

  const double s_lo = std::tanh((xa - xb) / w);
  const double s_hi = std::tanh(1.0);
  const std::vector<double> orig = cp;
  for (int i = ia0; i < n; ++i) {
    const double x = xs[i];
    if (x > xb + w) break;
    double roof;
    if (lead > 0.0 && x < xa + lead)
      roof = cpa + (level - cpa) * (x - xa) / lead;
    else
      roof = level;
    double s = (std::tanh((x - xb) / w) - s_lo) / (s_hi - s_lo);
    s = std::clamp(s, 0.0, 1.0);
    cp[i] = (1.0 - s) * roof + s * orig[i];
  }
}

}  // namespace detail

// Drag surrogate knobs; calibration constants, not physics. Values chosen
// so lift-to-drag of the airfoil family lands in the 40-90 range at the
// default desk flow conditions.
struct DragModel {
  double cd0 = 0.006;
  double k_wave = 0.004;
  double k_induced = 0.006;
};

struct SolveOptions {
  double shock_width = 0.02;
};

// Full surrogate: panel solution, Karman-Tsien correction, then synthetic
// shock insertion per surface wherever the corrected Cp crosses the sonic
// threshold. Deterministic: identical inputs give identical outputs.
inline CpDistribution solve(const geometry::AirfoilCoords& airfoil, const FlowConditions& cond,
                            const SolveOptions& opt = {}) {
  if (!(cond.mach > 0.0 && cond.mach < 1.0))
    throw std::invalid_argument("solve: mach must be in (0, 1)");
  if (!(std::fabs(cond.alpha_deg) < 15.0))
    throw std::invalid_argument("solve: |alpha| must be < 15 degrees");
  if (!(opt.shock_width > 0.0 && opt.shock_width <= 0.1))
    throw std::invalid_argument("solve: shock_width must be in (0, 0.1]");

  CpDistribution cp = panel_solve(airfoil, cond.alpha_deg).cp;
  for (auto& v : cp.cp_upper) v = karman_tsien(v, cond.mach);
  for (auto& v : cp.cp_lower) v = karman_tsien(v, cond.mach);

  const double cp_star = critical_cp(cond.mach, cond.gamma);
  detail::insert_shock(cp.xs, cp.cp_upper, cp_star, opt.shock_width);
  detail::insert_shock(cp.xs, cp.cp_lower, cp_star, opt.shock_width);

  cp.in_domain = true;
  for (int k = 0; k < cp.size(); ++k) {
    if (cp.cp_upper[k] < kCpDomainLo || cp.cp_upper[k] > kCpDomainHi ||
        cp.cp_lower[k] < kCpDomainLo || cp.cp_lower[k] > kCpDomainHi)
      cp.in_domain = false;
    if (!std::isfinite(cp.cp_upper[k]) || !std::isfinite(cp.cp_lower[k]))
      throw SolverError("solve: non-finite pressure coefficient");
  }
  return cp;
}

// Cl = integral of (cp_lower - cp_upper) dx by trapezoid on the shared grid.
inline double lift_coefficient(const CpDistribution& cp) {
  double cl = 0.0;
  for (int k = 1; k < cp.size(); ++k) {
    const double d0 = cp.cp_lower[k - 1] - cp.cp_upper[k - 1];
    const double d1 = cp.cp_lower[k] - cp.cp_upper[k];
    cl += 0.5 * (d0 + d1) * (cp.xs[k] - cp.xs[k - 1]);
  }
  return cl;
}

// L/D with a parabolic drag surrogate: wave drag grows with the shock
// strength squared, induced drag with lift squared.
inline double lift_to_drag(const CpDistribution& cp, double f_ss, const DragModel& dm = {}) {
  const double cl = lift_coefficient(cp);
  const double cd = dm.cd0 + dm.k_wave * f_ss * f_ss + dm.k_induced * cl * cl;
  return cl / cd;
}

// ---------------------------------------------------------------------------
// CP CSV: header "x,cp_upper,cp_lower", one row per shared abscissa.
// ---------------------------------------------------------------------------
inline void write_cp_csv(std::ostream& os, const CpDistribution& cp) {
  os << "x,cp_upper,cp_lower\n";
  for (int k = 0; k < cp.size(); ++k)
    os << format_double(cp.xs[k]) << "," << format_double(cp.cp_upper[k]) << ","
       << format_double(cp.cp_lower[k]) << "\n";
}

inline void write_cp_csv(const std::string& path, const CpDistribution& cp) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  write_cp_csv(os, cp);
}

inline CpDistribution read_cp_csv(std::istream& is) {
  CpDistribution cp;
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,cp_upper,cp_lower", 0) != 0)
    throw IoError("cp csv: bad header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw IoError("cp csv: bad row '" + line + "'");
    cp.xs.push_back(parse_double(a));
    cp.cp_upper.push_back(parse_double(b));
    cp.cp_lower.push_back(parse_double(c));
  }
  return cp;
}

inline CpDistribution read_cp_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  return read_cp_csv(is);
}

}  // namespace foilgen::aero
