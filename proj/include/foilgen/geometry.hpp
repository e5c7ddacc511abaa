// Airfoil geometry: CST parameterization and fitting, shared cosine grid,
// Latin hypercube dataset sampling, and spline repair of generated shapes.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "foilgen/common.hpp"
#include "foilgen/linalg.hpp"
#include "foilgen/rae2822_data.hpp"

namespace foilgen::geometry {

// Bernstein coefficients plus trailing-edge half-thicknesses for one
// upper/lower surface pair. Order n means n+1 coefficients per surface.
struct CstParams {
  std::vector<double> upper;
  std::vector<double> lower;
  double zte_upper = 0.0;
  double zte_lower = 0.0;

  bool finite() const {
    return all_finite(upper) && all_finite(lower) && std::isfinite(zte_upper) &&
           std::isfinite(zte_lower);
  }
};

// Closed airfoil contour, counterclockwise from the trailing edge:
// TE -> upper surface -> LE -> lower surface -> TE. First and last point
// share the abscissa x = 1. y_scale records whether ordinates are stored
// raw (1.0) or expanded (e.g. vertical scale 1000).
struct AirfoilCoords {
  std::vector<double> x;
  std::vector<double> y;
  double y_scale = 1.0;

  int size() const { return static_cast<int>(x.size()); }
  // Index of the leading edge (minimum abscissa).
  int le_index() const {
    return static_cast<int>(std::min_element(x.begin(), x.end()) - x.begin());
  }
};

// ---------------------------------------------------------------------------
// Shared cosine abscissae: x_i = (cos(2*pi*i/count) + 1) / 2 for i = 0..count.
// Endpoints are exactly 1, the midpoint exactly 0, and the grid is mirrored
// so that x_i == x_{count-i} bit for bit.
// ---------------------------------------------------------------------------
inline std::vector<double> cosine_x_grid(int count) {
  if (count < 4 || count % 2 != 0)
    throw std::invalid_argument("cosine_x_grid: count must be even and >= 4");
  std::vector<double> xs(static_cast<size_t>(count) + 1);
  const int half = count / 2;
  xs[0] = 1.0;
  xs[half] = 0.0;
  for (int i = 1; i < half; ++i)
    xs[i] = (std::cos(2.0 * M_PI * i / count) + 1.0) / 2.0;
  for (int i = half + 1; i <= count; ++i) xs[i] = xs[count - i];
  return xs;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// CST evaluation: y(x) = sqrt(x) (1-x) * sum_i a_i C(n,i) x^i (1-x)^(n-i)
// plus the trailing-edge term x * z_te.
// ---------------------------------------------------------------------------
inline double cst_evaluate_one(const std::vector<double>& coeffs, double zte, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("cst_evaluate: x outside [0, 1]");
  const int n = static_cast<int>(coeffs.size()) - 1;
  double shape = 0.0;
  for (int i = 0; i <= n; ++i)
    shape += coeffs[i] * binomial(n, i) * std::pow(x, i) * std::pow(1.0 - x, n - i);
  return std::sqrt(x) * (1.0 - x) * shape + x * zte;
}

enum class Side { Upper, Lower };

inline std::vector<double> cst_evaluate(const CstParams& p, Side side,
                                        const std::vector<double>& xs) {
  const auto& c = side == Side::Upper ? p.upper : p.lower;
  const double zte = side == Side::Upper ? p.zte_upper : p.zte_lower;
  std::vector<double> ys(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) ys[i] = cst_evaluate_one(c, zte, xs[i]);
  return ys;
}

// Builds the closed 131-point contour on the canonical grid for parameters p.
inline AirfoilCoords cst_airfoil(const CstParams& p, int count = 130) {
  const auto xs = cosine_x_grid(count);
  AirfoilCoords af;
  af.x = xs;
  af.y.resize(xs.size());
  const int half = count / 2;
  for (int i = 0; i <= half; ++i) af.y[i] = cst_evaluate_one(p.upper, p.zte_upper, xs[i]);
  for (int i = half + 1; i <= count; ++i)
    af.y[i] = cst_evaluate_one(p.lower, p.zte_lower, xs[i]);
  return af;
}

// ---------------------------------------------------------------------------
// Least-squares CST fit of one surface. The trailing-edge term is pinned to
// the ordinate at x = 1 when present (otherwise zero) and the Bernstein
// coefficients are solved by QR. Returns the coefficients and the maximum
// absolute residual.
// ---------------------------------------------------------------------------
struct SurfaceFit {
  std::vector<double> coeffs;
  double zte = 0.0;
  double max_residual = 0.0;
};

inline SurfaceFit fit_surface(const std::vector<double>& xs, const std::vector<double>& ys,
                              int order) {
  if (order < 2) throw std::invalid_argument("fit_surface: order must be >= 2");
  if (xs.size() != ys.size() || xs.size() < static_cast<size_t>(order) + 1)
    throw std::invalid_argument("fit_surface: not enough points");
  if (!all_finite(xs) || !all_finite(ys))
    throw FitError("fit_surface: non-finite coordinate");

  double zte = 0.0;
  for (size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == 1.0) zte = ys[i];

  const int m = static_cast<int>(xs.size());
  const int n = order + 1;
  linalg::Matrix A(m, n);
  std::vector<double> b(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) {
    const double x = xs[r];
    const double cls = std::sqrt(x) * (1.0 - x);
    for (int j = 0; j < n; ++j)
      A(r, j) = cls * binomial(order, j) * std::pow(x, j) * std::pow(1.0 - x, order - j);
    b[r] = ys[r] - x * zte;
  }
  SurfaceFit fit;
  fit.coeffs = linalg::qr_least_squares(A, b);
  fit.zte = zte;
  for (int r = 0; r < m; ++r) {
    double pred = 0.0;
    for (int j = 0; j < n; ++j) pred += A(r, j) * fit.coeffs[j];
    fit.max_residual = std::max(fit.max_residual, std::fabs(pred - b[r]));
  }
  return fit;
}

struct FitReport {
  CstParams params;
  double max_residual = 0.0;
};

// Fits both surfaces of a counterclockwise contour. The contour is split at
// the leading edge (minimum abscissa).
inline FitReport cst_fit(const AirfoilCoords& coords, int order) {
  if (coords.size() < 2 * (order + 1))
    throw std::invalid_argument("cst_fit: too few points");
  const int le = coords.le_index();
  std::vector<double> xu(coords.x.begin(), coords.x.begin() + le + 1);
  std::vector<double> yu(coords.y.begin(), coords.y.begin() + le + 1);
  std::vector<double> xl(coords.x.begin() + le, coords.x.end());
  std::vector<double> yl(coords.y.begin() + le, coords.y.end());

  const auto up = fit_surface(xu, yu, order);
  const auto lo = fit_surface(xl, yl, order);
  FitReport rep;
  rep.params.upper = up.coeffs;
  rep.params.lower = lo.coeffs;
  rep.params.zte_upper = up.zte;
  rep.params.zte_lower = lo.zte;
  rep.max_residual = std::max(up.max_residual, lo.max_residual);
  return rep;
}

// Embedded baseline contour.
inline AirfoilCoords rae2822() {
  AirfoilCoords af;
  af.x.reserve(kRae2822Table.size());
  af.y.reserve(kRae2822Table.size());
  for (const auto& [x, y] : kRae2822Table) {
    af.x.push_back(x);
    af.y.push_back(y);
  }
  return af;
}

// ---------------------------------------------------------------------------
// Latin hypercube sampling of CST coefficient boxes. Each coefficient a gets
// the interval [a(1-fraction), a(1+fraction)] (endpoints swapped for a < 0),
// one sample per stratum per dimension, stratum midpoints, and a seeded
// permutation per dimension. Trailing-edge thickness is held at the baseline.
// ---------------------------------------------------------------------------
inline std::vector<CstParams> sample_dataset(const CstParams& baseline, double fraction,
                                             int n, std::uint64_t seed) {
  if (!(fraction > 0.0)) throw std::invalid_argument("sample_dataset: fraction must be > 0");
  if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
  if (!baseline.finite()) throw std::invalid_argument("sample_dataset: non-finite baseline");

  const int nu = static_cast<int>(baseline.upper.size());
  const int nl = static_cast<int>(baseline.lower.size());
  const int dims = nu + nl;
  std::vector<double> lo(dims), hi(dims);
  for (int d = 0; d < dims; ++d) {
    const double a = d < nu ? baseline.upper[d] : baseline.lower[d - nu];
    double a0 = a * (1.0 - fraction), a1 = a * (1.0 + fraction);
    if (a < 0.0) std::swap(a0, a1);
    lo[d] = a0;
    hi[d] = a1;
  }

  Rng rng(seed);
  std::vector<std::vector<int>> perms(dims);
  for (int d = 0; d < dims; ++d) {
    auto& p = perms[d];
    p.resize(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[uniform_int(rng, 0, i)]);
  }

  std::vector<CstParams> out(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    CstParams p = baseline;
    for (int d = 0; d < dims; ++d) {
      const double v = lo[d] + (perms[d][s] + 0.5) * (hi[d] - lo[d]) / n;
      if (d < nu)
        p.upper[d] = v;
      else
        p.lower[d - nu] = v;
    }
    out[s] = std::move(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spline repair of raw mapped ordinates. Smoothing runs in the cosine angle
// parameter, where spacing is uniform and curvature stays moderate at the
// leading edge; surface crossings are then removed pointwise.
// ---------------------------------------------------------------------------
namespace detail {

// Reinsch-style cubic smoothing spline at uniformly spaced knots.
// Returns the smoothed values; lambda = 0 returns the input.
inline std::vector<double> smooth_uniform(const std::vector<double>& y, double h,
                                          double lambda) {
  const int n = static_cast<int>(y.size());
  if (n < 4 || lambda <= 0.0) return y;
  const int m = n - 2;
  // Q^T y: second differences / h.
  std::vector<double> qty(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) qty[i] = (y[i] - 2.0 * y[i + 1] + y[i + 2]) / h;
  // System (R + lambda Q^T Q) c = Q^T y with R tridiagonal, Q^T Q pentadiagonal.
  linalg::Matrix A(m, m);
  const double r0 = 2.0 * h / 3.0, r1 = h / 6.0;
  const double q0 = 6.0 / (h * h), q1 = -4.0 / (h * h), q2 = 1.0 / (h * h);
  for (int i = 0; i < m; ++i) {
    A(i, i) = r0 + lambda * q0;
    if (i + 1 < m) {
      A(i, i + 1) = r1 + lambda * q1;
      A(i + 1, i) = r1 + lambda * q1;
    }
    if (i + 2 < m) {
      A(i, i + 2) = lambda * q2;
      A(i + 2, i) = lambda * q2;
    }
  }
  const auto c = linalg::lu_solve(A, qty);
  // g = y - lambda Q c.
  std::vector<double> g = y;
  for (int i = 0; i < m; ++i) {
    g[i] -= lambda * c[i] / h;
    g[i + 1] += 2.0 * lambda * c[i] / h;
    g[i + 2] -= lambda * c[i] / h;
  }
  return g;
}

}  // namespace detail

inline constexpr double kRepairSmoothing = 1e-6;

// raw_y: 130 ordinates on the canonical grid (indices 0..129 of the closed
// 131-point contour; the closing trailing-edge ordinate repeats index 0).
inline AirfoilCoords repair(const std::vector<double>& raw_y,
                            double lambda = kRepairSmoothing) {
  if (raw_y.size() != 130) throw std::invalid_argument("repair: expected 130 ordinates");
  if (!all_finite(raw_y)) throw RepairError("repair: non-finite ordinate");

  const auto xs = cosine_x_grid(130);
  const double h = 2.0 * M_PI / 130.0;

  std::vector<double> yu(raw_y.begin(), raw_y.begin() + 66);  // TE..LE
  std::vector<double> yl(raw_y.begin() + 65, raw_y.end());    // LE..x=0.9994
  yl.push_back(raw_y[0]);                                     // closing TE ordinate

  yu = detail::smooth_uniform(yu, h, lambda);
  yl = detail::smooth_uniform(yl, h, lambda);

  // Crossing removal at shared abscissae. Upper index i pairs with lower
  // index 65 - i (i.e. contour index 130 - i).
  double span_lo = 2.0, span_hi = -1.0;
  for (int i = 1; i < 65; ++i) {
    const double t = yu[i] - yl[65 - i];
    if (t < 0.0) {
      span_lo = std::min(span_lo, xs[i]);
      span_hi = std::max(span_hi, xs[i]);
    }
  }
  if (span_hi > span_lo && span_hi - span_lo > 0.10)
    throw RepairError("repair: self-intersection spans more than 10% chord");
  for (int i = 1; i < 65; ++i) {
    double& u = yu[i];
    double& l = yl[65 - i];
    if (u < l) std::swap(u, l);
  }

  AirfoilCoords out;
  out.x = xs;
  out.y.resize(131);
  for (int i = 0; i <= 65; ++i) out.y[i] = yu[i];
  for (int i = 66; i <= 130; ++i) out.y[i] = yl[i - 65];
  return out;
}

// ---------------------------------------------------------------------------
// Airfoil text format: optional "# name" header, one "x y" pair per line,
// counterclockwise from the trailing edge.
// ---------------------------------------------------------------------------
inline void write_airfoil(std::ostream& os, const AirfoilCoords& af,
                          const std::string& name = "") {
  if (!name.empty()) os << "# " << name << "\n";
  for (int i = 0; i < af.size(); ++i)
    os << format_double(af.x[i]) << " " << format_double(af.y[i]) << "\n";
}

inline void write_airfoil(const std::string& path, const AirfoilCoords& af,
                          const std::string& name = "") {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  write_airfoil(os, af, name);
}

inline AirfoilCoords read_airfoil(std::istream& is) {
  AirfoilCoords af;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string sx, sy;
    if (!(ss >> sx >> sy)) throw IoError("airfoil file: bad line '" + line + "'");
    af.x.push_back(parse_double(sx));
    af.y.push_back(parse_double(sy));
  }
  if (af.size() < 3) throw IoError("airfoil file: too few points");
  return af;
}

inline AirfoilCoords read_airfoil(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  return read_airfoil(is);
}

}  // namespace foilgen::geometry
