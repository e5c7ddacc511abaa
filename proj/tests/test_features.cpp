#include "foilgen/features.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace foilgen;
using namespace foilgen::aero;
using namespace foilgen::features;

namespace {

// Piecewise-analytic upper-surface curve with hand-computable features:
// leading-edge drop to the suction peak, a gentle plateau with an optional
// parabolic bump, a steep linear shock rise from x2 to x3, then a mild
// recovery. All anchors are placed on grid nodes.
struct SyntheticSpec {
  int i_sp, i2, i3;       // node indices on the 65-point grid
  double cp_le = 0.6;     // Cp at the first station
  double f_sp;            // suction peak value
  double plateau_rise;    // cp(x2) - cp(x_sp)
  double f_ss;            // shock jump
  double bump = 0.0;      // parabolic bump amplitude over the plateau
  double f_lm = -0.3;     // constant lower surface
};

struct SyntheticCase {
  CpDistribution cp;
  PressureFeatures expected;
  double x_cell = 0.0;  // local grid spacing at the shock for tolerance
};

SyntheticCase make_synthetic(const SyntheticSpec& s) {
  SyntheticCase out;
  auto& cp = out.cp;
  cp.xs = surface_abscissae();
  const int n = 65;
  const double x_sp = cp.xs[s.i_sp], x2 = cp.xs[s.i2], x3 = cp.xs[s.i3];
  const double cp2 = s.f_sp + s.plateau_rise;
  const double cp3 = cp2 + s.f_ss;
  const double steep = s.f_ss / (x3 - x2);
  const double post_slope = 0.04 * steep;  // stays under the 0.1 boundary threshold
  cp.cp_upper.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = cp.xs[k];
    double v;
    if (x <= x_sp) {
      v = s.cp_le + (s.f_sp - s.cp_le) * (x_sp > 0 ? x / x_sp : 1.0);
    } else if (x <= x2) {
      const double t = (x - x_sp) / (x2 - x_sp);
      v = s.f_sp + s.plateau_rise * t + s.bump * t * (1.0 - t);
    } else if (x <= x3) {
      v = cp2 + steep * (x - x2);
    } else {
      v = cp3 + post_slope * (x - x3);
    }
    cp.cp_upper[k] = v;
  }
  cp.cp_lower.assign(n, s.f_lm);

  out.expected.f_sp = s.f_sp;
  out.expected.f_sw = 0.5 * (x2 + x3);
  out.expected.f_ss = s.f_ss;
  out.expected.f_pg = s.plateau_rise / (x2 - x_sp);
  out.expected.f_lm = s.f_lm;
  out.expected.f_area = std::fabs(s.bump) * (x2 - x_sp) / 6.0;  // integral of b*t*(1-t)
  out.x_cell = cp.xs[s.i2 + 1] - cp.xs[s.i2];
  return out;
}

std::vector<SyntheticCase> synthetic_family() {
  std::vector<SyntheticCase> cases;
  int idx = 0;
  for (int v = 0; v < 20; ++v) {
    SyntheticSpec s;
    s.i_sp = 6 + (v % 5);               // x_sp ~ 0.02 .. 0.06
    s.i2 = 28 + (v % 7);                // x2 ~ 0.35 .. 0.52
    s.i3 = s.i2 + 2 + (v % 3);          // 2-4 cells wide
    s.f_sp = -1.4 + 0.025 * v;
    s.plateau_rise = 0.05 + 0.01 * (v % 4);
    s.f_ss = 0.5 + 0.02 * v;
    s.bump = (v % 3 == 0) ? 0.0 : 0.04 + 0.01 * (v % 5);
    s.f_lm = -0.45 + 0.01 * v;
    cases.push_back(make_synthetic(s));
    ++idx;
  }
  return cases;
}

}  // namespace

TEST(DetectAnchors, ConstructedPlateauRamp) {
  // plateau at -1.0 on [0.15, 0.5], linear rise to -0.2 over [0.5, 0.55], flat after
  CpDistribution cp;
  cp.xs = surface_abscissae();
  cp.cp_upper.resize(65);
  for (int k = 0; k < 65; ++k) {
    const double x = cp.xs[k];
    double v;
    if (x < 0.15)
      v = -1.0 + (0.15 - x) * 2.0;  // falls toward the plateau
    else if (x <= 0.5)
      v = -1.0;
    else if (x <= 0.55)
      v = -1.0 + 0.8 * (x - 0.5) / 0.05;
    else
      v = -0.2;
    cp.cp_upper[k] = v;
  }
  cp.cp_lower.assign(65, -0.3);
  const auto an = detect_anchors(cp);
  const double cell = 0.05;  // local spacing near mid-chord
  EXPECT_NEAR(an.x2, 0.5, cell);
  EXPECT_NEAR(an.x3, 0.55, cell);
  EXPECT_NEAR(an.x_sw, 0.525, cell);
  EXPECT_FALSE(an.degenerate);
  EXPECT_LE(an.x2, an.x_sw);
  EXPECT_LE(an.x_sw, an.x3);
}

TEST(DetectAnchors, SmoothIncreasingStillDefined) {
  CpDistribution cp;
  cp.xs = surface_abscissae();
  for (double x : cp.xs) {
    cp.cp_upper.push_back(-1.0 + 0.9 * x * x);
    cp.cp_lower.push_back(-0.2);
  }
  const auto an = detect_anchors(cp);
  EXPECT_FALSE(an.degenerate);
  EXPECT_GT(an.x_sw, 0.15);
  EXPECT_LT(an.x_sw, 1.0);
}

TEST(DetectAnchors, StrictlyDecreasingIsDegenerate) {
  CpDistribution cp;
  cp.xs = surface_abscissae();
  for (double x : cp.xs) {
    cp.cp_upper.push_back(0.5 - 1.2 * x);
    cp.cp_lower.push_back(-0.2);
  }
  const auto an = detect_anchors(cp);
  EXPECT_TRUE(an.degenerate);
  EXPECT_EQ(an.x2, an.x_sw);
  EXPECT_EQ(an.x3, an.x_sw);
}

TEST(ExtractFeatures, TwentyConstructedCurves) {
  for (const auto& c : synthetic_family()) {
    const auto got = extract_features(c.cp);
    EXPECT_FALSE(got.degenerate);
    EXPECT_NEAR(got.f_sp, c.expected.f_sp, 1e-3);
    EXPECT_NEAR(got.f_sw, c.expected.f_sw, c.x_cell);
    EXPECT_NEAR(got.f_ss, c.expected.f_ss, 1e-3);
    EXPECT_NEAR(got.f_pg, c.expected.f_pg, 1e-3);
    EXPECT_NEAR(got.f_lm, c.expected.f_lm, 1e-3);
    EXPECT_NEAR(got.f_area, c.expected.f_area, 1e-3);
  }
}

TEST(ExtractFeatures, LinearPlateauHasZeroArea) {
  SyntheticSpec s;
  s.i_sp = 8;
  s.i2 = 30;
  s.i3 = 33;
  s.f_sp = -1.2;
  s.plateau_rise = 0.1;
  s.f_ss = 0.7;
  s.bump = 0.0;
  const auto c = make_synthetic(s);
  const auto got = extract_features(c.cp);
  EXPECT_NEAR(got.f_area, 0.0, 1e-12);
}

TEST(ExtractFeatures, HandComputedGradient) {
  // cp(x_sp) = -1.2 at x_sp ~ 0.05, cp(x2) = -1.0 at x2 ~ 0.45 -> f_pg = 0.5
  CpDistribution cp;
  cp.xs = surface_abscissae();
  // choose exact node abscissae nearest the nominal anchors
  int isp = 0, i2 = 0;
  for (int k = 0; k < 65; ++k) {
    if (std::fabs(cp.xs[k] - 0.05) < std::fabs(cp.xs[isp] - 0.05)) isp = k;
    if (std::fabs(cp.xs[k] - 0.45) < std::fabs(cp.xs[i2] - 0.45)) i2 = k;
  }
  SyntheticSpec s;
  s.i_sp = isp;
  s.i2 = i2;
  s.i3 = i2 + 3;
  s.f_sp = -1.2;
  s.plateau_rise = 0.2;
  s.f_ss = 0.6;
  const auto c = make_synthetic(s);
  const auto got = extract_features(c.cp);
  const double expected = 0.2 / (cp.xs[i2] - cp.xs[isp]);
  EXPECT_NEAR(got.f_pg, expected, 1e-9);
  EXPECT_NEAR(expected, 0.5, 0.05);  // nominal hand value at the exact anchors
}

TEST(ExtractFeatures, ConstantLowerSurface) {
  SyntheticSpec s;
  s.i_sp = 7;
  s.i2 = 31;
  s.i3 = 34;
  s.f_sp = -1.1;
  s.plateau_rise = 0.08;
  s.f_ss = 0.6;
  s.f_lm = -0.3;
  const auto c = make_synthetic(s);
  EXPECT_DOUBLE_EQ(extract_features(c.cp).f_lm, -0.3);
}

TEST(ExtractFeatures, DegenerateZeroesShockFeatures) {
  CpDistribution cp;
  cp.xs = surface_abscissae();
  for (double x : cp.xs) {
    cp.cp_upper.push_back(0.5 - 1.2 * x);
    cp.cp_lower.push_back(-0.2);
  }
  const auto f = extract_features(cp);
  EXPECT_TRUE(f.degenerate);
  EXPECT_EQ(f.f_ss, 0.0);
  EXPECT_EQ(f.f_pg, 0.0);
  EXPECT_EQ(f.f_area, 0.0);
}

TEST(ExtractFeatures, TranslationCovariance) {
  const auto base = synthetic_family()[4];
  const double c = 0.37;
  auto shifted = base.cp;
  for (auto& v : shifted.cp_upper) v += c;
  for (auto& v : shifted.cp_lower) v += c;
  const auto f0 = extract_features(base.cp);
  const auto f1 = extract_features(shifted);
  EXPECT_NEAR(f1.f_sp, f0.f_sp + c, 1e-12);
  EXPECT_NEAR(f1.f_lm, f0.f_lm + c, 1e-12);
  EXPECT_NEAR(f1.f_sw, f0.f_sw, 1e-12);
  EXPECT_NEAR(f1.f_ss, f0.f_ss, 1e-12);
  EXPECT_NEAR(f1.f_pg, f0.f_pg, 1e-12);
  EXPECT_NEAR(f1.f_area, f0.f_area, 1e-12);
}

TEST(ExtractFeatures, AreaMatchesRefinedQuadrature) {
  // smooth plateau, compare the grid trapezoid against a 10x finer quadrature
  SyntheticSpec s;
  s.i_sp = 8;
  s.i2 = 32;
  s.i3 = 35;
  s.f_sp = -1.25;
  s.plateau_rise = 0.12;
  s.f_ss = 0.65;
  s.bump = 0.09;
  const auto c = make_synthetic(s);
  const auto got = extract_features(c.cp);

  const double xa = c.cp.xs[s.i_sp], xb = c.cp.xs[s.i2];
  const double cpa = c.cp.cp_upper[s.i_sp], cpb = c.cp.cp_upper[s.i2];
  auto curve = [&](double x) {
    const double t = (x - xa) / (xb - xa);
    return s.f_sp + s.plateau_rise * t + s.bump * t * (1.0 - t);
  };
  auto line = [&](double x) { return cpa + (cpb - cpa) * (x - xa) / (xb - xa); };
  double fine = 0.0;
  const int nf = 650;
  for (int k = 1; k <= nf; ++k) {
    const double x0 = xa + (xb - xa) * (k - 1) / nf, x1 = xa + (xb - xa) * k / nf;
    fine += 0.5 * (std::fabs(curve(x0) - line(x0)) + std::fabs(curve(x1) - line(x1))) *
            (x1 - x0);
  }
  EXPECT_NEAR(got.f_area, fine, 1e-4);
}

TEST(ExtractFeatures, SlopeModeReportsMaxSlope) {
  SyntheticSpec s;
  s.i_sp = 8;
  s.i2 = 30;
  s.i3 = 33;
  s.f_sp = -1.2;
  s.plateau_rise = 0.1;
  s.f_ss = 0.7;
  const auto c = make_synthetic(s);
  FeatureConfig cfg;
  cfg.fsw_mode = FswMode::Slope;
  const auto f = extract_features(c.cp, cfg);
  const double steep = s.f_ss / (c.cp.xs[s.i3] - c.cp.xs[s.i2]);
  EXPECT_NEAR(f.f_sw, steep, 0.05 * steep);
}

TEST(FeatureError, Basics) {
  PressureFeatures a = PressureFeatures::from_array({-1.17, 0.59, 0.68, -0.45, -0.26, 0.0765});
  EXPECT_EQ(feature_error(a, a), (std::array<double, 6>{}));
  auto b = a;
  b.f_sp = -1.12;
  EXPECT_NEAR(feature_error(a, b)[0], 0.05, 1e-12);
}

TEST(FeatureError, BatchMeanMatchesHandComputation) {
  std::vector<PressureFeatures> t, o;
  double acc = 0.0;
  for (int i = 0; i < 10; ++i) {
    PressureFeatures a = PressureFeatures::from_array({-1.2, 0.5, 0.6, 0.1, -0.3, 0.05});
    auto b = a;
    b.f_ss += 0.01 * i;
    acc += 0.01 * i;
    t.push_back(a);
    o.push_back(b);
  }
  const auto mae = batch_mae(t, o);
  EXPECT_NEAR(mae[2], acc / 10.0, 1e-12);
  EXPECT_EQ(mae[0], 0.0);
}

TEST(FeatureTypes, PaperStyleConditionVectorsRepresentable) {
  // Condition vectors of the kind used as round-trip inputs
  const std::array<std::array<double, 6>, 4> vecs = {{
      {-1.17, 0.59, 0.68, -0.45, -0.26, 0.0765},
      {-1.30, 0.51, 0.66, -0.36, -0.32, 0.0091},
      {-1.11, 0.56, 0.70, -0.77, -0.41, 0.0779},
      {-1.47, 0.45, 0.72, 0.57, -0.37, 0.0029},
  }};
  for (const auto& v : vecs) {
    const auto f = PressureFeatures::from_array(v);
    EXPECT_GE(f.f_sw, 0.0);
    EXPECT_LE(f.f_sw, 1.0);
    EXPECT_GE(f.f_ss, 0.0);
    EXPECT_GE(f.f_area, 0.0);
  }
}

TEST(FeatureCsv, RoundTrip) {
  std::vector<std::pair<std::string, PressureFeatures>> rows;
  rows.emplace_back("r0", PressureFeatures::from_array({-1.2, 0.5, 0.6, 0.1, -0.3, 0.05}));
  auto degen = PressureFeatures::from_array({-0.8, 0.4, 0, 0, -0.2, 0}, true);
  rows.emplace_back("r1", degen);
  std::stringstream ss;
  write_features_csv(ss, rows);
  const auto back = read_features_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].first, "r0");
  EXPECT_EQ(back[0].second.as_array(), rows[0].second.as_array());
  EXPECT_TRUE(back[1].second.degenerate);
}

// --- cross-module checks against the aero surrogate -----------------------

TEST(AeroFeatures, BaselineShockStrengthPositive) {
  const auto af = geometry::cst_airfoil(geometry::cst_fit(geometry::rae2822(), 6).params);
  FlowConditions fc;  // paper conditions
  const auto cp = solve(af, fc);
  const auto f = extract_features(cp);
  EXPECT_FALSE(f.degenerate);
  EXPECT_GT(f.f_ss, 0.0);
}

TEST(AeroFeatures, ShockWidthRobustness) {
  const auto af = geometry::cst_airfoil(geometry::cst_fit(geometry::rae2822(), 6).params);
  FlowConditions fc;
  SolveOptions wide, narrow;
  wide.shock_width = 0.02;
  narrow.shock_width = 0.001;
  const auto fw = extract_features(solve(af, fc, wide));
  const auto fn = extract_features(solve(af, fc, narrow));
  // one grid cell near mid-chord
  const auto xs = surface_abscissae();
  double cell = 0.0;
  for (int k = 0; k + 1 < 65; ++k)
    if (xs[k] <= fw.f_sw && fw.f_sw <= xs[k + 1]) cell = xs[k + 1] - xs[k];
  EXPECT_LE(std::fabs(fw.f_sw - fn.f_sw), cell);
}
