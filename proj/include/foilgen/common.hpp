// Shared error types, deterministic RNG helpers and small utilities.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace foilgen {

// ---------------------------------------------------------------------------
// Errors. Preconditions throw std::invalid_argument; domain failures get
// their own types so callers can react per failure class.
// ---------------------------------------------------------------------------

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RepairError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& msg, int column_ = -1)
      : std::runtime_error(msg), column(column_) {}
  int column;  // offending grid column, -1 when not column specific
};
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OptimizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG. std::mt19937_64 has a standard-specified output
// sequence; the distribution helpers below avoid the implementation-defined
// std::*_distribution classes so streams are identical everywhere.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  // 53-bit mantissa draw in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {   // inclusive bounds
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

// Box-Muller; consumes two uniforms per pair, caches the second value.
class NormalSampler {
 public:
  double operator()(Rng& rng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline double normal(Rng& rng) {
  NormalSampler s;
  return s(rng);
}

// splitmix64, used to derive child seeds from a root seed plus a label.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Hierarchical seed derivation: every component draws its seed from the
// root seed and a stable label, so one root seed pins the whole pipeline.
inline std::uint64_t derive_seed(std::uint64_t root, const std::string& label) {
  return splitmix64(root ^ fnv1a(label));
}

// ---------------------------------------------------------------------------
// Number formatting. Shortest round-trip representation so emitted text
// files reload bit-exactly.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw IoError("bad number: '" + s + "'");
  return v;
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace foilgen
