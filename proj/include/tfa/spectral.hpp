#pragma once

// Discrete Fourier analysis on the unit torus sampled at N = 2^m points.
//
// Conventions used throughout the library:
//   * grid points x_i = i / N, i = 0..N-1;
//   * integrals are grid means, so ||f||_2 = ((1/N) sum |f_i|^2)^(1/2);
//   * F(xi) = (1/N) sum_i f_i exp(-2 pi i xi x_i) for xi in [-N/2, N/2).
// With these, a constant 1 has F(0) = 1 and Parseval reads ||f||_2^2 = sum |F|^2.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace tfa {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;
using Signal = Eigen::VectorXcd;
using RealSignal = Eigen::VectorXd;

/// Thrown for any rejected precondition (bad lengths, inadmissible scales, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Half-open real interval [lo, hi).
struct Interval {
  Real lo = 0;
  Real hi = 0;

  Real length() const { return hi - lo; }
  Real center() const { return 0.5 * (lo + hi); }
  bool empty() const { return !(hi > lo); }
  bool contains(Real x) const { return lo <= x && x < hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  bool operator==(const Interval&) const = default;
};

/// Gap between two disjoint intervals on the line (0 if they intersect or touch).
inline Real distance(const Interval& a, const Interval& b) {
  if (a.hi <= b.lo) return b.lo - a.hi;
  if (b.hi <= a.lo) return a.lo - b.hi;
  return 0;
}

/// Distance on the unit torus between two points.
inline Real torus_distance(Real a, Real b) {
  Real d = std::fmod(std::abs(a - b), Real(1));
  return std::min(d, 1 - d);
}

/// Distance on the unit torus between a point and an interval of length <= 1.
Real torus_distance(Real x, const Interval& I);

/// Distance on the unit torus between two intervals.
Real torus_distance(const Interval& a, const Interval& b);

bool is_power_of_two(Index n);

/// Throws unless n = 2^m with m >= 3.
void require_grid(Index n);

inline int log2_exact(Index n) {
  int m = 0;
  while ((Index(1) << m) < n) ++m;
  return m;
}

/// Fourier coefficients indexed by integer frequency xi in [-N/2, N/2).
/// Storage is in FFT order (bin b <-> xi = b for b < N/2, xi = b - N otherwise).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(Eigen::VectorXcd bins) : bins_(std::move(bins)) {}

  static Spectrum zero(Index n) { return Spectrum(Eigen::VectorXcd::Zero(n)); }

  Index size() const { return bins_.size(); }

  Complex& operator()(Index xi) { return bins_(bin(xi, size())); }
  const Complex& operator()(Index xi) const { return bins_(bin(xi, size())); }

  const Eigen::VectorXcd& bins() const { return bins_; }
  Eigen::VectorXcd& bins() { return bins_; }

  /// Storage bin of frequency xi (taken mod N).
  static Index bin(Index xi, Index n) {
    Index b = xi % n;
    return b < 0 ? b + n : b;
  }
  /// Representative frequency in [-N/2, N/2) of a storage bin.
  static Index frequency(Index b, Index n) { return b < n / 2 ? b : b - n; }

 private:
  Eigen::VectorXcd bins_;
};

Spectrum forward_transform(const Signal& f);
Signal inverse_transform(const Spectrum& F);

/// Mean of |f|^2 to the power 1/2.
Real norm_2(const Signal& f);

// ---------------------------------------------------------------------------
// Smooth profiles. All are C-infinity, built from the glue h(t) = exp(-1/t).

template <typename Scalar>
Scalar smooth_glue(Scalar t) {
  return t > Scalar(0) ? std::exp(-Scalar(1) / t) : Scalar(0);
}

/// 0 for t <= 0, 1 for t >= 1/2, monotone in between.
template <typename Scalar>
Scalar smooth_ramp(Scalar t) {
  if (t <= Scalar(0)) return Scalar(0);
  if (t >= Scalar(0.5)) return Scalar(1);
  const Scalar a = smooth_glue(Scalar(2) * t);
  const Scalar b = smooth_glue(Scalar(1) - Scalar(2) * t);
  return a / (a + b);
}

/// Real frequency profile with a closed support interval; zero outside it.
struct Window {
  std::function<Real(Real)> profile;
  Interval support;

  Real operator()(Real xi) const {
    if (xi <= support.lo || xi >= support.hi) return 0;
    return profile(xi);
  }
};

/// psi-hat: ramp(xi) - ramp(xi - 1/2); support [0, 1]; half-integer shifts sum to 1.
Window build_base_window();

/// theta: 1 on [-1, 1], 0 outside [-2, 2], radially non-increasing.
Window build_lowpass();

/// Band Phi2-hat(xi) = lowpass(xi / 2) - lowpass(xi), vanishing for |xi| <= 1 and |xi| >= 4.
Window band_from_lowpass(const Window& lowpass);

/// g with g-hat(xi) = f-hat(xi) * w(xi / dilation). No admissibility check.
Signal apply_multiplier(const Signal& f, const Window& w, Real dilation);

/// Multiplier w(xi / 2^k) applied to f. The dilated support must lie inside
/// [-N/2, N/2]; otherwise the scale is rejected.
Signal scale_filter(const Signal& f, const Window& w, int k);

/// Multiplier values phi-hat(xi / 2^k) of the spatial smoothing kernel phi_k, in
/// FFT bin order. phi-hat(0) = 1, support [-2^(k-2), 2^(k-2)], and phi_k >= 0 on
/// the grid (phi-hat is a normalized autocorrelation of a smooth bump).
RealSignal smoothing_multiplier(Index n, int k);

/// chi*_I = chi_I convolved with phi_k, for |I| = 2^-k aligned to the grid.
RealSignal smoothed_indicator(Index n, const Interval& I, int k);

/// out(i) = v(i - s mod N): translation by s grid cells.
RealSignal circular_shift(const RealSignal& v, Index s);

/// Dyadic Hardy-Littlewood maximal function: at each x the largest mean of |f|
/// over dyadic torus intervals containing x (down to single grid cells).
RealSignal maximal_function(const Signal& f);
RealSignal maximal_function(const RealSignal& f);

/// sup over lambda of lambda * |{g > lambda}| for a nonnegative grid function.
Real weak_quasinorm(const RealSignal& g);

}  // namespace tfa
