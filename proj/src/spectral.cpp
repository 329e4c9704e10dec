#include "tfa/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

namespace tfa {

namespace {

Real wrap_from(Real x, Real origin) {
  Real r = std::fmod(x - origin, Real(1));
  if (r < 0) r += 1;
  return origin + r;
}

}  // namespace

Real torus_distance(Real x, const Interval& I) {
  if (I.length() >= 1) return 0;
  const Real y = wrap_from(x, I.lo);
  if (y < I.hi) return 0;
  return std::min(y - I.hi, I.lo + 1 - y);
}

Real torus_distance(const Interval& a, const Interval& b) {
  if (a.length() + b.length() >= 1) return 0;
  // Place b's left end in [a.lo, a.lo + 1) and measure both gaps around the circle.
  const Real blo = wrap_from(b.lo, a.lo);
  const Real bhi = blo + b.length();
  if (blo < a.hi) return 0;
  if (bhi > a.lo + 1) return 0;
  return std::min(blo - a.hi, a.lo + 1 - bhi);
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

void require_grid(Index n) {
  if (!is_power_of_two(n) || n < 8) {
    throw InvalidInput("grid length must be a power of two >= 8, got " + std::to_string(n));
  }
}

Spectrum forward_transform(const Signal& f) {
  require_grid(f.size());
  Eigen::FFT<Real> fft;
  Eigen::VectorXcd out(f.size());
  fft.fwd(out, f);
  out /= static_cast<Real>(f.size());
  return Spectrum(std::move(out));
}

Signal inverse_transform(const Spectrum& F) {
  require_grid(F.size());
  Eigen::FFT<Real> fft;
  Signal out(F.size());
  fft.inv(out, F.bins());
  out *= static_cast<Real>(F.size());
  return out;
}

Real norm_2(const Signal& f) {
  if (f.size() == 0) return 0;
  return std::sqrt(f.squaredNorm() / static_cast<Real>(f.size()));
}

Window build_base_window() {
  return Window{[](Real xi) { return smooth_ramp(xi) - smooth_ramp(xi - Real(0.5)); },
                Interval{0, 1}};
}

Window build_lowpass() {
  return Window{[](Real xi) { return 1 - smooth_ramp((std::abs(xi) - 1) / 2); },
                Interval{-2, 2}};
}

Window band_from_lowpass(const Window& lowpass) {
  const Real reach = 2 * std::max(std::abs(lowpass.support.lo), std::abs(lowpass.support.hi));
  return Window{[lowpass](Real xi) { return lowpass(xi / 2) - lowpass(xi); },
                Interval{-reach, reach}};
}

Signal apply_multiplier(const Signal& f, const Window& w, Real dilation) {
  Spectrum F = forward_transform(f);
  const Index n = F.size();
  for (Index b = 0; b < n; ++b) {
    const Real xi = static_cast<Real>(Spectrum::frequency(b, n));
    F.bins()(b) *= w(xi / dilation);
  }
  return inverse_transform(F);
}

Signal scale_filter(const Signal& f, const Window& w, int k) {
  require_grid(f.size());
  const Real dilation = std::ldexp(Real(1), k);
  const Real reach = std::max(std::abs(w.support.lo), std::abs(w.support.hi)) * dilation;
  if (reach > static_cast<Real>(f.size()) / 2) {
    throw InvalidInput("scale " + std::to_string(k) + " overflows the frequency grid of size " +
                       std::to_string(f.size()));
  }
  return apply_multiplier(f, w, dilation);
}

RealSignal smoothing_multiplier(Index n, int k) {
  require_grid(n);
  // phi-hat(v) = (g * g~)(v) / ||g||^2 for the bump g(u) = h(1 - 64 u^2) on |u| < 1/8, so
  // phi = |g-check|^2 / ||g||^2 >= 0 and its samples at xi / 2^k periodize to a
  // nonnegative grid kernel. Profiles are cached per scale.
  static std::mutex lock;
  static std::map<int, std::vector<Real>> cache;
  const Index reach = k >= 2 ? Index(1) << (k - 2) : 0;  // phi-hat vanishes for |xi| >= 2^(k-2)
  std::vector<Real> profile;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(k);
    if (it == cache.end()) {
      // Trapezoid rule on a grid containing every shift xi / 2^k; the integrand is smooth
      // and flat at the ends, so this converges spectrally.
      const Index per_unit = std::max<Index>(Index(1) << k, 4096);
      const Index half = per_unit / 8;
      std::vector<Real> g(static_cast<std::size_t>(2 * half + 1));
      for (Index e = -half; e <= half; ++e) {
        const Real u = static_cast<Real>(e) / static_cast<Real>(per_unit);
        g[static_cast<std::size_t>(e + half)] = smooth_glue(1 - 64 * u * u);
      }
      const Index stride = per_unit >> k;
      auto corr = [&](Index shift) {
        Real acc = 0;
        for (Index e = -half; e + shift <= half; ++e) {
          acc += g[static_cast<std::size_t>(e + half)] * g[static_cast<std::size_t>(e + shift + half)];
        }
        return acc;
      };
      const Real energy = corr(0);
      std::vector<Real> values(static_cast<std::size_t>(reach) + 1, 0);
      for (Index xi = 0; xi < reach; ++xi) values[static_cast<std::size_t>(xi)] = corr(xi * stride) / energy;
      if (reach == 0) values[0] = 1;
      it = cache.emplace(k, std::move(values)).first;
    }
    profile = it->second;
  }
  RealSignal out = RealSignal::Zero(n);
  for (Index xi = -reach; xi <= reach; ++xi) {
    out(Spectrum::bin(xi, n)) = profile[static_cast<std::size_t>(std::abs(xi))];
  }
  return out;
}

RealSignal smoothed_indicator(Index n, const Interval& I, int k) {
  require_grid(n);
  const Real expected = std::ldexp(Real(1), -k);
  if (std::abs(I.length() - expected) > 1e-12) {
    throw InvalidInput("smoothed indicator needs |I| = 2^-k");
  }
  if (std::ldexp(Real(1), k) > static_cast<Real>(n) / 8) {
    throw InvalidInput("grid does not resolve intervals of length 2^-" + std::to_string(k));
  }
  Signal chi = Signal::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Real x = static_cast<Real>(i) / static_cast<Real>(n);
    if (torus_distance(x, I) == 0 && wrap_from(x, I.lo) < I.hi) chi(i) = 1;
  }
  Spectrum F = forward_transform(chi);
  F.bins().array() *= smoothing_multiplier(n, k).array().cast<Complex>();
  return inverse_transform(F).real();
}

RealSignal circular_shift(const RealSignal& v, Index s) {
  const Index n = v.size();
  RealSignal out(n);
  const Index r = ((s % n) + n) % n;
  out.tail(n - r) = v.head(n - r);
  out.head(r) = v.tail(r);
  return out;
}

RealSignal maximal_function(const RealSignal& f) {
  const Index n = f.size();
  require_grid(n);
  const RealSignal a = f.cwiseAbs();
  RealSignal out = a;
  for (Index block = n; block > 1; block /= 2) {
    for (Index start = 0; start < n; start += block) {
      const Real avg = a.segment(start, block).mean();
      for (Index i = start; i < start + block; ++i) out(i) = std::max(out(i), avg);
    }
  }
  return out;
}

RealSignal maximal_function(const Signal& f) { return maximal_function(RealSignal(f.cwiseAbs())); }

Real weak_quasinorm(const RealSignal& g) {
  const Index n = g.size();
  if (n == 0) return 0;
  std::vector<Real> v(g.data(), g.data() + n);
  for (Real x : v) {
    if (!(x >= 0)) throw InvalidInput("weak quasi-norm needs a nonnegative function");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  Real best = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Count of entries >= v[i] is the last index holding that value, plus one.
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    best = std::max(best, v[i] * static_cast<Real>(i + 1) / static_cast<Real>(n));
  }
  return best;
}

}  // namespace tfa
