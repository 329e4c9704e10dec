#include "tfa/wavepacket.hpp"

#include <algorithm>
#include <vector>

namespace tfa {

namespace {

void require_scale(Index n, int k) {
  const auto [lo, hi] = admissible_scales(n);
  if (k < lo || k > hi) {
    throw InvalidInput("scale " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] for N = " + std::to_string(n));
  }
}

void require_index(Index n, const PacketIndex& idx) {
  require_scale(n, idx.k);
  const Index cells = Index(1) << idx.k;
  if (idx.n < 0 || idx.n >= cells) throw InvalidInput("spatial index out of range");
  const auto [lmin, lmax] = shift_range(n, idx.k);
  if (idx.l < lmin || idx.l >= lmax) throw InvalidInput("frequency shift out of range");
}

}  // namespace

std::pair<int, int> admissible_scales(Index n) {
  require_grid(n);
  return {3, log2_exact(n) - 5};
}

std::pair<Index, Index> shift_range(Index n, int k) {
  const Index reach = n >> k;
  return {-reach, reach};
}

RealSignal packet_window(Index n, int k, Index l) {
  static const Window psi = build_base_window();
  const Real scale = std::ldexp(Real(1), k);
  const Real start = std::ldexp(Real(l), k - 1);
  RealSignal w(n);
  for (Index b = 0; b < n; ++b) {
    const Real xi = static_cast<Real>(Spectrum::frequency(b, n));
    Real acc = 0;
    for (int r = -1; r <= 1; ++r) acc += psi((xi + r * static_cast<Real>(n) - start) / scale);
    w(b) = acc;
  }
  return w;
}

Signal packet_component(const Signal& f, const PacketIndex& idx) {
  const Index n = f.size();
  require_grid(n);
  require_index(n, idx);
  Spectrum F = forward_transform(f);
  F.bins().array() *= packet_window(n, idx.k, idx.l).array().cast<Complex>();
  const Interval I{std::ldexp(Real(idx.n), -idx.k), std::ldexp(Real(idx.n + 1), -idx.k)};
  return inverse_transform(F).cwiseProduct(smoothed_indicator(n, I, idx.k).cast<Complex>());
}

std::map<PacketIndex, Signal> decompose_scale(const Signal& f, int k) {
  const Index n = f.size();
  require_grid(n);
  require_scale(n, k);
  const Index cells = Index(1) << k;
  const Index stride = n / cells;
  const RealSignal base = smoothed_indicator(n, Interval{0, std::ldexp(Real(1), -k)}, k);
  std::vector<RealSignal> chi;
  chi.reserve(static_cast<std::size_t>(cells));
  for (Index c = 0; c < cells; ++c) chi.push_back(circular_shift(base, c * stride));

  const Spectrum F = forward_transform(f);
  std::map<PacketIndex, Signal> out;
  const auto [lmin, lmax] = shift_range(n, k);
  for (Index l = lmin; l < lmax; ++l) {
    Spectrum G(F.bins().cwiseProduct(packet_window(n, k, l).cast<Complex>()));
    const Signal g = inverse_transform(G);
    for (Index c = 0; c < cells; ++c) {
      out.emplace(PacketIndex{k, c, l}, g.cwiseProduct(chi[static_cast<std::size_t>(c)].cast<Complex>()));
    }
  }
  return out;
}

Real localization_profile(const Signal& f, const PacketIndex& idx, int n1, int m1) {
  const Index n = f.size();
  const Signal c = packet_component(f, idx);
  const RealSignal a = f.cwiseAbs();
  if (a.maxCoeff() == 0) return 0;
  const Real len = std::ldexp(Real(1), -idx.k);
  const Interval I{idx.n * len, (idx.n + 1) * len};
  const Real dn = static_cast<Real>(n);

  // The averaged term depends on x only through |x - y|, so tabulate the kernel once.
  RealSignal kernel(n);
  for (Index d = 0; d < n; ++d) {
    kernel(d) = std::pow(1 + torus_distance(0.0, d / dn) / len, -m1);
  }
  Real best = 0;
  for (Index i = 0; i < n; ++i) {
    Real avg = 0;
    for (Index j = 0; j < n; ++j) avg += a(j) * kernel((i - j + n) % n);
    avg /= dn * len;
    const Real decay = std::pow(1 + torus_distance(i / dn, I) / len, -n1);
    best = std::max(best, std::abs(c(i)) / (decay * avg));
  }
  return best;
}

}  // namespace tfa
