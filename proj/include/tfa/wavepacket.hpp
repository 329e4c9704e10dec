#pragma once

// Single-scale wave packet decomposition f = sum_{n,l} f_{k,n,l}.

#include "tfa/spectral.hpp"

#include <compare>
#include <map>
#include <utility>

namespace tfa {

struct PacketIndex {
  int k = 0;
  Index n = 0;  // spatial cell, I_{k,n} = [n 2^-k, (n+1) 2^-k)
  Index l = 0;  // frequency shift, window starts at 2^(k-1) l

  auto operator<=>(const PacketIndex&) const = default;
};

/// Inclusive range [3, m - 5] of scales the decomposition resolves on N = 2^m.
std::pair<int, int> admissible_scales(Index n);

/// Frequency shifts l with 2^(k-1) l in [-N/2, N/2).
std::pair<Index, Index> shift_range(Index n, int k);

/// Multiplier of f * psi_{k,l} in FFT bin order. The window is wrapped mod N so the
/// shifts tile the whole frequency circle.
RealSignal packet_window(Index n, int k, Index l);

Signal packet_component(const Signal& f, const PacketIndex& idx);

std::map<PacketIndex, Signal> decompose_scale(const Signal& f, int k);

/// Smallest C with |f_{k,n,l}(x)| <= C (1 + d(x,I)/|I|)^-N1 (1/|I|) int |f(y)| (1 + |x-y|/|I|)^-M1 dy
/// on every grid point. O(N^2).
Real localization_profile(const Signal& f, const PacketIndex& idx, int n1, int m1);

}  // namespace tfa
