#pragma once

// Splitting the positive truncation T_N^{alpha,beta} into homogeneous pieces.

#include "tfa/forms.hpp"

#include <vector>

namespace tfa {

/// f^l: spectrum f^(xi) theta(xi / 2^l). Any finite level is accepted; once 2^l >= N/2
/// the multiplier is identically 1.
Signal lowpass_level(const Signal& f, Real level);

/// J(k) = floor((1 - beta/alpha) k), the number of telescoping steps at scale k.
int telescope_depth(Real alpha, Real beta, int k);

/// Pair (m, k) whose difference D_m f3^{beta,k} falls below the truncation after reindexing.
struct BoundaryTerm {
  int m = 0;
  int k = 0;
  auto operator<=>(const BoundaryTerm&) const = default;
};

struct TelescopeDecomposition {
  /// sum_k sum_{j < J(k)} D_{k-j} f3^{beta,k}, with D_m = H^{alpha,m} - H^{alpha,m-1}.
  Signal part_a;
  /// sum_k H^{alpha, k - J(k)} f3^{beta,k}; the dilation 2^{alpha (k - J(k))} is about 2^{beta k}.
  Signal part_b;
  /// sum_{m >= N} D_m sum_{k : k - J(k) < m <= k} f3^{beta,k}.
  Signal term_i;
  /// The same sum over the boundary pairs with m < N.
  Signal term_ii;
  std::vector<BoundaryTerm> boundary;
  std::vector<int> scales;
  /// Largest relative gap between a band sum over consecutive scales and its lowpass difference.
  Real identity_residual = 0;
  /// ||A + B - T_N|| / ||T_N||.
  Real reassembly_residual = 0;
  /// ||I + II - A|| / ||A||.
  Real split_residual = 0;
};

/// theorem: truncation must satisfy N >= 10 alpha / beta. algebraic: any truncation;
/// the identities hold either way.
enum class TruncationRule { theorem, algebraic };

/// Uses the scales of cfg that are >= cfg.truncation; they must be consecutive integers.
TelescopeDecomposition telescope_split(const Signal& f1, const Signal& f2, const Signal& f3,
                                       const OperatorConfig& cfg,
                                       TruncationRule rule = TruncationRule::theorem);

}  // namespace tfa
