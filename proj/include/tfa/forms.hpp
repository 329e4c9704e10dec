#pragma once

// The hybrid operator T^{alpha,beta}, its single-scale pieces, and the multilinear forms.

#include "tfa/packets.hpp"

#include <vector>

namespace tfa {

struct OperatorConfig {
  Real alpha = 1;
  Real beta = 1;
  std::vector<int> scales;
  /// operator_truncated keeps scales k >= truncation.
  int truncation = 0;
};

/// H^{alpha,k}(f1, f2)(x) = sum_{xi1, xi2} f1^(xi1) f2^(xi2) theta((xi1 - xi2) / 2^{alpha k}) e^{2 pi i (xi1 + xi2) x}.
/// Evaluated in time: a kernel correlation on the doubled grid, which carries the
/// half-integer shifts the difference variable needs. Requires 2^{alpha k + 1} <= N.
Signal bht_piece(const Signal& f1, const Signal& f2, Real alpha, int k);

/// Same quantity by direct double sum over frequency pairs.
Signal bht_piece_frequency(const Signal& f1, const Signal& f2, Real alpha, int k);

/// Single-scale piece with an arbitrary real dilation d = 2^{level}.
Signal bht_piece_at_level(const Signal& f1, const Signal& f2, Real level);

/// f3^{beta,k}: band window at scale floor(beta k).
Signal band_piece(const Signal& f3, Real beta, int k);
int band_scale(Real beta, int k);

Signal operator_full(const Signal& f1, const Signal& f2, const Signal& f3, const OperatorConfig& cfg);
Signal operator_truncated(const Signal& f1, const Signal& f2, const Signal& f3, const OperatorConfig& cfg);

/// Mean of T(f1, f2, f3) conj(f4).
Complex quadform_full(const Signal& f1, const Signal& f2, const Signal& f3, const Signal& f4,
                      const OperatorConfig& cfg);

/// sum_s mean(f1_{s1} f2_{s2} f3_{s3} conj(f4_{s4})).
Complex quadform_model(const TileSet& S, const Signal& f1, const Signal& f2, const Signal& f3,
                       const Signal& f4);

/// Per-tile terms of quadform_model in S's order.
std::vector<Complex> quadform_model_terms(const TileSet& S, const Signal& f1, const Signal& f2,
                                          const Signal& f3, const Signal& f4);

struct TreeBound {
  Real lhs = 0;
  Real rhs = 0;
  Real ratio = 0;
};

/// lhs = |Lambda_T|, rhs = mu |I_T| size_1(T, f1) size_2(T, f2) size_4(T, f4) |F3|^{1/p3}.
/// ratio is 0 when both sides vanish.
TreeBound tree_form_bound(const Tree& T, const Signal& f1, const Signal& f2, const Signal& f3,
                          const Signal& f4, Real mu, Real p3, Real f3_measure);

}  // namespace tfa
