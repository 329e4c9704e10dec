#include "tfa/telescope.hpp"

#include <algorithm>
#include <map>

namespace tfa {

namespace {

Real relative_gap(const Signal& a, const Signal& b) {
  const Real scale = norm_2(b);
  const Real gap = norm_2(a - b);
  return scale > 0 ? gap / scale : gap;
}

}  // namespace

Signal lowpass_level(const Signal& f, Real level) {
  if (!std::isfinite(level)) throw InvalidInput("lowpass level must be finite");
  static const Window theta = build_lowpass();
  return apply_multiplier(f, theta, std::exp2(level));
}

int telescope_depth(Real alpha, Real beta, int k) {
  return static_cast<int>(std::floor((1 - beta / alpha) * k));
}

TelescopeDecomposition telescope_split(const Signal& f1, const Signal& f2, const Signal& f3,
                                       const OperatorConfig& cfg, TruncationRule rule) {
  const Real alpha = cfg.alpha, beta = cfg.beta;
  if (!(beta > 0) || !(alpha > beta)) throw InvalidInput("telescoping needs alpha > beta > 0");
  if (rule == TruncationRule::theorem && cfg.truncation < 10 * alpha / beta) {
    throw InvalidInput("truncation " + std::to_string(cfg.truncation) + " is below 10 alpha / beta = " +
                       std::to_string(10 * alpha / beta));
  }
  TelescopeDecomposition out;
  for (int k : cfg.scales) {
    if (k >= cfg.truncation) out.scales.push_back(k);
  }
  std::sort(out.scales.begin(), out.scales.end());
  if (out.scales.empty()) throw InvalidInput("no scales at or above the truncation");
  for (std::size_t i = 1; i < out.scales.size(); ++i) {
    if (out.scales[i] != out.scales[i - 1] + 1) throw InvalidInput("scales must be consecutive integers");
  }
  const int lo = out.scales.front();
  const Index n = f1.size();

  std::map<Real, Signal> pieces;
  auto H = [&](Real level) -> const Signal& {
    auto it = pieces.find(level);
    if (it == pieces.end()) it = pieces.emplace(level, bht_piece_at_level(f1, f2, level)).first;
    return it->second;
  };
  auto D = [&](int m) -> Signal { return H(alpha * m) - H(alpha * (m - 1)); };
  std::map<int, Signal> bands;
  for (int k : out.scales) bands.emplace(k, band_piece(f3, beta, k));

  out.part_a = Signal::Zero(n);
  out.part_b = Signal::Zero(n);
  Signal truncated = Signal::Zero(n);
  for (int k : out.scales) {
    const int J = telescope_depth(alpha, beta, k);
    truncated += H(alpha * k).cwiseProduct(bands.at(k));
    out.part_b += H(alpha * (k - J)).cwiseProduct(bands.at(k));
    for (int j = 0; j < J; ++j) out.part_a += D(k - j).cwiseProduct(bands.at(k));
  }

  // After m = k - j, each D_m multiplies the bands of k in [m, k_max(m)]; k - J(k) is
  // nondecreasing, so that set is a run of consecutive scales.
  out.term_i = Signal::Zero(n);
  out.term_ii = Signal::Zero(n);
  std::map<int, std::vector<int>> by_m;
  for (int k : out.scales) {
    for (int m = k - telescope_depth(alpha, beta, k) + 1; m <= k; ++m) by_m[m].push_back(k);
  }
  for (const auto& [m, ks] : by_m) {
    Signal bandsum = Signal::Zero(n);
    for (int k : ks) bandsum += bands.at(k);
    if (m >= lo) {
      out.term_i += D(m).cwiseProduct(bandsum);
    } else {
      out.term_ii += D(m).cwiseProduct(bandsum);
      for (int k : ks) out.boundary.push_back(BoundaryTerm{m, k});
    }
    // When the band scales of this run are consecutive integers the sum collapses to a
    // difference of two lowpass levels.
    std::vector<int> b;
    for (int k : ks) b.push_back(band_scale(beta, k));
    bool consecutive = true;
    for (std::size_t i = 1; i < b.size(); ++i) consecutive = consecutive && b[i] == b[i - 1] + 1;
    if (consecutive) {
      const Signal diff = lowpass_level(f3, b.back() + 1) - lowpass_level(f3, b.front());
      out.identity_residual = std::max(out.identity_residual, relative_gap(bandsum, diff));
    }
  }
  std::sort(out.boundary.begin(), out.boundary.end());

  out.reassembly_residual = relative_gap(out.part_a + out.part_b, truncated);
  out.split_residual = relative_gap(out.term_i + out.term_ii, out.part_a);
  return out;
}

}  // namespace tfa
