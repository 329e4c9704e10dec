#include "tfa/forms.hpp"

#include "tfa/sizes.hpp"

#include <iostream>
#include <limits>

namespace tfa {

namespace {

const Window& lowpass() {
  static const Window w = build_lowpass();
  return w;
}

const Window& band() {
  static const Window w = band_from_lowpass(build_lowpass());
  return w;
}

void require_pair(const Signal& f1, const Signal& f2) {
  require_grid(f1.size());
  if (f1.size() != f2.size()) throw InvalidInput("signals have different lengths");
}

void require_level(Index n, Real level) {
  if (!std::isfinite(level)) throw InvalidInput("dilation level must be finite");
  if (std::exp2(level + 1) > static_cast<Real>(n)) {
    throw InvalidInput("lowpass of width 2^" + std::to_string(level) + " overflows N = " + std::to_string(n));
  }
}

// Trigonometric interpolation onto the doubled grid.
Signal upsample(const Spectrum& F) {
  const Index n = F.size();
  Spectrum G = Spectrum::zero(2 * n);
  for (Index xi = -n / 2; xi < n / 2; ++xi) G(xi) = F(xi);
  return inverse_transform(G);
}

std::vector<int> active_scales(const OperatorConfig& cfg, bool truncated) {
  std::vector<int> ks;
  for (int k : cfg.scales) {
    if (!truncated || k >= cfg.truncation) ks.push_back(k);
  }
  return ks;
}

Signal sum_pieces(const Signal& f1, const Signal& f2, const Signal& f3, const OperatorConfig& cfg,
                  bool truncated) {
  require_pair(f1, f2);
  require_pair(f1, f3);
  if (!(cfg.alpha > 0) || !(cfg.beta > 0)) throw InvalidInput("alpha and beta must be positive");
  const auto ks = active_scales(cfg, truncated);
  Signal out = Signal::Zero(f1.size());
  if (ks.empty()) {
    std::cerr << "warning: no scales in range, operator is zero\n";
    return out;
  }
  for (int k : ks) out += bht_piece(f1, f2, cfg.alpha, k).cwiseProduct(band_piece(f3, cfg.beta, k));
  return out;
}

}  // namespace

Signal bht_piece_at_level(const Signal& f1, const Signal& f2, Real level) {
  require_pair(f1, f2);
  const Index n = f1.size();
  require_level(n, level);
  const Real d = std::exp2(level);
  const Signal g1 = upsample(forward_transform(f1));
  const Signal g2 = upsample(forward_transform(f2));

  // K(t) = sum_{eta in [-N, N)} theta(eta / d) e^{2 pi i eta t / 2N}.
  Spectrum Khat = Spectrum::zero(2 * n);
  for (Index eta = -n; eta < n; ++eta) Khat(eta) = lowpass()(static_cast<Real>(eta) / d);
  const Signal K = inverse_transform(Khat);

  const Index m = 2 * n;
  Signal out(n);
  for (Index i = 0; i < n; ++i) {
    Complex acc = 0;
    const Index c = 2 * i;
    for (Index t = 0; t < m; ++t) acc += g1((c - t + m) % m) * g2((c + t) % m) * K(t);
    out(i) = acc / static_cast<Real>(m);
  }
  return out;
}

Signal bht_piece(const Signal& f1, const Signal& f2, Real alpha, int k) {
  return bht_piece_at_level(f1, f2, alpha * k);
}

Signal bht_piece_frequency(const Signal& f1, const Signal& f2, Real alpha, int k) {
  require_pair(f1, f2);
  const Index n = f1.size();
  require_level(n, alpha * k);
  const Real d = std::exp2(alpha * k);
  const Spectrum F1 = forward_transform(f1), F2 = forward_transform(f2);
  Spectrum H = Spectrum::zero(n);
  for (Index x1 = -n / 2; x1 < n / 2; ++x1) {
    for (Index x2 = -n / 2; x2 < n / 2; ++x2) {
      const Real w = lowpass()(static_cast<Real>(x1 - x2) / d);
      if (w != 0) H(x1 + x2) += F1(x1) * F2(x2) * w;
    }
  }
  return inverse_transform(H);
}

int band_scale(Real beta, int k) { return static_cast<int>(std::floor(beta * k)); }

Signal band_piece(const Signal& f3, Real beta, int k) { return scale_filter(f3, band(), band_scale(beta, k)); }

Signal operator_full(const Signal& f1, const Signal& f2, const Signal& f3, const OperatorConfig& cfg) {
  return sum_pieces(f1, f2, f3, cfg, false);
}

Signal operator_truncated(const Signal& f1, const Signal& f2, const Signal& f3, const OperatorConfig& cfg) {
  return sum_pieces(f1, f2, f3, cfg, true);
}

Complex quadform_full(const Signal& f1, const Signal& f2, const Signal& f3, const Signal& f4,
                      const OperatorConfig& cfg) {
  require_pair(f1, f4);
  const Signal T = operator_full(f1, f2, f3, cfg);
  return T.cwiseProduct(f4.conjugate()).mean();
}

std::vector<Complex> quadform_model_terms(const TileSet& S, const Signal& f1, const Signal& f2,
                                          const Signal& f3, const Signal& f4) {
  require_pair(f1, f2);
  require_pair(f1, f3);
  require_pair(f1, f4);
  PacketBank b1(f1), b2(f2), b3(f3), b4(f4);
  std::vector<Complex> out;
  out.reserve(S.size());
  for (const Tile& s : S) {
    const Signal p = b1.packet(s, 1).cwiseProduct(b2.packet(s, 2)).cwiseProduct(b3.packet(s, 3));
    out.push_back(p.cwiseProduct(b4.packet(s, 4).conjugate()).mean());
  }
  return out;
}

Complex quadform_model(const TileSet& S, const Signal& f1, const Signal& f2, const Signal& f3,
                       const Signal& f4) {
  Complex acc = 0;
  for (const Complex& c : quadform_model_terms(S, f1, f2, f3, f4)) acc += c;
  return acc;
}

TreeBound tree_form_bound(const Tree& T, const Signal& f1, const Signal& f2, const Signal& f3,
                          const Signal& f4, Real mu, Real p3, Real f3_measure) {
  if (!is_tree(T)) throw InvalidInput("tile set is not a tree with top " + to_string(T.top));
  TreeBound b;
  b.lhs = std::abs(quadform_model(T.members, f1, f2, f3, f4));
  b.rhs = mu * T.time().length() * size(T.members, f1, 1).value * size(T.members, f2, 2).value *
          size(T.members, f4, 4).value * std::pow(f3_measure, 1 / p3);
  if (b.rhs > 0) {
    b.ratio = b.lhs / b.rhs;
  } else {
    b.ratio = b.lhs > 0 ? std::numeric_limits<Real>::infinity() : 0;
  }
  return b;
}

}  // namespace tfa
