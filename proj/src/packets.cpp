#include "tfa/packets.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

namespace tfa {

namespace {

void require_packet(const Tile& s, int j, Index n) {
  require_grid(n);
  if (j < 1 || j > 4) throw InvalidInput("slot index must be 1..4");
  if (!tile_admissible(s, n, 1u << (j - 1))) {
    throw InvalidInput("tile " + to_string(s) + " slot " + std::to_string(j) +
                       " does not fit a grid of size " + std::to_string(n));
  }
}

RealSignal cutoff_for(const Tile& s, Index n) { return smoothed_indicator(n, s.time(), s.k); }

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

RealSignal tile_window(const Tile& s, int j, Index n) {
  require_packet(s, j, n);
  static const Window psi = build_base_window();
  const Real a = s.packet_band(j).lo;
  const Real w = std::ldexp(Real(1), s.k);
  RealSignal out(n);
  for (Index b = 0; b < n; ++b) {
    const Real xi = static_cast<Real>(Spectrum::frequency(b, n));
    out(b) = psi(2 * (xi - a) / w - Real(0.5));
  }
  return out;
}

Signal tile_packet(const Signal& f, const Tile& s, int j) {
  const Index n = f.size();
  Spectrum F = forward_transform(f);
  F.bins().array() *= tile_window(s, j, n).array().cast<Complex>();
  return inverse_transform(F).cwiseProduct(cutoff_for(s, n).cast<Complex>());
}

Signal packet_adjoint(const Signal& g, const Tile& s, int j) {
  const Index n = g.size();
  const RealSignal w = tile_window(s, j, n);
  Spectrum G = forward_transform(g.cwiseProduct(cutoff_for(s, n).cast<Complex>()));
  G.bins().array() *= w.array().cast<Complex>();
  return inverse_transform(G);
}

PacketBank::PacketBank(const Signal& f) : spectrum_(forward_transform(f)) {}

const Signal& PacketBank::convolved(const Tile& s, int j) {
  const auto key = std::make_tuple(s.k, s.packet_band(j).lo);
  auto it = conv_.find(key);
  if (it != conv_.end()) return it->second;
  Spectrum G(spectrum_.bins().cwiseProduct(tile_window(s, j, size()).cast<Complex>()));
  return conv_.emplace(key, inverse_transform(G)).first->second;
}

const RealSignal& PacketBank::cutoff(const Tile& s) {
  const auto key = std::make_pair(s.k, s.n);
  auto it = chi_.find(key);
  if (it != chi_.end()) return it->second;
  const auto base_key = std::make_pair(s.k, std::int64_t(0));
  auto base = chi_.find(base_key);
  if (base == chi_.end()) {
    base = chi_.emplace(base_key, cutoff_for(Tile{s.k, 0, 0}, size())).first;
  }
  const Index stride = size() >> s.k;
  return chi_.emplace(key, circular_shift(base->second, s.n * stride)).first->second;
}

Signal PacketBank::packet(const Tile& s, int j) {
  require_packet(s, j, size());
  const Signal& g = convolved(s, j);
  return g.cwiseProduct(cutoff(s).cast<Complex>());
}

Real PacketBank::energy(const Tile& s, int j) {
  require_packet(s, j, size());
  const Signal& g = convolved(s, j);
  const RealSignal& chi = cutoff(s);
  return (g.cwiseAbs2().array() * chi.array().square()).mean();
}

std::vector<Real> packet_energies(const TileSet& P, const Signal& f, int j) {
  PacketBank bank(f);
  std::vector<Real> out;
  out.reserve(P.size());
  for (const Tile& s : P) out.push_back(bank.energy(s, j));
  return out;
}

Real packet_operator_norm(const Tile& s, const Tile& t, Index n) {
  const RealSignal W = tile_window(s, 1, n).cwiseProduct(tile_window(t, 1, n));
  std::vector<Index> bins;
  for (Index b = 0; b < n; ++b) {
    if (W(b) != 0) bins.push_back(b);
  }
  if (bins.empty()) return 0;

  // With a = chi*_s, b = chi*_t and C the multiplier W:
  //   ||D_a C D_b||^2 = lambda_max(G_a W G_b W),  G_c[xi, zeta] = (c^2)^(xi - zeta)
  // restricted to the support of W.
  const Spectrum A2 = forward_transform(cutoff_for(s, n).array().square().matrix().cast<Complex>());
  const Spectrum B2 = forward_transform(cutoff_for(t, n).array().square().matrix().cast<Complex>());
  const Index r = static_cast<Index>(bins.size());
  Eigen::MatrixXcd Ga(r, r), Gb(r, r);
  Eigen::VectorXd w(r);
  for (Index p = 0; p < r; ++p) {
    w(p) = W(bins[static_cast<std::size_t>(p)]);
    const Index xi = Spectrum::frequency(bins[static_cast<std::size_t>(p)], n);
    for (Index q = 0; q < r; ++q) {
      const Index zeta = Spectrum::frequency(bins[static_cast<std::size_t>(q)], n);
      Ga(p, q) = A2(xi - zeta);
      Gb(p, q) = B2(xi - zeta);
    }
  }
  const Eigen::MatrixXcd L = psd_sqrt(Gb) * w.asDiagonal() * psd_sqrt(Ga);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L.adjoint() * L, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Eigen::MatrixXcd packet_operator_matrix(const Tile& s, const Tile& t, Index n) {
  const RealSignal W = tile_window(s, 1, n).cwiseProduct(tile_window(t, 1, n));
  const Signal c = inverse_transform(Spectrum(W.cast<Complex>())) / static_cast<Real>(n);
  const RealSignal a = cutoff_for(s, n), b = cutoff_for(t, n);
  Eigen::MatrixXcd K(n, n);
  for (Index y = 0; y < n; ++y) {
    for (Index x = 0; x < n; ++x) K(x, y) = a(x) * c((x - y + n) % n) * b(y);
  }
  return K;
}

Real packet_operator_norm_dense(const Tile& s, const Tile& t, Index n) {
  if (n > 1024) throw InvalidInput("dense kernel limited to N <= 1024");
  const RealSignal W = tile_window(s, 1, n).cwiseProduct(tile_window(t, 1, n));
  if (W.cwiseAbs().maxCoeff() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(packet_operator_matrix(s, t, n));
  return svd.singularValues()(0);
}

}  // namespace tfa
