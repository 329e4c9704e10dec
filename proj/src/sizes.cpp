#include "tfa/sizes.hpp"

#include <algorithm>
#include <limits>

namespace tfa {

namespace {

void require_size_slot(int j) {
  if (j != 1 && j != 2 && j != 4) throw InvalidInput("size is defined for j in {1, 2, 4}, got " + std::to_string(j));
}

void require_energies(const TileSet& P, const std::vector<Real>& e) {
  if (e.size() != P.size()) throw InvalidInput("energy list does not match the tile set");
}

}  // namespace

int size_tree_slot(int j) {
  require_size_slot(j);
  return j == 4 ? 1 : 4;
}

SizeReport size_from_energies(const TileSet& P, const std::vector<Real>& e, int j) {
  require_energies(P, e);
  const int jt = size_tree_slot(j);
  SizeReport out{j, 0, std::nullopt};
  std::optional<std::size_t> best;
  for (std::size_t t = 0; t < P.size(); ++t) {
    Real sum = 0;
    for (std::size_t s = 0; s < P.size(); ++s) {
      if (order_lt(P[s], P[t], jt)) sum += e[s];
    }
    const Real v = std::sqrt(sum / P[t].length());
    if (!best || v > out.value) {
      out.value = v;
      best = t;
    }
  }
  if (best) out.witness = maximal_tree(P, P[*best], jt);
  return out;
}

SizeReport size(const TileSet& P, const Signal& f, int j) {
  require_size_slot(j);
  return size_from_energies(P, packet_energies(P, f, j), j);
}

Real size_sup_weak_from_energies(const TileSet& P, const std::vector<Real>& e, int j, Index n) {
  require_energies(P, e);
  require_grid(n);
  const int jt = size_tree_slot(j);
  Real best = 0;
  for (const Tile& t : P) {
    RealSignal square = RealSignal::Zero(n);
    for (std::size_t s = 0; s < P.size(); ++s) {
      if (!order_lt(P[s], t, jt)) continue;
      const Index cells = n >> P[s].k;
      square.segment(P[s].n * cells, cells).array() += e[s] / P[s].length();
    }
    best = std::max(best, weak_quasinorm(square.cwiseSqrt()) / t.length());
  }
  return best;
}

Real size_sup_weak(const TileSet& P, const Signal& f, int j) {
  require_size_slot(j);
  return size_sup_weak_from_energies(P, packet_energies(P, f, j), j, f.size());
}

Real size_maximal_bound(const TileSet& P, const Signal& f, Index mu, int decay) {
  if (mu < 1 || !is_power_of_two(mu)) throw InvalidInput("mu must be a power of two >= 1");
  const Index n = f.size();
  require_grid(n);
  const RealSignal a = f.cwiseAbs();
  const RealSignal Mf = maximal_function(a);
  const Real tail = std::pow(static_cast<Real>(mu), -decay);
  Real best = 0;
  for (const Tile& s : P) {
    const Index cells = n >> s.k;
    if (cells < 1) throw InvalidInput("tile finer than the grid");
    const Index len = std::min(mu * cells, n);
    const Index start = s.n * cells + cells / 2 - len / 2;
    Real mass = 0;
    Real inf = std::numeric_limits<Real>::infinity();
    for (Index i = 0; i < len; ++i) {
      const Index x = ((start + i) % n + n) % n;
      mass += a(x);
      inf = std::min(inf, Mf(x));
    }
    best = std::max(best, mass / static_cast<Real>(n) / s.length() + tail * inf);
  }
  return best;
}

}  // namespace tfa
