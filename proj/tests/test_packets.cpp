#include "oracles.hpp"

#include <doctest.h>

using namespace tfa;

namespace {

Complex mean_inner(const Signal& a, const Signal& b) { return a.dot(b) / static_cast<Real>(a.size()); }

Signal tone(Index n, Index xi) {
  Signal f(n);
  for (Index i = 0; i < n; ++i) f(i) = std::polar(1.0, 2 * oracle::pi * static_cast<Real>(xi * i) / n);
  return f;
}

}  // namespace

TEST_CASE("packet spectra stay strictly inside the band") {
  std::mt19937_64 rng(11);
  const Index n = 512;
  const Signal f = oracle::noise(rng, n);
  for (const Tile& s : {Tile{2, 1, 0}, Tile{2, 3, -2}, Tile{4, 7, 0}}) {
    for (int j : {1, 2, 3, 4}) {
      const RealSignal w = tile_window(s, j, n);
      const Interval band = s.packet_band(j);
      for (Index b = 0; b < n; ++b) {
        const Real xi = static_cast<Real>(Spectrum::frequency(b, n));
        if (w(b) != 0) {
          CHECK(xi > band.lo);
          CHECK(xi < band.hi);
        }
      }
      // The window is convolved with the cutoff, which spreads the spectrum; the
      // packet before cutting off lives only on the window.
      CHECK(w.maxCoeff() == doctest::Approx(s.k == 0 ? 0.0 : 1.0));
    }
  }
}

TEST_CASE("scale zero packets vanish") {
  std::mt19937_64 rng(12);
  const Signal f = oracle::noise(rng, 256);
  CHECK(norm_2(tile_packet(f, Tile{0, 0, 3}, 1)) == 0);
}

TEST_CASE("the adjoint satisfies the inner product identity") {
  std::mt19937_64 rng(13);
  const Index n = 256;
  for (const Tile& s : {Tile{2, 2, 1}, Tile{4, 9, -1}}) {
    for (int j : {1, 4}) {
      const Signal f = oracle::noise(rng, n), g = oracle::noise(rng, n);
      const Complex lhs = mean_inner(g, tile_packet(f, s, j));
      const Complex rhs = mean_inner(packet_adjoint(g, s, j), f);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }
  }
}

TEST_CASE("bank packets match the single tile path") {
  std::mt19937_64 rng(14);
  const Index n = 512;
  const Signal f = oracle::noise(rng, n);
  PacketBank bank(f);
  CHECK(bank.size() == n);
  const TileSet P = make_tileset({Tile{2, 0, 0}, Tile{2, 1, 0}, Tile{4, 3, -1}, Tile{4, 3, 0}});
  for (int j : {1, 2, 4}) {
    const auto e = packet_energies(P, f, j);
    const auto want = oracle::energies(P, f, j);
    for (std::size_t i = 0; i < P.size(); ++i) {
      CHECK(norm_2(bank.packet(P[i], j) - tile_packet(f, P[i], j)) < 1e-13);
      CHECK(bank.energy(P[i], j) == doctest::Approx(want[i]).epsilon(1e-12));
      CHECK(e[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("packets are linear and act on tones through the window") {
  std::mt19937_64 rng(15);
  const Index n = 256;
  const Tile s{2, 1, 1};
  const Signal f = oracle::noise(rng, n), g = oracle::noise(rng, n);
  const Complex c(0.5, -2);
  CHECK(norm_2(tile_packet(c * f + g, s, 1) - (c * tile_packet(f, s, 1) + tile_packet(g, s, 1))) < 1e-12);
  // Window peaks at the band center 16 + 8 + 2 = 26.
  const Index xi = 26;
  const Signal t = tone(n, xi);
  const RealSignal chi = smoothed_indicator(n, s.time(), s.k);
  CHECK(norm_2(tile_packet(t, s, 1) - t.cwiseProduct(chi.cast<Complex>())) < 1e-13);
  CHECK(norm_2(tile_packet(tone(n, 30), s, 1)) < 1e-15);
}

TEST_CASE("inadmissible tiles are rejected") {
  const Signal f = Signal::Ones(256);
  CHECK_THROWS_AS(tile_packet(f, Tile{2, 0, 20}, 1), InvalidInput);
  CHECK_THROWS_AS(tile_packet(f, Tile{2, 0, 0}, 5), InvalidInput);
  CHECK_THROWS_AS(tile_packet(f, Tile{6, 0, 0}, 1), InvalidInput);
}

TEST_CASE("band-reduced operator norm agrees with the dense kernel") {
  for (Index n : {128, 256, 512}) {
    const std::vector<std::pair<Tile, Tile>> pairs = {
        {Tile{2, 0, 0}, Tile{2, 0, 0}}, {Tile{2, 0, 0}, Tile{2, 1, 0}}, {Tile{2, 0, 0}, Tile{2, 3, 0}},
        {Tile{2, 1, 0}, Tile{4, 5, 0}}, {Tile{0, 0, 2}, Tile{2, 2, 0}}};
    for (const auto& [s, t] : pairs) {
      if (!tile_admissible(s, n, 1) || !tile_admissible(t, n, 1)) continue;
      const Real fast = packet_operator_norm(s, t, n);
      const Real dense = packet_operator_norm_dense(s, t, n);
      CHECK(fast == doctest::Approx(dense).epsilon(1e-9).scale(1e-14));
    }
  }
  CHECK_THROWS_AS(packet_operator_norm_dense(Tile{2, 0, 0}, Tile{2, 0, 0}, 2048), InvalidInput);
}

TEST_CASE("disjoint windows give a zero norm") {
  CHECK(packet_operator_norm(Tile{2, 0, 0}, Tile{2, 0, 1}, 512) == 0);
  CHECK(packet_operator_norm_dense(Tile{2, 0, 0}, Tile{2, 0, 1}, 512) == 0);
}

TEST_CASE("a tile against itself is a contraction") {
  for (const Tile& s : {Tile{2, 1, 0}, Tile{4, 3, -1}}) {
    const Real v = packet_operator_norm(s, s, 1024);
    CHECK(v > 0);
    CHECK(v <= 1 + 1e-12);
  }
}
