#include "oracles.hpp"

#include "tfa/forms.hpp"

#include <doctest.h>

using namespace tfa;

namespace {

Signal tone(Index n, Index xi) {
  Signal f(n);
  for (Index i = 0; i < n; ++i) f(i) = std::polar(1.0, 2 * oracle::pi * static_cast<Real>(xi * i) / n);
  return f;
}

// sum over xi1 + xi2 + xi3 = xi4 (mod N) of P1 P2 P3 conj(P4), restricted to bins that carry mass.
Complex cubic_sum(const Signal& p1, const Signal& p2, const Signal& p3, const Signal& p4) {
  const Index n = p1.size();
  const Spectrum S[4] = {forward_transform(p1), forward_transform(p2), forward_transform(p3), forward_transform(p4)};
  std::vector<Index> live[3];
  for (int r = 0; r < 3; ++r) {
    const Real floor = 1e-15 * S[r].bins().cwiseAbs().maxCoeff();
    for (Index b = 0; b < n; ++b) {
      if (std::abs(S[r].bins()(b)) > floor) live[r].push_back(b);
    }
  }
  Complex acc = 0;
  for (Index a : live[0]) {
    for (Index b : live[1]) {
      for (Index c : live[2]) {
        acc += S[0].bins()(a) * S[1].bins()(b) * S[2].bins()(c) * std::conj(S[3].bins()((a + b + c) % n));
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("time and frequency evaluations of a bilinear piece agree") {
  std::mt19937_64 rng(41);
  for (Index n : {64, 128}) {
    const Signal f1 = oracle::noise(rng, n), f2 = oracle::noise(rng, n);
    for (Real alpha : {1.0, 1.5}) {
      for (int k = 1; alpha * k + 1 <= std::log2(static_cast<Real>(n)); ++k) {
        const Signal a = bht_piece(f1, f2, alpha, k), b = bht_piece_frequency(f1, f2, alpha, k);
        CHECK(norm_2(a - b) <= 1e-12 * norm_2(b));
      }
    }
  }
}

TEST_CASE("pairs of tones pick up the lowpass weight of their difference") {
  const Index n = 128;
  const Window theta = build_lowpass();
  for (auto [x1, x2] : {std::pair<Index, Index>{3, 1}, {10, -4}, {-7, -7}, {20, 2}}) {
    const Signal h = bht_piece(tone(n, x1), tone(n, x2), 1.0, 3);
    const Real w = theta(static_cast<Real>(x1 - x2) / 8);
    CHECK(norm_2(h - w * tone(n, x1 + x2)) < 1e-12);
    // The difference of two levels only sees |x1 - x2| between the two widths.
    const Signal d = bht_piece_at_level(tone(n, x1), tone(n, x2), 4) - bht_piece_at_level(tone(n, x1), tone(n, x2), 3);
    const Real dw = theta(static_cast<Real>(x1 - x2) / 16) - theta(static_cast<Real>(x1 - x2) / 8);
    CHECK(norm_2(d - dw * tone(n, x1 + x2)) < 1e-12);
    if (std::abs(x1 - x2) <= 8) CHECK(norm_2(d) < 1e-12);
  }
}

TEST_CASE("bilinear pieces reject widths beyond the grid") {
  const Signal f = Signal::Ones(64);
  CHECK_NOTHROW(bht_piece(f, f, 1.0, 5));
  CHECK_THROWS_AS(bht_piece(f, f, 1.0, 6), InvalidInput);
  CHECK_THROWS_AS(bht_piece_at_level(f, f, std::nan("")), InvalidInput);
  CHECK_THROWS_AS(bht_piece(f, Signal::Ones(32), 1.0, 1), InvalidInput);
}

TEST_CASE("band pieces live on their annulus") {
  std::mt19937_64 rng(42);
  const Index n = 256;
  const Signal f = oracle::noise(rng, n);
  for (auto [beta, k] : {std::pair{1.0, 3}, {0.5, 9}, {1.5, 3}}) {
    const int b = band_scale(beta, k);
    const Spectrum G = forward_transform(band_piece(f, beta, k));
    for (Index xi = -n / 2; xi < n / 2; ++xi) {
      const Real a = std::abs(static_cast<Real>(xi));
      if (a <= std::ldexp(1.0, b) || a >= std::ldexp(1.0, b + 2)) CHECK(std::abs(G(xi)) < 1e-15);
    }
  }
  CHECK(band_scale(1.5, 3) == 4);
  const Signal g = oracle::noise(rng, n);
  CHECK(norm_2(band_piece(2.0 * f + g, 1, 4) - 2.0 * band_piece(f, 1, 4) - band_piece(g, 1, 4)) < 1e-13);
}

TEST_CASE("operator sums and forms") {
  std::mt19937_64 rng(43);
  const Index n = 256;
  const Signal f1 = oracle::noise(rng, n), f2 = oracle::noise(rng, n), f3 = oracle::noise(rng, n),
               f4 = oracle::noise(rng, n);
  const OperatorConfig cfg{1.5, 1.0, {2, 3, 4}, 3};
  Signal want = Signal::Zero(n);
  for (int k : cfg.scales) want += bht_piece(f1, f2, 1.5, k).cwiseProduct(band_piece(f3, 1.0, k));
  const Signal T = operator_full(f1, f2, f3, cfg);
  CHECK(norm_2(T - want) <= 1e-13 * norm_2(want));
  const Signal Tn = operator_truncated(f1, f2, f3, cfg);
  CHECK(norm_2(T - Tn - bht_piece(f1, f2, 1.5, 2).cwiseProduct(band_piece(f3, 1.0, 2))) <= 1e-13 * norm_2(want));
  const Complex q = quadform_full(f1, f2, f3, f4, cfg);
  CHECK(std::abs(q - T.cwiseProduct(f4.conjugate()).mean()) < 1e-14);
  const OperatorConfig none{1.5, 1.0, {}, 0};
  CHECK(norm_2(operator_full(f1, f2, f3, none)) == 0);
  CHECK_THROWS_AS(operator_full(f1, f2, f3, OperatorConfig{0, 1, {2}, 0}), InvalidInput);
}

TEST_CASE("model form against a frequency sum") {
  std::mt19937_64 rng(44);
  const Index n = 256;
  const Signal f1 = oracle::noise(rng, n), f2 = oracle::noise(rng, n), f3 = oracle::noise(rng, n),
               f4 = oracle::noise(rng, n);
  const TileSet S = model_tiles(n, {2});
  REQUIRE(S.size() > 4);
  const auto terms = quadform_model_terms(S, f1, f2, f3, f4);
  Complex total = 0;
  for (std::size_t i = 0; i < S.size(); i += 7) {
    const Tile& s = S[i];
    const Complex want =
        cubic_sum(tile_packet(f1, s, 1), tile_packet(f2, s, 2), tile_packet(f3, s, 3), tile_packet(f4, s, 4));
    CHECK(std::abs(terms[i] - want) <= 1e-10 * std::max(std::abs(want), 1e-6));
  }
  for (const Complex& c : terms) total += c;
  CHECK(std::abs(quadform_model(S, f1, f2, f3, f4) - total) < 1e-14);
}

TEST_CASE("tree form bound") {
  std::mt19937_64 rng(45);
  const Index n = 512;
  const TileSet S = model_tiles(n, {2, 4});
  const Tile top = S[S.size() / 2];
  const Tree T = maximal_tree(S, top, 1);
  const Signal f1 = oracle::noise(rng, n), f2 = oracle::noise(rng, n), f3 = oracle::noise(rng, n),
               f4 = oracle::noise(rng, n);
  const TreeBound b = tree_form_bound(T, f1, f2, f3, f4, 1, 1.5, 0.5);
  CHECK(std::isfinite(b.ratio));
  CHECK(b.rhs > 0);
  CHECK(b.ratio == doctest::Approx(b.lhs / b.rhs));
  const TreeBound zero = tree_form_bound(T, Signal::Zero(n), f2, f3, f4, 1, 1.5, 0.5);
  CHECK(zero.lhs == 0);
  CHECK(zero.ratio == 0);
  Tree broken = T;
  broken.members.push_back(Tile{2, 0, 7});
  broken.members = make_tileset(broken.members);
  if (!is_tree(broken)) CHECK_THROWS_AS(tree_form_bound(broken, f1, f2, f3, f4, 1, 1.5, 0.5), InvalidInput);
}
