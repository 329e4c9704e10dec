#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace tfa;

namespace {

GridSet cells(Index n, std::initializer_list<std::pair<Index, Index>> ranges) {
  GridSet E = GridSet::Constant(n, false);
  for (auto [a, b] : ranges) E.segment(a, b - a).setConstant(true);
  return E;
}

// mu by its definition: smallest power of two >= 1 + gap / |I|, where the gap counts
// whole cells between I and the nearest cell outside Omega.
Index brute_mu(const Tile& s, const GridSet& omega) {
  const Index n = omega.size();
  const Index len = n >> s.k, lo = s.n * len;
  Index gap = n;
  for (Index x = 0; x < n; ++x) {
    if (omega(x)) continue;
    Index d = n;
    for (Index y = lo; y < lo + len; ++y) {
      const Index raw = std::abs(x - y);
      d = std::min(d, std::min(raw, n - raw));
    }
    gap = std::min(gap, d == 0 ? 0 : d - 1);
  }
  Index mu = 1;
  while (static_cast<Real>(mu) < 1 + static_cast<Real>(gap) / static_cast<Real>(len)) mu *= 2;
  return mu;
}

TileSet tiles(std::uint64_t seed, std::size_t count, int j) {
  TileSetParams p;
  p.count = count;
  p.k_min = 0;
  p.k_max = 4;
  p.grid_size = 256;
  p.seed = seed;
  p.slots = 1u << (j - 1);
  return generate_tileset(p);
}

Real fitted_sigma(const TileSet& P, const Signal& f, int j) {
  return std::exp2(std::ceil(std::log2(size(P, f, j).value / norm_2(f))));
}

}  // namespace

TEST_CASE("exceptional set is small and contains the bad points") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto F1 = oracle::signed_set(rng, 512).set, F2 = oracle::signed_set(rng, 512).set,
               F3 = oracle::signed_set(rng, 512).set;
    const ExceptionalSet E = exceptional_set(F1, F2, F3, 1.5);
    CHECK(measure(E.omega) <= 0.25);
    CHECK(E.constant >= 4);
    const RealSignal M1 = maximal_function(indicator(F1));
    for (Index x = 0; x < 512; ++x) {
      if (M1(x) > E.constant * measure(F1)) CHECK(E.omega(x));
    }
  }
  const GridSet a = GridSet::Constant(64, true);
  CHECK_THROWS_AS(exceptional_set(a, GridSet::Constant(32, true), a, 1.5), InvalidInput);
  CHECK_THROWS_AS(exceptional_set(a, a, a, 0), InvalidInput);
}

TEST_CASE("tile mu against its definition") {
  std::mt19937_64 rng(32);
  std::bernoulli_distribution coin(0.15);
  const TileSet P = all_admissible_tiles(256, 0, 4, 1);
  for (int trial = 0; trial < 5; ++trial) {
    GridSet omega(256);
    for (Index i = 0; i < 256; ++i) omega(i) = coin(rng);
    // Grow a solid block so large mu values appear.
    omega.segment(64 * trial % 192, 48).setConstant(true);
    for (const Tile& s : P) CHECK(tile_mu(s, omega) == brute_mu(s, omega));
  }
  const GridSet block = cells(256, {{0, 128}});
  // [48, 64) sits 48 cells from the nearest outside cell 255, so mu = 1 + 48/16 = 4.
  CHECK(tile_mu(Tile{4, 3, 0}, block) == 4);
  CHECK(tile_mu(Tile{4, 0, 0}, block) == 1);
  CHECK(tile_mu(Tile{4, 8, 0}, block) == 1);
  CHECK_THROWS_AS(tile_mu(Tile{0, 0, 0}, GridSet::Constant(64, true)), InvalidInput);
}

TEST_CASE("mu strata partition the tiles") {
  const TileSet P = all_admissible_tiles(256, 0, 4, 1);
  const GridSet omega = cells(256, {{10, 100}, {200, 210}});
  const auto strata = mu_stratify(P, omega);
  TileSet all;
  for (const auto& [mu, S] : strata) {
    CHECK(is_power_of_two(mu));
    for (const Tile& s : S) CHECK(tile_mu(s, omega) == mu);
    all = set_union(all, S);
  }
  CHECK(all == P);
  const auto trivial = mu_stratify(P, GridSet::Constant(256, false));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial.begin()->first == 1);
}

TEST_CASE("selection rejects sigma below the normalized size") {
  std::mt19937_64 rng(33);
  const TileSet P = tiles(1, 40, 1);
  const Signal f = oracle::noise(rng, 256);
  const Real ratio = size(P, f, 1).value / norm_2(f);
  try {
    select_trees(P, f, 1, ratio / 2);
    FAIL("expected a violation");
  } catch (const HypothesisViolation& v) {
    CHECK(v.value == doctest::Approx(size(P, f, 1).value));
    CHECK(is_tree(v.witness));
  }
  CHECK_THROWS_AS(select_trees(P, f, 1, 0), InvalidInput);
  CHECK_THROWS_AS(select_trees(P, f, 3, 1), InvalidInput);
}

TEST_CASE("selection postconditions") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int j = std::array<int, 3>{1, 2, 4}[seed % 3];
    const TileSet P = tiles(seed, 60, j);
    std::mt19937_64 rng(seed);
    const Signal f = realize(draw_pieces(rng, 24), 256).values;
    const Real sigma = fitted_sigma(P, f, j);
    const SelectionOutcome out = select_trees(P, f, j, sigma);
    CHECK(out.j == j);
    CHECK(out.forest.size() == out.threshold_parts.size());
    CHECK(out.trace.size() == out.forest.size());

    TileSet covered = out.residual;
    Real tops = 0;
    for (std::size_t i = 0; i < out.forest.size(); ++i) {
      const Tree& T = out.forest[i];
      CHECK(is_tree(T));
      CHECK(is_tree(out.threshold_parts[i]));
      CHECK(set_difference(out.threshold_parts[i].members, T.members).empty());
      CHECK(out.trace[i] == T.top);
      CHECK(set_difference(covered, T.members).size() == covered.size());  // disjoint
      covered = set_union(covered, T.members);
      tops += T.time().length();
    }
    CHECK(covered == P);
    CHECK(tops == doctest::Approx(out.top_length_sum));
    CHECK(oracle::rescan_size(out.residual, f, j) <= sigma / 2 * norm_2(f) * (1 + 1e-12));

    // Tops come out in order of the selection key.
    const int slot = j == 4 ? 1 : 4;
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
      const Real a = out.trace[i - 1].omega(slot).center(), b = out.trace[i].omega(slot).center();
      if (j == 4) CHECK(a <= b);
      else CHECK(a >= b);
    }
  }
}

TEST_CASE("trees selected later do not reach under earlier tops") {
  std::size_t trees = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int j = std::array<int, 3>{1, 2, 4}[seed % 3];
    const TileSet P = tiles(seed, 80, j);
    std::mt19937_64 rng(seed);
    const Signal f = realize(draw_pieces(rng, 24), 512).values;
    const SelectionOutcome out = select_trees(P, f, j, fitted_sigma(P, f, j));
    trees += out.forest.size();
    CHECK(check_top_disjointness(out).passed);
    CHECK(check_top_disjointness(out, DisjointnessScope::threshold_part).passed);
  }
  CHECK(trees > 30);
}

TEST_CASE("equal frequency intervals can overlap a previous top") {
  // A known case where two trees hold tiles with the same omega1 under overlapping tops.
  TileSetParams p;
  p.count = 80;
  p.k_min = 0;
  p.k_max = 4;
  p.grid_size = 256;
  p.seed = 45;
  p.slots = 1;
  const TileSet P = generate_tileset(p);
  std::mt19937_64 rng(45);
  const Signal f = realize(draw_pieces(rng, 24), 512).values;
  const SelectionOutcome out = select_trees(P, f, 1, fitted_sigma(P, f, 1));
  CHECK(check_top_disjointness(out).passed);
  const DisjointnessReport loose = check_top_disjointness(out, DisjointnessScope::full_tree, Containment::inclusive);
  CHECK_FALSE(loose.passed);
  REQUIRE(loose.counterexample);
  const auto& [a, b, s, sp] = *loose.counterexample;
  CHECK(s.omega(1) == sp.omega(1));

  SelectionOutcome stripped = out;
  stripped.threshold_parts.clear();
  CHECK_THROWS_AS(check_top_disjointness(stripped, DisjointnessScope::threshold_part), InvalidInput);
}

TEST_CASE("sigma strata place every tile once") {
  std::mt19937_64 rng(34);
  const TileSet S = model_tiles(512, {2, 4});
  const Signal f1 = realize(draw_pieces(rng, 12), 512).values;
  const Signal f2 = realize(draw_pieces(rng, 12), 512).values;
  const Signal f4 = oracle::noise(rng, 512);
  const auto strata = sigma_stratify(S, f1, f2, f4);
  REQUIRE_FALSE(strata.empty());
  TileSet all;
  for (const auto& [e, st] : strata) {
    CHECK(st.sigma == std::ldexp(1.0, e));
    CHECK(st.rounds.size() == 3);
    CHECK(set_difference(all, st.tiles).size() == all.size());
    all = set_union(all, st.tiles);
  }
  CHECK(all == S);
  CHECK(sigma_stratify(TileSet{}, f1, f2, f4).empty());
}

TEST_CASE("outcome text format") {
  const TileSet P = make_tileset({Tile{0, 0, 2}, Tile{2, 0, 0}, Tile{2, 3, 0}});
  Signal f = Signal::Zero(256);
  for (Index i = 0; i < 256; ++i) f(i) = std::polar(1.0, 2 * oracle::pi * 10 * static_cast<Real>(i) / 256);
  const SelectionOutcome out = select_trees(P, f, 1, fitted_sigma(P, f, 1));
  REQUIRE_FALSE(out.forest.empty());
  std::ostringstream ss;
  write_outcome(ss, out);
  const std::string text = ss.str();
  CHECK(text.rfind("sigma ", 0) == 0);
  CHECK(text.find("\nj 1\ntrees " + std::to_string(out.forest.size()) + "\n") != std::string::npos);
  CHECK(text.find("top_length_sum ") != std::string::npos);
  CHECK(text.find("\nresidual ") != std::string::npos);
  for (std::size_t i = 0; i < out.forest.size(); ++i) {
    CHECK(text.find("\ntree " + std::to_string(i) + "\ntop ") != std::string::npos);
  }
}
