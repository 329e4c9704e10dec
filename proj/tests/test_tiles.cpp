#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace tfa;

TEST_CASE("tile geometry") {
  const Tile s = make_tile(2, 1, -3);
  CHECK(s.length() == 0.25);
  CHECK(s.time() == Interval{0.25, 0.5});
  CHECK(s.cell() == Interval{-48, -32});
  CHECK(s.omega(4) == Interval{-48, -44});
  CHECK(s.omega(1) == Interval{-40, -36});
  CHECK(s.omega(2) == s.omega(1));
  CHECK(s.omega(3) == Interval{36, 40});
  // Slot 4 packet band starts one width above 2 lo(omega1) + lo(omega3).
  CHECK(s.packet_band(4) == Interval{-40, -36});
  CHECK(s.packet_band(1) == s.omega(1));
  CHECK_THROWS_AS(s.omega(5), InvalidInput);
}

TEST_CASE("make_tile validates") {
  CHECK_THROWS_AS(make_tile(3, 0, 0), InvalidInput);
  CHECK_THROWS_AS(make_tile(-2, 0, 0), InvalidInput);
  CHECK_THROWS_AS(make_tile(2, 4, 0), InvalidInput);
  CHECK_THROWS_AS(make_tile(2, -1, 0), InvalidInput);
  CHECK_NOTHROW(make_tile(0, 0, 100));
}

TEST_CASE("tile sets are sorted and duplicate free") {
  const TileSet P = make_tileset({Tile{2, 1, 0}, Tile{0, 0, 0}, Tile{2, 1, 0}});
  CHECK(P.size() == 2);
  CHECK(P.front() == Tile{0, 0, 0});
  CHECK(contains(P, Tile{2, 1, 0}));
  CHECK_FALSE(contains(P, Tile{2, 2, 0}));
  const TileSet Q = make_tileset({Tile{2, 1, 0}, Tile{4, 0, 0}});
  CHECK(set_difference(P, Q) == TileSet{Tile{0, 0, 0}});
  CHECK(set_union(P, Q).size() == 3);
}

TEST_CASE("grid property") {
  CHECK(is_grid({{0, 1}, {0, 0.5}, {0.5, 0.75}}));
  CHECK(is_grid({{0, 1}, {0, 1}}));
  CHECK_FALSE(is_grid({{0, 1}, {0.5, 1.5}}));
  CHECK_FALSE(is_grid({{0, 1}, {0.25, 1}}));
}

TEST_CASE("tree order matches integer arithmetic") {
  const TileSet pool = all_admissible_tiles(1024, 0, 4, 0b1001);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t related = 0;
  for (int i = 0; i < 20000; ++i) {
    const Tile& a = pool[pick(rng)];
    const Tile& b = pool[pick(rng)];
    for (int j : {1, 4}) {
      const bool want = oracle::below(a, b, j);
      CHECK(order_lt(a, b, j) == want);
      related += want;
    }
  }
  CHECK(related > 0);
  CHECK_THROWS_AS(order_lt(pool[0], pool[1], 2), InvalidInput);
}

TEST_CASE("maximal trees") {
  // omega1 of t is [10, 11); the k = 2 tiles with m = 0 have omega1 = [8, 12).
  const Tile t{0, 0, 2};
  const TileSet P = make_tileset({t, Tile{2, 0, 0}, Tile{2, 3, 0}, Tile{2, 1, 5}, Tile{4, 0, 0}});
  const Tree one = maximal_tree(P, t, 1);
  CHECK(one.kind == TreeKind::one);
  CHECK(one.members == make_tileset({t, Tile{2, 0, 0}, Tile{2, 3, 0}}));
  CHECK(is_tree(one));
  const Tree four = maximal_tree(P, t, 4);
  // omega4 of the k = 4 tile is [0, 16), which holds omega4 of t = [8, 9).
  CHECK(four.members == make_tileset({t, Tile{4, 0, 0}}));
  const Tree u = maximal_union_tree(P, t);
  CHECK(u.kind == TreeKind::union_);
  CHECK(u.members == set_union(one.members, four.members));
  CHECK(is_tree(u));
  Tree broken = one;
  broken.members = set_union(broken.members, TileSet{Tile{2, 1, 5}});
  CHECK_FALSE(is_tree(broken));
  broken.members = TileSet{Tile{2, 0, 0}};
  CHECK_FALSE(is_tree(broken));
  CHECK_THROWS_AS(maximal_tree(P, Tile{2, 2, 2}, 1), InvalidInput);
}

TEST_CASE("axioms hold on generated sets") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TileSetParams p;
    p.count = 150;
    p.k_min = 0;
    p.k_max = 4;
    p.grid_size = 4096;
    p.seed = seed;
    const AxiomReport r = verify_axioms(generate_tileset(p));
    CHECK(r.results.size() == 7);
    CHECK(r.all_passed());
  }
}

TEST_CASE("odd scales break the containment rule") {
  const AxiomReport r = verify_axioms(make_tileset({Tile{2, 0, 0}, Tile{3, 0, 0}}));
  const AxiomResult& c = r["containment_forces_cell"];
  CHECK_FALSE(c.passed);
  REQUIRE(c.witness);
  CHECK(c.witness->first == Tile{2, 0, 0});
  CHECK(c.witness->second == Tile{3, 0, 0});
  CHECK(r["omega1_equals_omega2"].passed);
  CHECK_THROWS_AS(r["no such axiom"], InvalidInput);
}

TEST_CASE("generation is deterministic and admissible") {
  TileSetParams p;
  p.count = 40;
  p.k_min = 0;
  p.k_max = 4;
  p.grid_size = 1024;
  p.seed = 99;
  const TileSet a = generate_tileset(p), b = generate_tileset(p);
  CHECK(a == b);
  CHECK(a.size() == 40);
  for (const Tile& s : a) {
    CHECK(s.k % 2 == 0);
    CHECK(tile_admissible(s, 1024));
  }
  p.seed = 100;
  CHECK(generate_tileset(p) != a);
  p.count = 100000;
  CHECK_THROWS_AS(generate_tileset(p), InvalidInput);
  p.count = 0;
  CHECK(generate_tileset(p).empty());
}

TEST_CASE("admissibility follows the grid") {
  CHECK(tile_admissible(Tile{2, 0, -1}, 256));
  CHECK_FALSE(tile_admissible(Tile{2, 0, 10}, 256));
  CHECK_FALSE(tile_admissible(Tile{6, 0, 0}, 256));
  for (const Tile& s : all_admissible_tiles(256, 2, 2)) CHECK(tile_admissible(s, 256));
}

TEST_CASE("tile files round-trip") {
  const TileSet P = make_tileset({Tile{0, 0, -3}, Tile{2, 3, 1}, Tile{4, 15, -2}});
  std::stringstream ss;
  write_tiles(ss, P);
  CHECK(read_tiles(ss) == P);
  std::istringstream commented("# header\n\n2 1 0\n  # indented comment\n0 0 4\n");
  CHECK(read_tiles(commented).size() == 2);
  std::istringstream bad("2 1\n");
  CHECK_THROWS_AS(read_tiles(bad), InvalidInput);
  std::istringstream extra("2 1 0 7\n");
  CHECK_THROWS_AS(read_tiles(extra), InvalidInput);
  std::istringstream odd("3 0 0\n");
  CHECK_THROWS_AS(read_tiles(odd), InvalidInput);
  CHECK(to_string(Tile{2, 1, -1}) == "(2, 1, -1)");
}
