#include "tfa/tiles.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace tfa {

namespace {

Real pow2(int e) { return std::ldexp(Real(1), e); }

void require_slot(int j) {
  if (j < 1 || j > 4) throw InvalidInput("slot index must be 1..4, got " + std::to_string(j));
}

void require_order_slot(int j) {
  if (j != 1 && j != 4) throw InvalidInput("tree order is defined for slots 1 and 4, got " + std::to_string(j));
}

}  // namespace

Interval Tile::cell() const {
  const Real w = pow2(k + 2);
  return {w * Real(m), w * Real(m + 1)};
}

Interval Tile::omega(int j) const {
  require_slot(j);
  const Real w = pow2(k);
  const Real base = pow2(k + 2) * Real(m);
  switch (j) {
    case 4: return {base, base + w};
    case 3: return {9 * w, 10 * w};
    default: return {base + 2 * w, base + 3 * w};
  }
}

Interval Tile::packet_band(int j) const {
  require_slot(j);
  if (j != 4) return omega(j);
  const Real w = pow2(k);
  const Real lo = 2 * omega(1).lo + omega(3).lo + w;
  return {lo, lo + w};
}

Tile make_tile(int k, std::int64_t n, std::int64_t m) {
  if (k < 0 || k % 2 != 0) throw InvalidInput("tile scale must be even and nonnegative, got " + std::to_string(k));
  if (k > 60) throw InvalidInput("tile scale too large");
  if (n < 0 || n >= (std::int64_t(1) << k)) throw InvalidInput("spatial index out of range");
  return Tile{k, n, m};
}

TileSet make_tileset(std::vector<Tile> tiles) {
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
  return tiles;
}

bool contains(const TileSet& P, const Tile& t) { return std::binary_search(P.begin(), P.end(), t); }

TileSet set_difference(const TileSet& P, const TileSet& Q) {
  TileSet out;
  std::set_difference(P.begin(), P.end(), Q.begin(), Q.end(), std::back_inserter(out));
  return out;
}

TileSet set_union(const TileSet& P, const TileSet& Q) {
  TileSet out;
  std::set_union(P.begin(), P.end(), Q.begin(), Q.end(), std::back_inserter(out));
  return out;
}

bool is_grid(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size() && v[b].lo < v[a].hi; ++b) {
      const Interval& big = v[a].length() >= v[b].length() ? v[a] : v[b];
      const Interval& small = &big == &v[a] ? v[b] : v[a];
      if (!big.contains(small)) return false;
      if (big.length() < 2 * small.length()) return false;
    }
  }
  return true;
}

bool order_lt(const Tile& s, const Tile& sp, int j) {
  require_order_slot(j);
  return sp.time().contains(s.time()) && s.omega(j).contains(sp.omega(j));
}

Tree maximal_tree(const TileSet& P, const Tile& t, int j) {
  require_order_slot(j);
  if (!contains(P, t)) throw InvalidInput("top " + to_string(t) + " is not in the tile set");
  Tree T{{}, t, j == 1 ? TreeKind::one : TreeKind::four};
  for (const Tile& s : P) {
    if (order_lt(s, t, j)) T.members.push_back(s);
  }
  return T;
}

Tree maximal_union_tree(const TileSet& P, const Tile& t) {
  Tree one = maximal_tree(P, t, 1);
  Tree four = maximal_tree(P, t, 4);
  return Tree{set_union(one.members, four.members), t, TreeKind::union_};
}

bool is_tree(const Tree& T) {
  if (!contains(T.members, T.top)) return false;
  for (const Tile& s : T.members) {
    const bool under1 = order_lt(s, T.top, 1);
    const bool under4 = order_lt(s, T.top, 4);
    switch (T.kind) {
      case TreeKind::one: if (!under1) return false; break;
      case TreeKind::four: if (!under4) return false; break;
      case TreeKind::union_: if (!under1 && !under4) return false; break;
    }
  }
  return true;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& AxiomReport::operator[](const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  throw InvalidInput("no axiom named " + name);
}

AxiomReport verify_axioms(const TileSet& S) {
  auto named = [](const char* name) {
    AxiomResult r;
    r.name = name;
    return r;
  };
  AxiomResult equal = named("omega1_equals_omega2"), width = named("width_is_inverse_length"),
              gap = named("gap_equals_width"), order = named("omega1_above_omega4"),
              tgrid = named("time_grid"), cgrid = named("cell_grid"),
              allin = named("containment_forces_cell");

  auto fail = [](AxiomResult& r, const Tile& a, const Tile& b) {
    if (r.passed) r.witness = std::make_pair(a, b);
    r.passed = false;
  };

  std::vector<Interval> times, cells;
  for (const Tile& s : S) {
    const Real w = 1 / s.time().length();
    if (!(s.omega(1) == s.omega(2))) fail(equal, s, s);
    for (int j : {1, 3, 4}) {
      if (s.omega(j).length() != w) fail(width, s, s);
    }
    if (distance(s.omega(1), s.omega(4)) != s.omega(1).length()) fail(gap, s, s);
    if (!(s.omega(1).center() > s.omega(4).center())) fail(order, s, s);
    times.push_back(s.time());
    cells.push_back(s.cell());
  }
  if (!is_grid(times)) tgrid.passed = false;
  if (!is_grid(cells)) cgrid.passed = false;

  // Recover a witness pair for grid failures by pairwise scan.
  auto grid_witness = [&](AxiomResult& r, auto get) {
    if (r.passed) return;
    for (const Tile& a : S) {
      for (const Tile& b : S) {
        if (!is_grid({get(a), get(b)})) {
          r.witness = std::make_pair(a, b);
          return;
        }
      }
    }
  };
  grid_witness(tgrid, [](const Tile& t) { return t.time(); });
  grid_witness(cgrid, [](const Tile& t) { return t.cell(); });

  for (const Tile& s : S) {
    for (const Tile& sp : S) {
      for (int i : {1, 4}) {
        for (int jp : {1, 4}) {
          const Interval a = s.omega(i), b = sp.omega(jp);
          if (b.contains(a) && !(a == b) && !b.contains(s.cell())) fail(allin, s, sp);
        }
      }
    }
  }
  return AxiomReport{{equal, width, gap, order, tgrid, cgrid, allin}};
}

bool tile_admissible(const Tile& s, Index n, unsigned slots) {
  if (pow2(s.k) > static_cast<Real>(n) / 8) return false;
  const Real half = static_cast<Real>(n) / 2;
  for (int j = 1; j <= 4; ++j) {
    if (!(slots & (1u << (j - 1)))) continue;
    const Interval b = s.packet_band(j);
    if (b.lo < -half || b.hi > half) return false;
  }
  return true;
}

TileSet all_admissible_tiles(Index n, int k_min, int k_max, unsigned slots) {
  require_grid(n);
  std::vector<Tile> out;
  for (int k = std::max(0, k_min + (k_min & 1)); k <= k_max; k += 2) {
    if (pow2(k) > static_cast<Real>(n) / 8) break;
    const std::int64_t reach = n / (std::int64_t(1) << (k + 2)) + 1;
    for (std::int64_t m = -reach; m <= reach; ++m) {
      const Tile probe{k, 0, m};
      if (!tile_admissible(probe, n, slots)) continue;
      for (std::int64_t c = 0; c < (std::int64_t(1) << k); ++c) out.push_back(Tile{k, c, m});
    }
  }
  return make_tileset(std::move(out));
}

TileSet generate_tileset(const TileSetParams& p) {
  if (p.count == 0) return {};
  if (p.k_min > p.k_max || p.k_min < 0) throw InvalidInput("empty or negative scale range");
  const TileSet pool = all_admissible_tiles(p.grid_size, p.k_min, p.k_max, p.slots);
  if (pool.size() < p.count) {
    throw InvalidInput("only " + std::to_string(pool.size()) + " admissible tiles, requested " +
                       std::to_string(p.count));
  }
  // Partial Fisher-Yates keeps the draw uniform over distinct tiles.
  std::vector<Tile> v = pool;
  std::mt19937_64 rng(p.seed);
  for (std::size_t i = 0; i < p.count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, v.size() - 1);
    std::swap(v[i], v[pick(rng)]);
  }
  v.resize(p.count);
  return make_tileset(std::move(v));
}

TileSet read_tiles(std::istream& in) {
  std::vector<Tile> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long k = 0, n = 0, m = 0;
    std::string rest;
    if (!(ss >> k >> n >> m) || (ss >> rest)) {
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 'k n m'");
    }
    out.push_back(make_tile(static_cast<int>(k), n, m));
  }
  return make_tileset(std::move(out));
}

void write_tiles(std::ostream& out, const TileSet& P) {
  for (const Tile& s : P) out << s.k << ' ' << s.n << ' ' << s.m << '\n';
}

std::string to_string(const Tile& s) {
  return "(" + std::to_string(s.k) + ", " + std::to_string(s.n) + ", " + std::to_string(s.m) + ")";
}

}  // namespace tfa
