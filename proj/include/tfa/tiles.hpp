#pragma once

// Dyadic 4-tiles and the tree combinatorics built on them.

#include "tfa/spectral.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tfa {

/// Tile (k, n, m) with k even. Frequencies are integers, times are fractions of the torus.
///   I_s    = [n 2^-k, (n+1) 2^-k)
///   cell   = [2^(k+2) m, 2^(k+2) (m+1))
///   omega4 = first quarter of the cell, omega1 = omega2 = third quarter
///   omega3 = [9 2^k, 10 2^k)
struct Tile {
  int k = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;

  auto operator<=>(const Tile&) const = default;

  Real length() const { return std::ldexp(Real(1), -k); }
  Interval time() const { return {Real(n) * length(), Real(n + 1) * length()}; }
  Interval cell() const;
  Interval omega(int j) const;
  /// Frequency band where the slot-j packet lives. Equal to omega(j) for j = 1, 2, 3.
  /// Slot 4 sits one width above the start of omega1 + omega1 + omega3, which is
  /// where products of the first three packets concentrate.
  Interval packet_band(int j) const;
};

Tile make_tile(int k, std::int64_t n, std::int64_t m);

/// Sorted, duplicate-free tile collection.
using TileSet = std::vector<Tile>;

TileSet make_tileset(std::vector<Tile> tiles);
bool contains(const TileSet& P, const Tile& t);
/// Elements of P not in Q (both sorted).
TileSet set_difference(const TileSet& P, const TileSet& Q);
TileSet set_union(const TileSet& P, const TileSet& Q);

enum class TreeKind { one, four, union_ };

struct Tree {
  TileSet members;
  Tile top;
  TreeKind kind = TreeKind::one;

  Interval time() const { return top.time(); }
};

/// Pairwise intersecting members nest with length ratio >= 2. Duplicates count once.
bool is_grid(std::vector<Interval> intervals);

/// s_j < s'_j : I_s inside I_s' and omega_{s j} containing omega_{s' j}. j in {1, 4}.
bool order_lt(const Tile& s, const Tile& sp, int j);

/// All s in P with s_j < t_j, topped by t. j in {1, 4}.
Tree maximal_tree(const TileSet& P, const Tile& t, int j);
/// Maximal 1-tree union maximal 4-tree with top t.
Tree maximal_union_tree(const TileSet& P, const Tile& t);

/// Checks the membership conditions of the tree's kind.
bool is_tree(const Tree& T);

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::optional<std::pair<Tile, Tile>> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const;
  const AxiomResult& operator[](const std::string& name) const;
};

/// The seven geometric properties: omega1 = omega2, common width 1/|I|, omega1 one
/// width above omega4, c(omega1) > c(omega4), time grid, cell grid, and the
/// containment rule: omega_{s i} strictly inside omega_{s' j} forces cell(s) inside it.
AxiomReport verify_axioms(const TileSet& S);

/// Bit j-1 set means slot j must fit the grid.
inline constexpr unsigned all_slots = 0b1111;

/// Every requested packet band lies in [-N/2, N/2) and the time cell resolves (2^k <= N/8).
bool tile_admissible(const Tile& s, Index n, unsigned slots = all_slots);

struct TileSetParams {
  std::size_t count = 0;
  int k_min = 2;
  int k_max = 2;
  Index grid_size = 256;
  std::uint64_t seed = 0;
  unsigned slots = all_slots;
};

/// Distinct tiles drawn uniformly from the admissible ones with even k in range.
TileSet generate_tileset(const TileSetParams& params);

/// Every admissible tile with even k in [k_min, k_max].
TileSet all_admissible_tiles(Index n, int k_min, int k_max, unsigned slots = all_slots);

/// Line format: "k n m" per tile. Blank lines and lines starting with '#' are skipped.
TileSet read_tiles(std::istream& in);
void write_tiles(std::ostream& out, const TileSet& P);

std::string to_string(const Tile& s);

}  // namespace tfa
