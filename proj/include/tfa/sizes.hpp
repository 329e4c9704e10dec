#pragma once

// Size functionals over tile collections and the two quantities that bound them.

#include "tfa/packets.hpp"

#include <optional>

namespace tfa {

/// Tree kind over which size_j takes its supremum: 4-trees for j = 1, 2 and 1-trees for j = 4.
int size_tree_slot(int j);

struct SizeReport {
  int j = 1;
  Real value = 0;
  std::optional<Tree> witness;
};

/// max over tops t in P of ((1/|I_t|) sum_{s in maximal tree} ||f_{s_j}||^2)^(1/2).
SizeReport size(const TileSet& P, const Signal& f, int j);

/// Same from precomputed energies aligned with P. Sums run in P's order.
SizeReport size_from_energies(const TileSet& P, const std::vector<Real>& energy, int j);

/// max over tops of (1/|I_T|) ||(sum_{s in T} ||f_{s_j}||^2 / |I_s| chi_{I_s})^(1/2)||_{1,infty}.
Real size_sup_weak(const TileSet& P, const Signal& f, int j);
Real size_sup_weak_from_energies(const TileSet& P, const std::vector<Real>& energy, int j, Index n);

/// max over s of (1/|I_s|) int_{mu I_s} |f| + mu^-M inf_{mu I_s} Mf, where mu I_s keeps
/// the center of I_s and has length min(mu |I_s|, 1).
Real size_maximal_bound(const TileSet& P, const Signal& f, Index mu, int decay = 4);

}  // namespace tfa
