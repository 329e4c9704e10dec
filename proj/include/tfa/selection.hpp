#pragma once

// Exceptional set, distance strata, and greedy tree selection.

#include "tfa/sizes.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>

namespace tfa {

/// Grid subset of the torus: entry i marks the cell [i/N, (i+1)/N).
using GridSet = Eigen::Array<bool, Eigen::Dynamic, 1>;

inline Real measure(const GridSet& E) {
  return E.size() == 0 ? 0 : static_cast<Real>(E.count()) / static_cast<Real>(E.size());
}

inline RealSignal indicator(const GridSet& E) { return E.cast<Real>().matrix(); }

struct ExceptionalSet {
  GridSet omega;
  Real constant = 0;
};

/// Union of {M chi_{F_j} > C |F_j|} (j = 1, 2) and {M chi_{F_3} > C |F_3|^(1/p)},
/// with C doubled from c0 until |Omega| <= 1/4.
ExceptionalSet exceptional_set(const GridSet& F1, const GridSet& F2, const GridSet& F3, Real p,
                               Real c0 = 4);

/// mu(s) = least power of two with mu >= 1 + dist(I_s, Omega^c) / |I_s|.
Index tile_mu(const Tile& s, const GridSet& omega);
std::map<Index, TileSet> mu_stratify(const TileSet& S, const GridSet& omega);

struct SelectionOutcome {
  TileSet residual;
  std::vector<Tree> forest;
  /// Per forest entry: the maximal threshold-kind tree (4-tree for j = 1, 2, 1-tree for
  /// j = 4) removed with it. A subset of the matching forest tree.
  std::vector<Tree> threshold_parts;
  Real sigma = 0;
  int j = 1;
  Real top_length_sum = 0;
  std::vector<Tile> trace;
};

/// Raised when size_j(P, f) exceeds sigma ||f||; carries the heaviest tree.
class HypothesisViolation : public InvalidInput {
 public:
  HypothesisViolation(const std::string& what, Tree witness, Real value)
      : InvalidInput(what), witness(std::move(witness)), value(value) {}
  Tree witness;
  Real value;
};

/// canonical: for j = 1, 2 the top with the highest c(omega_{t4}) goes first, for j = 4
/// the lowest c(omega_{t1}). reversed flips that preference (kept for replay experiments).
enum class TopOrder { canonical, reversed };

SelectionOutcome select_trees(const TileSet& P, const Signal& f, int j, Real sigma,
                              TopOrder order = TopOrder::canonical);
SelectionOutcome select_trees_from_energies(const TileSet& P, const std::vector<Real>& energy,
                                            Real f_norm, int j, Real sigma,
                                            TopOrder order = TopOrder::canonical);

struct DisjointnessReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  /// (T1 index, T2 index, s, s') of the first failure.
  std::optional<std::tuple<std::size_t, std::size_t, Tile, Tile>> counterexample;
};

/// full_tree draws s and s' from the whole union trees. threshold_part restricts them to the
/// threshold-kind parts, which is all the selection-order argument needs.
enum class DisjointnessScope { full_tree, threshold_part };

/// strict pairs need omega_{s i} strictly inside omega_{s' i}; inclusive also takes equal
/// intervals. Equal intervals at different times in two trees are not excluded by the
/// selection order, so only the strict form is guaranteed.
enum class Containment { strict, inclusive };

/// For trees T1 != T2, s in T1, s' in T2 with omega_{s i} inside omega_{s' i}, require
/// I_{s'} disjoint from I_{T1}. i = 1 for j in {1, 2} and i = 4 for j = 4.
DisjointnessReport check_top_disjointness(const SelectionOutcome& outcome,
                                          DisjointnessScope scope = DisjointnessScope::full_tree,
                                          Containment containment = Containment::strict);

struct SigmaStratum {
  Real sigma = 0;
  /// Selections for j = 1, 2, 4 in that order; each runs on what the previous left.
  std::vector<SelectionOutcome> rounds;
  /// Tiles assigned to this level. The last stratum also holds tiles no round selected.
  TileSet tiles;
};

/// Repeated selection for f1, f2, f4 at sigma = 2^e, halving until every tile is placed.
/// Keyed by e.
std::map<int, SigmaStratum> sigma_stratify(const TileSet& S, const Signal& f1, const Signal& f2,
                                           const Signal& f4);

/// One block per tree: "tree <i>", "top k n m", "length <|I_T|>", then member lines.
void write_outcome(std::ostream& out, const SelectionOutcome& outcome);

}  // namespace tfa
