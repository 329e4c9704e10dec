#include "tfa/selection.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>

namespace tfa {

namespace {

void require_same_grid(const GridSet& a, const GridSet& b) {
  if (a.size() != b.size()) throw InvalidInput("sets live on different grids");
}

// dc(i) = cyclic index distance from cell i to the nearest cell outside omega.
std::vector<Index> distance_to_complement(const GridSet& omega) {
  const Index n = omega.size();
  std::vector<Index> dc(static_cast<std::size_t>(n), n);
  for (int pass = 0; pass < 2; ++pass) {
    Index last = -1;
    for (Index step = 0; step < 2 * n; ++step) {
      const Index i = pass == 0 ? step % n : (2 * n - 1 - step) % n;
      if (!omega(i)) last = step;
      if (last >= 0) dc[static_cast<std::size_t>(i)] = std::min(dc[static_cast<std::size_t>(i)], step - last);
    }
  }
  return dc;
}

Index mu_from_distances(const Tile& s, const std::vector<Index>& dc) {
  const Index n = static_cast<Index>(dc.size());
  const Index cells = n >> s.k;
  if (cells < 1) throw InvalidInput("tile " + to_string(s) + " is finer than the grid");
  Index nearest = n;
  for (Index i = s.n * cells; i < (s.n + 1) * cells; ++i) nearest = std::min(nearest, dc[static_cast<std::size_t>(i)]);
  // Cells strictly between I_s and the closest cell of Omega^c.
  const Index gap = nearest == 0 ? 0 : nearest - 1;
  Index mu = 1;
  while (mu * cells < cells + gap) mu *= 2;
  return mu;
}

void require_omega(const GridSet& omega) {
  require_grid(omega.size());
  if (omega.all()) throw InvalidInput("exceptional set covers the whole torus");
}

}  // namespace

ExceptionalSet exceptional_set(const GridSet& F1, const GridSet& F2, const GridSet& F3, Real p, Real c0) {
  require_same_grid(F1, F2);
  require_same_grid(F1, F3);
  require_grid(F1.size());
  if (!(p > 0) || !(c0 > 0)) throw InvalidInput("exponent and starting constant must be positive");
  const RealSignal M1 = maximal_function(indicator(F1));
  const RealSignal M2 = maximal_function(indicator(F2));
  const RealSignal M3 = maximal_function(indicator(F3));
  const Real t1 = measure(F1), t2 = measure(F2), t3 = std::pow(measure(F3), 1 / p);
  Real C = c0;
  for (int iter = 0; iter < 1100; ++iter, C *= 2) {
    GridSet omega = (M1.array() > C * t1) || (M2.array() > C * t2) || (M3.array() > C * t3);
    if (measure(omega) <= 0.25) return ExceptionalSet{std::move(omega), C};
  }
  throw InvalidInput("exceptional set did not shrink below 1/4");
}

Index tile_mu(const Tile& s, const GridSet& omega) {
  require_omega(omega);
  return mu_from_distances(s, distance_to_complement(omega));
}

std::map<Index, TileSet> mu_stratify(const TileSet& S, const GridSet& omega) {
  require_omega(omega);
  const auto dc = distance_to_complement(omega);
  std::map<Index, TileSet> out;
  for (const Tile& s : S) out[mu_from_distances(s, dc)].push_back(s);
  return out;
}

SelectionOutcome select_trees_from_energies(const TileSet& P, const std::vector<Real>& e, Real f_norm,
                                            int j, Real sigma, TopOrder order) {
  if (!(sigma > 0)) throw InvalidInput("sigma must be positive");
  const int jt = size_tree_slot(j);
  if (e.size() != P.size()) throw InvalidInput("energy list does not match the tile set");

  const SizeReport initial = size_from_energies(P, e, j);
  if (initial.value > sigma * f_norm * (1 + 1e-12)) {
    throw HypothesisViolation("size " + std::to_string(initial.value) + " exceeds sigma ||f|| = " +
                                  std::to_string(sigma * f_norm),
                              *initial.witness, initial.value);
  }

  const std::size_t count = P.size();
  std::vector<std::vector<std::size_t>> under1(count), under4(count);
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t s = 0; s < count; ++s) {
      if (order_lt(P[s], P[t], 1)) under1[t].push_back(s);
      if (order_lt(P[s], P[t], 4)) under4[t].push_back(s);
    }
  }
  const auto& threshold_tree = jt == 4 ? under4 : under1;

  // Larger key is selected first.
  const int rank_slot = j == 4 ? 1 : 4;
  const Real sign = (j == 4 ? -1.0 : 1.0) * (order == TopOrder::canonical ? 1.0 : -1.0);
  auto before = [&](std::size_t a, std::size_t b) {
    const Real ca = sign * P[a].omega(rank_slot).center(), cb = sign * P[b].omega(rank_slot).center();
    if (ca != cb) return ca > cb;
    if (P[a].k != P[b].k) return P[a].k < P[b].k;
    return P[a].time().lo < P[b].time().lo;
  };

  SelectionOutcome out;
  out.sigma = sigma;
  out.j = j;
  std::vector<bool> alive(count, true);
  const Real threshold = sigma / 2 * f_norm;
  while (true) {
    std::optional<std::size_t> best;
    for (std::size_t t = 0; t < count; ++t) {
      if (!alive[t]) continue;
      Real sum = 0;
      for (std::size_t s : threshold_tree[t]) {
        if (alive[s]) sum += e[s];
      }
      const Real v = std::sqrt(sum / P[t].length());
      if (v > 0 && v >= threshold && (!best || before(t, *best))) best = t;
    }
    if (!best) break;
    const std::size_t t = *best;
    Tree part{{}, P[t], jt == 4 ? TreeKind::four : TreeKind::one};
    for (std::size_t s : threshold_tree[t]) {
      if (alive[s]) part.members.push_back(P[s]);
    }
    Tree T{{}, P[t], TreeKind::union_};
    for (const auto* list : {&under1[t], &under4[t]}) {
      for (std::size_t s : *list) {
        if (alive[s]) {
          alive[s] = false;
          T.members.push_back(P[s]);
        }
      }
    }
    T.members = make_tileset(std::move(T.members));
    out.top_length_sum += P[t].length();
    out.trace.push_back(P[t]);
    out.forest.push_back(std::move(T));
    out.threshold_parts.push_back(std::move(part));
  }
  for (std::size_t s = 0; s < count; ++s) {
    if (alive[s]) out.residual.push_back(P[s]);
  }
  return out;
}

SelectionOutcome select_trees(const TileSet& P, const Signal& f, int j, Real sigma, TopOrder order) {
  size_tree_slot(j);
  return select_trees_from_energies(P, packet_energies(P, f, j), norm_2(f), j, sigma, order);
}

DisjointnessReport check_top_disjointness(const SelectionOutcome& outcome, DisjointnessScope scope,
                                          Containment containment) {
  const int i = outcome.j == 4 ? 4 : 1;
  DisjointnessReport rep;
  const auto& F = scope == DisjointnessScope::full_tree ? outcome.forest : outcome.threshold_parts;
  if (F.size() != outcome.forest.size()) throw InvalidInput("outcome has no threshold parts for its trees");
  for (std::size_t a = 0; a < F.size(); ++a) {
    const Interval top = F[a].time();
    for (std::size_t b = 0; b < F.size(); ++b) {
      if (a == b) continue;
      for (const Tile& s : F[a].members) {
        for (const Tile& sp : F[b].members) {
          const Interval w = s.omega(i), wp = sp.omega(i);
          if (!wp.contains(w) || (containment == Containment::strict && w == wp)) continue;
          ++rep.pairs_checked;
          if (sp.time().intersects(top)) {
            rep.passed = false;
            if (!rep.counterexample) rep.counterexample = std::make_tuple(a, b, s, sp);
          }
        }
      }
    }
  }
  return rep;
}

std::map<int, SigmaStratum> sigma_stratify(const TileSet& S, const Signal& f1, const Signal& f2,
                                           const Signal& f4) {
  std::map<int, SigmaStratum> out;
  if (S.empty()) return out;
  const std::array<const Signal*, 3> fs{&f1, &f2, &f4};
  const std::array<int, 3> slots{1, 2, 4};
  std::array<Real, 3> norms{};
  std::array<std::map<Tile, Real>, 3> energy;
  Real ratio = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    norms[r] = norm_2(*fs[r]);
    const auto e = packet_energies(S, *fs[r], slots[r]);
    for (std::size_t s = 0; s < S.size(); ++s) energy[r][S[s]] = e[s];
    if (norms[r] > 0) ratio = std::max(ratio, size_from_energies(S, e, slots[r]).value / norms[r]);
  }

  int e = 0;
  if (ratio > 0) {
    e = static_cast<int>(std::ceil(std::log2(ratio)));
    while (std::ldexp(1.0, e) < ratio) ++e;
  }
  const int floor = e - 2000;

  TileSet P = S;
  for (;; --e) {
    SigmaStratum& st = out[e];
    st.sigma = std::ldexp(1.0, e);
    for (std::size_t r = 0; r < 3; ++r) {
      std::vector<Real> sub;
      sub.reserve(P.size());
      for (const Tile& s : P) sub.push_back(energy[r].at(s));
      SelectionOutcome sel = select_trees_from_energies(P, sub, norms[r], slots[r], st.sigma);
      for (const Tree& T : sel.forest) st.tiles = set_union(st.tiles, T.members);
      P = sel.residual;
      st.rounds.push_back(std::move(sel));
    }
    const bool exhausted = std::all_of(P.begin(), P.end(), [&](const Tile& s) {
      return energy[0].at(s) == 0 && energy[1].at(s) == 0 && energy[2].at(s) == 0;
    });
    if (P.empty() || exhausted || e <= floor) {
      st.tiles = set_union(st.tiles, P);
      break;
    }
  }
  return out;
}

void write_outcome(std::ostream& out, const SelectionOutcome& o) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", o.sigma);
  out << "sigma " << buf << "\nj " << o.j << "\ntrees " << o.forest.size() << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", o.top_length_sum);
  out << "top_length_sum " << buf << '\n';
  for (std::size_t i = 0; i < o.forest.size(); ++i) {
    const Tree& T = o.forest[i];
    std::snprintf(buf, sizeof buf, "%.17g", T.time().length());
    out << "\ntree " << i << "\ntop " << T.top.k << ' ' << T.top.n << ' ' << T.top.m << "\nlength " << buf << '\n';
    for (const Tile& s : T.members) out << "member " << s.k << ' ' << s.n << ' ' << s.m << '\n';
  }
  out << "\nresidual " << o.residual.size() << '\n';
  for (const Tile& s : o.residual) out << "member " << s.k << ' ' << s.n << ' ' << s.m << '\n';
}

}  // namespace tfa
