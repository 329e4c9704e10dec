#pragma once

// Tile packets f_{s_j} = chi*_{I_s} (f * psi_{s_j}) and the localized operators A_s.

#include "tfa/tiles.hpp"

#include <Eigen/Dense>

#include <map>
#include <tuple>
#include <vector>

namespace tfa {

/// Multiplier of psi_{s_j} in FFT bin order: the base window stretched over the middle
/// half of the slot-j packet band. Peak value 1 at the band center.
RealSignal tile_window(const Tile& s, int j, Index n);

/// f_{s_j}. Its spectrum lies strictly inside s.packet_band(j).
Signal tile_packet(const Signal& f, const Tile& s, int j);

/// A_s^* g = (chi*_{I_s} g) * psi_{s_j}, the adjoint of f -> f_{s_j} for the mean inner product.
Signal packet_adjoint(const Signal& g, const Tile& s, int j);

/// Packets of one signal with the convolutions and cutoffs shared between tiles.
/// Not thread-safe; create one per thread.
class PacketBank {
 public:
  explicit PacketBank(const Signal& f);

  Index size() const { return spectrum_.size(); }
  Signal packet(const Tile& s, int j);
  /// ||f_{s_j}||_2^2.
  Real energy(const Tile& s, int j);

 private:
  const Signal& convolved(const Tile& s, int j);
  const RealSignal& cutoff(const Tile& s);

  Spectrum spectrum_;
  std::map<std::tuple<int, Real>, Signal> conv_;
  std::map<std::pair<int, std::int64_t>, RealSignal> chi_;
};

/// ||f_{s_j}||_2^2 for every s in P, in P's order.
std::vector<Real> packet_energies(const TileSet& P, const Signal& f, int j);

/// ||A_s A_t^*|| on L^2 of the N-point torus, slot-1 packets. Works on the frequency
/// bins where both windows are nonzero, so the cost is set by the band width, not N.
/// Exactly 0 when the windows do not overlap.
Real packet_operator_norm(const Tile& s, const Tile& t, Index n);

/// The same norm from the dense N x N kernel (N <= 1024).
Real packet_operator_norm_dense(const Tile& s, const Tile& t, Index n);

/// Kernel K(x_i, x_l) of A_s A_t^* as a matrix acting on grid values.
Eigen::MatrixXcd packet_operator_matrix(const Tile& s, const Tile& t, Index n);

}  // namespace tfa
