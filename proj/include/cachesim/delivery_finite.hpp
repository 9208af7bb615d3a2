#pragma once

#include <cstdint>
#include <vector>

#include "cachesim/beamforming.hpp"
#include "cachesim/delivery_complex.hpp"
#include "cachesim/placement.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// One beamformed XOR stream: u_B^S carrying XOR of the fresh mini-files of
/// everyone in S, zero-forced onto B \ S.
struct FiniteStream {
  UserSubset inner;  // S
  CVector beamformer;
  std::vector<MinifileRef> pieces;
  int length_symbols = 0;
};

/// One round-s block toward group B: all streams superpose in a single
/// transmission; targets separate them through the MAC region.
struct FiniteTransmission {
  UserSubset group;
  int round = 0;
  double norm_factor = 0.0;  // 1/sqrt(C(min(s+L-1,K), s))
  std::vector<FiniteStream> streams;
  int length_symbols = 0;
};

/// Round s of the finite-field delivery; index bookkeeping mirrors the
/// complex-field case (one fresh mini-file per (B, S, k), advanced per B).
std::vector<FiniteTransmission> deliver_round_finite(
    int round, const DemandVector& demands, const SystemConfig& config,
    const MinifilePartition& partition, MiniFileIndexTable& indices,
    BeamformerCache& beams);

/// MAC-region effective rate for `user` in group B at round s:
/// min( log(1 + sum SNR), v * min log(1 + SNR) ) with per-stream
/// SNR = |h_k^H u_B^S|^2 P / C(min(s+L-1,K), s).
double mac_effective_rate(const UserSubset& group, int user, int round,
                          const SystemConfig& config, double power,
                          LogBase base, BeamformerCache& beams);

/// Common rate: min over the group of the effective rates.
double rate_finite_common(const UserSubset& group, int round,
                          const SystemConfig& config, double power,
                          LogBase base, BeamformerCache& beams);

/// Symmetric rate of the finite-field scheme (same structure as the
/// complex-field one with MAC rates).
SymmetricRate symrate_finite(const CacheState& cache,
                             const DemandVector& demands,
                             const SystemConfig& config,
                             const SymrateOptions& options,
                             BeamformerCache& beams);

/// Bitwise XOR of byte payloads, zero-padding to the longest.
std::vector<std::uint8_t> xor_payloads(
    const std::vector<std::vector<std::uint8_t>>& pieces);

/// Recover one piece from the XOR given all the others; `target_length`
/// truncates the zero padding.
std::vector<std::uint8_t> xor_decode(
    const std::vector<std::uint8_t>& payload,
    const std::vector<std::vector<std::uint8_t>>& known_pieces,
    std::size_t target_length);

}  // namespace cachesim
