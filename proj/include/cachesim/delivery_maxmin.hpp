#pragma once

#include <vector>

#include "cachesim/beamforming.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// One XOR component of a multicast codeword: the symbols of `file` that user
/// `user` still needs and that everyone else in the target set has cached.
struct CodewordPiece {
  int user;
  int file;
  std::vector<int> symbols;
};

/// One multicast transmission unit. XOR of unequal pieces zero-pads to the
/// longest piece, which is what the length accounts for.
struct Codeword {
  UserSubset target;
  std::vector<CodewordPiece> pieces;
  int length_symbols = 0;
  double length_fraction = 0.0;
};

/// Sub-codewords U_S = XOR_{k in S} V_{d_k, S\{k}} for every nonempty subset
/// with positive length. Covers each uncached demanded symbol exactly once.
std::vector<Codeword> build_codewords_decentralized(const CacheState& cache,
                                                    const DemandVector& demands);

/// Centralized delivery: one codeword per subset of size t+1, each of length
/// 1/C(K,t) of a file. Throws when the cache does not carry a centralized
/// placement (every symbol cached at exactly t users).
std::vector<Codeword> build_codewords_centralized(const CacheState& cache,
                                                  const SystemConfig& config,
                                                  const DemandVector& demands);

/// Common multicast rate to `targets`: min_k log(1 + |h_k^H w|^2 P) with the
/// max-min beamformer w.
double multicast_rate(const UserSubset& targets, double power, LogBase base,
                      BeamformerCache& beams);

/// R_sym = (sum_S L(U_S) / R(S))^{-1} over the supplied codewords.
SymmetricRate symrate_maxmin(const std::vector<Codeword>& codewords,
                             double power, LogBase base, BeamformerCache& beams);

}  // namespace cachesim
