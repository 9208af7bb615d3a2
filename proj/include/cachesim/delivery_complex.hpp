#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cachesim/beamforming.hpp"
#include "cachesim/placement.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// v x v DFT matrix scaled to unitary.
Eigen::MatrixXcd dft_unitary(int v);

/// Row w (1-based) of the v x v unitary combination matrix. Any subset of rows
/// is linearly independent, so v transmissions always resolve v unknowns.
Eigen::RowVectorXcd combo_coefficients(int v, int w);

/// Identity of one consumed mini-file: user k's demand, cached at `cached_at`,
/// fresh index `index` (1-based) into the MinifilePartition.
struct MinifileRef {
  int user;
  int file;
  UserSubset cached_at;
  int index;
};

struct ComplexEntry {
  MinifileRef ref;
  Complex coeff;  // sqrt(v) * U(w, rank of S among user's sets)
};

/// One beamformed stream u_B^S carrying a linear combination of mini-files.
struct ComplexStream {
  UserSubset inner;  // S
  CVector beamformer;
  std::vector<ComplexEntry> entries;
};

/// One sequential transmission X_w(B) of a round-s block.
struct ComplexTransmission {
  UserSubset group;  // B
  int round = 0;     // s
  int combo_index = 0;  // w, 1-based
  int combo_count = 0;  // v
  double norm_factor = 0.0;  // 1/sqrt(s * C(min(s+L-1,K), s))
  std::vector<ComplexStream> streams;
  int length_symbols = 0;
};

/// Round s of the complex-field delivery: for every group B of size
/// min(s+L-1, K), v = C(|B|-1, s-1) sequential transmissions mixing fresh
/// mini-files with unitary coefficients, every stream zero-forced onto B \ S.
/// Advances the index table once per (B, consumed mini-file).
std::vector<ComplexTransmission> deliver_round_complex(
    int round, const DemandVector& demands, const SystemConfig& config,
    const MinifilePartition& partition, MiniFileIndexTable& indices,
    BeamformerCache& beams);

/// Decodable per-user rate log(1 + P/min(s+L-1,K) * min_{S: k in S} |h_k^H u_B^S|^2).
double rate_complex_user(const UserSubset& group, int user, int round,
                         const SystemConfig& config, double power, LogBase base,
                         BeamformerCache& beams);

/// Common rate: min over the group of the per-user rates.
double rate_complex_common(const UserSubset& group, int round,
                           const SystemConfig& config, double power,
                           LogBase base, BeamformerCache& beams);

struct SymrateOptions {
  double power = 1.0;
  LogBase base = LogBase::Two;
  MassModel masses = MassModel::Empirical;
};

/// Symmetric rate of the complex-field scheme. Empirical masses walk the exact
/// consumed mini-file lengths of the supplied cache; analytic masses use the
/// high-probability fractions (homogeneous caches only).
SymmetricRate symrate_complex(const CacheState& cache,
                              const DemandVector& demands,
                              const SystemConfig& config,
                              const SymrateOptions& options,
                              BeamformerCache& beams);

}  // namespace cachesim
