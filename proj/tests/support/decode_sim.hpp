#pragma once

// Noiseless symbol-level decodability oracles. Each simulator replays actual
// transmissions and reconstructs demanded content the way a receiver would:
// from its own cache plus the received mixtures. Independent of the rate
// machinery under test.

#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cachesim/delivery_complex.hpp"
#include "cachesim/delivery_finite.hpp"
#include "cachesim/delivery_maxmin.hpp"
#include "cachesim/placement.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

namespace cachesim::testing {

/// Deterministic nonzero byte payload of one (file, symbol) atom.
inline std::uint8_t byte_payload(int file, int symbol) {
  const std::uint64_t h = splitmix64(
      (static_cast<std::uint64_t>(file) << 32) ^ static_cast<std::uint64_t>(symbol));
  return static_cast<std::uint8_t>(1 + (h % 255));
}

/// Deterministic complex payload with magnitude in [0.5, 1.5].
inline Complex complex_payload(int file, int symbol) {
  const std::uint64_t h = splitmix64(
      0x5a5a ^ (static_cast<std::uint64_t>(file) << 32) ^
      static_cast<std::uint64_t>(symbol));
  const double mag = 0.5 + static_cast<double>(h >> 32) / 4294967296.0;
  const double ang = 6.283185307179586 * static_cast<double>(h & 0xffffffffu) /
                     4294967296.0;
  return mag * Complex(std::cos(ang), std::sin(ang));
}

inline std::vector<std::uint8_t> piece_bytes(int file,
                                             const std::vector<int>& symbols) {
  std::vector<std::uint8_t> out;
  out.reserve(symbols.size());
  for (int s : symbols) out.push_back(byte_payload(file, s));
  return out;
}

/// Replays XOR multicast codewords. Every target user must be able to strip
/// the other pieces from its cache; returns per-user recovered symbol sets.
inline std::vector<std::set<std::pair<int, int>>> simulate_xor_multicast(
    const std::vector<Codeword>& codewords, const CacheState& cache,
    const DemandVector& demands) {
  (void)demands;
  std::vector<std::set<std::pair<int, int>>> recovered(
      static_cast<std::size_t>(cache.num_users()));
  for (const Codeword& cw : codewords) {
    std::vector<std::vector<std::uint8_t>> all_bytes;
    for (const auto& piece : cw.pieces)
      all_bytes.push_back(piece_bytes(piece.file, piece.symbols));
    const auto mixed = xor_payloads(all_bytes);
    for (std::size_t i = 0; i < cw.pieces.size(); ++i) {
      const auto& own = cw.pieces[i];
      std::vector<std::vector<std::uint8_t>> known;
      for (std::size_t j = 0; j < cw.pieces.size(); ++j) {
        if (j == i) continue;
        const auto& other = cw.pieces[j];
        for (int s : other.symbols) {
          if (!cache.contains(own.user, other.file, s))
            throw std::runtime_error("xor sim: side information missing");
        }
        known.push_back(all_bytes[j]);
      }
      const auto decoded = xor_decode(mixed, known, own.symbols.size());
      if (decoded != piece_bytes(own.file, own.symbols))
        throw std::runtime_error("xor sim: decoded payload mismatch");
      for (int s : own.symbols)
        recovered[static_cast<std::size_t>(own.user)].insert({own.file, s});
    }
  }
  return recovered;
}

/// Checks that cache + recovered tiles every demanded file completely.
inline void check_full_recovery(
    const std::vector<std::set<std::pair<int, int>>>& recovered,
    const CacheState& cache, const DemandVector& demands) {
  for (int k = 0; k < cache.num_users(); ++k) {
    const int file = demands.demand(k);
    for (int s = 0; s < cache.symbols_per_file(); ++s) {
      const bool have = cache.contains(k, file, s) ||
                        recovered[static_cast<std::size_t>(k)].count({file, s}) > 0;
      if (!have) throw std::runtime_error("recovery hole");
    }
  }
}

/// Padded complex payload of one mini-file reference.
inline std::vector<Complex> ref_payload(const MinifileRef& ref,
                                        const MinifilePartition& partition,
                                        int padded_length) {
  const auto& symbols = partition.piece(ref.file, ref.cached_at, ref.index);
  std::vector<Complex> out(static_cast<std::size_t>(padded_length),
                           Complex(0, 0));
  for (std::size_t i = 0; i < symbols.size(); ++i)
    out[i] = complex_payload(ref.file, symbols[i]);
  return out;
}

/// Replays one full complex-field delivery (rounds 1..K). For every group the
/// v sequential mixtures are received through the true channel (zero-forcing
/// leakage included), cached content is stripped, and the v x v system is
/// solved. Returns recovered symbols per user; throws on any mismatch.
inline std::vector<std::set<std::pair<int, int>>> simulate_complex_delivery(
    const CacheState& cache, const DemandVector& demands,
    const SystemConfig& config, const CMatrix& H,
    const MinifilePartition& partition, BeamformerCache& beams,
    MiniFileIndexTable* table_out = nullptr) {
  const int K = config.num_users;
  std::vector<std::set<std::pair<int, int>>> recovered(
      static_cast<std::size_t>(K));
  std::set<std::tuple<int, std::uint64_t, int>> consumed;  // fresh-index audit

  MiniFileIndexTable indices;
  for (int round = 1; round <= K; ++round) {
    const auto txs =
        deliver_round_complex(round, demands, config, partition, indices, beams);
    // Transmissions of one group are consecutive, w = 1..v.
    for (std::size_t base = 0; base < txs.size();) {
      const int v = txs[base].combo_count;
      const auto group = txs[base].group;
      int padded = 0;
      for (int w = 0; w < v; ++w)
        padded = std::max(padded, txs[base + static_cast<std::size_t>(w)].length_symbols);

      for (int k : group.members()) {
        // The unknowns: user k's own mini-files, one per stream containing k,
        // in stream order of the first transmission.
        std::vector<MinifileRef> unknowns;
        for (const auto& stream : txs[base].streams) {
          if (!stream.inner.contains(k)) continue;
          for (const auto& entry : stream.entries) {
            if (entry.ref.user == k) unknowns.push_back(entry.ref);
          }
        }
        if (static_cast<int>(unknowns.size()) != v)
          throw std::runtime_error("complex sim: unknown count != v");

        Eigen::MatrixXcd mix(v, v);
        Eigen::MatrixXcd rhs =
            Eigen::MatrixXcd::Zero(v, std::max(padded, 1));
        for (int w = 0; w < v; ++w) {
          const auto& tx = txs[base + static_cast<std::size_t>(w)];
          int col = 0;
          for (const auto& stream : tx.streams) {
            const Complex gain = H.col(k).dot(stream.beamformer);
            // Received contribution of the whole stream.
            for (const auto& entry : stream.entries) {
              const auto payload = ref_payload(entry.ref, partition, padded);
              for (int pos = 0; pos < padded; ++pos) {
                rhs(w, pos) += tx.norm_factor * gain * entry.coeff *
                               payload[static_cast<std::size_t>(pos)];
              }
            }
            // Strip what the cache knows; collect the mixing coefficients.
            for (const auto& entry : stream.entries) {
              if (entry.ref.user == k) {
                if (!stream.inner.contains(k))
                  throw std::runtime_error("complex sim: own piece outside S");
                mix(w, col++) = tx.norm_factor * gain * entry.coeff;
                continue;
              }
              if (stream.inner.contains(k)) {
                if (!entry.ref.cached_at.contains(k))
                  throw std::runtime_error("complex sim: side info not cached");
                const auto payload = ref_payload(entry.ref, partition, padded);
                for (int pos = 0; pos < padded; ++pos) {
                  rhs(w, pos) -= tx.norm_factor * gain * entry.coeff *
                                 payload[static_cast<std::size_t>(pos)];
                }
              }
              // Streams without k arrive through ZF leakage only and stay.
            }
          }
          if (col != v) throw std::runtime_error("complex sim: bad column count");
        }

        Eigen::FullPivLu<Eigen::MatrixXcd> lu(mix);
        if (!lu.isInvertible())
          throw std::runtime_error("complex sim: singular mixing matrix");
        const Eigen::MatrixXcd solved = lu.solve(rhs);
        for (int i = 0; i < v; ++i) {
          const auto& ref = unknowns[static_cast<std::size_t>(i)];
          const auto expect = ref_payload(ref, partition, padded);
          for (int pos = 0; pos < padded; ++pos) {
            if (std::abs(solved(i, pos) - expect[static_cast<std::size_t>(pos)]) >
                1e-6)
              throw std::runtime_error("complex sim: payload mismatch");
          }
          if (!consumed.insert({ref.user, ref.cached_at.mask(), ref.index}).second)
            throw std::runtime_error("complex sim: mini-file consumed twice");
          for (int s : partition.piece(ref.file, ref.cached_at, ref.index))
            recovered[static_cast<std::size_t>(k)].insert({ref.file, s});
        }
      }
      base += static_cast<std::size_t>(v);
    }
  }
  if (table_out) *table_out = indices;
  return recovered;
}

/// Replays one full finite-field delivery. The MAC layer is abstracted: every
/// user in S receives stream S cleanly (the rate accounting is what prices
/// that), strips the cached XOR components and keeps its own mini-file. Also
/// asserts the zero-forcing separation toward the rest of the group.
inline std::vector<std::set<std::pair<int, int>>> simulate_finite_delivery(
    const CacheState& cache, const DemandVector& demands,
    const SystemConfig& config, const CMatrix& H,
    const MinifilePartition& partition, BeamformerCache& beams,
    MiniFileIndexTable* table_out = nullptr) {
  const int K = config.num_users;
  std::vector<std::set<std::pair<int, int>>> recovered(
      static_cast<std::size_t>(K));
  std::set<std::tuple<int, std::uint64_t, int>> consumed;

  MiniFileIndexTable indices;
  for (int round = 1; round <= K; ++round) {
    const auto txs =
        deliver_round_finite(round, demands, config, partition, indices, beams);
    for (const auto& tx : txs) {
      for (const auto& stream : tx.streams) {
        // ZF separation: the rest of the group does not hear this stream.
        for (int k : tx.group.members()) {
          if (stream.inner.contains(k)) continue;
          if (std::abs(H.col(k).dot(stream.beamformer)) >
              1e-8 * H.col(k).norm())
            throw std::runtime_error("finite sim: ZF leak");
        }
        std::vector<std::vector<std::uint8_t>> all_bytes;
        for (const auto& ref : stream.pieces) {
          all_bytes.push_back(piece_bytes(
              ref.file, partition.piece(ref.file, ref.cached_at, ref.index)));
        }
        const auto mixed = xor_payloads(all_bytes);
        for (std::size_t i = 0; i < stream.pieces.size(); ++i) {
          const auto& own = stream.pieces[i];
          std::vector<std::vector<std::uint8_t>> known;
          for (std::size_t j = 0; j < stream.pieces.size(); ++j) {
            if (j == i) continue;
            const auto& other = stream.pieces[j];
            if (!other.cached_at.contains(own.user))
              throw std::runtime_error("finite sim: side info not cached");
            for (int s :
                 partition.piece(other.file, other.cached_at, other.index)) {
              if (!cache.contains(own.user, other.file, s))
                throw std::runtime_error("finite sim: cache disagrees");
            }
            known.push_back(all_bytes[j]);
          }
          const auto& own_symbols =
              partition.piece(own.file, own.cached_at, own.index);
          const auto decoded = xor_decode(mixed, known, own_symbols.size());
          if (decoded != piece_bytes(own.file, own_symbols))
            throw std::runtime_error("finite sim: payload mismatch");
          if (!consumed.insert({own.user, own.cached_at.mask(), own.index}).second)
            throw std::runtime_error("finite sim: mini-file consumed twice");
          for (int s : own_symbols)
            recovered[static_cast<std::size_t>(own.user)].insert({own.file, s});
        }
      }
    }
  }
  if (table_out) *table_out = indices;
  return recovered;
}

}  // namespace cachesim::testing
