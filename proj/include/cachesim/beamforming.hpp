#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include <Eigen/Dense>

#include "cachesim/combinatorics.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// Orthonormal basis of the orthogonal complement of span(h): L-1 columns,
/// each orthogonal to h. Throws on the zero vector.
CMatrix orth_complement(const CVector& h);

/// Orthonormal basis of the common nullspace of the channels in `zf`.
/// Returns the identity when `zf` is empty; throws when the nullspace is {0}.
CMatrix zf_nullspace_basis(const CMatrix& H, const UserSubset& zf);

struct MaxminOptions {
  int restarts = 8;          // random subgradient starts on top of closed-form seeds
  int iterations = 300;      // subgradient steps per start
  double tolerance = 1e-4;   // relative balance tolerance for the polish stage
};

struct BeamformerResult {
  CVector weights;   // unit norm, first nonzero coordinate real nonnegative
  double min_gain;   // min_{k in S} |h_k^H weights|
};

/// Max-min fair multicast beamformer restricted to the nullspace of the `zf`
/// channels:
///
///   maximize min_{k in S} |h_k^H u|   s.t.  ||u|| <= 1,  h_j^H u = 0 (j in zf)
///
/// One target user reduces to the matched filter, two targets have a closed
/// form, and three or more run projected subgradient ascent with restarts plus
/// an active-set phase polish. Deterministic for fixed inputs.
BeamformerResult maxmin_beamformer(const UserSubset& targets, const CMatrix& H,
                                   const UserSubset& zf,
                                   const MaxminOptions& options = {});

/// Algorithm's auxiliary beamformer for group B and inner subset S: zero-force
/// everyone in B \ S and point max-min at S. Both pseudocode branches reduce to
/// the constrained max-min problem; when the nullspace is one-dimensional there
/// is nothing left to optimize.
BeamformerResult bfv(const UserSubset& group, const UserSubset& targets,
                     const CMatrix& H, const MaxminOptions& options = {});

/// Memoizes beamformers per channel realization, keyed by (targets, zf) masks.
class BeamformerCache {
 public:
  explicit BeamformerCache(const CMatrix& H, MaxminOptions options = {})
      : H_(&H), options_(options) {}

  const BeamformerResult& solve(const UserSubset& targets, const UserSubset& zf);
  /// Gain |h_k^H u| for the cached (targets, zf) beamformer.
  double gain(int user, const UserSubset& targets, const UserSubset& zf);

  const CMatrix& channel() const { return *H_; }

 private:
  const CMatrix* H_;
  MaxminOptions options_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, BeamformerResult> memo_;
};

}  // namespace cachesim
