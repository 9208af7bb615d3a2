#include "cachesim/beamforming.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cachesim/rng.hpp"

namespace cachesim {

namespace {

constexpr double kTiny = 1e-14;

/// Phase convention: first coordinate with meaningful magnitude is made real
/// nonnegative, so beamformers are deterministic and comparable in tests.
void normalize_phase(CVector& u) {
  const double scale = u.norm();
  if (scale <= 0.0) return;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > 1e-9 * scale) {
      const Complex rot = std::conj(u(i)) / std::abs(u(i));
      u *= rot;
      u(i) = Complex(u(i).real(), 0.0);  // clear rounding residue
      return;
    }
  }
}

double objective(const std::vector<CVector>& channels, const CVector& v) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& g : channels) {
    worst = std::min(worst, std::abs(g.dot(v)));
  }
  return worst;
}

/// Closed form for two targets. Candidates: matched filter toward either user
/// and the balanced point where both received magnitudes coincide. The
/// balanced point is the minimum-norm solution of A^H v = c with the relative
/// phase of c chosen to minimize the norm.
CVector maxmin_two(const CVector& a, const CVector& b) {
  std::vector<CVector> cands;
  cands.push_back(a.normalized());
  cands.push_back(b.normalized());

  CMatrix A(a.size(), 2);
  A.col(0) = a;
  A.col(1) = b;
  Eigen::Matrix2cd gram = A.adjoint() * A;
  const double scale = gram.trace().real();
  if (std::abs(gram.determinant()) > 1e-12 * scale * scale) {
    Eigen::Matrix2cd gi = gram.inverse();
    const Complex g01 = gi(0, 1);
    const Complex phase = std::abs(g01) > kTiny ? -std::conj(g01) / std::abs(g01)
                                                : Complex(1.0, 0.0);
    const double q = gi(0, 0).real() + gi(1, 1).real() - 2.0 * std::abs(g01);
    if (q > kTiny) {
      const double t = 1.0 / std::sqrt(q);
      Eigen::Vector2cd c;
      c << t, t * phase;
      CVector v = A * (gi * c);
      const double n = v.norm();
      if (n > kTiny) cands.push_back(v / n);
    }
  }

  std::vector<CVector> chans = {a, b};
  double best = -1.0;
  CVector best_v;
  for (const auto& v : cands) {
    const double val = objective(chans, v);
    if (val > best) {
      best = val;
      best_v = v;
    }
  }
  return best_v;
}

/// Balanced phase polish: restrict to the active channels, parameterize the
/// received values as t * exp(i phi_k), and coordinate-descend the phases of
/// the minimum-norm solution. Exact for any active set whose Gram matrix is
/// invertible.
bool polish_active_set(const std::vector<CVector>& channels,
                       const std::vector<int>& active, CVector& v_out) {
  const int m = static_cast<int>(active.size());
  const Eigen::Index dim = channels.front().size();
  if (m < 2 || m > dim) return false;
  CMatrix A(dim, m);
  for (int i = 0; i < m; ++i) A.col(i) = channels[static_cast<std::size_t>(active[i])];
  CMatrix gram = A.adjoint() * A;
  Eigen::FullPivLU<CMatrix> lu(gram);
  if (!lu.isInvertible()) return false;
  CMatrix gi = lu.inverse();

  Eigen::VectorXcd phases(m);
  for (int i = 0; i < m; ++i) {
    const Complex val = A.col(i).dot(v_out);
    phases(i) = std::abs(val) > kTiny ? val / std::abs(val) : Complex(1.0, 0.0);
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double moved = 0.0;
    for (int j = 1; j < m; ++j) {  // phase of entry 0 stays pinned
      Complex z = 0.0;
      for (int l = 0; l < m; ++l) {
        if (l != j) z += gi(j, l) * phases(l);
      }
      if (std::abs(z) <= kTiny) continue;
      const Complex updated = -z / std::abs(z);
      moved += std::abs(updated - phases(j));
      phases(j) = updated;
    }
    if (moved < 1e-12) break;
  }
  const double q = (phases.adjoint() * gi * phases)(0).real();
  if (q <= kTiny) return false;
  CVector v = A * (gi * phases) / std::sqrt(q);
  const double n = v.norm();
  if (n <= kTiny) return false;
  v_out = v / n;
  return true;
}

/// Projected subgradient ascent for min_k |g_k^H v| on the unit sphere.
CVector subgradient_ascent(const std::vector<CVector>& channels, CVector v,
                           int iterations) {
  CVector best_v = v;
  double best = objective(channels, v);
  for (int t = 1; t <= iterations; ++t) {
    int worst = 0;
    double worst_val = std::numeric_limits<double>::infinity();
    Complex worst_inner = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const Complex inner = channels[k].dot(v);
      if (std::abs(inner) < worst_val) {
        worst_val = std::abs(inner);
        worst = static_cast<int>(k);
        worst_inner = inner;
      }
    }
    const CVector& g = channels[static_cast<std::size_t>(worst)];
    const double gnorm = g.norm();
    if (gnorm <= kTiny) break;
    const Complex dir = worst_val > kTiny ? worst_inner / worst_val : Complex(1.0, 0.0);
    const double step = 0.4 / (gnorm * std::sqrt(static_cast<double>(t)));
    v = (v + step * g * dir).normalized();
    const double val = objective(channels, v);
    if (val > best) {
      best = val;
      best_v = v;
    }
  }
  return best_v;
}

/// General max-min over the reduced channels. Seeds: matched filters, balanced
/// pairs, random directions. Each seed runs subgradient ascent; the active set
/// at the winner is polished by the balanced-phase routine.
CVector maxmin_general(const std::vector<CVector>& channels,
                       const MaxminOptions& options) {
  const Eigen::Index dim = channels.front().size();
  std::vector<CVector> seeds;
  for (const auto& g : channels) {
    if (g.norm() > kTiny) seeds.push_back(g.normalized());
  }
  for (std::size_t i = 0; i < channels.size(); ++i) {
    for (std::size_t j = i + 1; j < channels.size(); ++j) {
      if (channels[i].norm() > kTiny && channels[j].norm() > kTiny)
        seeds.push_back(maxmin_two(channels[i], channels[j]));
    }
  }
  Rng rng(0x9b14adf0c1e5u);  // fixed stream keeps the solver deterministic
  for (int r = 0; r < options.restarts; ++r) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.cgaussian();
    const double n = v.norm();
    if (n > kTiny) seeds.push_back(v / n);
  }

  CVector best_v = seeds.front();
  double best = -1.0;
  for (const auto& seed : seeds) {
    CVector v = subgradient_ascent(channels, seed, options.iterations);
    double val = objective(channels, v);
    // Polish whichever channels sit at the bottleneck.
    std::vector<int> active;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      if (std::abs(channels[k].dot(v)) <= val * (1.0 + 1e-3) + kTiny)
        active.push_back(static_cast<int>(k));
    }
    CVector polished = v;
    if (polish_active_set(channels, active, polished)) {
      const double pval = objective(channels, polished);
      if (pval > val) {
        v = polished;
        val = pval;
      }
    }
    if (val > best) {
      best = val;
      best_v = v;
    }
  }
  return best_v;
}

}  // namespace

CMatrix orth_complement(const CVector& h) {
  const double n = h.norm();
  if (n <= 0.0) throw std::invalid_argument("orth_complement: zero vector");
  const Eigen::Index dim = h.size();
  Eigen::HouseholderQR<CMatrix> qr(h);
  CMatrix q = qr.householderQ();
  return q.rightCols(dim - 1);
}

CMatrix zf_nullspace_basis(const CMatrix& H, const UserSubset& zf) {
  const Eigen::Index dim = H.rows();
  if (zf.empty()) return CMatrix::Identity(dim, dim);
  CMatrix A(dim, zf.size());
  for (int i = 0; i < zf.size(); ++i) A.col(i) = H.col(zf.member(i));
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? sv(0) * 1e-12 : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  if (rank >= dim)
    throw std::invalid_argument("zf_nullspace_basis: empty nullspace");
  return svd.matrixU().rightCols(dim - rank);
}

BeamformerResult maxmin_beamformer(const UserSubset& targets, const CMatrix& H,
                                   const UserSubset& zf,
                                   const MaxminOptions& options) {
  if (targets.empty())
    throw std::invalid_argument("maxmin_beamformer: empty target set");
  for (int u : targets.members()) {
    if (zf.contains(u))
      throw std::invalid_argument("maxmin_beamformer: target in ZF set");
  }
  const CMatrix basis = zf_nullspace_basis(H, zf);
  const Eigen::Index reduced_dim = basis.cols();

  std::vector<CVector> reduced;
  reduced.reserve(static_cast<std::size_t>(targets.size()));
  for (int u : targets.members()) {
    reduced.push_back(basis.adjoint() * H.col(u));
  }

  CVector v;
  if (reduced_dim == 1) {
    v = CVector::Ones(1);
  } else if (targets.size() == 1) {
    const double n = reduced.front().norm();
    v = n > kTiny ? CVector(reduced.front() / n) : CVector(CVector::Unit(reduced_dim, 0));
  } else if (targets.size() == 2) {
    if (reduced[0].norm() <= kTiny || reduced[1].norm() <= kTiny) {
      // A vanished channel pins the objective at zero; aim at the other user.
      const CVector& live = reduced[0].norm() > kTiny ? reduced[0] : reduced[1];
      v = live.norm() > kTiny ? CVector(live.normalized())
                              : CVector(CVector::Unit(reduced_dim, 0));
    } else {
      v = maxmin_two(reduced[0], reduced[1]);
    }
  } else {
    bool any_live = false;
    for (const auto& g : reduced) any_live = any_live || g.norm() > kTiny;
    v = any_live ? maxmin_general(reduced, options)
                 : CVector(CVector::Unit(reduced_dim, 0));
  }

  BeamformerResult result;
  result.weights = basis * v;
  normalize_phase(result.weights);
  double worst = std::numeric_limits<double>::infinity();
  for (int u : targets.members()) {
    worst = std::min(worst, std::abs(H.col(u).dot(result.weights)));
  }
  result.min_gain = worst;
  return result;
}

BeamformerResult bfv(const UserSubset& group, const UserSubset& targets,
                     const CMatrix& H, const MaxminOptions& options) {
  if (!targets.subset_of(group))
    throw std::invalid_argument("bfv: targets must lie inside the group");
  return maxmin_beamformer(targets, H, group.set_minus(targets), options);
}

const BeamformerResult& BeamformerCache::solve(const UserSubset& targets,
                                               const UserSubset& zf) {
  const auto key = std::make_pair(targets.mask(), zf.mask());
  auto it = memo_.find(key);
  if (it == memo_.end()) {
    it = memo_.emplace(key, maxmin_beamformer(targets, *H_, zf, options_)).first;
  }
  return it->second;
}

double BeamformerCache::gain(int user, const UserSubset& targets,
                             const UserSubset& zf) {
  const BeamformerResult& r = solve(targets, zf);
  return std::abs(H_->col(user).dot(r.weights));
}

}  // namespace cachesim
