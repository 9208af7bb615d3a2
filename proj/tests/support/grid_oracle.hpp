#pragma once

// Brute-force max-min beamformer for L = 2, independent of the solver under
// test. The unit sphere of C^2 modulo a global phase is parameterized by
// (theta, phi); a dense grid plus shrinking local refinement pins the optimum.

#include <cmath>
#include <vector>

#include "cachesim/combinatorics.hpp"
#include "cachesim/types.hpp"

namespace cachesim::testing {

struct GridResult {
  CVector weights;
  double min_gain = -1.0;
};

inline GridResult maxmin_grid_oracle(const UserSubset& targets,
                                     const CMatrix& H, int coarse = 1000,
                                     int refine_rounds = 4) {
  const double pi = 3.14159265358979323846;
  std::vector<CVector> cols;
  for (int k : targets.members()) cols.push_back(H.col(k));

  auto value_at = [&](double theta, double phi) {
    const Complex v0(std::cos(theta), 0.0);
    const Complex v1 = std::sin(theta) * Complex(std::cos(phi), std::sin(phi));
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& h : cols) {
      const Complex inner = std::conj(h(0)) * v0 + std::conj(h(1)) * v1;
      worst = std::min(worst, std::abs(inner));
    }
    return worst;
  };

  double t_lo = 0.0, t_hi = pi / 2.0, p_lo = 0.0, p_hi = 2.0 * pi;
  double best_t = 0.0, best_p = 0.0, best = -1.0;
  int nt = coarse, np = coarse;
  for (int round = 0; round <= refine_rounds; ++round) {
    for (int i = 0; i < nt; ++i) {
      const double theta = t_lo + (t_hi - t_lo) * i / (nt - 1);
      for (int j = 0; j < np; ++j) {
        const double phi = p_lo + (p_hi - p_lo) * j / (np - 1);
        const double val = value_at(theta, phi);
        if (val > best) {
          best = val;
          best_t = theta;
          best_p = phi;
        }
      }
    }
    const double dt = (t_hi - t_lo) / (nt - 1);
    const double dp = (p_hi - p_lo) / (np - 1);
    t_lo = std::max(0.0, best_t - 2.0 * dt);
    t_hi = std::min(pi / 2.0, best_t + 2.0 * dt);
    p_lo = best_p - 2.0 * dp;
    p_hi = best_p + 2.0 * dp;
    nt = np = 41;
  }

  GridResult out;
  out.weights = CVector(2);
  out.weights << Complex(std::cos(best_t), 0.0),
      std::sin(best_t) * Complex(std::cos(best_p), std::sin(best_p));
  out.min_gain = best;
  return out;
}

}  // namespace cachesim::testing
