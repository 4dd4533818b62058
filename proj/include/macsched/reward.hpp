#pragma once

#include <stdexcept>

namespace macsched {

/// Which corner of the single-interval capacity region the reward ordering
/// selects. Mirrored orderings (mu2 > mu1, corners U and V) are handled by
/// swapping node roles and reusing T and S.
enum class MuCase { T, S, Q };

struct RewardWeights {
  double mu0;
  double mu1;
  double mu2;

  static RewardWeights make(double mu0, double mu1, double mu2) {
    if (mu0 < 0.0 || mu1 < 0.0 || mu2 < 0.0)
      throw std::invalid_argument("RewardWeights: weights must be non-negative");
    if (mu0 == 0.0 && mu1 == 0.0 && mu2 == 0.0)
      throw std::invalid_argument("RewardWeights: weights must not all be zero");
    return RewardWeights{mu0, mu1, mu2};
  }

  /// True when node roles must be swapped before solving (corners U/V).
  bool mirrored() const { return mu2 > mu1; }

  RewardWeights swapped() const { return RewardWeights{mu0, mu2, mu1}; }

  /// Ordering case, valid for canonical weights (mu1 >= mu2). Ties resolve
  /// Q over S over T, so mu0 >= max(mu1, mu2) is always Q.
  MuCase ordering() const {
    if (mu2 > mu1) throw std::logic_error("RewardWeights::ordering: weights not canonical");
    if (mu0 >= mu1) return MuCase::Q;
    if (mu0 >= mu2) return MuCase::S;
    return MuCase::T;
  }
};

}  // namespace macsched
