#pragma once

#include "macsched/waterfill.hpp"

namespace macsched {

/// No-S reference policy: every harvest is consumed inside its own arrival
/// interval, each interval then solved independently at the resulting powers.
SolveResult no_scheduling(const Scenario& scenario, const RewardWeights& mu,
                          const ChannelParams& cp);

/// Uni-S reference policy: a harvest (t, e) contributes the constant power
/// e / (t_final - t) from t until the deadline.
SolveResult uniform_scheduling(const Scenario& scenario, const RewardWeights& mu,
                               const ChannelParams& cp);

}  // namespace macsched
