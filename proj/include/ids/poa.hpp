#pragma once

#include "ids/model.hpp"

namespace ids {

// Largest exposure any state can produce: the exposure when nobody protects.
// Closed form: beta * p_U * sum_{k=0}^{K-1} (beta * p_U / d_avg * sum_d d(d-1) f_d)^k.
double max_exposure(const ModelParams& p, const DegreeDistribution& dist);

struct PoaReport {
  double social_cost_ne = 0.0;
  double social_cost_opt = 0.0;
  double ratio = 0.0;              // social_cost_ne / social_cost_opt
  double bound = 0.0;              // 1 + d_avg * max_exposure
  bool bound_applicable = false;   // protection_cost >= delta_loss * direct_attack_prob
};

// Equilibrium-to-optimum cost ratio with its closed-form upper bound. All
// equilibria share one social cost, so the worst and best ratios coincide.
// The bound is guaranteed only when bound_applicable; it is reported either
// way for exploratory sweeps.
PoaReport price_of_anarchy(const ModelParams& p, const DegreeDistribution& dist);

}  // namespace ids
