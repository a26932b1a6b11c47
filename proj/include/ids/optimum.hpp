#pragma once

#include <vector>

#include "ids/equilibrium.hpp"
#include "ids/exposure.hpp"
#include "ids/model.hpp"

namespace ids {

// A planner's choice: how much of each population to protect. Entries are
// masses, y_d in [0, m_d]; everyone else plays N.
struct PlannerAction {
  std::vector<double> protected_mass;  // index d-1

  double total() const;
};

// One-sided directions for derivatives at the box boundary.
enum class Side { up, down };

// Social state induced by a planner action (protected mass plays P, the rest
// plays N, nobody is insured).
SocialState planner_state(const PlannerAction& y, const DegreeDistribution& dist);

// Total cost across the population under the planner action:
// sum_d [ y_d C_P + (m_d - y_d) C_N ] at the induced state.
double social_cost(const PlannerAction& y, const ModelParams& p,
                   const DegreeDistribution& dist);

// Total cost at an arbitrary social state, counting the insurer's net cost
// (payouts minus premiums) so that insurance transfers wash out. Equals the
// planner form above whenever the protected masses match.
double social_cost_state(const SocialState& s, const ModelParams& p);

// Analytic one-sided derivative of social_cost with respect to y_d. Both
// sides share the same closed form; `side` only checks that the move stays
// inside the box (up needs y_d < m_d, down needs y_d > 0).
double social_cost_derivative(const PlannerAction& y, const ModelParams& p,
                              const DegreeDistribution& dist, int degree, Side side);

struct OptOptions {
  double mass_tol = 1e-10;
  double cost_tol = 1e-8;
  int grid_points = 64;  // seed grid per threshold slice before golden section
};

struct OptimumResult {
  PlannerAction plan;
  double social_cost = 0.0;
  int threshold_degree = 0;  // lowest protected degree, max_degree+1 if none
};

// Minimizes the social cost. The minimizer is a threshold profile and is
// unique, so the solver searches each threshold slice (seed grid plus golden
// section, then a derivative polish for interior points) and takes the global
// best. First-order conditions are then checked at every degree with the
// analytic derivative; a failure raises SolveError.
OptimumResult solve_opt(const ModelParams& p, const DegreeDistribution& dist,
                        const OptOptions& opts = OptOptions{});

}  // namespace ids
