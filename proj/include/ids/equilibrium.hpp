#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ids/exposure.hpp"
#include "ids/model.hpp"

namespace ids {

// Threshold-shaped protection profile: every degree above threshold_degree is
// fully protected, threshold_degree itself protects threshold_mass of its
// population, and lower degrees do not protect. threshold_degree may be
// max_degree + 1, meaning nobody protects (threshold_mass is ignored then).
struct ThresholdProfile {
  int threshold_degree = 0;
  double threshold_mass = 0.0;
};

// Realizes a threshold profile as a social state. Each degree's unprotected
// mass buys insurance when the expected payout beats the premium by more than
// a small tie tolerance, and plays N otherwise (ties go to N, which keeps the
// result deterministic; the split does not affect exposure or social cost).
SocialState state_from_profile(const ThresholdProfile& profile,
                               const DegreeDistribution& dist, const ModelParams& p);

// min(C_N, C_I) - C_P for the given degree: positive when protecting is the
// strict best response.
double best_response_gap(const SocialState& s, const ModelParams& p, int degree);
double best_response_gap_at(double exposure_value, const ModelParams& p, int degree);

struct NeViolation {
  int degree = 0;
  Action action = Action::none;
  double excess = 0.0;  // cost above the degree's cheapest action
};

struct NeCheck {
  bool ok = false;
  double worst_excess = 0.0;
  std::vector<NeViolation> violations;
};

// Checks the equilibrium condition: at every degree with population, each
// action carrying mass must cost within cost_tol of that degree's minimum.
NeCheck verify_ne(const SocialState& s, const ModelParams& p, double cost_tol = 1e-8);

enum class ScanOrder { top_down, bottom_up };

struct NeOptions {
  double mass_tol = 1e-10;
  double cost_tol = 1e-8;
  ScanOrder order = ScanOrder::top_down;
};

struct EquilibriumResult {
  SocialState state;
  int threshold_degree = 0;  // lowest degree with protected mass, max_degree+1 if none
  double threshold_mass = 0.0;
  double protected_mass = 0.0;
  double insured_mass = 0.0;
  double exposure = 0.0;
};

// Raised when the solver cannot certify any candidate; carries diagnostics.
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Computes a Nash equilibrium of the game.
//
// Equilibria are threshold profiles, and the exposure strictly decreases as
// protected mass grows, so the gap min(C_N, C_I) - C_P at the marginal degree
// crosses zero monotonically along each threshold slice. The solver checks
// the no-protection corner, then walks candidate threshold degrees (top-down
// by default), bisecting the gap over the threshold degree's mass and
// verifying each candidate with verify_ne before accepting it. The protection
// profile of the result is the same however the walk is ordered; only the
// N/I split of unprotected mass is pinned by the deterministic insurance rule.
EquilibriumResult solve_ne(const ModelParams& p, const DegreeDistribution& dist,
                           const NeOptions& opts = NeOptions{});

}  // namespace ids
