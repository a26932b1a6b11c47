#pragma once

#include <array>
#include <vector>

#include "ids/model.hpp"

namespace ids {

enum class Action { protect, none, insure };

inline constexpr std::array<Action, 3> kAllActions = {Action::protect, Action::none,
                                                      Action::insure};

inline constexpr int action_index(Action a) { return static_cast<int>(a); }
const char* action_name(Action a);

// Masses per (degree, action). Row d must sum to the population mass m_d.
//
// Holds a non-owning reference to its DegreeDistribution; the distribution
// must outlive the state. Immutable after construction.
class SocialState {
 public:
  using Row = std::array<double, 3>;  // indexed by action_index

  SocialState(const DegreeDistribution& dist, std::vector<Row> masses);

  // All mass of every degree plays the given action.
  static SocialState uniform_action(const DegreeDistribution& dist, Action a);

  const DegreeDistribution& dist() const { return *dist_; }
  int max_degree() const { return dist_->max_degree(); }

  double mass(int degree, Action a) const { return x_[degree - 1][action_index(a)]; }
  // Share g_{d,a} = x_{d,a} / m_d; zero for degrees with no population.
  double share(int degree, Action a) const;
  double unprotected_share(int degree) const;

  double protected_mass() const;
  double insured_mass() const;

  // Copy of this state with `amount` of mass moved between two actions of one
  // degree. Throws if the source row lacks the mass.
  SocialState with_mass_moved(int degree, Action from, Action to, double amount) const;

  const std::vector<Row>& rows() const { return x_; }

 private:
  const DegreeDistribution* dist_;
  std::vector<Row> x_;
};

// Exposure decomposition at a social state. `transmission` is the probability
// that an attacked neighbor passes an indirect attack on (gamma);
// `branching` is the expected number of onward indirect attacks per attacked
// node one hop further out (lambda); `exposure` is the expected total number
// of indirect attacks arriving through a single neighbor when every node is
// attacked directly.
struct ExposureParts {
  double transmission = 0.0;
  double branching = 0.0;
  double exposure = 0.0;
};

double transmission_prob(const SocialState& s, const ModelParams& p);
double branching_ratio(const SocialState& s, const ModelParams& p);
ExposureParts exposure_parts(const SocialState& s, const ModelParams& p);
double exposure(const SocialState& s, const ModelParams& p);

// Per-hop summands of the exposure: term k is transmission * branching^(k-1),
// k = 1..max_hops. Their sum equals exposure() up to the branching == 1
// special case, where every term equals the transmission probability.
std::vector<double> exposure_terms(const SocialState& s, const ModelParams& p);

// Expected cost of a degree-d player taking action a at this state.
double action_cost(const SocialState& s, const ModelParams& p, int degree, Action a);
// Expected insurance payout for an insured degree-d player.
double insurance_payout(const SocialState& s, const ModelParams& p, int degree);

// Same, with the exposure precomputed. The costs depend on the state only
// through the exposure, so hot loops evaluate it once per state.
double action_cost_at(double exposure_value, const ModelParams& p, int degree, Action a);
double insurance_payout_at(double exposure_value, const ModelParams& p, int degree);

}  // namespace ids
