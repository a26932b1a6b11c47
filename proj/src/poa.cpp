#include "ids/poa.hpp"

#include <stdexcept>

#include "ids/equilibrium.hpp"
#include "ids/optimum.hpp"

namespace ids {

double max_exposure(const ModelParams& p, const DegreeDistribution& dist) {
  double excess = 0.0;  // sum_d d (d-1) f_d
  for (int d = 2; d <= dist.max_degree(); ++d)
    excess += static_cast<double>(d) * (d - 1) * dist.fraction(d);
  double base = p.indirect_attack_prob * p.infect_prob_unprotected;
  double factor = base * excess / dist.average_degree();
  double sum = 0.0, power = 1.0;
  for (int k = 0; k < p.max_hops; ++k) {
    sum += power;
    power *= factor;
  }
  return base * sum;
}

PoaReport price_of_anarchy(const ModelParams& p, const DegreeDistribution& dist) {
  EquilibriumResult ne = solve_ne(p, dist);
  OptimumResult opt = solve_opt(p, dist);

  PoaReport report;
  report.social_cost_ne = social_cost_state(ne.state, p);
  report.social_cost_opt = opt.social_cost;
  if (report.social_cost_opt < 1e-12)
    throw std::domain_error("price_of_anarchy: optimal social cost is zero");
  report.ratio = report.social_cost_ne / report.social_cost_opt;
  report.bound = 1.0 + dist.average_degree() * max_exposure(p, dist);
  report.bound_applicable = p.protection_cost >= p.delta_loss() * p.direct_attack_prob;
  return report;
}

}  // namespace ids
