#pragma once

#include <string>
#include <vector>

namespace ids {

// Scalar parameters of the security investment game.
//
// Nodes face direct attacks and, through infected neighbors, indirect ones.
// Each node either invests in protection, buys insurance, or does nothing.
struct ModelParams {
  double direct_attack_prob = 0.0;     // probability a node is attacked directly
  double infect_prob_protected = 0.0;  // infection probability per attack, protected
  double infect_prob_unprotected = 1.0;
  double loss_protected = 0.0;    // expected loss per successful attack, protected
  double loss_unprotected = 0.0;  // same, unprotected
  double protection_cost = 0.0;
  double insurance_premium = 0.0;
  double deductible = 0.0;
  double coverage_level = 1.0;  // fraction of loss above the deductible covered
  double max_coverage = 0.0;    // payout cap
  double indirect_attack_prob = 1.0;  // chance an infected node attacks a neighbor
  int max_hops = 1;  // how far an infection propagates in the cost model

  double delta_loss() const { return loss_unprotected - loss_protected; }
  double delta_infect() const {
    return infect_prob_unprotected - infect_prob_protected;
  }

  // The two relations that make the action costs well ordered:
  //  - an attack costs a protected node less than an insured one,
  //    i.e. loss_protected < (1 - coverage_level) * loss_unprotected;
  //  - protection_cost > insurance_premium + deductible.
  bool premium_relations_hold() const;
};

// Which constraints to enforce when validating parameters.
//   strict: feasibility plus the premium relations above.
//   core:   feasibility only (probability ranges, loss ordering, sign
//           constraints). Lets through exploratory parameter sets whose
//           insurance terms break the usual ordering.
enum class ParamCheck { strict, core };

// Returns human-readable descriptions of every violated constraint.
std::vector<std::string> param_violations(const ModelParams& p,
                                          ParamCheck check = ParamCheck::strict);

// Throws std::invalid_argument listing the violations, if any.
void require_valid(const ModelParams& p, ParamCheck check = ParamCheck::strict);

// Population sizes per degree, immutable after construction.
//
// Degrees run from 1 to max_degree; there are no isolated nodes. The factory
// constructors normalize the masses to total one, so the mass vector doubles
// as the degree distribution.
class DegreeDistribution {
 public:
  // m_d proportional to d^-alpha, d = 1..max_degree.
  static DegreeDistribution power_law(double alpha, int max_degree);

  // m_d proportional to rate^d / d!, d = 1..max_degree (no d = 0 term).
  static DegreeDistribution truncated_poisson(double rate, int max_degree);

  // Explicit masses for degree 1..masses.size(), normalized to total one.
  static DegreeDistribution from_masses(std::vector<double> masses);

  // Same but keeps the given total. Only useful for scale-invariance checks;
  // everything downstream works off fractions and weights, which do not
  // depend on the total.
  static DegreeDistribution from_masses_unnormalized(std::vector<double> masses);

  int max_degree() const { return static_cast<int>(mass_.size()); }
  double total_mass() const { return total_; }
  double average_degree() const { return avg_degree_; }

  double mass(int degree) const { return mass_[degree - 1]; }
  // Fraction of the population with this degree, m_d / total.
  double fraction(int degree) const { return mass_[degree - 1] / total_; }
  // Probability that a random neighbor has this degree,
  // w_d = d * m_d / sum_d' d' * m_d'.
  double neighbor_weight(int degree) const { return weight_[degree - 1]; }

  const std::vector<double>& masses() const { return mass_; }
  const std::vector<double>& neighbor_weights() const { return weight_; }

 private:
  DegreeDistribution(std::vector<double> masses, bool normalize);

  std::vector<double> mass_;    // index d-1
  std::vector<double> weight_;  // index d-1
  double total_ = 0.0;
  double avg_degree_ = 0.0;
};

}  // namespace ids
