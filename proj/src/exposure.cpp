#include "ids/exposure.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ids {

namespace {
constexpr double kRowSumTol = 1e-10;
constexpr double kNegativeTol = 1e-12;
// Below this distance from 1, the geometric sum over hops is replaced by its
// limit K * transmission.
constexpr double kBranchingUnitTol = 1e-12;
}  // namespace

const char* action_name(Action a) {
  switch (a) {
    case Action::protect: return "protect";
    case Action::none: return "none";
    case Action::insure: return "insure";
  }
  return "?";
}

SocialState::SocialState(const DegreeDistribution& dist, std::vector<Row> masses)
    : dist_(&dist), x_(std::move(masses)) {
  if (static_cast<int>(x_.size()) != dist.max_degree())
    throw std::invalid_argument("social state must have one row per degree");
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double row_sum = 0.0;
    for (double& v : x_[d - 1]) {
      if (v < -kNegativeTol || !std::isfinite(v))
        throw std::invalid_argument("social state masses must be nonnegative");
      if (v < 0.0) v = 0.0;
      row_sum += v;
    }
    if (std::abs(row_sum - dist.mass(d)) > kRowSumTol) {
      std::ostringstream msg;
      msg << "social state row for degree " << d << " sums to " << row_sum
          << ", expected " << dist.mass(d);
      throw std::invalid_argument(msg.str());
    }
  }
}

SocialState SocialState::uniform_action(const DegreeDistribution& dist, Action a) {
  std::vector<Row> rows(static_cast<std::size_t>(dist.max_degree()), Row{0.0, 0.0, 0.0});
  for (int d = 1; d <= dist.max_degree(); ++d)
    rows[d - 1][action_index(a)] = dist.mass(d);
  return SocialState(dist, std::move(rows));
}

double SocialState::share(int degree, Action a) const {
  double m = dist_->mass(degree);
  if (m <= 0.0) return 0.0;
  return x_[degree - 1][action_index(a)] / m;
}

double SocialState::unprotected_share(int degree) const {
  return share(degree, Action::none) + share(degree, Action::insure);
}

double SocialState::protected_mass() const {
  double total = 0.0;
  for (const Row& r : x_) total += r[action_index(Action::protect)];
  return total;
}

double SocialState::insured_mass() const {
  double total = 0.0;
  for (const Row& r : x_) total += r[action_index(Action::insure)];
  return total;
}

SocialState SocialState::with_mass_moved(int degree, Action from, Action to,
                                         double amount) const {
  if (degree < 1 || degree > max_degree())
    throw std::invalid_argument("with_mass_moved: degree out of range");
  if (amount < 0.0) throw std::invalid_argument("with_mass_moved: negative amount");
  std::vector<Row> rows = x_;
  double& src = rows[degree - 1][action_index(from)];
  if (src + kNegativeTol < amount)
    throw std::invalid_argument("with_mass_moved: not enough mass to move");
  src -= amount;
  rows[degree - 1][action_index(to)] += amount;
  return SocialState(*dist_, std::move(rows));
}

double transmission_prob(const SocialState& s, const ModelParams& p) {
  const DegreeDistribution& dist = s.dist();
  double weighted_protected = 0.0;
  for (int d = 1; d <= dist.max_degree(); ++d)
    weighted_protected += d * s.mass(d, Action::protect);
  double scale = dist.average_degree() * dist.total_mass();
  return p.indirect_attack_prob *
         (p.infect_prob_unprotected - p.delta_infect() * weighted_protected / scale);
}

double branching_ratio(const SocialState& s, const ModelParams& p) {
  const DegreeDistribution& dist = s.dist();
  double sum = 0.0;
  for (int d = 2; d <= dist.max_degree(); ++d) {
    double w = dist.neighbor_weight(d);
    if (w <= 0.0) continue;
    sum += w * (d - 1) *
           (p.infect_prob_unprotected - s.share(d, Action::protect) * p.delta_infect());
  }
  return p.indirect_attack_prob * sum;
}

ExposureParts exposure_parts(const SocialState& s, const ModelParams& p) {
  ExposureParts parts;
  parts.transmission = transmission_prob(s, p);
  parts.branching = branching_ratio(s, p);
  if (std::abs(parts.branching - 1.0) <= kBranchingUnitTol) {
    parts.exposure = p.max_hops * parts.transmission;
  } else {
    double sum = 0.0, power = 1.0;
    for (int k = 0; k < p.max_hops; ++k) {
      sum += power;
      power *= parts.branching;
    }
    parts.exposure = parts.transmission * sum;
  }
  return parts;
}

double exposure(const SocialState& s, const ModelParams& p) {
  return exposure_parts(s, p).exposure;
}

std::vector<double> exposure_terms(const SocialState& s, const ModelParams& p) {
  ExposureParts parts = exposure_parts(s, p);
  std::vector<double> terms(static_cast<std::size_t>(p.max_hops));
  double power = 1.0;
  for (int k = 0; k < p.max_hops; ++k) {
    terms[k] = parts.transmission * power;
    power *= parts.branching;
  }
  return terms;
}

double insurance_payout_at(double exposure_value, const ModelParams& p, int degree) {
  double unprotected_cost = action_cost_at(exposure_value, p, degree, Action::none);
  double covered = p.coverage_level * std::max(unprotected_cost - p.deductible, 0.0);
  return std::min(p.max_coverage, covered);
}

double action_cost_at(double exposure_value, const ModelParams& p, int degree, Action a) {
  double attacks = p.direct_attack_prob * (1.0 + degree * exposure_value);
  switch (a) {
    case Action::protect:
      return attacks * p.loss_protected + p.protection_cost;
    case Action::none:
      return attacks * p.loss_unprotected;
    case Action::insure:
      return attacks * p.loss_unprotected + p.insurance_premium -
             insurance_payout_at(exposure_value, p, degree);
  }
  throw std::invalid_argument("unknown action");
}

namespace {
void check_degree(const SocialState& s, int degree) {
  if (degree < 1 || degree > s.max_degree())
    throw std::invalid_argument("degree out of range");
}
}  // namespace

double action_cost(const SocialState& s, const ModelParams& p, int degree, Action a) {
  check_degree(s, degree);
  return action_cost_at(exposure(s, p), p, degree, a);
}

double insurance_payout(const SocialState& s, const ModelParams& p, int degree) {
  check_degree(s, degree);
  return insurance_payout_at(exposure(s, p), p, degree);
}

}  // namespace ids
