#include "ids/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ids {

bool ModelParams::premium_relations_hold() const {
  return loss_protected < (1.0 - coverage_level) * loss_unprotected &&
         protection_cost > insurance_premium + deductible;
}

std::vector<std::string> param_violations(const ModelParams& p, ParamCheck check) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  if (!(p.direct_attack_prob >= 0.0 && p.direct_attack_prob <= 1.0))
    fail("direct_attack_prob must lie in [0,1]");
  if (!(p.infect_prob_protected >= 0.0))
    fail("infect_prob_protected must be nonnegative");
  if (!(p.infect_prob_unprotected <= 1.0))
    fail("infect_prob_unprotected must be at most 1");
  if (!(p.infect_prob_protected < p.infect_prob_unprotected))
    fail("infect_prob_protected must be strictly below infect_prob_unprotected");
  if (!(p.loss_protected >= 0.0 && p.loss_unprotected >= 0.0))
    fail("losses must be nonnegative");
  if (!(p.loss_protected < p.loss_unprotected))
    fail("loss_protected must be strictly below loss_unprotected");
  if (!(p.protection_cost >= 0.0 && p.insurance_premium >= 0.0 && p.deductible >= 0.0))
    fail("costs must be nonnegative");
  if (!(p.coverage_level > 0.0 && p.coverage_level <= 1.0))
    fail("coverage_level must lie in (0,1]");
  if (!(p.max_coverage >= 0.0)) fail("max_coverage must be nonnegative");
  if (!(p.indirect_attack_prob > 0.0 && p.indirect_attack_prob <= 1.0))
    fail("indirect_attack_prob must lie in (0,1]");
  if (p.max_hops < 1) fail("max_hops must be at least 1");

  if (check == ParamCheck::strict) {
    if (!(p.loss_protected < (1.0 - p.coverage_level) * p.loss_unprotected))
      fail("loss_protected must be below (1 - coverage_level) * loss_unprotected");
    if (!(p.protection_cost > p.insurance_premium + p.deductible))
      fail("protection_cost must exceed insurance_premium + deductible");
  }
  return out;
}

void require_valid(const ModelParams& p, ParamCheck check) {
  auto bad = param_violations(p, check);
  if (bad.empty()) return;
  std::ostringstream msg;
  msg << "invalid model parameters:";
  for (const auto& s : bad) msg << " " << s << ";";
  throw std::invalid_argument(msg.str());
}

DegreeDistribution::DegreeDistribution(std::vector<double> masses, bool normalize)
    : mass_(std::move(masses)) {
  if (mass_.empty()) throw std::invalid_argument("degree distribution needs max_degree >= 1");
  for (double m : mass_)
    if (!(m >= 0.0) || !std::isfinite(m))
      throw std::invalid_argument("population masses must be finite and nonnegative");
  total_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  if (!(total_ > 0.0)) throw std::invalid_argument("at least one population mass must be positive");
  if (normalize) {
    for (double& m : mass_) m /= total_;
    total_ = 1.0;
  }

  double weighted = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    weighted += static_cast<double>(i + 1) * mass_[i];
  avg_degree_ = weighted / total_;
  weight_.resize(mass_.size());
  for (std::size_t i = 0; i < mass_.size(); ++i)
    weight_[i] = static_cast<double>(i + 1) * mass_[i] / weighted;
}

DegreeDistribution DegreeDistribution::power_law(double alpha, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("power_law: max_degree must be >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("power_law: alpha must be nonnegative");
  std::vector<double> m(static_cast<std::size_t>(max_degree));
  for (int d = 1; d <= max_degree; ++d)
    m[d - 1] = std::pow(static_cast<double>(d), -alpha);
  return DegreeDistribution(std::move(m), true);
}

DegreeDistribution DegreeDistribution::truncated_poisson(double rate, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("truncated_poisson: max_degree must be >= 1");
  if (!(rate > 0.0)) throw std::invalid_argument("truncated_poisson: rate must be positive");
  // Work in log space; rate^d/d! overflows quickly otherwise.
  std::vector<double> logm(static_cast<std::size_t>(max_degree));
  for (int d = 1; d <= max_degree; ++d)
    logm[d - 1] = d * std::log(rate) - std::lgamma(static_cast<double>(d) + 1.0);
  double top = *std::max_element(logm.begin(), logm.end());
  std::vector<double> m(logm.size());
  for (std::size_t i = 0; i < logm.size(); ++i) m[i] = std::exp(logm[i] - top);
  return DegreeDistribution(std::move(m), true);
}

DegreeDistribution DegreeDistribution::from_masses(std::vector<double> masses) {
  return DegreeDistribution(std::move(masses), true);
}

DegreeDistribution DegreeDistribution::from_masses_unnormalized(std::vector<double> masses) {
  return DegreeDistribution(std::move(masses), false);
}

}  // namespace ids
