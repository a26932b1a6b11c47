#include "ids/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ids {

namespace {
constexpr double kInsuranceTieTol = 1e-9;
constexpr double kMassEps = 1e-12;  // mass below this counts as "no mass"
constexpr int kBisectIters = 90;
constexpr int kBracketGrid = 32;
}  // namespace

SocialState state_from_profile(const ThresholdProfile& profile,
                               const DegreeDistribution& dist, const ModelParams& p) {
  int d_max = dist.max_degree();
  int d_star = profile.threshold_degree;
  if (d_star < 1 || d_star > d_max + 1)
    throw std::invalid_argument("threshold_degree out of range");

  std::vector<SocialState::Row> rows(static_cast<std::size_t>(d_max),
                                     SocialState::Row{0.0, 0.0, 0.0});
  for (int d = 1; d <= d_max; ++d) {
    double protect = 0.0;
    if (d > d_star) {
      protect = dist.mass(d);
    } else if (d == d_star) {
      if (profile.threshold_mass < -kMassEps ||
          profile.threshold_mass > dist.mass(d) + kMassEps)
        throw std::invalid_argument("threshold_mass outside [0, m_d]");
      protect = std::clamp(profile.threshold_mass, 0.0, dist.mass(d));
    }
    rows[d - 1][action_index(Action::protect)] = protect;
    rows[d - 1][action_index(Action::none)] = dist.mass(d) - protect;
  }
  SocialState state(dist, std::move(rows));

  // The exposure depends only on the protected masses, so the insurance
  // decision can be taken afterwards in one pass.
  double e = exposure(state, p);
  std::vector<SocialState::Row> adjusted = state.rows();
  for (int d = 1; d <= d_max; ++d) {
    double unprotected = adjusted[d - 1][action_index(Action::none)];
    if (unprotected <= 0.0) continue;
    double net_premium = p.insurance_premium - insurance_payout_at(e, p, d);
    if (net_premium < -kInsuranceTieTol) {
      adjusted[d - 1][action_index(Action::none)] = 0.0;
      adjusted[d - 1][action_index(Action::insure)] = unprotected;
    }
  }
  return SocialState(dist, std::move(adjusted));
}

double best_response_gap_at(double exposure_value, const ModelParams& p, int degree) {
  double unprotected = std::min(action_cost_at(exposure_value, p, degree, Action::none),
                                action_cost_at(exposure_value, p, degree, Action::insure));
  return unprotected - action_cost_at(exposure_value, p, degree, Action::protect);
}

double best_response_gap(const SocialState& s, const ModelParams& p, int degree) {
  if (degree < 1 || degree > s.max_degree())
    throw std::invalid_argument("degree out of range");
  return best_response_gap_at(exposure(s, p), p, degree);
}

NeCheck verify_ne(const SocialState& s, const ModelParams& p, double cost_tol) {
  NeCheck check;
  double e = exposure(s, p);
  for (int d = 1; d <= s.max_degree(); ++d) {
    if (s.dist().mass(d) <= 0.0) continue;
    double costs[3];
    for (Action a : kAllActions)
      costs[action_index(a)] = action_cost_at(e, p, d, a);
    double best = std::min({costs[0], costs[1], costs[2]});
    for (Action a : kAllActions) {
      if (s.mass(d, a) <= kMassEps) continue;
      double excess = costs[action_index(a)] - best;
      if (excess > cost_tol)
        check.violations.push_back(NeViolation{d, a, excess});
      check.worst_excess = std::max(check.worst_excess, excess);
    }
  }
  check.ok = check.violations.empty();
  return check;
}

namespace {

struct Candidate {
  bool found = false;
  ThresholdProfile profile;
  SocialState state;
};

// Gap at the threshold degree for the profile (d_star, t).
double gap_at_threshold(const ModelParams& p, const DegreeDistribution& dist,
                        int d_star, double t) {
  SocialState s = state_from_profile({d_star, t}, dist, p);
  return best_response_gap_at(exposure(s, p), p, d_star);
}

EquilibriumResult pack_result(const DegreeDistribution& dist, SocialState state,
                              const ThresholdProfile& profile, const ModelParams& p) {
  EquilibriumResult res{std::move(state), dist.max_degree() + 1, 0.0, 0.0, 0.0, 0.0};
  for (int d = 1; d <= dist.max_degree(); ++d) {
    if (res.state.mass(d, Action::protect) > kMassEps) {
      res.threshold_degree = d;
      break;
    }
  }
  res.threshold_mass = profile.threshold_degree <= dist.max_degree()
                           ? res.state.mass(profile.threshold_degree, Action::protect)
                           : 0.0;
  res.protected_mass = res.state.protected_mass();
  res.insured_mass = res.state.insured_mass();
  res.exposure = exposure(res.state, p);
  return res;
}

}  // namespace

EquilibriumResult solve_ne(const ModelParams& p, const DegreeDistribution& dist,
                           const NeOptions& opts) {
  int d_max = dist.max_degree();

  auto try_profile = [&](const ThresholdProfile& profile) -> Candidate {
    SocialState s = state_from_profile(profile, dist, p);
    if (verify_ne(s, p, opts.cost_tol).ok) return Candidate{true, profile, std::move(s)};
    return Candidate{false, profile, std::move(s)};
  };

  // Corner: nobody protects.
  {
    Candidate c = try_profile({d_max + 1, 0.0});
    if (c.found) return pack_result(dist, std::move(c.state), c.profile, p);
  }

  std::vector<int> scan;
  for (int d = d_max; d >= 1; --d)
    if (dist.mass(d) > 0.0) scan.push_back(d);
  if (opts.order == ScanOrder::bottom_up) std::reverse(scan.begin(), scan.end());

  std::ostringstream diag;
  for (int d_star : scan) {
    double m = dist.mass(d_star);

    // Bracket sign changes of the gap along the threshold slice. The gap is
    // decreasing in t wherever it matters, but a short grid keeps this robust
    // for parameter sets where the insurance payout regime flips along the way.
    double prev_t = 0.0;
    double prev_gap = gap_at_threshold(p, dist, d_star, 0.0);
    for (int i = 1; i <= kBracketGrid; ++i) {
      double t = m * i / kBracketGrid;
      double gap = gap_at_threshold(p, dist, d_star, t);
      if ((prev_gap > 0.0) != (gap > 0.0)) {
        double lo = prev_t, hi = t, glo = prev_gap;
        double width_stop = opts.mass_tol * 1e-6;  // headroom for verification
        for (int iter = 0; iter < kBisectIters && hi - lo > width_stop; ++iter) {
          double mid = 0.5 * (lo + hi);
          double gmid = gap_at_threshold(p, dist, d_star, mid);
          if ((glo > 0.0) == (gmid > 0.0)) {
            lo = mid;
            glo = gmid;
          } else {
            hi = mid;
          }
        }
        Candidate c = try_profile({d_star, 0.5 * (lo + hi)});
        if (c.found) return pack_result(dist, std::move(c.state), c.profile, p);
        diag << " root at d=" << d_star << " t=" << 0.5 * (lo + hi)
             << " failed verification;";
      }
      prev_t = t;
      prev_gap = gap;
    }

    // Corner: this degree and everything above fully protected.
    Candidate c = try_profile({d_star, m});
    if (c.found) return pack_result(dist, std::move(c.state), c.profile, p);
  }

  throw SolveError("solve_ne: no threshold candidate verified;" + diag.str());
}

}  // namespace ids
