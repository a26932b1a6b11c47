#include "ids/optimum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ids {

namespace {
constexpr double kMassEps = 1e-12;
constexpr int kGoldenIters = 100;
constexpr int kPolishIters = 90;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

void check_plan(const PlannerAction& y, const DegreeDistribution& dist) {
  if (static_cast<int>(y.protected_mass.size()) != dist.max_degree())
    throw std::invalid_argument("planner action must have one entry per degree");
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double v = y.protected_mass[d - 1];
    if (!(v >= -kMassEps) || v > dist.mass(d) + kMassEps)
      throw std::invalid_argument("planner action entry outside [0, m_d]");
  }
}
}  // namespace

double PlannerAction::total() const {
  return std::accumulate(protected_mass.begin(), protected_mass.end(), 0.0);
}

SocialState planner_state(const PlannerAction& y, const DegreeDistribution& dist) {
  check_plan(y, dist);
  std::vector<SocialState::Row> rows(static_cast<std::size_t>(dist.max_degree()),
                                     SocialState::Row{0.0, 0.0, 0.0});
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double protect = std::clamp(y.protected_mass[d - 1], 0.0, dist.mass(d));
    rows[d - 1][action_index(Action::protect)] = protect;
    rows[d - 1][action_index(Action::none)] = dist.mass(d) - protect;
  }
  return SocialState(dist, std::move(rows));
}

double social_cost(const PlannerAction& y, const ModelParams& p,
                   const DegreeDistribution& dist) {
  check_plan(y, dist);
  double e = exposure(planner_state(y, dist), p);
  double total = 0.0;
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double protect = std::clamp(y.protected_mass[d - 1], 0.0, dist.mass(d));
    total += protect * action_cost_at(e, p, d, Action::protect) +
             (dist.mass(d) - protect) * action_cost_at(e, p, d, Action::none);
  }
  return total;
}

double social_cost_state(const SocialState& s, const ModelParams& p) {
  double e = exposure(s, p);
  double total = 0.0;
  for (int d = 1; d <= s.max_degree(); ++d) {
    for (Action a : kAllActions)
      total += s.mass(d, a) * action_cost_at(e, p, d, a);
    // The insurer's net cost: payouts made minus premiums collected.
    total += s.mass(d, Action::insure) *
             (insurance_payout_at(e, p, d) - p.insurance_premium);
  }
  return total;
}

double social_cost_derivative(const PlannerAction& y, const ModelParams& p,
                              const DegreeDistribution& dist, int degree, Side side) {
  check_plan(y, dist);
  if (degree < 1 || degree > dist.max_degree())
    throw std::invalid_argument("degree out of range");
  double yd = y.protected_mass[degree - 1];
  if (side == Side::up && yd >= dist.mass(degree))
    throw std::invalid_argument("derivative up not defined at y_d = m_d");
  if (side == Side::down && yd <= 0.0)
    throw std::invalid_argument("derivative down not defined at y_d = 0");

  ExposureParts parts = exposure_parts(planner_state(y, dist), p);
  // sum_{k=0}^{K-1} branching^k and sum_{k=1}^{K-1} k branching^(k-1)
  double geo = 0.0, geo_slope = 0.0, power = 1.0;
  for (int k = 0; k < p.max_hops; ++k) {
    geo += power;
    power *= parts.branching;
  }
  power = 1.0;  // branching^(k-1)
  for (int k = 1; k < p.max_hops; ++k) {
    geo_slope += k * power;
    power *= parts.branching;
  }

  double scale = dist.average_degree() * dist.total_mass();
  double exposure_slope = -(p.indirect_attack_prob * p.delta_infect() * degree / scale) *
                          (geo + parts.transmission * (degree - 1) * geo_slope);

  double weighted_losses = 0.0;
  for (int d = 1; d <= dist.max_degree(); ++d) {
    double yd2 = std::clamp(y.protected_mass[d - 1], 0.0, dist.mass(d));
    weighted_losses += p.direct_attack_prob * d *
                       (yd2 * p.loss_protected + (dist.mass(d) - yd2) * p.loss_unprotected);
  }

  return p.protection_cost -
         p.direct_attack_prob * (1.0 + degree * parts.exposure) * p.delta_loss() +
         weighted_losses * exposure_slope;
}

namespace {

PlannerAction threshold_plan(const DegreeDistribution& dist, int d_dagger, double t) {
  PlannerAction y{std::vector<double>(static_cast<std::size_t>(dist.max_degree()), 0.0)};
  for (int d = d_dagger + 1; d <= dist.max_degree(); ++d)
    y.protected_mass[d - 1] = dist.mass(d);
  if (d_dagger <= dist.max_degree())
    y.protected_mass[d_dagger - 1] = std::clamp(t, 0.0, dist.mass(d_dagger));
  return y;
}

}  // namespace

OptimumResult solve_opt(const ModelParams& p, const DegreeDistribution& dist,
                        const OptOptions& opts) {
  int d_max = dist.max_degree();

  double best_cost = social_cost(threshold_plan(dist, d_max + 1, 0.0), p, dist);
  int best_dagger = d_max + 1;
  double best_t = 0.0;

  for (int d_dagger = d_max; d_dagger >= 1; --d_dagger) {
    double m = dist.mass(d_dagger);
    if (m <= 0.0) continue;
    auto slice_cost = [&](double t) {
      return social_cost(threshold_plan(dist, d_dagger, t), p, dist);
    };

    // Seed grid: the slice is continuous but not certifiably unimodal, so a
    // grid picks the basin before golden section narrows it.
    int n = std::max(2, opts.grid_points);
    int best_i = 0;
    double best_slice = slice_cost(0.0);
    for (int i = 1; i <= n; ++i) {
      double c = slice_cost(m * i / n);
      if (c < best_slice) {
        best_slice = c;
        best_i = i;
      }
    }
    double lo = m * std::max(0, best_i - 1) / n;
    double hi = m * std::min(n, best_i + 1) / n;

    double a = lo, b = hi;
    double c1 = b - kInvPhi * (b - a), c2 = a + kInvPhi * (b - a);
    double f1 = slice_cost(c1), f2 = slice_cost(c2);
    for (int iter = 0; iter < kGoldenIters && b - a > opts.mass_tol * 1e-4; ++iter) {
      if (f1 < f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - kInvPhi * (b - a);
        f1 = slice_cost(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + kInvPhi * (b - a);
        f2 = slice_cost(c2);
      }
    }
    double t = 0.5 * (a + b);

    // Snap to the box edges; corner optima live exactly on them.
    double snap = std::max(1e-15, 1e-12 * m);
    if (t < snap) t = 0.0;
    if (m - t < snap) t = m;

    // Interior points: polish with the analytic derivative so first-order
    // conditions hold to machine precision.
    if (t > 0.0 && t < m) {
      auto slope = [&](double tv) {
        PlannerAction y = threshold_plan(dist, d_dagger, tv);
        Side side = tv >= dist.mass(d_dagger) ? Side::down : Side::up;
        return social_cost_derivative(y, p, dist, d_dagger, side);
      };
      double plo = std::max(0.0, t - m / n), phi = std::min(m, t + m / n);
      double slo = slope(plo), shi = slope(phi);
      if (slo < 0.0 && shi > 0.0) {
        for (int iter = 0; iter < kPolishIters && phi - plo > 0.0; ++iter) {
          double mid = 0.5 * (plo + phi);
          if (slope(mid) < 0.0)
            plo = mid;
          else
            phi = mid;
        }
        t = 0.5 * (plo + phi);
      }
    }

    double cost = slice_cost(t);
    if (cost < best_cost) {
      best_cost = cost;
      best_dagger = d_dagger;
      best_t = t;
    }
  }

  PlannerAction plan = threshold_plan(dist, best_dagger, best_t);

  // First-order certificate at every degree.
  std::ostringstream diag;
  bool certified = true;
  ExposureParts parts = exposure_parts(planner_state(plan, dist), p);
  for (int d = 1; d <= d_max; ++d) {
    double m = dist.mass(d);
    if (m <= 0.0) continue;
    double yd = plan.protected_mass[d - 1];
    double tol = 1e-6 * std::max(1.0, std::abs(p.protection_cost) +
                                          p.direct_attack_prob *
                                              (1.0 + d * parts.exposure) *
                                              p.delta_loss());
    if (yd <= kMassEps) {
      double up = social_cost_derivative(plan, p, dist, d, Side::up);
      if (up < -tol) {
        certified = false;
        diag << " degree " << d << ": ascent available, d+=" << up << ";";
      }
    } else if (yd >= m - kMassEps) {
      double down = social_cost_derivative(plan, p, dist, d, Side::down);
      if (down > tol) {
        certified = false;
        diag << " degree " << d << ": descent available, d-=" << down << ";";
      }
    } else {
      double up = social_cost_derivative(plan, p, dist, d, Side::up);
      if (std::abs(up) > tol) {
        certified = false;
        diag << " degree " << d << ": interior slope " << up << ";";
      }
    }
  }
  if (!certified)
    throw SolveError("solve_opt: first-order certificate failed;" + diag.str());

  int threshold = d_max + 1;
  for (int d = 1; d <= d_max; ++d) {
    if (plan.protected_mass[d - 1] > kMassEps) {
      threshold = d;
      break;
    }
  }
  return OptimumResult{std::move(plan), best_cost, threshold};
}

}  // namespace ids
