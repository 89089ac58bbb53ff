#include "frobenius/unconfined.hpp"

#include "frobenius/confined.hpp"
#include "frobenius/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace frobenius {

std::vector<BracketResult> brackets_at_R(const PotentialSpec& potential, const Real& l,
                                         const Real& R, int n_states, int K,
                                         const ScanOptions& scan, int initial_grid) {
  if (n_states < 1) throw DomainError("n_states must be at least 1");
  if (potential.confined_radius() && R >= potential.rho_V) {
    throw ConvergenceError("matching radius lies outside the convergence radius");
  }
  const SeriesTable series = build_series(potential, l, K, Real(0));
  const Window window = spectral_window(series, R, n_states, scan);
  const InterleavedRoots roots = scan_interleaved(series, R, window, initial_grid, scan);
  if (static_cast<int>(roots.u.roots.size()) < n_states) {
    throw InsufficientRError("only " + std::to_string(roots.u.roots.size()) +
                             " roots of u(R, .) below the window top at R = " + format_full(R));
  }
  if (roots.du.roots.size() < roots.u.roots.size() ||
      !(roots.du.roots.front() < roots.u.roots.front())) {
    throw InterleaveError("bracket pattern does not start with a derivative root");
  }

  const Real cutoff = effective_potential(potential, l, R);
  std::vector<BracketResult> out;
  for (int k = 0; k < n_states; ++k) {
    BracketResult b;
    b.k = k;
    b.l = l;
    b.lower = roots.du.roots[k];
    b.upper = roots.u.roots[k];
    b.R = R;
    b.width = b.upper - b.lower;
    b.K = K;
    b.certified = b.upper < cutoff;
    if (node_count(series, b.upper, R) != k || node_count(series, b.lower, R) != k) {
      throw InterleaveError("node count of bracket " + std::to_string(k) +
                            " does not match its index at K = " + std::to_string(K));
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

Real precision_slack(const Real& value) {
  return ten_to_minus(static_cast<int>(working_digits()) - 2 * kGuardDigits) *
         max(Real(1), abs(value));
}

}  // namespace

Certification certify_state(const PotentialSpec& potential, const Real& l, int k,
                            const RSchedule& schedule, const UnconfinedOptions& options) {
  if (!(schedule.R0 > 0) || !(schedule.dR > 0)) {
    throw DomainError("R-schedule needs R0 > 0 and dR > 0");
  }
  Certification cert;
  Real R = schedule.R0;
  Real dR = schedule.dR;
  const Real min_step = schedule.dR / 8;
  int K = options.K_start;
  std::optional<BracketResult> previous;

  // After K changes, re-evaluate the last accepted step so that monotonicity is
  // judged at a single truncation order.
  auto recompute_previous = [&]() {
    if (!previous) return;
    try {
      previous = brackets_at_R(potential, l, previous->R, k + 1, K, options.scan,
                               options.initial_grid)[k];
      if (!cert.trace.empty() && cert.trace.back().R == previous->R) cert.trace.back() = *previous;
    } catch (const Error&) {
      previous.reset();
      if (!cert.trace.empty()) cert.trace.pop_back();
    }
  };
  auto raise_K = [&]() {
    if (K >= options.K_max) return false;
    K = std::min(next_order(K, options.K_growth), options.K_max);
    recompute_previous();
    return true;
  };
  auto give_up = [&]() {
    if (previous) {
      cert.result = *previous;
    } else {
      cert.result.k = k;
      cert.result.l = l;
      cert.result.R = R;
      cert.result.K = K;
    }
    cert.result.converged = false;
    return cert;
  };

  for (int step = 0; step < schedule.max_steps; ++step) {
    if (potential.confined_radius() && R > options.radius_guard * potential.rho_V) {
      return give_up();
    }
    BracketResult b;
    try {
      b = brackets_at_R(potential, l, R, k + 1, K, options.scan, options.initial_grid)[k];
    } catch (const Error& e) {
      if (!dynamic_cast<const InterleaveError*>(&e) &&
          !dynamic_cast<const InsufficientRError*>(&e) &&
          !dynamic_cast<const ResolutionError*>(&e)) {
        throw;
      }
      // A long step may land where K is far too small; back off before raising K.
      if (previous && R - previous->R > min_step * Real(1.01)) {
        R = previous->R + (R - previous->R) / 2;
        dR = max(dR / 2, min_step);
        continue;
      }
      if (!raise_K()) return give_up();
      continue;
    }

    if (previous && previous->certified && b.certified) {
      const bool shrinks = b.lower >= previous->lower - precision_slack(b.lower) &&
                           b.upper <= previous->upper + precision_slack(b.upper);
      if (!shrinks) {
        if (!raise_K()) return give_up();
        continue;
      }
    }
    cert.trace.push_back(b);

    if (b.certified && b.width < schedule.tol) {
      if (K >= options.K_max) return give_up();
      const int K_check = std::min(next_order(K, options.K_growth), options.K_max);
      try {
        BracketResult check = brackets_at_R(potential, l, R, k + 1, K_check, options.scan,
                                            options.initial_grid)[k];
        if (abs(check.lower - b.lower) < schedule.tol / 10 &&
            abs(check.upper - b.upper) < schedule.tol / 10 && check.width < schedule.tol) {
          // Report the order that produced the bracket; K_check only confirms it.
          b.converged = true;
          cert.trace.back() = b;
          cert.result = b;
          return cert;
        }
      } catch (const Error&) {
      }
      cert.trace.pop_back();
      K = K_check;
      recompute_previous();
      continue;
    }

    Real advance = dR;
    if (previous && previous->R < b.R && b.width > 0 && previous->width > b.width) {
      const Real shrink = previous->width / b.width;
      if (shrink > 10) dR *= 2;
      advance = dR;
      if (b.certified && previous->certified) {
        // Do not step far past the radius where the bracket is predicted to close.
        const Real rate = log(shrink) / (b.R - previous->R);
        const Real needed = log(b.width / schedule.tol) / rate;
        if (needed < advance) advance = max(needed * Real(1.1), min_step);
      }
    }
    previous = b;
    R += advance;
  }
  return give_up();
}

std::vector<BracketResult> solve_unconfined(const PotentialSpec& potential, const Real& l,
                                            const std::vector<int>& states,
                                            const RSchedule& schedule,
                                            const UnconfinedOptions& options, int jobs) {
  std::vector<BracketResult> out(states.size());
  detail::parallel_for(states.size(), jobs, [&](std::size_t i) {
    out[i] = certify_state(potential, l, states[i], schedule, options).result;
  });
  return out;
}

RSchedule default_schedule(const PotentialSpec& potential, const Real& l, const Real& tol) {
  RSchedule s;
  s.tol = tol;
  Real best = infinity();
  Real where = 1;
  for (int t = 1; t <= 400; ++t) {
    const Real r = Real(t) / 40;
    if (potential.confined_radius() && r >= potential.rho_V) break;
    const Real v = effective_potential(potential, l, r);
    if (v < best) {
      best = v;
      where = r;
    }
  }
  s.R0 = max(Real(1), where);
  return s;
}

BracketResult anharmonic_energy(const AnharmonicSpec& spec, StateLabel state, const Real& tol,
                                const UnconfinedOptions& options) {
  const PotentialSpec potential = anharmonic_spec(spec);
  const Real l = state.l;
  return certify_state(potential, l, state.n, default_schedule(potential, l, tol), options)
      .result;
}

CrossingResult find_level_crossing(int J, StateLabel a, StateLabel b,
                                   const std::pair<Real, Real>& z_window, const Real& tol,
                                   const UnconfinedOptions& options) {
  const Real energy_tol = tol / 10;
  CrossingResult result;
  // Each state restarts at the truncation order its previous solve settled on.
  UnconfinedOptions options_a = options;
  UnconfinedOptions options_b = options;
  auto difference = [&](const Real& z) {
    ++result.evaluations;
    const BracketResult ea = anharmonic_energy({J, z}, a, energy_tol, options_a);
    const BracketResult eb = anharmonic_energy({J, z}, b, energy_tol, options_b);
    if (!ea.converged || !eb.converged) {
      throw ConvergenceError("energies at z = " + format_fixed(z, 8) + " did not converge");
    }
    options_a.K_start = std::max(options.K_start, ea.K);
    options_b.K_start = std::max(options.K_start, eb.K);
    result.energy = (ea.energy() + eb.energy()) / 2;
    return ea.energy() - eb.energy();
  };

  Real lo = z_window.first;
  Real hi = z_window.second;
  if (!(lo < hi)) std::swap(lo, hi);
  Real f_lo = difference(lo);
  Real f_hi = difference(hi);
  if ((f_lo > 0) == (f_hi > 0)) {
    throw NoSignChange("E_a - E_b keeps its sign on [" + format_fixed(lo, 6) + ", " +
                       format_fixed(hi, 6) + "]");
  }

  // Illinois false position. An estimate closer than tol/2 to the last iterate
  // is pushed tol/2 towards the far end so the bracket can close.
  int stale_side = 0;
  while (hi - lo > tol) {
    Real z = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(z > lo && z < hi)) z = (lo + hi) / 2;
    if (stale_side == -1 && z - lo < tol / 2) z = lo + tol / 2;
    if (stale_side == 1 && hi - z < tol / 2) z = hi - tol / 2;
    const Real f = difference(z);
    if (f == 0) {
      lo = hi = z;
      break;
    }
    if ((f > 0) == (f_lo > 0)) {
      lo = z;
      f_lo = f;
      if (stale_side == -1) f_hi /= 2;
      stale_side = -1;
    } else {
      hi = z;
      f_hi = f;
      if (stale_side == 1) f_lo /= 2;
      stale_side = 1;
    }
  }
  result.z = (lo + hi) / 2;
  result.width = hi - lo;
  return result;
}

std::vector<StateLabel> lowest_labels(int count) {
  std::vector<StateLabel> labels;
  for (int shell = 0; static_cast<int>(labels.size()) < count; ++shell) {
    for (int n = 0; 2 * n <= shell && static_cast<int>(labels.size()) < count; ++n) {
      labels.push_back({n, shell - 2 * n});
    }
  }
  return labels;
}

std::vector<ZSweepPoint> z_sweep(int J, const std::vector<StateLabel>& states,
                                 const std::vector<Real>& z_list, const Real& tol,
                                 const UnconfinedOptions& options, int jobs) {
  std::vector<StateLabel> solve = states;
  const bool has_ground = std::find(states.begin(), states.end(), StateLabel{0, 0}) != states.end();
  if (!has_ground) solve.push_back({0, 0});

  std::vector<ZSweepPoint> points(z_list.size());
  std::vector<BracketResult> energies(z_list.size() * solve.size());
  detail::parallel_for(energies.size(), jobs, [&](std::size_t task) {
    const Real& z = z_list[task / solve.size()];
    const StateLabel state = solve[task % solve.size()];
    try {
      energies[task] = anharmonic_energy({J, z}, state, tol, options);
    } catch (const Error&) {
      // Recorded as a non-converged point; the sweep goes on.
      BracketResult failed;
      failed.k = state.n;
      failed.l = state.l;
      failed.lower = failed.upper = failed.width = std::numeric_limits<double>::quiet_NaN();
      energies[task] = failed;
    }
  });

  for (std::size_t i = 0; i < z_list.size(); ++i) {
    ZSweepPoint& p = points[i];
    p.z = z_list[i];
    for (std::size_t s = 0; s < solve.size(); ++s) {
      if (solve[s] == StateLabel{0, 0}) p.ground = energies[i * solve.size() + s].energy();
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      const BracketResult& e = energies[i * solve.size() + s];
      p.energies.push_back(e);
      p.excitation.push_back(e.energy() - p.ground);
      p.converged = p.converged && e.converged;
      std::optional<Real> asymptote;
      const AnharmonicSpec spec{J, p.z};
      if (p.z > 0) {
        asymptote = asymptotic_energy(spec, states[s].n, Real(states[s].l),
                                      AsymptoticBranch::large_positive_z);
      } else if (p.z < 0 && J == 2) {
        asymptote = asymptotic_energy(spec, states[s].n, Real(states[s].l),
                                      AsymptoticBranch::large_negative_z);
      }
      p.asymptote.push_back(asymptote);
    }
    if (!has_ground) p.converged = p.converged && energies[i * solve.size() + states.size()].converged;
  }
  return points;
}

}  // namespace frobenius
