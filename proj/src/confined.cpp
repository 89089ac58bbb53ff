#include "frobenius/confined.hpp"

#include "frobenius/errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace frobenius {

int next_order(int K, double growth) {
  return std::max(K + 1, static_cast<int>(std::lround(K * growth)));
}

std::vector<ConfinedState> confined_roots_at(const SeriesTable& series, const Real& R,
                                             int n_states, const ConfinedOptions& options) {
  ScanOptions scan = options.scan;
  scan.refine_u = true;
  scan.refine_du = false;
  const Window window = spectral_window(series, R, n_states, scan);
  const InterleavedRoots roots = scan_interleaved(series, R, window, options.initial_grid, scan);

  std::vector<std::optional<Real>> by_label(n_states);
  for (const auto& lambda : roots.u.roots) {
    const int n = node_count(series, lambda, R);
    if (n >= n_states) continue;
    if (by_label[n]) throw InterleaveError("two roots share node count " + std::to_string(n));
    by_label[n] = lambda;
  }
  std::vector<ConfinedState> states;
  for (int n = 0; n < n_states; ++n) {
    if (!by_label[n]) {
      throw InterleaveError("no root with node count " + std::to_string(n) + " at K = " +
                            std::to_string(series.order()));
    }
    states.push_back({n, series.channel().l, *by_label[n]});
  }
  return states;
}

ConfinedResult solve_confined(const PotentialSpec& potential, const Real& l, const Real& R,
                              int n_states, const Real& tol, const ConfinedOptions& options) {
  if (n_states < 1) throw DomainError("n_states must be at least 1");
  if (!(R > 0)) throw DomainError("confinement radius must be positive");
  if (potential.confined_radius() && R >= potential.rho_V) {
    throw ConfinementError("confinement radius R = " + format_full(R) +
                           " is not inside the convergence radius " +
                           format_full(potential.rho_V));
  }
  const ChannelParams channel = indicial_exponents(potential, l);

  auto attempt = [&](int K) -> std::optional<std::vector<ConfinedState>> {
    try {
      return confined_roots_at(build_series(potential, channel, K, Real(0)), R, n_states,
                               options);
    } catch (const InterleaveError&) {
    } catch (const InsufficientRError&) {
    } catch (const ResolutionError&) {
    }
    return std::nullopt;
  };

  int K = options.K_start;
  auto previous = attempt(K);
  for (;;) {
    const int K2 = next_order(K, options.K_growth);
    if (K2 > options.K_max) {
      throw ConvergenceError("confined roots did not stabilise below K = " +
                             std::to_string(options.K_max));
    }
    auto current = attempt(K2);
    if (previous && current) {
      bool stable = true;
      for (int n = 0; n < n_states; ++n) {
        if (!(abs((*current)[n].lambda - (*previous)[n].lambda) < tol)) stable = false;
      }
      if (stable) return {std::move(*current), R, K2, working_digits()};
    }
    previous = std::move(current);
    K = K2;
  }
}

ConfinedResult solve_confined_adaptive(const std::function<PotentialSpec(int)>& family,
                                       int P_start, const Real& l, const Real& R, int n_states,
                                       const Real& tol, const ConfinedOptions& options) {
  constexpr int kMaxP = 60;
  int P = std::max(P_start, 0);
  ConfinedResult previous = solve_confined(family(P), l, R, n_states, tol / 10, options);
  while (P + 2 <= kMaxP) {
    P += 2;
    ConfinedResult current = solve_confined(family(P), l, R, n_states, tol / 10, options);
    bool stable = true;
    for (int n = 0; n < n_states; ++n) {
      if (!(abs(current.states[n].lambda - previous.states[n].lambda) < tol / 10)) stable = false;
    }
    if (stable) return current;
    previous = std::move(current);
  }
  throw ConvergenceError("potential truncation did not stabilise up to P = " +
                         std::to_string(kMaxP));
}

std::vector<SweepRow> r_sweep(const PotentialSpec& potential, const std::vector<Real>& ls,
                              int n_states, const std::vector<Real>& R_list, const Real& tol,
                              const ConfinedOptions& options, int jobs) {
  for (const auto& R : R_list) {
    if (potential.confined_radius() && R >= potential.rho_V) {
      throw ConfinementError("sweep radius " + format_full(R) + " exceeds rho_V");
    }
  }
  bool has_s_wave = false;
  for (const auto& l : ls) has_s_wave = has_s_wave || l == 0;
  std::vector<Real> channels = ls;
  if (!has_s_wave) channels.emplace_back(0);

  const std::size_t per_R = channels.size();
  std::vector<ConfinedResult> results(R_list.size() * per_R);
  detail::parallel_for(results.size(), jobs, [&](std::size_t task) {
    const Real& R = R_list[task / per_R];
    const Real& l = channels[task % per_R];
    const int count = (!has_s_wave && task % per_R == per_R - 1) ? 1 : n_states;
    results[task] = solve_confined(potential, l, R, count, tol, options);
  });

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    Real ground;
    for (std::size_t c = 0; c < per_R; ++c) {
      if (channels[c] == 0) ground = results[i * per_R + c].states.front().lambda;
    }
    for (std::size_t c = 0; c < ls.size(); ++c) {
      const ConfinedResult& r = results[i * per_R + c];
      for (const auto& s : r.states) {
        rows.push_back({R_list[i], s.n, s.l, s.lambda, s.lambda - ground, r.K_used});
      }
    }
  }
  return rows;
}

}  // namespace frobenius
