#include "frobenius/roots.hpp"

#include "frobenius/errors.hpp"

#include <algorithm>
#include <string>

namespace frobenius {

namespace {

int sign_of(const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

struct Sample {
  Real lambda;
  int su = 0;
  int sd = 0;
};

// Evaluates both boundary functions; a PrecisionError on a grid point gets one
// retry at a slightly shifted lambda before it propagates.
Sample sample_at(const SeriesTable& series, const Real& R, const Real& lambda, const Real& nudge,
                 const ScanOptions& options) {
  Real at = lambda;
  for (int attempt = 0;; ++attempt) {
    try {
      const BoundaryValues bv =
          boundary_values(series, R, at, Cancellation::strict, options.guard);
      return {at, sign_of(boundary_function(bv, RootKind::u, options.derivative)),
              sign_of(boundary_function(bv, RootKind::du, options.derivative))};
    } catch (const PrecisionError&) {
      if (attempt > 0) throw;
      at = lambda + nudge;
    }
  }
}

struct Event {
  int position;  // 2t for an exact zero at sample t, 2t-1 for the cell (t-1, t)
  RootKind kind;
};

std::vector<Event> sign_events(const std::vector<Sample>& samples, RootKind kind) {
  std::vector<Event> events;
  int last_sign = 0;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const int s = kind == RootKind::u ? samples[t].su : samples[t].sd;
    if (s == 0) {
      events.push_back({2 * static_cast<int>(t), kind});
      last_sign = 0;
      continue;
    }
    if (last_sign != 0 && s != last_sign) events.push_back({2 * static_cast<int>(t) - 1, kind});
    last_sign = s;
  }
  return events;
}

bool alternates(std::vector<Event> events, bool& separated) {
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.position < b.position; });
  separated = true;
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].position == events[i - 1].position) separated = false;
    if (events[i].kind == events[i - 1].kind) return false;
  }
  return separated;
}

bool value_reliable(const BoundaryValues& bv, RootKind kind, const ScanOptions& options,
                    const Real& delta) {
  if (kind == RootKind::u) return bv.u_reliable(options.guard);
  if (options.derivative == DerivativeCondition::reduced) return bv.dreduced_reliable(options.guard);
  const Real value = delta * bv.reduced + bv.R * bv.dreduced;
  const Real scale = delta * bv.term_scale + bv.R * bv.derivative_term_scale;
  if (value == 0) return scale == 0;
  return scale <= abs(value) * pow(Real(10), static_cast<int>(working_digits()) - options.guard);
}

// Illinois false position with a bisection fallback whenever an iterate fails
// to halve the bracket. Stops once the bracket reaches the precision floor or
// the boundary value can no longer be trusted.
Real bisect(const SeriesTable& series, const Real& R, RootKind kind, Real lo, Real hi,
            int sign_lo, const ScanOptions& options) {
  const Real width_target =
      ten_to_minus(static_cast<int>(working_digits()) - options.guard) *
      max(Real(1), max(abs(lo), abs(hi)));
  const Real& delta = series.channel().delta2;
  auto evaluate = [&](const Real& at, Real& value) {
    const BoundaryValues bv = boundary_values(series, R, at, Cancellation::report, options.guard);
    value = boundary_function(bv, kind, options.derivative);
    return value != 0 && value_reliable(bv, kind, options, delta);
  };

  Real f_lo, f_hi;
  if (!evaluate(lo, f_lo) || !evaluate(hi, f_hi) || sign_of(f_lo) != sign_lo ||
      sign_of(f_hi) == sign_lo) {
    // Fall back to plain bisection on signs.
    while (hi - lo > width_target) {
      Real mid = (lo + hi) / 2;
      Real v;
      if (!evaluate(mid, v)) return mid;
      if (sign_of(v) == sign_lo) {
        lo = std::move(mid);
      } else {
        hi = std::move(mid);
      }
    }
    return (lo + hi) / 2;
  }

  int stale = 0;
  bool use_midpoint = false;
  while (hi - lo > width_target) {
    const Real before = hi - lo;
    Real at = use_midpoint ? Real((lo + hi) / 2) : Real((lo * f_hi - hi * f_lo) / (f_hi - f_lo));
    if (!(at > lo && at < hi)) at = (lo + hi) / 2;
    Real v;
    if (!evaluate(at, v)) return at;
    if (sign_of(v) == sign_lo) {
      lo = std::move(at);
      f_lo = std::move(v);
      if (stale == -1) f_hi /= 2;
      stale = -1;
    } else {
      hi = std::move(at);
      f_hi = std::move(v);
      if (stale == 1) f_lo /= 2;
      stale = 1;
    }
    use_midpoint = hi - lo > before / 2 && !use_midpoint;
  }
  return (lo + hi) / 2;
}

std::vector<Real> refine(const SeriesTable& series, const Real& R,
                         const std::vector<Sample>& samples, const std::vector<Event>& events,
                         const ScanOptions& options, bool bisect_cells) {
  std::vector<Real> roots;
  roots.reserve(events.size());
  for (const auto& e : events) {
    if (e.position % 2 == 0) {
      roots.push_back(samples[e.position / 2].lambda);
      continue;
    }
    const std::size_t t = static_cast<std::size_t>(e.position + 1) / 2;
    if (!bisect_cells) {
      roots.push_back((samples[t - 1].lambda + samples[t].lambda) / 2);
      continue;
    }
    const int s = e.kind == RootKind::u ? samples[t - 1].su : samples[t - 1].sd;
    roots.push_back(
        bisect(series, R, e.kind, samples[t - 1].lambda, samples[t].lambda, s, options));
  }
  return roots;
}

RootSet make_set(RootKind kind, const Window& window, const Real& R, const SeriesTable& series,
                 int grid, std::vector<Real> roots) {
  RootSet set;
  set.kind = kind;
  set.window = window;
  set.R = R;
  set.K = series.order();
  set.digits = working_digits();
  set.grid_used = grid;
  set.roots = std::move(roots);
  return set;
}

// A cell where u and du both change sign holds a close pair of roots (a
// nearly unconfined level). Such cells are halved locally until the two sign
// changes fall into different cells or the cell is as narrow as the working
// precision allows.
Sample midpoint_sample(const SeriesTable& series, const Real& R, const Sample& a,
                       const Sample& b, const ScanOptions& options) {
  const Real width = b.lambda - a.lambda;
  return sample_at(series, R, (a.lambda + b.lambda) / 2, width * ten_to_minus(6), options);
}

void split_collisions(const SeriesTable& series, const Real& R, std::vector<Sample>& samples,
                      const ScanOptions& options) {
  const Real floor_unit = ten_to_minus(static_cast<int>(working_digits()) - options.guard);
  std::size_t t = 1;
  int depth = 0;
  constexpr int kMaxDepth = 200;
  while (t < samples.size()) {
    const Sample& a = samples[t - 1];
    const Sample& b = samples[t];
    const bool both = a.su * b.su < 0 && a.sd * b.sd < 0;
    const Real width = b.lambda - a.lambda;
    if (!both || depth >= kMaxDepth ||
        !(width > floor_unit * max(Real(1), abs(b.lambda)))) {
      ++t;
      depth = 0;
      continue;
    }
    Sample mid = midpoint_sample(series, R, a, b, options);
    samples.insert(samples.begin() + static_cast<std::ptrdiff_t>(t), std::move(mid));
    ++depth;
  }
}

}  // namespace

Real boundary_function(const BoundaryValues& bv, RootKind kind, DerivativeCondition derivative) {
  if (kind == RootKind::u) return bv.reduced;
  return derivative == DerivativeCondition::reduced ? bv.dreduced : bv.du;
}

bool interleaved(const std::vector<Real>& u_roots, const std::vector<Real>& du_roots) {
  std::vector<std::pair<Real, int>> merged;
  for (const auto& r : u_roots) merged.emplace_back(r, 0);
  for (const auto& r : du_roots) merged.emplace_back(r, 1);
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].second == merged[i - 1].second) return false;
    if (!(merged[i].first > merged[i - 1].first)) return false;
  }
  return true;
}

InterleavedRoots scan_interleaved(const SeriesTable& series, const Real& R, const Window& window,
                                  int initial_grid, const ScanOptions& options) {
  if (initial_grid < 8) throw DomainError("initial_grid must be at least 8");
  if (!(window.hi > window.lo) || !isfinite(window.lo) || !isfinite(window.hi)) {
    throw DomainError("scan window must be finite with lo < hi");
  }

  int cells = initial_grid;
  const Real nudge_unit = (window.hi - window.lo) * ten_to_minus(6);
  std::vector<Sample> samples;
  samples.reserve(cells + 1);
  for (int t = 0; t <= cells; ++t) {
    const Real lambda = window.lo + (window.hi - window.lo) * t / cells;
    samples.push_back(sample_at(series, R, lambda, nudge_unit / cells, options));
  }

  std::optional<std::pair<std::size_t, std::size_t>> previous_counts;
  for (int level = 0;; ++level) {
    split_collisions(series, R, samples, options);
    auto u_events = sign_events(samples, RootKind::u);
    auto du_events = sign_events(samples, RootKind::du);
    std::vector<Event> all = u_events;
    all.insert(all.end(), du_events.begin(), du_events.end());
    bool separated = false;
    const bool pattern = alternates(all, separated) || !options.require_interleave;
    const std::pair counts{u_events.size(), du_events.size()};
    if (pattern && previous_counts && *previous_counts == counts) {
      InterleavedRoots out;
      out.u = make_set(RootKind::u, window, R, series, cells,
                       refine(series, R, samples, u_events, options, options.refine_u));
      out.du = make_set(RootKind::du, window, R, series, cells,
                        refine(series, R, samples, du_events, options, options.refine_du));
      if (options.require_interleave && !interleaved(out.u.roots, out.du.roots)) {
        throw InterleaveError("refined roots lost the alternating pattern");
      }
      return out;
    }
    previous_counts = pattern ? std::optional(counts) : std::nullopt;
    if (level >= options.max_doublings) break;

    std::vector<Sample> refined;
    refined.reserve(2 * samples.size());
    cells *= 2;
    for (std::size_t t = 0; t + 1 < samples.size(); ++t) {
      refined.push_back(samples[t]);
      refined.push_back(midpoint_sample(series, R, samples[t], samples[t + 1], options));
    }
    refined.push_back(samples.back());
    samples = std::move(refined);
  }
  throw InterleaveError("u and du roots do not interleave in [" + format_fixed(window.lo, 6) +
                        ", " + format_fixed(window.hi, 6) + "] at R = " + format_full(R) +
                        " with K = " + std::to_string(series.order()) +
                        " (truncation order or precision too small)");
}

RootSet scan_roots(const SeriesTable& series, const Real& R, const Window& window, RootKind kind,
                   int initial_grid, const ScanOptions& options) {
  ScanOptions only = options;
  only.refine_u = kind == RootKind::u;
  only.refine_du = kind == RootKind::du;
  InterleavedRoots both = scan_interleaved(series, R, window, initial_grid, only);
  return kind == RootKind::u ? std::move(both.u) : std::move(both.du);
}

Window spectral_window(const SeriesTable& series, const Real& R, int count,
                       const ScanOptions& options) {
  const PotentialSpec& potential = series.potential();
  const Real& l = series.channel().l;

  constexpr int kSamples = 400;
  Real vmin = infinity();
  for (int t = 1; t <= kSamples; ++t) {
    const Real r = R * t / kSamples;
    const Real v = effective_potential(potential, l, r);
    if (v < vmin) vmin = v;
  }

  auto below_everything = [&](const Real& lambda) {
    const BoundaryValues bv = boundary_values(series, R, lambda, Cancellation::report);
    return bv.reduced > 0 && boundary_function(bv, RootKind::du, options.derivative) > 0 &&
           node_count(series, lambda, R) == 0;
  };
  auto enough_roots = [&](const Real& lambda) { return node_count(series, lambda, R) >= count; };

  Real lo = vmin - abs(vmin) / 20 - 1;
  int tries = 0;
  while (!below_everything(lo)) {
    if (++tries > 64) throw InsufficientRError("no lower spectral bound found");
    lo -= max(Real(1), abs(lo));
  }

  Real hi = max(effective_potential(potential, l, R), lo + 1);
  tries = 0;
  while (!enough_roots(hi)) {
    if (++tries > 64) {
      throw InsufficientRError("fewer than " + std::to_string(count) +
                               " roots of u(R, .) found at R = " + format_full(R));
    }
    hi += hi - lo;
  }

  // Tighten both ends; the predicates stay true at the returned ends.
  constexpr int kTightening = 12;
  Real a = lo, b = hi;
  for (int i = 0; i < kTightening; ++i) {
    Real mid = (a + b) / 2;
    if (below_everything(mid)) {
      a = mid;
    } else {
      b = mid;
    }
  }
  lo = a;
  if (count > 0) {
    a = lo;
    b = hi;
    for (int i = 0; i < kTightening; ++i) {
      Real mid = (a + b) / 2;
      if (enough_roots(mid)) {
        b = mid;
      } else {
        a = mid;
      }
    }
    // Leave room above the top root so its cell is not the last grid cell.
    hi = min(hi, b + (b - lo) / 16);
  }
  return {lo, hi};
}

std::vector<RootDelta> root_stability(const PotentialSpec& potential, const Real& l,
                                      const Real& R, const Window& window, RootKind kind, int K,
                                      int K2, const Real& tol, const ScanOptions& options) {
  if (K2 <= K) throw DomainError("root_stability needs K2 > K");
  const ChannelParams channel = indicial_exponents(potential, l);
  ScanOptions loose = options;
  loose.require_interleave = false;
  const RootSet at_k =
      scan_roots(build_series(potential, channel, K, window.lo), R, window, kind, 64, loose);
  const RootSet at_k2 =
      scan_roots(build_series(potential, channel, K2, window.lo), R, window, kind, 64, loose);

  std::vector<RootDelta> out;
  for (const auto& root : at_k.roots) {
    RootDelta d;
    d.root = root;
    d.delta = infinity();
    for (const auto& other : at_k2.roots) {
      const Real gap = abs(other - root);
      if (gap < d.delta) {
        d.delta = gap;
        d.partner = other;
      }
    }
    if (!(d.delta < tol)) {
      d.spurious = true;
      d.partner.reset();
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace frobenius
