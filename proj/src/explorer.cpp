#include "symreach/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "symreach/errors.hpp"
#include "symreach/rng.hpp"

namespace symreach {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t whole_cells(double span, double step, const char* what) {
  const double cells = span / step;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * rounded) {
    std::ostringstream msg;
    msg << "grid: angular step " << step << " does not tile the " << what << " range";
    throw DomainError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

GridSpec GridSpec::full() {
  GridSpec g;
  g.angular_step = kPi / 12.0;
  g.z_levels = 10;
  g.z_max = 100.0;
  return g;
}

void validate(const GridSpec& grid) {
  if (!(grid.angular_step > 0.0)) throw DomainError("grid: angular step must be positive");
  whole_cells(2.0 * kPi, grid.angular_step, "theta");
  whole_cells(kPi, grid.angular_step, "phi");
  if (grid.z_levels < 2) throw DomainError("grid: need at least two z levels");
  if (!(grid.z_max > 1.0)) throw DomainError("grid: z_max must exceed 1");
}

std::vector<EulerTriple> grid_points(const GridSpec& grid) {
  validate(grid);
  const std::size_t n_theta = whole_cells(2.0 * kPi, grid.angular_step, "theta");
  const std::size_t n_phi = whole_cells(kPi, grid.angular_step, "phi");
  const double theta_lo = grid.offsets.theta0 - kPi;
  const double phi_lo = grid.offsets.phi0 - kPi / 2.0;

  std::vector<EulerTriple> out;
  out.reserve(n_theta * (1 + n_phi * (grid.z_levels - 1)));
  for (std::size_t k = 0; k < grid.z_levels; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(grid.z_levels - 1);
    const double z = (k == 0) ? 1.0 : std::pow(grid.z_max, frac);
    for (std::size_t i = 0; i < n_theta; ++i) {
      const double theta = theta_lo + static_cast<double>(i) * grid.angular_step;
      if (k == 0) {
        out.push_back({theta, 1.0, grid.offsets.phi0});
        continue;
      }
      for (std::size_t j = 0; j < n_phi; ++j) {
        out.push_back({theta, z, phi_lo + static_cast<double>(j) * grid.angular_step});
      }
    }
  }
  return out;
}

void validate(const SweepSpec& spec) {
  if (spec.c_values.empty()) throw DomainError("sweep: empty c list");
  if (spec.T_values.empty()) throw DomainError("sweep: empty T list");
  for (double t : spec.T_values) {
    if (!(t > 0.0)) throw DomainError("sweep: T values must be positive");
  }
  validate(spec.grid);
}

ReachRecord reach_point(double c, double T, const EulerTriple& target,
                        const OptimSettings& settings, std::uint64_t seed, bool keep_pulse) {
  const auto start = std::chrono::steady_clock::now();
  PulseProblem problem{example_system(c), compose(target), T, seed, settings};
  const OptimResult r = optimize(problem);
  ReachRecord rec;
  rec.c = c;
  rec.T = T;
  rec.theta = target.theta;
  rec.z = target.z;
  rec.phi = target.phi;
  rec.status = r.status;
  rec.epsilon = r.epsilon;
  rec.seed = seed;
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (keep_pulse) rec.pulse = r.pulse.values;
  return rec;
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i; (i = next++) < count;) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<ReachRecord> run_grid(const SweepSpec& spec) {
  validate(spec);
  const std::vector<EulerTriple> points = grid_points(spec.grid);
  const std::size_t per_run = points.size();
  const std::size_t n_t = spec.T_values.size();
  const std::size_t total = spec.c_values.size() * n_t * per_run;

  std::vector<ReachRecord> records(total);
  parallel_for(total, spec.workers, [&](std::size_t idx) {
    const std::size_t ci = idx / (n_t * per_run);
    const std::size_t ti = (idx / per_run) % n_t;
    const EulerTriple& target = points[idx % per_run];
    const double c = spec.c_values[ci];
    const double T = spec.T_values[ti];
    const std::uint64_t seed = derive_seed(spec.seed, idx);
    try {
      records[idx] = reach_point(c, T, target, spec.settings, seed, spec.keep_pulses);
    } catch (const Error&) {
      // A failed point stays in the sweep as an unreached record.
      ReachRecord rec;
      rec.c = c;
      rec.T = T;
      rec.theta = target.theta;
      rec.z = target.z;
      rec.phi = target.phi;
      rec.status = OptimStatus::LocalMinimum;
      rec.epsilon = std::numeric_limits<double>::infinity();
      rec.seed = seed;
      records[idx] = rec;
    }
  });
  return records;
}

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::Theta:
      return "theta";
    case Axis::Z:
      return "z";
    case Axis::Phi:
      return "phi";
  }
  return "unknown";
}

Axis parse_axis(std::string_view s) {
  if (s == "theta") return Axis::Theta;
  if (s == "z") return Axis::Z;
  if (s == "phi") return Axis::Phi;
  throw DomainError("unknown axis '" + std::string(s) + "'");
}

BoundaryPoint bisect_boundary(const BoundarySpec& spec) {
  if (spec.axis == Axis::Z && !(spec.lo > 0.0 && spec.hi > 0.0)) {
    throw DomainError("bisect_boundary: z bracket must be positive");
  }
  if (!(spec.lo < spec.hi)) throw DomainError("bisect_boundary: need lo < hi");

  BoundaryPoint bp;
  bp.axis = spec.axis;
  bp.point = spec.fixed;
  const auto with_axis = [&](double v) {
    EulerTriple e = spec.fixed;
    switch (spec.axis) {
      case Axis::Theta:
        e.theta = v;
        break;
      case Axis::Z:
        e.z = v;
        break;
      case Axis::Phi:
        e.phi = v;
        break;
    }
    return e;
  };
  const auto probe = [&](double v) {
    const std::uint64_t seed = derive_seed(spec.seed, bp.probes++);
    return reach_point(spec.c, spec.T, with_axis(v), spec.settings, seed).status;
  };
  const auto width = [&](double lo, double hi) {
    return spec.axis == Axis::Z ? hi / lo - 1.0 : hi - lo;
  };
  const double tol = spec.axis == Axis::Z ? spec.z_rel_tol : spec.angular_tol;

  double lo = spec.lo;
  double hi = spec.hi;
  bp.lo_status = probe(lo);
  bp.hi_status = probe(hi);
  const bool lo_reached = bp.lo_status == OptimStatus::Reached;
  if (lo_reached == (bp.hi_status == OptimStatus::Reached)) {
    std::ostringstream msg;
    msg << "bisect_boundary: both ends of [" << lo << ", " << hi << "] are "
        << (lo_reached ? "reached" : "unreached");
    throw NoBracket(msg.str());
  }
  while (width(lo, hi) > tol) {
    const double mid = spec.axis == Axis::Z ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    const OptimStatus s = probe(mid);
    if ((s == OptimStatus::Reached) == lo_reached) {
      lo = mid;
      bp.lo_status = s;
    } else {
      hi = mid;
      bp.hi_status = s;
    }
  }
  bp.lo = lo;
  bp.hi = hi;
  bp.midpoint = spec.axis == Axis::Z ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
  bp.width = width(lo, hi);
  bp.point = with_axis(bp.midpoint);
  return bp;
}

}  // namespace symreach
