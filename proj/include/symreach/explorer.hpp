#pragma once

// Grid-based mapping of the set reachable at a fixed time T, in singular-value
// coordinates (theta, z, phi), for the squeezing example system.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symreach/euler.hpp"
#include "symreach/pulse_optim.hpp"

namespace symreach {

struct GridSpec {
  double angular_step = std::numbers::pi / 6.0;
  std::size_t z_levels = 5;
  double z_max = 10.0;
  RangeOffsets offsets;

  /// pi/12 angular step, 10 z levels up to 100.
  static GridSpec full();
};

/// Throws DomainError unless the step tiles both angular windows exactly,
/// z_levels >= 2 and z_max > 1.
void validate(const GridSpec& grid);

/// Grid targets ordered by z level, then theta, then phi. z levels are
/// log-spaced from 1 to z_max. On the z = 1 plane only phi = phi0 is emitted,
/// since there the decomposition keeps a single free angle.
std::vector<EulerTriple> grid_points(const GridSpec& grid);

struct SweepSpec {
  std::vector<double> c_values;
  std::vector<double> T_values;
  GridSpec grid;
  OptimSettings settings;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool keep_pulses = false;
};

void validate(const SweepSpec& spec);

struct ReachRecord {
  double c = 0.0;
  double T = 0.0;
  double theta = 0.0;
  double z = 1.0;
  double phi = 0.0;
  OptimStatus status = OptimStatus::LocalMinimum;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::optional<std::vector<double>> pulse;

  bool reached() const { return status == OptimStatus::Reached; }
  EulerTriple triple() const { return {theta, z, phi}; }
};

/// Runs the optimizer for one target of example_system(c).
ReachRecord reach_point(double c, double T, const EulerTriple& target,
                        const OptimSettings& settings, std::uint64_t seed,
                        bool keep_pulse = false);

/// Calls fn(i) for i in [0, count) on `workers` threads.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

/// One record per (c, T, grid point), ordered c-major then T then grid order.
/// Point i is seeded with derive_seed(spec.seed, i), so results do not depend
/// on the worker count.
std::vector<ReachRecord> run_grid(const SweepSpec& spec);

enum class Axis { Theta, Z, Phi };

std::string_view to_string(Axis a);
Axis parse_axis(std::string_view s);

struct BoundaryPoint {
  Axis axis = Axis::Z;
  /// Target with the two fixed coordinates set; the axis coordinate holds the
  /// refined midpoint.
  EulerTriple point;
  double lo = 0.0;
  double hi = 0.0;
  OptimStatus lo_status = OptimStatus::LocalMinimum;
  OptimStatus hi_status = OptimStatus::LocalMinimum;
  double midpoint = 0.0;
  /// hi - lo on angular axes, hi / lo - 1 on the z axis.
  double width = 0.0;
  std::size_t probes = 0;
};

struct BoundarySpec {
  double c = 0.0;
  double T = 1.0;
  EulerTriple fixed;
  Axis axis = Axis::Z;
  double lo = 1.0;
  double hi = 10.0;
  OptimSettings settings;
  std::uint64_t seed = 0;
  double angular_tol = 1e-2;
  double z_rel_tol = 1e-2;
};

/// Bisection on reach status along one axis (geometric on z). Throws
/// NoBracket when both ends agree.
BoundaryPoint bisect_boundary(const BoundarySpec& spec);

enum class Format { Json, Csv };

Format parse_format(std::string_view s);
/// json for ".json", csv for ".csv"; throws DomainError otherwise.
Format format_from_path(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader = "c,T,theta,z,phi,status,epsilon,seed,wall_time";

std::string records_to_json(const std::vector<ReachRecord>& records);
std::vector<ReachRecord> records_from_json(std::string_view text);
std::string records_to_csv(const std::vector<ReachRecord>& records);
std::vector<ReachRecord> records_from_csv(std::string_view text);

void export_records(const std::vector<ReachRecord>& records,
                    const std::filesystem::path& path, Format format);
std::vector<ReachRecord> import_records(const std::filesystem::path& path);

/// Reads a sweep description:
/// {c: [...], T: [...], grid: {angular_step, z_levels, z_max},
///  problem: {Q, u_max, tol, restarts, wall_limit}, theta0, phi0, seed}
SweepSpec sweep_spec_from_json(std::string_view text);

enum class Projection { ThetaPhi, ZTheta, ZPhi };

Projection parse_projection(std::string_view s);
std::string_view to_string(Projection p);

/// 2-D scatter of records; Reached points filled, others hollow. z axes are
/// logarithmic. Throws EmptyInput for no records.
std::string scatter_svg(const std::vector<ReachRecord>& records, Projection projection);
void render_scatter(const std::vector<ReachRecord>& records, Projection projection,
                    const std::filesystem::path& path);

}  // namespace symreach
