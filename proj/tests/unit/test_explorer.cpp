#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "symreach/certificate.hpp"
#include "symreach/errors.hpp"
#include "symreach/explorer.hpp"

using namespace symreach;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<ReachRecord> sample_records() {
  ReachRecord a{0.0, 5.0, -2.356194490192345, 3.1622776601683795, 2.356194490192345,
                OptimStatus::Reached, 3.2e-4, 17, 0.125, std::vector<double>{0.1, -2.5, 20.0}};
  ReachRecord b{1.5, 0.1, 0.5235987755982988, 1.0, 1.5707963267948966,
                OptimStatus::LocalMinimum, 0.75, 18446744073709551615ull, 1e-5, std::nullopt};
  ReachRecord c{-0.99, 100.0, 1.0 / 3.0, 100.0, 0.1, OptimStatus::TimeLimit,
                std::numeric_limits<double>::infinity(), 0, 10.0, std::nullopt};
  return {a, b, c};
}

void expect_same(const ReachRecord& x, const ReachRecord& y, bool with_pulse) {
  EXPECT_EQ(x.c, y.c);
  EXPECT_EQ(x.T, y.T);
  EXPECT_EQ(x.theta, y.theta);
  EXPECT_EQ(x.z, y.z);
  EXPECT_EQ(x.phi, y.phi);
  EXPECT_EQ(x.status, y.status);
  EXPECT_EQ(x.epsilon, y.epsilon);
  EXPECT_EQ(x.seed, y.seed);
  EXPECT_EQ(x.wall_time, y.wall_time);
  if (with_pulse) EXPECT_EQ(x.pulse, y.pulse);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("symreach_test_" + name);
}

SweepSpec small_sweep() {
  SweepSpec s;
  s.c_values = {0.0, 1.5};
  s.T_values = {1.0};
  s.grid.angular_step = kPi / 3.0;
  s.grid.z_levels = 3;
  s.seed = 42;
  return s;
}

}  // namespace

TEST(Grid, ReducedCount) {
  const auto pts = grid_points(GridSpec{});
  // 12 theta values on the z = 1 plane, then 12 x 6 on each of 4 levels.
  EXPECT_EQ(pts.size(), 12u + 12u * 6u * 4u);
  EXPECT_DOUBLE_EQ(pts.front().z, 1.0);
  EXPECT_DOUBLE_EQ(pts.back().z, 10.0);
  for (const auto& p : pts) {
    EXPECT_TRUE(in_range(p, {}));
    if (p.z == 1.0) EXPECT_DOUBLE_EQ(p.phi, kPi / 2.0);
  }
}

TEST(Grid, FullCountAndLogLevels) {
  const auto pts = grid_points(GridSpec::full());
  EXPECT_EQ(pts.size(), 24u + 24u * 12u * 9u);
  std::vector<double> levels;
  for (const auto& p : pts) {
    if (levels.empty() || levels.back() != p.z) levels.push_back(p.z);
  }
  ASSERT_EQ(levels.size(), 10u);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    EXPECT_NEAR(std::log10(levels[k]), 2.0 * k / 9.0, 1e-12);
  }
}

TEST(Grid, Validation) {
  GridSpec g;
  g.angular_step = 0.7;
  EXPECT_THROW(validate(g), DomainError);
  g = GridSpec{};
  g.z_max = 1.0;
  EXPECT_THROW(validate(g), DomainError);
  g = GridSpec{};
  g.z_levels = 1;
  EXPECT_THROW(validate(g), DomainError);
  SweepSpec s = small_sweep();
  s.c_values.clear();
  EXPECT_THROW(validate(s), DomainError);
}

TEST(Sweep, CoverageAndOrder) {
  const SweepSpec s = small_sweep();
  const auto pts = grid_points(s.grid);
  const auto recs = run_grid(s);
  ASSERT_EQ(recs.size(), 2u * 1u * pts.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].c, i < pts.size() ? 0.0 : 1.5);
    EXPECT_EQ(recs[i].theta, pts[i % pts.size()].theta);
    EXPECT_EQ(recs[i].z, pts[i % pts.size()].z);
    EXPECT_EQ(recs[i].phi, pts[i % pts.size()].phi);
    EXPECT_EQ(recs[i].reached(), recs[i].epsilon < s.settings.tol);
  }
}

TEST(Sweep, IndependentOfWorkerCount) {
  SweepSpec s = small_sweep();
  s.workers = 1;
  const auto one = run_grid(s);
  s.workers = 3;
  const auto three = run_grid(s);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].status, three[i].status);
    EXPECT_EQ(one[i].epsilon, three[i].epsilon);
    EXPECT_EQ(one[i].seed, three[i].seed);
  }
}

TEST(Sweep, UnstableReachedPointsRespectBounds) {
  SweepSpec s = small_sweep();
  s.c_values = {0.0, 0.5};
  s.grid = GridSpec{};
  s.T_values = {1.0};
  for (const ReachRecord& r : run_grid(s)) {
    if (!r.reached()) continue;
    EXPECT_GT(std::sin(2.0 * r.theta), 0.0);
    const double f = fz_of_triple(r.triple());
    EXPECT_GE(f, 1.0);
    EXPECT_GT(r.z, min_z_for_f(f) - 1e-9);
  }
}

TEST(ReachPoint, RotationPlaneIsUnreachable) {
  const ReachRecord r = reach_point(0.0, 5.0, {0.0, 1.0, kPi / 2.0}, OptimSettings{}, 3);
  EXPECT_FALSE(r.reached());
  EXPECT_EQ(r.status, OptimStatus::LocalMinimum);
}

TEST(Boundary, ZAxisOnDriftLine) {
  for (double T : {1.0, 2.0}) {
    BoundarySpec b;
    b.c = 0.0;
    b.T = T;
    b.fixed = {-3.0 * kPi / 4.0, 1.0, 3.0 * kPi / 4.0};
    b.axis = Axis::Z;
    b.lo = 1.05;
    b.hi = 30.0;
    b.seed = 5;
    const BoundaryPoint p = bisect_boundary(b);
    EXPECT_LE(p.width, b.z_rel_tol);
    EXPECT_NE(p.lo_status == OptimStatus::Reached, p.hi_status == OptimStatus::Reached);
    // The free drift lands on this line at z = e^T and nothing below it is
    // reached; a target counts as reached within Frobenius distance
    // sqrt(8 tol) of the set.
    const double slack = std::sqrt(8.0 * b.settings.tol);
    EXPECT_GE(p.hi, std::exp(T) - slack);
    EXPECT_GE(p.midpoint, (std::exp(T) - slack) * (1.0 - b.z_rel_tol));
    EXPECT_LE(p.midpoint, std::exp(T) * (1.0 + b.z_rel_tol));
  }
}

TEST(Boundary, ThetaAxisStaysInUpperHalf) {
  BoundarySpec b;
  b.c = 0.0;
  b.T = 1.0;
  b.fixed = {0.0, 3.0, 3.0 * kPi / 4.0};
  b.axis = Axis::Theta;
  b.lo = -3.0 * kPi / 4.0;
  b.hi = 0.0;
  b.seed = 9;
  const BoundaryPoint p = bisect_boundary(b);
  EXPECT_LE(p.width, b.angular_tol);
  EXPECT_EQ(p.lo_status, OptimStatus::Reached);
  EXPECT_GT(p.midpoint, -3.0 * kPi / 4.0);
  EXPECT_LE(p.midpoint, -kPi / 2.0 + b.angular_tol);
}

TEST(Boundary, NoBracket) {
  BoundarySpec b;
  b.c = 0.0;
  b.T = 1.0;
  b.fixed = {-3.0 * kPi / 4.0, 1.0, 3.0 * kPi / 4.0};
  b.axis = Axis::Z;
  b.lo = 1.2;
  b.hi = 2.0;
  EXPECT_THROW(bisect_boundary(b), NoBracket);
  b.lo = 5.0;
  b.hi = 8.0;
  EXPECT_THROW(bisect_boundary(b), NoBracket);
}

TEST(Axis, Parse) {
  EXPECT_EQ(parse_axis("theta"), Axis::Theta);
  EXPECT_EQ(parse_axis("z"), Axis::Z);
  EXPECT_EQ(parse_axis("phi"), Axis::Phi);
  EXPECT_THROW(parse_axis("psi"), DomainError);
}

TEST(Export, CsvShape) {
  const std::string csv = records_to_csv(sample_records());
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(records_to_csv({}), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(records_from_csv(records_to_csv({})).empty());
}

TEST(Export, JsonRoundTrip) {
  const auto recs = sample_records();
  const auto back = records_from_json(records_to_json(recs));
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) expect_same(recs[i], back[i], true);
}

TEST(Export, CsvRoundTripAndAgreesWithJson) {
  const auto recs = sample_records();
  const auto csv = records_from_csv(records_to_csv(recs));
  const auto json = records_from_json(records_to_json(recs));
  ASSERT_EQ(csv.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    expect_same(recs[i], csv[i], false);
    expect_same(csv[i], json[i], false);
  }
}

TEST(Export, Files) {
  const auto recs = sample_records();
  for (const char* name : {"r.json", "r.csv"}) {
    const auto path = temp_path(name);
    export_records(recs, path, format_from_path(path));
    const auto back = import_records(path);
    ASSERT_EQ(back.size(), recs.size());
    expect_same(recs[1], back[1], false);
    std::filesystem::remove(path);
  }
  EXPECT_THROW(import_records(temp_path("missing.json")), IoError);
  EXPECT_THROW(export_records(recs, "/nonexistent-dir/x.csv", Format::Csv), IoError);
  EXPECT_THROW(format_from_path("x.txt"), DomainError);
  EXPECT_THROW(records_from_csv("a,b\n"), DomainError);
}

TEST(SweepConfig, Parse) {
  const SweepSpec s = sweep_spec_from_json(R"({
    "c": [0, -0.5], "T": [1, 5],
    "grid": {"angular_step": 0.5235987755982988, "z_levels": 5, "z_max": 10},
    "problem": {"Q": 12, "u_max": 15, "tol": 1e-4, "restarts": 3, "wall_limit": 2},
    "theta0": 0, "phi0": 1.5707963267948966, "seed": 77})");
  EXPECT_EQ(s.c_values, (std::vector<double>{0.0, -0.5}));
  EXPECT_EQ(s.T_values, (std::vector<double>{1.0, 5.0}));
  EXPECT_EQ(s.grid.z_levels, 5u);
  EXPECT_EQ(s.settings.slices, 12u);
  EXPECT_EQ(s.settings.u_min, -15.0);
  EXPECT_EQ(s.settings.tol, 1e-4);
  EXPECT_EQ(s.settings.restarts, 3u);
  EXPECT_EQ(s.seed, 77u);
  EXPECT_THROW(sweep_spec_from_json("{\"c\": []}"), DomainError);
  EXPECT_THROW(sweep_spec_from_json("not json"), DomainError);
}

TEST(Scatter, SinglePoint) {
  const std::string svg = scatter_svg({sample_records()[0]}, Projection::ThetaPhi);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "class=\"reached\""), 1u);
  EXPECT_NE(svg.find(">theta<"), std::string::npos);
  EXPECT_NE(svg.find(">phi<"), std::string::npos);
}

TEST(Scatter, AllUnreached) {
  auto recs = sample_records();
  recs.erase(recs.begin());
  const std::string svg = scatter_svg(recs, Projection::ZTheta);
  EXPECT_EQ(count(svg, "class=\"reached\""), 0u);
  EXPECT_EQ(count(svg, "class=\"unreached\""), 2u);
  EXPECT_NE(svg.find("z (log scale)"), std::string::npos);
  EXPECT_NE(svg.find("0 of 2 reached"), std::string::npos);
}

TEST(Scatter, Errors) {
  EXPECT_THROW(scatter_svg({}, Projection::ZPhi), EmptyInput);
  EXPECT_THROW(parse_projection("x-y"), DomainError);
  EXPECT_EQ(parse_projection(to_string(Projection::ZPhi)), Projection::ZPhi);
  EXPECT_THROW(render_scatter(sample_records(), Projection::ZPhi, "/nonexistent-dir/a.svg"),
               IoError);
}
