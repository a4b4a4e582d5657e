#include "symreach/pulse_optim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "symreach/box_lbfgs.hpp"
#include "symreach/errors.hpp"
#include "symreach/rng.hpp"

namespace symreach {

namespace {

// [[X, Y], [0, X]] kept as its two distinct blocks.
struct Block {
  Mat2 diag;
  Mat2 upper;
};

Block mul(const Block& a, const Block& b) {
  return {a.diag * b.diag, a.diag * b.upper + a.upper * b.diag};
}

constexpr int kTaylorDegree = 18;

}  // namespace

BlockExp expm_augmented(const Mat2& x, const Mat2& e) {
  const double norm = x.frobenius() + e.frobenius();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const Block m{x * scale, e * scale};

  // Horner: I + M (I + M/2 (I + M/3 (...))).
  Block acc{Mat2::identity(), Mat2::zero()};
  for (int k = kTaylorDegree; k >= 1; --k) {
    Block t = mul(m, acc);
    t.diag *= 1.0 / k;
    t.upper *= 1.0 / k;
    t.diag += Mat2::identity();
    acc = t;
  }
  for (int i = 0; i < squarings; ++i) acc = mul(acc, acc);
  return {acc.diag, acc.upper};
}

double fidelity_error(const Mat2& s, const Mat2& target) {
  return kFidelityWeight * (s - target).frobenius_sq();
}

std::string_view to_string(OptimStatus s) {
  switch (s) {
    case OptimStatus::Reached:
      return "Reached";
    case OptimStatus::LocalMinimum:
      return "LocalMinimum";
    case OptimStatus::TimeLimit:
      return "TimeLimit";
  }
  return "unknown";
}

OptimStatus parse_status(std::string_view s) {
  if (s == "Reached") return OptimStatus::Reached;
  if (s == "LocalMinimum") return OptimStatus::LocalMinimum;
  if (s == "TimeLimit") return OptimStatus::TimeLimit;
  throw DomainError("unknown status '" + std::string(s) + "'");
}

void validate(const PulseProblem& p) {
  const OptimSettings& s = p.settings;
  if (!(p.T > 0.0) || !std::isfinite(p.T)) throw DomainError("problem: T must be positive");
  if (s.slices == 0) throw DomainError("problem: need at least one slice");
  if (!(s.u_min < s.u_max)) throw DomainError("problem: need u_min < u_max");
  if (!(s.tol > 0.0)) throw DomainError("problem: tol must be positive");
  if (s.restarts == 0) throw DomainError("problem: need at least one start");
}

double objective_and_gradient(const ControlSystem& sys, const Mat2& target,
                              const Pulse& pulse, std::span<double> grad) {
  const std::size_t q = pulse.slices();
  const double dt = pulse.dt();
  const Mat2 b_dt = sys.control.mat() * dt;

  std::vector<Mat2> step(q);
  std::vector<Mat2> dstep(q);
  // forward[k] = S_{k-1} ... S_0
  std::vector<Mat2> forward(q + 1);
  forward[0] = Mat2::identity();
  for (std::size_t k = 0; k < q; ++k) {
    const AlgebraElement g = sys.generator(pulse.values[k]);
    step[k] = expm(g, dt).mat();
    if (!grad.empty()) dstep[k] = expm_augmented(g.mat() * dt, b_dt).frechet;
    forward[k + 1] = step[k] * forward[k];
  }
  const Mat2 diff = forward[q] - target;
  const double eps = kFidelityWeight * diff.frobenius_sq();
  if (grad.empty()) return eps;

  // d eps/du_k = 2 lambda <S - T, L_k dS_k R_k>, with L_k the product of the
  // later slices and R_k = forward[k].
  Mat2 later = Mat2::identity();
  for (std::size_t k = q; k-- > 0;) {
    grad[k] = 2.0 * kFidelityWeight * frobenius_dot(diff, later * dstep[k] * forward[k]);
    later = later * step[k];
  }
  return eps;
}

std::vector<double> gradient(const PulseProblem& problem, const Pulse& pulse) {
  validate(pulse);
  std::vector<double> g(pulse.slices());
  objective_and_gradient(problem.system, problem.target.mat(), pulse, g);
  return g;
}

OptimResult optimize_from(const PulseProblem& problem, const Pulse& initial) {
  validate(problem);
  validate(initial);
  const OptimSettings& s = problem.settings;
  const std::size_t q = initial.slices();
  const Mat2 target = problem.target.mat();
  const double T = problem.T;
  Pulse work{initial.values, T};

  const Objective fn = [&](std::span<const double> u, std::span<double> grad) {
    std::copy(u.begin(), u.end(), work.values.begin());
    return objective_and_gradient(problem.system, target, work, grad);
  };
  const std::vector<double> lower(q, s.u_min);
  const std::vector<double> upper(q, s.u_max);
  BoxLbfgsOptions opt;
  opt.memory = s.memory;
  opt.gtol = s.gtol;
  opt.ftol = s.ftol;
  opt.max_iterations = s.max_iterations;
  opt.target = s.tol;
  opt.wall_limit = s.wall_limit;
  BoxLbfgsResult r = minimize_box(fn, initial.values, lower, upper, opt);

  OptimResult out;
  out.epsilon = r.f;
  out.pulse = Pulse{std::move(r.x), T};
  out.iterations = r.iterations;
  out.grad_norm = r.projected_grad_norm;
  out.starts = 1;
  if (r.f < s.tol) {
    out.status = OptimStatus::Reached;
  } else if (r.stop == BoxLbfgsStop::TimeLimit) {
    out.status = OptimStatus::TimeLimit;
  } else {
    out.status = OptimStatus::LocalMinimum;
  }
  return out;
}

OptimResult optimize(const PulseProblem& problem) {
  validate(problem);
  const OptimSettings& s = problem.settings;
  const double lo = std::max(s.u_min, -s.init_spread);
  const double hi = std::min(s.u_max, s.init_spread);

  OptimResult best;
  bool have_best = false;
  std::size_t total_iterations = 0;
  for (std::size_t i = 0; i < s.restarts; ++i) {
    std::mt19937_64 rng(derive_seed(problem.seed, i));
    std::uniform_real_distribution<double> dist(lo, hi);
    Pulse initial{std::vector<double>(s.slices), problem.T};
    for (double& v : initial.values) v = (lo < hi) ? dist(rng) : lo;

    OptimResult r = optimize_from(problem, initial);
    total_iterations += r.iterations;
    if (!have_best || r.epsilon < best.epsilon) {
      best = std::move(r);
      have_best = true;
    }
    best.starts = i + 1;
    if (best.status == OptimStatus::Reached) break;
  }
  best.iterations = total_iterations;
  return best;
}

}  // namespace symreach
