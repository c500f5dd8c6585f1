// Copyright 2026 The seqgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQGAME_SOLVER_HPP_
#define SEQGAME_SOLVER_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/sparse.hpp"
#include "seqgame/treeplex.hpp"

namespace seqgame {

struct SolverConfig {
  double epsilon = 1e-4;
  std::size_t max_iter = 100000;
  std::optional<double> lambda_override;
  // Record a trace point every this many iterations (0 disables tracing).
  std::size_t trace_every = 0;
  std::uint64_t seed = 0;  // power-iteration start
  // Which y enters the q update: the freshly clipped one (true) or the one
  // from the start of the iteration (false).
  bool dq_uses_updated_y = true;
  bool reclip_y_after_correction = false;
  // Fill TracePoint::elapsed_ms. Off by default so traces are reproducible.
  bool record_timing = false;

  void check() const {
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
    if (max_iter < 1) throw PreconditionError("max_iter must be at least 1");
    if (lambda_override && !(*lambda_override > 0.0)) {
      throw PreconditionError("lambda override must be positive");
    }
  }
};

// Primal-dual point (y, p, x, q) in R^n2 x R^l1 x R^n1 x R^l2.
struct Quadruplet {
  Vector y;
  Vector p;
  Vector x;
  Vector q;

  static Quadruplet zeros(const SequenceFormGame& g) {
    return {Vector(g.n2(), 0.0), Vector(g.l1(), 0.0), Vector(g.n1(), 0.0),
            Vector(g.l2(), 0.0)};
  }

  std::size_t size() const { return y.size() + p.size() + x.size() + q.size(); }

  // Concatenation in (y, p, x, q) order.
  Vector flat() const {
    Vector out;
    out.reserve(size());
    for (const Vector* part : {&y, &p, &x, &q}) out.insert(out.end(), part->begin(), part->end());
    return out;
  }
};

struct SolverState {
  Quadruplet z;
  Quadruplet z0;
  Vector v;  // accumulated increments, (y, p, x, q) order
  std::size_t k = 0;
  double lambda = 0.0;
  double norm_K = 0.0;
  Quadruplet sum;  // running sum of iterates 1..k
};

struct TracePoint {
  std::size_t iter = 0;
  double residual = 0.0;
  // Gap, value and the dual estimates use the ergodic average (strategies
  // normalized onto the polytopes); feasibility columns use the last iterate.
  double gap = 0.0;
  double value = 0.0;
  double p0 = 0.0;
  double neg_q0 = 0.0;
  double feas_x = 0.0;
  double feas_y = 0.0;
  double min_x = 0.0;
  double min_y = 0.0;
  double elapsed_ms = 0.0;
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
  double norm_K = 0.0;
  double residual = 0.0;
  double value = 0.0;
  double duality_gap = 0.0;
  bool gap_feasibility_warning = false;
  FeasibilityResiduals feas;           // last iterate
  FeasibilityResiduals ergodic_feas;   // raw ergodic average
  Quadruplet last;
  Quadruplet ergodic;
  Vector x_bar;  // ergodic strategies normalized onto Q1, Q2
  Vector y_bar;
  std::vector<TracePoint> trace;
};

namespace detail {

inline void check_game(const SequenceFormGame& game) {
  if (auto v = validate_sequence_form(game); !v.empty()) {
    throw ValidationError("invalid game: " + describe(v));
  }
}

inline bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

}  // namespace detail

inline SolverState init(const SequenceFormGame& game,
                        const std::optional<Quadruplet>& start,
                        const SolverConfig& config) {
  config.check();
  detail::check_game(game);
  SolverState s;
  s.z = start ? *start : Quadruplet::zeros(game);
  if (s.z.y.size() != game.n2() || s.z.p.size() != game.l1() ||
      s.z.x.size() != game.n1() || s.z.q.size() != game.l2()) {
    throw DimensionError("init: start point does not match game dimensions");
  }
  s.z0 = s.z;
  s.v.assign(s.z.size(), 0.0);
  s.sum = Quadruplet::zeros(game);

  SpectralNormOptions opts;
  opts.seed = config.seed;
  const SpectralNormResult norm = spectral_norm(build_K(game), opts);
  s.norm_K = norm.value;
  if (config.lambda_override) {
    s.lambda = *config.lambda_override;
  } else {
    if (!norm.converged) {
      throw InitializationError("power iteration for |K| did not converge after " +
                                std::to_string(norm.iterations) + " iterations");
    }
    s.lambda = 1.0 / norm.value;
  }
  return s;
}

// One pass of the primal-dual iteration: predictor on (y, p) then x, dual
// step on q, and corrector on (y, p) driven by the x and q increments.
inline void step(SolverState& s, const SequenceFormGame& game,
                 const SolverConfig& config) {
  const double lam = s.lambda;
  const SparseMatrix& A = game.A;
  Vector& y = s.z.y;
  Vector& p = s.z.p;
  Vector& x = s.z.x;
  Vector& q = s.z.q;
  const Vector y_prev = y;
  const Vector p_prev = p;

  const Vector atx = A.transpose_matvec(x);
  const Vector e2tq = game.E2.transpose_matvec(q);
  Vector y_new(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    y_new[j] = std::max(0.0, y[j] - lam * (atx[j] + e2tq[j]));
  }
  const Vector e1x = game.E1.matvec(x);
  Vector p_new(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p_new[i] = p[i] - lam * (game.e1[i] - e1x[i]);
  }

  const Vector ay = A.matvec(y_new);
  const Vector e1tp = game.E1.transpose_matvec(p_new);
  Vector dx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double next = std::max(0.0, x[i] + lam * (ay[i] - e1tp[i]));
    dx[i] = next - x[i];
    x[i] = next;
  }

  const Vector e2y = game.E2.matvec(config.dq_uses_updated_y ? y_new : y_prev);
  Vector dq(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    dq[i] = lam * (e2y[i] - game.e2[i]);
    q[i] += dq[i];
  }

  const Vector atdx = A.transpose_matvec(dx);
  const Vector e2tdq = game.E2.transpose_matvec(dq);
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] = y_new[j] - lam * (atdx[j] + e2tdq[j]);
    if (config.reclip_y_after_correction) y[j] = std::max(0.0, y[j]);
  }

  const Vector e1dx = game.E1.matvec(dx);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = p_new[i] + lam * e1dx[i];

  std::size_t o = 0;
  for (std::size_t j = 0; j < y.size(); ++j) s.v[o++] += y[j] - y_prev[j];
  for (std::size_t i = 0; i < p.size(); ++i) s.v[o++] += p[i] - p_prev[i];
  for (std::size_t i = 0; i < x.size(); ++i) s.v[o++] += dx[i];
  for (std::size_t i = 0; i < q.size(); ++i) s.v[o++] += dq[i];
  ++s.k;

  if (!detail::all_finite(y) || !detail::all_finite(p) ||
      !detail::all_finite(x) || !detail::all_finite(q)) {
    throw DivergenceError(s.k, "non-finite iterate");
  }
  for (std::size_t j = 0; j < y.size(); ++j) s.sum.y[j] += y[j];
  for (std::size_t i = 0; i < p.size(); ++i) s.sum.p[i] += p[i];
  for (std::size_t i = 0; i < x.size(); ++i) s.sum.x[i] += x[i];
  for (std::size_t i = 0; i < q.size(); ++i) s.sum.q[i] += q[i];
}

// |v| / (k lambda), the stopping quantity.
inline double residual(const SolverState& s) {
  if (s.k == 0) throw PreconditionError("residual is undefined before the first iteration");
  return norm2(s.v) / (static_cast<double>(s.k) * s.lambda);
}

inline Quadruplet ergodic_average(const SolverState& s) {
  if (s.k == 0) throw PreconditionError("ergodic average needs at least one iteration");
  const double inv = 1.0 / static_cast<double>(s.k);
  Quadruplet out = s.sum;
  for (Vector* part : {&out.y, &out.p, &out.x, &out.q}) {
    for (double& d : *part) d *= inv;
  }
  return out;
}

struct SolveOptions {
  std::optional<Quadruplet> start;
  // Invoked synchronously for every recorded trace point.
  std::function<void(const TracePoint&)> on_trace;
};

inline SolveReport solve(const SequenceFormGame& game, const SolverConfig& config,
                         const SolveOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  SolverState s = init(game, options.start, config);
  const TreeplexIndex index1 = build_treeplex_index(game.E1, game.e1, 1);
  const TreeplexIndex index2 = build_treeplex_index(game.E2, game.e2, 2);

  SolveReport report;
  report.epsilon = config.epsilon;
  report.lambda = s.lambda;
  report.norm_K = s.norm_K;

  auto evaluate = [&](TracePoint& t) {
    const Quadruplet avg = ergodic_average(s);
    const Vector xb = normalize_to_polytope(index1, avg.x, 1).values;
    const Vector yb = normalize_to_polytope(index2, avg.y, 2).values;
    t.iter = s.k;
    t.residual = residual(s);
    t.gap = duality_gap(game, index1, index2, xb, yb).gap;
    t.value = expected_value(game, xb, yb);
    t.p0 = avg.p.empty() ? 0.0 : avg.p[0];
    t.neg_q0 = avg.q.empty() ? 0.0 : -avg.q[0];
    const FeasibilityResiduals f = feasibility_residuals(game, s.z.x, s.z.y);
    t.feas_x = f.feas_x;
    t.feas_y = f.feas_y;
    t.min_x = f.min_x;
    t.min_y = f.min_y;
    if (config.record_timing) {
      t.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    }
  };
  auto record = [&]() {
    TracePoint t;
    evaluate(t);
    report.trace.push_back(t);
    if (options.on_trace) options.on_trace(t);
  };

  double res = 0.0;
  do {
    step(s, game, config);
    res = residual(s);
    if (config.trace_every > 0 && s.k % config.trace_every == 0) record();
  } while (res >= config.epsilon && s.k < config.max_iter);
  if (config.trace_every > 0 && (report.trace.empty() || report.trace.back().iter != s.k)) {
    record();
  }

  report.converged = res < config.epsilon;
  report.iterations = s.k;
  report.residual = res;
  report.last = s.z;
  report.ergodic = ergodic_average(s);
  report.x_bar = normalize_to_polytope(index1, report.ergodic.x, 1).values;
  report.y_bar = normalize_to_polytope(index2, report.ergodic.y, 2).values;
  report.value = expected_value(game, report.x_bar, report.y_bar);
  const GapResult gap = duality_gap(game, index1, index2, report.x_bar, report.y_bar);
  report.duality_gap = gap.gap;
  report.gap_feasibility_warning = gap.feasibility_warning;
  report.feas = feasibility_residuals(game, s.z.x, s.z.y);
  report.ergodic_feas = feasibility_residuals(game, report.ergodic.x, report.ergodic.y);
  return report;
}

}  // namespace seqgame

#endif  // SEQGAME_SOLVER_HPP_
