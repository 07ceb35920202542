#include "slicesemi/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slicesemi {

const char* method_name(EvolveMethod m) {
  switch (m) {
    case EvolveMethod::Expm: return "expm";
    case EvolveMethod::Yosida: return "yosida";
    case EvolveMethod::Contour: return "contour";
  }
  return "?";
}

OpMatrix evolve_expm(const OpMatrix& A, double t) {
  if (!A.algebra().associative()) fail(Err::NonAssociative, "semigroup evolution");
  if (t < 0.0) fail(Err::BadInput, "time must be nonnegative");
  RealMatrix E = expm(t * realify(A));
  double res = block_structure_residual(E, A.algebra(), A.m());
  if (res > 1e-8 * std::max(1.0, norm_frob(E)))
    fail(Err::NoConvergence, "exponential lost the algebra block structure");
  return derealify(E, A.algebra(), A.m());
}

SemigroupTrace expm_trace(const OpMatrix& A, double t_max, int steps) {
  if (steps < 1 || !(t_max > 0.0)) fail(Err::BadInput, "need t_max > 0 and steps >= 1");
  SemigroupTrace tr;
  tr.method = EvolveMethod::Expm;
  const double h = t_max / steps;
  for (int k = 0; k <= steps; ++k) {
    tr.times.push_back(k * h);
    tr.values.push_back(evolve_expm(A, k * h));
  }
  // conservative (M, w): w from the spectral abscissa, M from the data
  double w = spherical_spectrum(A, 0, false).abscissa();
  if (!std::isfinite(w)) w = 0.0;
  double M = 1.0;
  for (std::size_t k = 0; k < tr.values.size(); ++k)
    M = std::max(M, op_norm(tr.values[k]) * std::exp(-w * tr.times[k]));
  tr.bound = GrowthBound{M, w};
  return tr;
}

OpMatrix yosida_approximant(const OpMatrix& A, double n) {
  OpMatrix Cn = resolvent(A, n);
  return n * matmul(A, Cn);
}

YosidaEvolveResult evolve_yosida(const OpMatrix& A, double t, const ModuleVec& x, double tol,
                                 std::optional<double> w_guess) {
  if (t < 0.0) fail(Err::BadInput, "time must be nonnegative");
  const double w = w_guess.value_or(op_norm(A));
  double n = std::max(1.0, 2.0 * w);
  const double n_cap = std::ldexp(n, 14);

  auto stage = [&](double nn) {
    RealMatrix E = expm(t * realify(yosida_approximant(A, nn)));
    return derealify_vec(matvec(E, realify_vec(x)), A.algebra(), A.m());
  };

  ModuleVec prev = stage(n);
  int stages = 1;
  while (true) {
    double n2 = 2.0 * n;
    if (n2 > n_cap) fail(Err::NotCauchy, "stage cap reached before the Cauchy tolerance");
    ModuleVec cur = stage(n2);
    ++stages;
    double diff = vec_norm(vec_sub(cur, prev));
    if (diff < tol) return YosidaEvolveResult{std::move(cur), diff, n2, stages};
    prev = std::move(cur);
    n = n2;
  }
}

HYCheck check_hille_yosida(const OpMatrix& A, std::span<const double> lambda_grid, int n_max,
                           std::optional<double> w_opt) {
  if (n_max < 1) fail(Err::BadInput, "need n_max >= 1");
  HYCheck out;
  double w;
  if (w_opt) {
    w = *w_opt;
  } else {
    w = spherical_spectrum(A, 0, false).abscissa();
    if (!std::isfinite(w)) w = 0.0;
  }
  out.w = w;

  double M = 1.0;
  for (double lambda : lambda_grid) {
    if (!(lambda > w)) continue;
    Element lam = Element::scalar(A.algebra(), lambda);
    if (!in_spherical_resolvent(A, lam)) {
      out.ok = false;
      out.violation = HYViolation{lambda, 0, "grid point lies in the spherical spectrum"};
      return out;
    }
    OpMatrix C = resolvent(A, lam);
    OpMatrix P = C;
    for (int n = 1; n <= n_max; ++n) {
      if (n > 1) P = matmul(P, C);
      M = std::max(M, op_norm(P) * std::pow(lambda - w, n));
    }
  }
  out.ok = true;
  out.bound = GrowthBound{M, w};
  return out;
}

LaplaceResult laplace_residual(const OpMatrix& A, double lambda, const SemigroupTrace& trace,
                               const ModuleVec& x, double tail_tol) {
  const std::size_t n = trace.times.size();
  if (n < 3) fail(Err::GridTooShort, "need at least three grid points");
  if ((n - 1) % 2 != 0) fail(Err::BadInput, "composite Simpson needs an even interval count");
  const double h = trace.times[1] - trace.times[0];
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (std::abs((trace.times[k + 1] - trace.times[k]) - h) > 1e-9 * (h + 1.0))
      fail(Err::BadInput, "composite Simpson needs a uniform grid");

  const GrowthBound& gb = trace.bound;
  if (!(lambda > gb.w)) fail(Err::BadInput, "lambda must exceed the growth bound");
  const double t_end = trace.times.back();
  const double tail = gb.M * std::exp((gb.w - lambda) * t_end) / (lambda - gb.w);
  if (tail > tail_tol * (1.0 + vec_norm(x)))
    fail(Err::GridTooShort, "truncation tail above tolerance; extend the trace");

  std::vector<double> acc;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> g = realify_vec(apply(trace.values[k], x));
    double wgt = std::exp(-lambda * trace.times[k]);
    double simpson = (k == 0 || k + 1 == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    wgt *= simpson * h / 3.0;
    if (acc.empty()) acc.assign(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) acc[i] += wgt * g[i];
  }

  std::vector<double> ref = realify_vec(apply(resolvent(A, lambda), x));
  double res = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    double d = acc[i] - ref[i];
    res += d * d;
  }
  return LaplaceResult{std::sqrt(res), tail};
}

double cauchy_problem_residual(const OpMatrix& A, const SemigroupTrace& trace, const ModuleVec& x) {
  const std::size_t n = trace.times.size();
  if (n < 3) fail(Err::GridTooShort, "need at least three grid points");
  const double h = trace.times[1] - trace.times[0];
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    ModuleVec up = apply(trace.values[k + 1], x);
    ModuleVec um = apply(trace.values[k - 1], x);
    ModuleVec mid = apply(A, apply(trace.values[k], x));
    std::vector<double> d = realify_vec(vec_sub(up, um));
    std::vector<double> m = realify_vec(mid);
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double v = d[i] / (2.0 * h) - m[i];
      s += v * v;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

double semigroup_law_residual(const SemigroupTrace& trace, int max_pairs) {
  const int n = static_cast<int>(trace.times.size());
  if (n < 2) fail(Err::GridTooShort, "need at least two grid points");
  double worst = 0.0;
  int used = 0;
  int stride = std::max(1, (n * n) / std::max(1, 4 * max_pairs));
  int count = 0;
  for (int i = 1; i < n && used < max_pairs; ++i) {
    for (int j = i; j < n && used < max_pairs; ++j) {
      if (i + j >= n) break;
      if (count++ % stride != 0) continue;
      OpMatrix lhs = trace.values[i + j] - matmul(trace.values[i], trace.values[j]);
      worst = std::max(worst, op_norm(lhs));
      ++used;
    }
  }
  return worst;
}

}  // namespace slicesemi
