#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slicesemi/operators.hpp"

namespace slicesemi {

enum class EvolveMethod { Expm, Yosida, Contour };

const char* method_name(EvolveMethod m);

/// Sampled semigroup T(t_k) on an increasing grid starting at 0, with the
/// conservative growth bound (M, w) attached to it.
struct SemigroupTrace {
  std::vector<double> times;
  std::vector<OpMatrix> values;
  EvolveMethod method = EvolveMethod::Expm;
  GrowthBound bound;
};

// T(t) = e^{tA} through the realified exponential, written back as an
// algebra matrix (the exponential of a right-linear generator stays right
// linear; the block-structure residual is checked).
OpMatrix evolve_expm(const OpMatrix& A, double t);

SemigroupTrace expm_trace(const OpMatrix& A, double t_max, int steps);

// Bounded approximant A_n = n A C_n(A).
OpMatrix yosida_approximant(const OpMatrix& A, double n);

struct YosidaEvolveResult {
  ModuleVec value;
  double achieved_tol = 0.0;  // Cauchy difference at the accepted stage
  double n_final = 0.0;
  int stages = 0;
};

// T(t)x by e^{t A_n} x with n doubling until the Cauchy difference drops
// below tol. The stopping rule is a heuristic certificate; the reached
// difference is reported back. Throws NotCauchy at the stage cap.
YosidaEvolveResult evolve_yosida(const OpMatrix& A, double t, const ModuleVec& x, double tol,
                                 std::optional<double> w_guess = {});

struct HYViolation {
  double lambda = 0.0;
  int n = 0;
  std::string reason;
};

struct HYCheck {
  bool ok = false;
  GrowthBound bound;          // valid when ok
  HYViolation violation;      // valid when !ok
  double w = 0.0;             // the shift the bound was fitted against
};

// Fit the smallest M with ||C_lambda(A)^n|| <= M/(lambda-w)^n over the grid,
// n <= n_max. Without an explicit w the spectral abscissa is used. A grid
// point landing on the spherical spectrum is reported as a violation.
HYCheck check_hille_yosida(const OpMatrix& A, std::span<const double> lambda_grid, int n_max,
                           std::optional<double> w = {});

struct LaplaceResult {
  double residual = 0.0;
  double tail_bound = 0.0;
};

// Composite-Simpson quadrature of int_0^inf e^{-t lambda} T(t) x dt against
// C_lambda(A) x, with the analytic truncation tail M e^{(w-lambda) T}/(lambda-w).
LaplaceResult laplace_residual(const OpMatrix& A, double lambda, const SemigroupTrace& trace,
                               const ModuleVec& x, double tail_tol = 1e-8);

// max_k || (u(t_{k+1}) - u(t_{k-1}))/(2h) - A u(t_k) || for u(t) = T(t)x.
double cauchy_problem_residual(const OpMatrix& A, const SemigroupTrace& trace, const ModuleVec& x);

// max || T(t_i + t_j) - T(t_i) T(t_j) || over sampled grid pairs.
double semigroup_law_residual(const SemigroupTrace& trace, int max_pairs = 48);

}  // namespace slicesemi
