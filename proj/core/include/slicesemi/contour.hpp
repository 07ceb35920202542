#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "slicesemi/operators.hpp"
#include "slicesemi/slice.hpp"

namespace slicesemi {

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

struct QuadratureSpec {
  int nodes_per_arc = 64;   // total Gauss nodes across the arc panels
  int ray_panels = 8;       // minimum geometric panels per ray
  int gauss_order = 16;     // nodes per panel
  double tail_tol = 1e-9;   // certified truncation tail target
};

/// One C^1 piece of a contour in the plane spanned by {1, j}. Arcs are
/// parametrized by angle, lines by [0, 1]; `geometric` marks radial rays
/// that should be subdivided geometrically in |z|.
struct PathSegment {
  enum class Kind { Arc, Line };
  Kind kind = Kind::Line;
  std::complex<double> center{0.0, 0.0};
  double radius = 0.0;
  double t0 = 0.0, t1 = 0.0;            // arc angle range
  std::complex<double> z0{0.0, 0.0}, z1{0.0, 0.0};
  bool geometric = false;

  static PathSegment arc(std::complex<double> center, double radius, double th0, double th1);
  static PathSegment line(std::complex<double> z0, std::complex<double> z1, bool geometric = false);

  std::complex<double> point(double t) const;
  std::complex<double> derivative(double t) const;
};

struct PlanePath {
  Element j;  // imaginary unit spanning the plane
  std::vector<PathSegment> segments;
};

/// Truncated keyhole: incoming ray at angle -eta from the cut radius down to
/// the arc, the arc of radius r from -eta to eta, outgoing ray back out.
struct KeyholeContour {
  Element j;
  double r = 0.0;
  double eta = 0.0;
  double truncation = 0.0;
  PlanePath path;
};

KeyholeContour make_keyhole(const Element& j, double r, double eta, double truncation);
PlanePath make_circle(const Element& j, std::complex<double> center, double radius);

struct LineIntegralResult {
  OpMatrix value;
  int nodes = 0;
};

struct AlgebraIntegralResult {
  Element value;
  int nodes = 0;
};

// Bochner line integral int F(alpha) d(alpha) f(alpha): the integrand is
// assembled in exactly the written order F(z) * z' * f(z), which matters in
// a noncommutative algebra. Panels may be evaluated concurrently (capped by
// SLICESEMI_THREADS); the reduction order is fixed, so results do not depend
// on the thread count.
LineIntegralResult line_integral(const std::function<OpMatrix(const Element&)>& F,
                                 const std::function<Element(const Element&)>& f,
                                 const PlanePath& path, const QuadratureSpec& quad);

AlgebraIntegralResult line_integral_alg(const std::function<Element(const Element&)>& F,
                                        const std::function<Element(const Element&)>& f,
                                        const PlanePath& path, const QuadratureSpec& quad);

// (1/2pi) oint C_alpha(B) j^{-1} d(alpha) over the circle of radius r; equals
// the identity when the spectrum lies strictly inside.
OpMatrix identity_integral(const OpMatrix& B, const Element& j, double r,
                           const QuadratureSpec& quad);

// Norm of (1/2pi) oint C_alpha(B) j^{-1} f(alpha) d(alpha) over a loop whose
// closed disk avoids the spectrum; expected at quadrature level.
double vanishing_integral(const OpMatrix& B, const Stem& f, const Element& j,
                          std::complex<double> center, double radius, const QuadratureSpec& quad);

struct SectorSample {
  Element alpha;
  double resolvent_scaled;  // ||C_alpha(A)|| * |alpha|
};

struct SectorReport {
  double delta = 0.0;
  double M = 0.0;
  bool pass = false;
  std::vector<SectorSample> samples;
};

class NotSectorialError : public Error {
public:
  NotSectorialError(const Element& witness, const std::string& what)
      : Error(Err::NotSectorial, what), witness_(witness) {}
  const Element& witness() const { return witness_; }

private:
  Element witness_;
};

// Verify that the sector of half-angle pi/2 + delta avoids the spectrum and
// estimate sup ||C_alpha|| |alpha| over a log-radial x angle x random-j grid.
// Throws NotSectorialError (with the witness) when the sector is violated.
SectorReport sector_check(const OpMatrix& A, double delta, int n_samples, std::uint64_t seed);

struct ContourCertificate {
  double tail_bound = 0.0;
  int quad_nodes = 0;
  double M = 0.0;
  double delta = 0.0;
  double r = 0.0;
  double eta = 0.0;
  double truncation = 0.0;
};

struct ContourResult {
  OpMatrix T;
  ContourCertificate cert;
};

// T(t) = (1/2pi) int_Gamma C_alpha(A) j^{-1} e^{t alpha} d(alpha) over the
// keyhole, with the ray truncation chosen from the analytic tail bound
// M e^{t s cos eta} / (2 pi s |cos eta| t) and then doubled once.
// Defaults: r = 1/t, eta = pi/2 + delta/2.
ContourResult semigroup_contour(const OpMatrix& A, double t, const Element& j,
                                const SectorReport& sector, const QuadratureSpec& quad,
                                std::optional<double> r = {}, std::optional<double> eta = {});

double contour_parameter_independence(const OpMatrix& A, double t, const Element& j1, double r1,
                                      double eta1, const Element& j2, double r2, double eta2,
                                      const SectorReport& sector, const QuadratureSpec& quad);

// C_lambda(A) = (1/2pi) int_Gamma C_alpha(A) j^{-1} (lambda - alpha)^{-1} d(alpha),
// valid for real lambda > r.
ContourResult resolvent_contour(const OpMatrix& A, double lambda, const Element& j,
                                const SectorReport& sector, const QuadratureSpec& quad,
                                std::optional<double> r = {}, std::optional<double> eta = {});

struct TailBoundedScalar {
  double norm = 0.0;
  double tail_bound = 0.0;
  double truncation = 0.0;
};

// || int_Gamma e^{t alpha} d(alpha) ||: vanishes for the keyhole; the
// truncated integral plus its certified tail is returned.
TailBoundedScalar exp_ray_integral_zero(const Element& j, double r, double eta, double t,
                                        const QuadratureSpec& quad);

// Slice Cauchy reconstruction f(beta) = (1/2pi) int C_alpha(beta) j^{-1}
// d(alpha) f(alpha) over a circle centered on the real axis. beta may sit off
// the plane of j for associative algebras; octonionic reconstruction needs a
// real slice stem.
Element slice_cauchy_reconstruct(const Stem& f, const Element& beta, const Element& j,
                                 double center, double radius, const QuadratureSpec& quad);

}  // namespace slicesemi
