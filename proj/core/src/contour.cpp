#include "slicesemi/contour.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace slicesemi {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int thread_cap() {
  static int cap = [] {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("SLICESEMI_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) n = std::min(n, v);
    }
    return n;
  }();
  return cap;
}

// Panels are assigned to threads dynamically but results land in an
// index-ordered buffer; the reduction order stays fixed for any thread count.
template <typename Fn>
void parallel_panels(int count, Fn&& fn) {
  int threads = std::min(thread_cap(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct Panel {
  const PathSegment* seg;
  double a, b;  // parameter interval
};

std::vector<Panel> build_panels(const PlanePath& path, const QuadratureSpec& quad) {
  std::vector<Panel> panels;
  for (const PathSegment& seg : path.segments) {
    if (seg.kind == PathSegment::Kind::Arc) {
      int n = std::max(1, (quad.nodes_per_arc + quad.gauss_order - 1) / quad.gauss_order);
      for (int k = 0; k < n; ++k) {
        double a = seg.t0 + (seg.t1 - seg.t0) * k / n;
        double b = seg.t0 + (seg.t1 - seg.t0) * (k + 1) / n;
        panels.push_back(Panel{&seg, a, b});
      }
    } else if (seg.geometric) {
      double r0 = std::abs(seg.z0), r1 = std::abs(seg.z1);
      double lo = std::min(r0, r1), hi = std::max(r0, r1);
      if (!(lo > 0.0)) fail(Err::BadInput, "geometric ray panels need a positive inner radius");
      int n = std::max(quad.ray_panels,
                       static_cast<int>(std::ceil(std::log2(std::max(hi / lo, 1.0)))));
      for (int k = 0; k < n; ++k) {
        // radii in geometric progression from |z0| to |z1|
        double ra = r0 * std::pow(r1 / r0, static_cast<double>(k) / n);
        double rb = r0 * std::pow(r1 / r0, static_cast<double>(k + 1) / n);
        double ta = (ra - r0) / (r1 - r0);
        double tb = (rb - r0) / (r1 - r0);
        panels.push_back(Panel{&seg, ta, tb});
      }
    } else {
      int n = std::max(1, quad.ray_panels);
      for (int k = 0; k < n; ++k)
        panels.push_back(Panel{&seg, static_cast<double>(k) / n, static_cast<double>(k + 1) / n});
    }
  }
  return panels;
}

Element lift(const Element& j, std::complex<double> z) {
  Element v = Element::scalar(j.algebra(), z.real());
  v += z.imag() * j;
  return v;
}

}  // namespace

PathSegment PathSegment::arc(std::complex<double> center, double radius, double th0, double th1) {
  PathSegment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.t0 = th0;
  s.t1 = th1;
  return s;
}

PathSegment PathSegment::line(std::complex<double> z0, std::complex<double> z1, bool geometric) {
  PathSegment s;
  s.kind = Kind::Line;
  s.z0 = z0;
  s.z1 = z1;
  s.geometric = geometric;
  return s;
}

std::complex<double> PathSegment::point(double t) const {
  if (kind == Kind::Arc) return center + radius * std::complex<double>(std::cos(t), std::sin(t));
  return z0 + t * (z1 - z0);
}

std::complex<double> PathSegment::derivative(double t) const {
  if (kind == Kind::Arc) return radius * std::complex<double>(-std::sin(t), std::cos(t));
  return z1 - z0;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  if (order < 1) fail(Err::BadInput, "Gauss order must be positive");

  std::vector<double> x(order), w(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= order; ++k) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
  return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

KeyholeContour make_keyhole(const Element& j, double r, double eta, double truncation) {
  if (!is_imaginary_unit(j)) fail(Err::NotImaginaryUnit, "keyhole plane axis must square to -1");
  if (!(r > 0.0) || !(truncation > r)) fail(Err::BadInput, "need 0 < r < truncation");
  if (!(eta > kPi / 2.0) || !(eta < kPi)) fail(Err::BadInput, "ray angle must lie in (pi/2, pi)");
  KeyholeContour kc;
  kc.j = j;
  kc.r = r;
  kc.eta = eta;
  kc.truncation = truncation;
  kc.path.j = j;
  std::complex<double> em(std::cos(-eta), std::sin(-eta));
  std::complex<double> ep(std::cos(eta), std::sin(eta));
  kc.path.segments.push_back(PathSegment::line(truncation * em, r * em, true));
  kc.path.segments.push_back(PathSegment::arc({0.0, 0.0}, r, -eta, eta));
  kc.path.segments.push_back(PathSegment::line(r * ep, truncation * ep, true));
  return kc;
}

PlanePath make_circle(const Element& j, std::complex<double> center, double radius) {
  if (!is_imaginary_unit(j)) fail(Err::NotImaginaryUnit, "loop plane axis must square to -1");
  if (!(radius > 0.0)) fail(Err::BadInput, "loop radius must be positive");
  PlanePath p;
  p.j = j;
  p.segments.push_back(PathSegment::arc(center, radius, 0.0, 2.0 * kPi));
  return p;
}

LineIntegralResult line_integral(const std::function<OpMatrix(const Element&)>& F,
                                 const std::function<Element(const Element&)>& f,
                                 const PlanePath& path, const QuadratureSpec& quad) {
  std::vector<Panel> panels = build_panels(path, quad);
  const auto& [gx, gw] = gauss_legendre(quad.gauss_order);
  std::vector<std::optional<OpMatrix>> partial(panels.size());
  int nodes = static_cast<int>(panels.size()) * quad.gauss_order;

  parallel_panels(static_cast<int>(panels.size()), [&](int pi) {
    const Panel& pan = panels[pi];
    std::optional<OpMatrix> acc;
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    for (int i = 0; i < quad.gauss_order; ++i) {
      double t = mid + half * gx[i];
      Element alpha = lift(path.j, pan.seg->point(t));
      Element dz = lift(path.j, pan.seg->derivative(t));
      // ordering: (F(alpha) * dz) * f(alpha), each a right scalar action
      OpMatrix term = right_scalar(right_scalar(F(alpha), dz), f(alpha));
      term = (gw[i] * half) * term;
      if (acc)
        acc = *acc + term;
      else
        acc = std::move(term);
    }
    partial[pi] = std::move(acc);
  });

  std::optional<OpMatrix> total;
  for (auto& p : partial) {
    if (!p) continue;
    if (total)
      total = *total + *p;
    else
      total = std::move(*p);
  }
  if (!total) fail(Err::BadInput, "empty path");
  return LineIntegralResult{std::move(*total), nodes};
}

AlgebraIntegralResult line_integral_alg(const std::function<Element(const Element&)>& F,
                                        const std::function<Element(const Element&)>& f,
                                        const PlanePath& path, const QuadratureSpec& quad) {
  std::vector<Panel> panels = build_panels(path, quad);
  const auto& [gx, gw] = gauss_legendre(quad.gauss_order);
  const Algebra& alg = path.j.algebra();
  std::vector<Element> partial(panels.size(), Element(alg));
  int nodes = static_cast<int>(panels.size()) * quad.gauss_order;

  parallel_panels(static_cast<int>(panels.size()), [&](int pi) {
    const Panel& pan = panels[pi];
    Element acc(alg);
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    for (int i = 0; i < quad.gauss_order; ++i) {
      double t = mid + half * gx[i];
      Element alpha = lift(path.j, pan.seg->point(t));
      Element dz = lift(path.j, pan.seg->derivative(t));
      Element term = mul(mul(F(alpha), dz), f(alpha));
      acc += (gw[i] * half) * term;
    }
    partial[pi] = std::move(acc);
  });

  Element total(alg);
  for (const Element& p : partial) total += p;
  return AlgebraIntegralResult{std::move(total), nodes};
}

OpMatrix identity_integral(const OpMatrix& B, const Element& j, double r,
                           const QuadratureSpec& quad) {
  SphereSpectrum spec = spherical_spectrum(B, 0, false);
  if (!(spec.radius() < r))
    fail(Err::SpectrumOutsideCircle, "spectral spheres must lie strictly inside the loop");
  Element jinv = -1.0 * j;  // n(j) = 1
  PlanePath circle = make_circle(j, {0.0, 0.0}, r);
  auto F = [&](const Element& alpha) { return right_scalar(resolvent(B, alpha), jinv); };
  auto one = [&](const Element&) { return Element::scalar(B.algebra(), 1.0); };
  LineIntegralResult res = line_integral(F, one, circle, quad);
  return (0.5 / kPi) * res.value;
}

double vanishing_integral(const OpMatrix& B, const Stem& f, const Element& j,
                          std::complex<double> center, double radius, const QuadratureSpec& quad) {
  SphereSpectrum spec = spherical_spectrum(B, 0, false);
  const double margin = 0.05 * (1.0 + spec.radius());
  for (const Sphere& s : spec.spheres) {
    for (double sign : {1.0, -1.0}) {
      std::complex<double> p(s.a, sign * s.b);
      if (std::abs(p - center) <= radius + margin)
        fail(Err::LoopHitsSpectrum, "loop too close to a spectral sphere");
    }
  }
  Element jinv = -1.0 * j;
  PlanePath circle = make_circle(j, center, radius);
  auto F = [&](const Element& alpha) { return right_scalar(resolvent(B, alpha), jinv); };
  auto fv = [&](const Element& alpha) { return eval_slice(f, alpha); };
  LineIntegralResult res = line_integral(F, fv, circle, quad);
  return (0.5 / kPi) * op_norm(res.value);
}

SectorReport sector_check(const OpMatrix& A, double delta, int n_samples, std::uint64_t seed) {
  if (!(delta > 0.0) || !(delta < kPi / 2.0)) fail(Err::BadInput, "need delta in (0, pi/2)");
  Rng rng(seed);

  SphereSpectrum spec = spherical_spectrum(A, seed, false);
  const double scale = 1.0 + spec.radius();
  for (const Sphere& s : spec.spheres) {
    if (std::hypot(s.a, s.b) <= 1e-12 * scale) continue;  // the sector excludes 0
    if (std::atan2(s.b, s.a) < kPi / 2.0 + delta) {
      Element witness = Element::scalar(A.algebra(), s.a);
      if (s.b > 0.0) witness += s.b * random_imaginary_unit(A.algebra(), rng);
      throw NotSectorialError(witness, "spectral sphere inside the sector");
    }
  }

  SectorReport report;
  report.delta = delta;
  int n_r = std::max(4, static_cast<int>(std::cbrt(static_cast<double>(n_samples))));
  int n_th = n_r;
  int n_j = std::max(1, n_samples / (n_r * n_th));
  const double rho_lo = 1e-3 * scale, rho_hi = 1e3 * scale;
  double M = 0.0;
  for (int ij = 0; ij < n_j; ++ij) {
    Element j = A.algebra().kind() == AlgebraKind::Real
                    ? Element::scalar(A.algebra(), 0.0)
                    : random_imaginary_unit(A.algebra(), rng);
    for (int ir = 0; ir < n_r; ++ir) {
      double rho = rho_lo * std::pow(rho_hi / rho_lo, n_r == 1 ? 0.0 : static_cast<double>(ir) / (n_r - 1));
      for (int it = 0; it < n_th; ++it) {
        double theta = (kPi / 2.0 + delta) * (static_cast<double>(it) / n_th);
        if (A.algebra().kind() == AlgebraKind::Real && it > 0) break;  // only arg 0 intersects R
        Element alpha = Element::scalar(A.algebra(), rho * std::cos(theta));
        if (A.algebra().kind() != AlgebraKind::Real) alpha += (rho * std::sin(theta)) * j;
        if (!in_spherical_resolvent(A, alpha))
          throw NotSectorialError(alpha, "sample point in the spherical spectrum");
        double v = op_norm(resolvent(A, alpha)) * rho;
        M = std::max(M, v);
        if (static_cast<int>(report.samples.size()) < 512)
          report.samples.push_back(SectorSample{alpha, v});
      }
    }
  }
  report.M = M;
  report.pass = true;
  return report;
}

namespace {

// smallest s with bound(s) <= target, by doubling from s0; capped
double grow_truncation(double s0, double target, const std::function<double(double)>& bound) {
  double s = s0;
  for (int k = 0; k < 200; ++k) {
    if (bound(s) <= target) return s;
    s *= 2.0;
    if (s > 1e9) break;
  }
  fail(Err::TailNotCertifiable, "truncation radius cap reached before the tail tolerance");
}

}  // namespace

ContourResult semigroup_contour(const OpMatrix& A, double t, const Element& j,
                                const SectorReport& sector, const QuadratureSpec& quad,
                                std::optional<double> r_opt, std::optional<double> eta_opt) {
  if (!(t > 0.0)) fail(Err::BadInput, "contour representation needs t > 0");
  if (!sector.pass) fail(Err::NotSectorial, "sector check must pass first");
  const double delta = sector.delta;
  const double r = r_opt.value_or(1.0 / t);
  const double eta = eta_opt.value_or(kPi / 2.0 + delta / 2.0);
  if (!(eta > kPi / 2.0) || !(eta < kPi / 2.0 + delta))
    fail(Err::BadInput, "ray angle must lie in (pi/2, pi/2 + delta)");
  const double c = std::abs(std::cos(eta));
  const double M = std::max(sector.M, 1e-30);

  auto ray_tail = [&](double s) { return M * std::exp(t * s * std::cos(eta)) / (2.0 * kPi * s * c * t); };
  double s = grow_truncation(std::max(2.0 * r, r + 1.0 / t), 0.5 * quad.tail_tol, ray_tail);
  s *= 2.0;  // safety doubling
  const double tail = 2.0 * ray_tail(s);

  KeyholeContour kc = make_keyhole(j, r, eta, s);
  Element jinv = -1.0 * j;
  auto F = [&](const Element& alpha) { return right_scalar(resolvent(A, alpha), jinv); };
  auto f = [&](const Element& alpha) { return exp_slice(t, alpha); };
  LineIntegralResult res = line_integral(F, f, kc.path, quad);

  ContourResult out{(0.5 / kPi) * res.value,
                    ContourCertificate{tail, res.nodes, sector.M, delta, r, eta, s}};
  return out;
}

double contour_parameter_independence(const OpMatrix& A, double t, const Element& j1, double r1,
                                      double eta1, const Element& j2, double r2, double eta2,
                                      const SectorReport& sector, const QuadratureSpec& quad) {
  ContourResult a = semigroup_contour(A, t, j1, sector, quad, r1, eta1);
  ContourResult b = semigroup_contour(A, t, j2, sector, quad, r2, eta2);
  return op_norm(a.T - b.T);
}

ContourResult resolvent_contour(const OpMatrix& A, double lambda, const Element& j,
                                const SectorReport& sector, const QuadratureSpec& quad,
                                std::optional<double> r_opt, std::optional<double> eta_opt) {
  if (!sector.pass) fail(Err::NotSectorial, "sector check must pass first");
  const double delta = sector.delta;
  const double r = r_opt.value_or(lambda / 4.0);
  const double eta = eta_opt.value_or(kPi / 2.0 + delta / 2.0);
  if (!(lambda > r)) fail(Err::LambdaInsideKeyhole, "lambda must exceed the arc radius");
  if (!(eta > kPi / 2.0) || !(eta < kPi / 2.0 + delta))
    fail(Err::BadInput, "ray angle must lie in (pi/2, pi/2 + delta)");
  const double c = std::abs(std::cos(eta));
  const double M = std::max(sector.M, 1e-30);

  // |C_alpha| <= M/rho and |lambda - rho e^{i eta}| >= lambda + rho c on the rays
  auto ray_tail = [&](double s) { return M / (2.0 * kPi * c * s); };
  double s = grow_truncation(std::max(2.0 * r, 2.0 * lambda), 0.5 * quad.tail_tol, ray_tail);
  s *= 2.0;
  const double tail = 2.0 * ray_tail(s);

  KeyholeContour kc = make_keyhole(j, r, eta, s);
  Element jinv = -1.0 * j;
  const Element lam = Element::scalar(A.algebra(), lambda);
  auto F = [&](const Element& alpha) { return right_scalar(resolvent(A, alpha), jinv); };
  auto f = [&](const Element& alpha) { return cone_inverse(lam - alpha); };
  LineIntegralResult res = line_integral(F, f, kc.path, quad);

  return ContourResult{(0.5 / kPi) * res.value,
                       ContourCertificate{tail, res.nodes, sector.M, delta, r, eta, s}};
}

TailBoundedScalar exp_ray_integral_zero(const Element& j, double r, double eta, double t,
                                        const QuadratureSpec& quad) {
  if (!(t > 0.0)) fail(Err::BadInput, "need t > 0");
  if (!(eta > kPi / 2.0) || !(eta < kPi)) fail(Err::BadInput, "ray angle must lie in (pi/2, pi)");
  const double c = std::abs(std::cos(eta));
  auto ray_tail = [&](double s) { return std::exp(t * s * std::cos(eta)) / (t * c); };
  double s = grow_truncation(std::max(2.0 * r, r + 1.0 / t), 0.5 * quad.tail_tol, ray_tail);
  s *= 2.0;
  const double tail = 2.0 * ray_tail(s);

  KeyholeContour kc = make_keyhole(j, r, eta, s);
  const Algebra& alg = j.algebra();
  auto F = [&](const Element&) { return Element::scalar(alg, 1.0); };
  auto f = [&](const Element& alpha) { return exp_slice(t, alpha); };
  AlgebraIntegralResult res = line_integral_alg(F, f, kc.path, quad);
  return TailBoundedScalar{euclid_norm(res.value), tail, s};
}

Element slice_cauchy_reconstruct(const Stem& f, const Element& beta, const Element& j,
                                 double center, double radius, const QuadratureSpec& quad) {
  ConeParts bp = cone_decompose(beta);
  const double margin = 1e-9 * (1.0 + radius);
  if (std::abs(std::complex<double>(bp.a, bp.b) - std::complex<double>(center, 0.0)) >=
      radius - margin)
    fail(Err::SphereNotEnclosed, "the sphere of beta must lie strictly inside the loop");

  if (!beta.algebra().associative()) {
    std::vector<std::complex<double>> probe;
    for (int k = 0; k < 8; ++k) {
      double th = 2.0 * kPi * k / 8.0;
      probe.emplace_back(center + radius * std::cos(th), radius * std::sin(th));
    }
    if (!is_real_slice(f, probe))
      fail(Err::RealSliceRequired, "octonionic reconstruction needs a real slice stem");
  }

  Element jinv = -1.0 * j;
  PlanePath circle = make_circle(j, {center, 0.0}, radius);
  auto F = [&](const Element& alpha) { return mul(cauchy_kernel(alpha, beta), jinv); };
  auto fv = [&](const Element& alpha) { return eval_slice(f, alpha); };
  AlgebraIntegralResult res = line_integral_alg(F, fv, circle, quad);
  return (0.5 / kPi) * res.value;
}

}  // namespace slicesemi
