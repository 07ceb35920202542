#include "slicesemi/slice.hpp"

#include <cmath>
#include <utility>

namespace slicesemi {

Element eval_slice(const Stem& F, const Element& alpha) {
  ConeParts p = cone_decompose(alpha);
  std::complex<double> z(p.a, p.b);
  Element v = F.f1(z);
  if (p.j) v += mul(*p.j, F.f2(z));
  return v;
}

Element eval_slice_branch(const Stem& F, double a, double b, const Element& j) {
  std::complex<double> z(a, b);
  return F.f1(z) + mul(j, F.f2(z));
}

Element exp_slice(double t, const Element& alpha) {
  ConeParts p = cone_decompose(alpha);
  const double ea = std::exp(t * p.a);
  Element v = Element::scalar(alpha.algebra(), ea * std::cos(t * p.b));
  if (p.j) v += (ea * std::sin(t * p.b)) * (*p.j);
  return v;
}

Element cauchy_kernel(const Element& q, const Element& p) {
  if (!in_quadratic_cone(q) || !in_quadratic_cone(p))
    fail(Err::NotInCone, "Cauchy kernel arguments must lie in the quadratic cone");
  const double tq = scalar_part(trace(q));
  const double nq = scalar_part(normsq(q));
  Element delta = mul(p, p) - tq * p;
  delta[0] += nq;
  const double np = euclid_norm(p), nqq = euclid_norm(q);
  if (euclid_norm(delta) < 1e-10 * (1.0 + np * np + nqq * nqq))
    fail(Err::OnSphere, "evaluation point on the sphere of the kernel parameter");
  return mul(cone_inverse(delta), conj(q) - p);
}

Stem slice_product(const Stem& F, const Stem& G) {
  if (F.alg != G.alg) fail(Err::DescriptorMismatch, "slice product across algebras");
  Stem out;
  out.alg = F.alg;
  out.label = F.label + "*" + G.label;
  auto f1 = F.f1, f2 = F.f2, g1 = G.f1, g2 = G.f2;
  out.f1 = [f1, f2, g1, g2](std::complex<double> z) { return mul(f1(z), g1(z)) - mul(f2(z), g2(z)); };
  out.f2 = [f1, f2, g1, g2](std::complex<double> z) { return mul(f1(z), g2(z)) + mul(f2(z), g1(z)); };
  return out;
}

Stem stem_from_samples(std::function<Element(const Element&)> f, const Element& j,
                       std::string label) {
  if (!is_imaginary_unit(j)) fail(Err::NotImaginaryUnit, "plane axis must square to -1");
  const Algebra& alg = j.algebra();
  Stem out;
  out.alg = &alg;
  out.label = std::move(label);
  out.f1 = [f, j, &alg](std::complex<double> z) {
    Element al = Element::scalar(alg, z.real()) + z.imag() * j;
    Element alc = Element::scalar(alg, z.real()) - z.imag() * j;
    return 0.5 * (f(al) + f(alc));
  };
  out.f2 = [f, j, &alg](std::complex<double> z) {
    Element al = Element::scalar(alg, z.real()) + z.imag() * j;
    Element alc = Element::scalar(alg, z.real()) - z.imag() * j;
    return mul(-0.5 * j, f(al) - f(alc));
  };
  return out;
}

double cr_residual(const Stem& F, std::complex<double> z, double h) {
  if (!(h > 0.0)) fail(Err::BadInput, "step must be positive");
  const std::complex<double> da(h, 0.0), db(0.0, h);
  Element d1a = (0.5 / h) * (F.f1(z + da) - F.f1(z - da));
  Element d1b = (0.5 / h) * (F.f1(z + db) - F.f1(z - db));
  Element d2a = (0.5 / h) * (F.f2(z + da) - F.f2(z - da));
  Element d2b = (0.5 / h) * (F.f2(z + db) - F.f2(z - db));
  return std::max(euclid_norm(d1a - d2b), euclid_norm(d1b + d2a));
}

bool is_real_slice(const Stem& F, std::span<const std::complex<double>> samples, double tol) {
  for (const auto& z : samples) {
    Element v1 = F.f1(z), v2 = F.f2(z);
    double s = 1.0 + euclid_norm(v1) + euclid_norm(v2);
    if (!is_scalar(v1, tol * s) || !is_scalar(v2, tol * s)) return false;
  }
  return true;
}

Stem identity_stem(const Algebra& alg) {
  Stem s;
  s.alg = &alg;
  s.label = "id";
  s.f1 = [&alg](std::complex<double> z) { return Element::scalar(alg, z.real()); };
  s.f2 = [&alg](std::complex<double> z) { return Element::scalar(alg, z.imag()); };
  return s;
}

Stem exp_stem(const Algebra& alg, double t) {
  Stem s;
  s.alg = &alg;
  s.label = "exp";
  s.f1 = [&alg, t](std::complex<double> z) {
    return Element::scalar(alg, std::exp(t * z.real()) * std::cos(t * z.imag()));
  };
  s.f2 = [&alg, t](std::complex<double> z) {
    return Element::scalar(alg, std::exp(t * z.real()) * std::sin(t * z.imag()));
  };
  return s;
}

Stem poly_stem(const Algebra& alg, std::vector<Element> coeffs) {
  for (const Element& c : coeffs)
    if (&c.algebra() != &alg) fail(Err::DescriptorMismatch, "coefficient from another algebra");
  Stem s;
  s.alg = &alg;
  s.label = "poly";
  auto comp = [&alg, coeffs](std::complex<double> z, bool imag) {
    Element acc(alg);
    std::complex<double> zn(1.0, 0.0);
    for (const Element& c : coeffs) {
      acc += (imag ? zn.imag() : zn.real()) * c;
      zn *= z;
    }
    return acc;
  };
  s.f1 = [comp](std::complex<double> z) { return comp(z, false); };
  s.f2 = [comp](std::complex<double> z) { return comp(z, true); };
  return s;
}

}  // namespace slicesemi
