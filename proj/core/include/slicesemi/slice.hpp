#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "slicesemi/algebra.hpp"

namespace slicesemi {

/// Stem function: a pair of maps C -> A with the even-odd symmetry
/// F1(conj z) = F1(z), F2(conj z) = -F2(z). It induces the slice function
/// alpha = a + b j  |->  F1(a + b i) + j F2(a + b i) on the quadratic cone.
struct Stem {
  const Algebra* alg = nullptr;
  std::string label;
  std::function<Element(std::complex<double>)> f1;
  std::function<Element(std::complex<double>)> f2;
};

// I(F)(alpha) on the canonical branch b >= 0 of the cone decomposition.
Element eval_slice(const Stem& F, const Element& alpha);

// Evaluation at an explicit branch (a, b, j); used to test well-posedness
// under (b, j) -> (-b, -j).
Element eval_slice_branch(const Stem& F, double a, double b, const Element& j);

// e^{t alpha} = sum (t alpha)^n / n! evaluated in closed form on the cone.
Element exp_slice(double t, const Element& alpha);

// Noncommutative Cauchy kernel C_q(p) = (p^2 - p t(q) + n(q))^{-1} (q^c - p).
// Rejects p on the sphere of q, where the quadratic factor degenerates.
Element cauchy_kernel(const Element& q, const Element& p);

// Stem of the slice product: (F1 G1 - F2 G2, F1 G2 + F2 G1).
Stem slice_product(const Stem& F, const Stem& G);

// Recover the stem of a slice function from its values on the plane of j:
// F1(z) = (f(alpha) + f(alpha^c))/2, F2(z) = -j (f(alpha) - f(alpha^c))/2.
Stem stem_from_samples(std::function<Element(const Element&)> f, const Element& j,
                       std::string label = "sampled");

// Max norm of the two Cauchy-Riemann residuals of F at z, by central
// differences with step h; O(h^2) for smooth stems.
double cr_residual(const Stem& F, std::complex<double> z, double h);

bool is_real_slice(const Stem& F, std::span<const std::complex<double>> samples,
                   double tol = 1e-10);

Stem identity_stem(const Algebra& alg);
Stem exp_stem(const Algebra& alg, double t);
// Polynomial with right coefficients: alpha |-> sum alpha^n coeffs[n].
Stem poly_stem(const Algebra& alg, std::vector<Element> coeffs);

}  // namespace slicesemi
