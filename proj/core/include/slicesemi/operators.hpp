#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slicesemi/algebra.hpp"
#include "slicesemi/linalg.hpp"
#include "slicesemi/rng.hpp"

namespace slicesemi {

using ModuleVec = std::vector<Element>;

/// Square matrix over an algebra, acting on A^m by x |-> M x with the sum
/// taken in index order. Left multiplication keeps the action right linear
/// whenever the algebra is associative; octonionic matrices can be built and
/// realified but are rejected by every spectral operation.
class OpMatrix {
public:
  OpMatrix(const Algebra& alg, int m);
  static OpMatrix identity(const Algebra& alg, int m);
  static OpMatrix scalar_multiple(const Algebra& alg, int m, const Element& q);  // q * Id

  const Algebra& algebra() const { return *alg_; }
  int m() const { return m_; }
  Element& at(int i, int k) { return e_[static_cast<std::size_t>(i) * m_ + k]; }
  const Element& at(int i, int k) const { return e_[static_cast<std::size_t>(i) * m_ + k]; }

private:
  const Algebra* alg_;
  int m_;
  std::vector<Element> e_;
};

OpMatrix operator+(const OpMatrix& x, const OpMatrix& y);
OpMatrix operator-(const OpMatrix& x, const OpMatrix& y);
OpMatrix operator*(double s, const OpMatrix& x);
OpMatrix matmul(const OpMatrix& x, const OpMatrix& y);            // composition; associative kinds
OpMatrix right_scalar(const OpMatrix& x, const Element& alpha);   // u |-> x(alpha u): entries X_ik alpha
OpMatrix left_scalar(const Element& alpha, const OpMatrix& x);    // u |-> alpha x(u): entries alpha X_ik

ModuleVec apply(const OpMatrix& M, const ModuleVec& x);
ModuleVec vec_add(const ModuleVec& x, const ModuleVec& y);
ModuleVec vec_sub(const ModuleVec& x, const ModuleVec& y);
ModuleVec vec_right_scalar(const ModuleVec& x, const Element& alpha);
double vec_norm(const ModuleVec& x);            // euclidean norm of the realified coordinates
double bimodule_norm(const ModuleVec& x);       // per-entry Clifford operator norm where applicable

// The realified action on R^(dim*m): block (i,k) is the left-multiplication
// matrix of the (i,k) entry. An algebra homomorphism for associative kinds.
RealMatrix realify(const OpMatrix& M);
OpMatrix derealify(const RealMatrix& R, const Algebra& alg, int m);
// How far R is from being the realification of an algebra matrix.
double block_structure_residual(const RealMatrix& R, const Algebra& alg, int m);

std::vector<double> realify_vec(const ModuleVec& x);
ModuleVec derealify_vec(const std::vector<double>& v, const Algebra& alg, int m);

double op_norm(const OpMatrix& M);

// Spherical spectral calculus ------------------------------------------------

// Delta_alpha(A) = A^2 - 2 re(alpha) A + |alpha|^2 Id.
OpMatrix delta(const OpMatrix& A, const Element& alpha);

// Membership in the spherical resolvent set, decided by the smallest-pivot
// test of the realified Delta at relative threshold 1e-10.
bool in_spherical_resolvent(const OpMatrix& A, const Element& alpha);

// Q_alpha(A) = Delta_alpha(A)^{-1}; throws OnSpectrum when Delta is singular.
OpMatrix resolvent_q(const OpMatrix& A, const Element& alpha);

// C_alpha(A) = Q_alpha(A) alpha^c - A Q_alpha(A).
OpMatrix resolvent(const OpMatrix& A, const Element& alpha);
OpMatrix resolvent(const OpMatrix& A, double lambda);

struct Sphere {
  double a = 0.0;
  double b = 0.0;  // >= 0; the pair encodes the whole sphere a + b S
  int multiplicity = 1;
};

struct SphereSpectrum {
  std::vector<Sphere> spheres;
  double radius() const;     // max |a + ib|
  double abscissa() const;   // max a
};

// Spectrum of the realified action: conjugate eigenvalue pairs merged to
// (a, |b|). With verify=true each sphere is checked to make Delta singular
// for a few sampled imaginary units.
SphereSpectrum spherical_spectrum(const OpMatrix& A, std::uint64_t seed = 0, bool verify = true);

double resolvent_equation_residual(const OpMatrix& A, double lambda, double mu);

// || C_alpha(A) alpha - A C_alpha(A) - Id ||.
double commutation_residual(const OpMatrix& A, const Element& alpha);

struct NeumannResult {
  OpMatrix sum;
  double tail_bound;
};

// Truncated sum_{n<=N} B^n alpha^{-(n+1)}; requires |alpha| > ||B||.
NeumannResult neumann_resolvent(const OpMatrix& B, const Element& alpha, int N);

// (A + B)^{-1} through the convergent series (Id + A^{-1}B)^{-1} A^{-1}.
OpMatrix neumann_inverse(const OpMatrix& A, const OpMatrix& B);

struct MobiusBridge {
  OpMatrix B;       // -C_lambda(A) = (A - lambda Id)^{-1}
  double lambda;
  Element map(const Element& alpha) const;  // Phi(alpha) = (alpha - lambda)^{-1}
};

MobiusBridge mobius_bridge(const OpMatrix& A, double lambda);

// Cauchy-Riemann residual of alpha |-> C_alpha(B) in the plane of alpha.
double cr_residual_resolvent(const OpMatrix& B, const Element& alpha, double h);

double right_linearity_residual(const OpMatrix& M, Rng& rng, int samples = 8);

struct GrowthBound {
  double M = 1.0;  // >= 1
  double w = 0.0;
};

// Random sampling helpers shared by the verification suites.
Element random_element(const Algebra& alg, Rng& rng);
Element random_imaginary_unit(const Algebra& alg, Rng& rng);
Element random_cone_element(const Algebra& alg, Rng& rng);
OpMatrix random_op(const Algebra& alg, int m, Rng& rng);
ModuleVec random_vec(const Algebra& alg, int m, Rng& rng);

}  // namespace slicesemi
