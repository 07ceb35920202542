#include "slicesemi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slicesemi {

namespace {

constexpr double kResolventPivotTol = 1e-10;

void require_associative(const Algebra& alg, const char* what) {
  if (!alg.associative()) fail(Err::NonAssociative, std::string(what) + " requires an associative algebra");
}

void check_compatible(const OpMatrix& x, const OpMatrix& y) {
  if (&x.algebra() != &y.algebra() || x.m() != y.m())
    fail(Err::DescriptorMismatch, "operator shapes or algebras differ");
}

}  // namespace

OpMatrix::OpMatrix(const Algebra& alg, int m) : alg_(&alg), m_(m) {
  if (m < 1) fail(Err::BadInput, "module rank must be positive");
  e_.assign(static_cast<std::size_t>(m) * m, Element(alg));
}

OpMatrix OpMatrix::identity(const Algebra& alg, int m) {
  OpMatrix M(alg, m);
  for (int i = 0; i < m; ++i) M.at(i, i) = Element::scalar(alg, 1.0);
  return M;
}

OpMatrix OpMatrix::scalar_multiple(const Algebra& alg, int m, const Element& q) {
  OpMatrix M(alg, m);
  for (int i = 0; i < m; ++i) M.at(i, i) = q;
  return M;
}

OpMatrix operator+(const OpMatrix& x, const OpMatrix& y) {
  check_compatible(x, y);
  OpMatrix r = x;
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) r.at(i, k) += y.at(i, k);
  return r;
}

OpMatrix operator-(const OpMatrix& x, const OpMatrix& y) {
  check_compatible(x, y);
  OpMatrix r = x;
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) r.at(i, k) -= y.at(i, k);
  return r;
}

OpMatrix operator*(double s, const OpMatrix& x) {
  OpMatrix r = x;
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) r.at(i, k) *= s;
  return r;
}

OpMatrix matmul(const OpMatrix& x, const OpMatrix& y) {
  check_compatible(x, y);
  require_associative(x.algebra(), "operator composition");
  OpMatrix r(x.algebra(), x.m());
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) {
      Element s(x.algebra());
      for (int l = 0; l < x.m(); ++l) s += mul(x.at(i, l), y.at(l, k));
      r.at(i, k) = std::move(s);
    }
  return r;
}

OpMatrix right_scalar(const OpMatrix& x, const Element& alpha) {
  require_associative(x.algebra(), "right scalar action");
  OpMatrix r = x;
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) r.at(i, k) = mul(x.at(i, k), alpha);
  return r;
}

OpMatrix left_scalar(const Element& alpha, const OpMatrix& x) {
  require_associative(x.algebra(), "left scalar action");
  OpMatrix r = x;
  for (int i = 0; i < x.m(); ++i)
    for (int k = 0; k < x.m(); ++k) r.at(i, k) = mul(alpha, x.at(i, k));
  return r;
}

ModuleVec apply(const OpMatrix& M, const ModuleVec& x) {
  if (static_cast<int>(x.size()) != M.m()) fail(Err::BadInput, "vector length mismatch");
  ModuleVec r;
  r.reserve(M.m());
  for (int i = 0; i < M.m(); ++i) {
    Element s(M.algebra());
    for (int k = 0; k < M.m(); ++k) s += mul(M.at(i, k), x[k]);
    r.push_back(std::move(s));
  }
  return r;
}

ModuleVec vec_add(const ModuleVec& x, const ModuleVec& y) {
  ModuleVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

ModuleVec vec_sub(const ModuleVec& x, const ModuleVec& y) {
  ModuleVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

ModuleVec vec_right_scalar(const ModuleVec& x, const Element& alpha) {
  ModuleVec r;
  r.reserve(x.size());
  for (const Element& e : x) r.push_back(mul(e, alpha));
  return r;
}

double vec_norm(const ModuleVec& x) {
  double s = 0.0;
  for (const Element& e : x) {
    double n = euclid_norm(e);
    s += n * n;
  }
  return std::sqrt(s);
}

double bimodule_norm(const ModuleVec& x) {
  double s = 0.0;
  for (const Element& e : x) {
    double n = e.algebra().kind() == AlgebraKind::Clifford ? clifford_op_norm(e) : euclid_norm(e);
    s += n * n;
  }
  return std::sqrt(s);
}

RealMatrix realify(const OpMatrix& M) {
  const int d = M.algebra().dim();
  const int n = d * M.m();
  RealMatrix R(n, n);
  for (int i = 0; i < M.m(); ++i)
    for (int k = 0; k < M.m(); ++k) {
      RealMatrix L = left_mult_matrix(M.at(i, k));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) R.at(i * d + r, k * d + c) = L.at(r, c);
    }
  return R;
}

OpMatrix derealify(const RealMatrix& R, const Algebra& alg, int m) {
  const int d = alg.dim();
  if (R.rows != d * m || R.cols != d * m) fail(Err::BadInput, "realified shape mismatch");
  OpMatrix M(alg, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      Element e(alg);
      for (int r = 0; r < d; ++r) e[r] = R.at(i * d + r, k * d + 0);  // image of the unit
      M.at(i, k) = std::move(e);
    }
  return M;
}

double block_structure_residual(const RealMatrix& R, const Algebra& alg, int m) {
  RealMatrix back = realify(derealify(R, alg, m));
  return norm_frob(back - R);
}

std::vector<double> realify_vec(const ModuleVec& x) {
  std::vector<double> v;
  for (const Element& e : x)
    for (int k = 0; k < e.dim(); ++k) v.push_back(e[k]);
  return v;
}

ModuleVec derealify_vec(const std::vector<double>& v, const Algebra& alg, int m) {
  const int d = alg.dim();
  if (static_cast<int>(v.size()) != d * m) fail(Err::BadInput, "realified vector length mismatch");
  ModuleVec x;
  for (int i = 0; i < m; ++i) {
    Element e(alg);
    for (int k = 0; k < d; ++k) e[k] = v[i * d + k];
    x.push_back(std::move(e));
  }
  return x;
}

double op_norm(const OpMatrix& M) { return op_norm2(realify(M)); }

OpMatrix delta(const OpMatrix& A, const Element& alpha) {
  require_associative(A.algebra(), "spherical spectral calculus");
  if (!in_quadratic_cone(alpha)) fail(Err::NotInCone, "spectral parameter outside the cone");
  const double re2 = scalar_part(trace(alpha));        // 2 re(alpha)
  const double n = scalar_part(normsq(alpha));         // |alpha|^2
  OpMatrix D = matmul(A, A) - re2 * A;
  for (int i = 0; i < A.m(); ++i) D.at(i, i)[0] += n;
  return D;
}

bool in_spherical_resolvent(const OpMatrix& A, const Element& alpha) {
  if (!in_quadratic_cone(alpha)) return false;
  RealMatrix D = realify(delta(A, alpha));
  return !LuFactors::factor(D, kResolventPivotTol).singular();
}

OpMatrix resolvent_q(const OpMatrix& A, const Element& alpha) {
  RealMatrix D = realify(delta(A, alpha));
  LuFactors f = LuFactors::factor(D, kResolventPivotTol);
  if (f.singular()) fail(Err::OnSpectrum, "Delta is singular at the requested parameter");
  return derealify(f.inverse(), A.algebra(), A.m());
}

OpMatrix resolvent(const OpMatrix& A, const Element& alpha) {
  OpMatrix Q = resolvent_q(A, alpha);
  return right_scalar(Q, conj(alpha)) - matmul(A, Q);
}

OpMatrix resolvent(const OpMatrix& A, double lambda) {
  return resolvent(A, Element::scalar(A.algebra(), lambda));
}

double SphereSpectrum::radius() const {
  double r = 0.0;
  for (const Sphere& s : spheres) r = std::max(r, std::hypot(s.a, s.b));
  return r;
}

double SphereSpectrum::abscissa() const {
  double w = -std::numeric_limits<double>::infinity();
  for (const Sphere& s : spheres) w = std::max(w, s.a);
  return w;
}

SphereSpectrum spherical_spectrum(const OpMatrix& A, std::uint64_t seed, bool verify) {
  require_associative(A.algebra(), "spherical spectrum");
  RealMatrix R = realify(A);
  if (R.rows > 256) fail(Err::BadInput, "spectrum extraction limited to dim*m <= 256");
  std::vector<std::complex<double>> eigs = eig_complex(R);

  const double scale = std::max(norm_inf(R), 1.0);
  for (auto& e : eigs)
    if (std::abs(e.imag()) < 1e-9 * scale) e = std::complex<double>(e.real(), 0.0);

  // cluster the closed upper half plane; conjugates land in the same sphere
  std::vector<std::complex<double>> upper;
  for (const auto& e : eigs)
    if (e.imag() >= 0.0) upper.push_back(e);
  std::sort(upper.begin(), upper.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  SphereSpectrum out;
  const double merge_tol = 1e-8;
  for (const auto& e : upper) {
    if (!out.spheres.empty()) {
      Sphere& last = out.spheres.back();
      if (std::abs(e.real() - last.a) <= merge_tol && std::abs(e.imag() - last.b) <= merge_tol) {
        ++last.multiplicity;
        continue;
      }
    }
    out.spheres.push_back(Sphere{e.real(), e.imag(), 1});
  }

  if (verify) {
    Rng rng(seed);
    for (const Sphere& s : out.spheres) {
      for (int trial = 0; trial < 3; ++trial) {
        Element j = random_imaginary_unit(A.algebra(), rng);
        Element alpha = Element::scalar(A.algebra(), s.a) + s.b * j;
        RealMatrix D = realify(delta(A, alpha));
        double dscale = std::max(1.0, norm_inf(D));
        if (!(smallest_sv(D) < 1e-6 * dscale))
          fail(Err::NoConvergence, "sphere did not verify against Delta");
      }
    }
  }
  return out;
}

double resolvent_equation_residual(const OpMatrix& A, double lambda, double mu) {
  OpMatrix Rl = resolvent(A, lambda);
  OpMatrix Rm = resolvent(A, mu);
  OpMatrix lhs = Rl - Rm;
  OpMatrix rhs = (mu - lambda) * matmul(Rl, Rm);
  return op_norm(lhs - rhs);
}

double commutation_residual(const OpMatrix& A, const Element& alpha) {
  OpMatrix C = resolvent(A, alpha);
  OpMatrix lhs = right_scalar(C, alpha) - matmul(A, C) - OpMatrix::identity(A.algebra(), A.m());
  return op_norm(lhs);
}

NeumannResult neumann_resolvent(const OpMatrix& B, const Element& alpha, int N) {
  require_associative(B.algebra(), "Neumann resolvent");
  if (!in_quadratic_cone(alpha)) fail(Err::NotInCone, "spectral parameter outside the cone");
  const double normB = op_norm(B);
  const double absA = abs_cone(alpha);
  if (!(absA > normB)) fail(Err::NotConvergent, "|alpha| must exceed ||B||");

  Element ainv = cone_inverse(alpha);
  Element apow = ainv;  // alpha^{-(n+1)}
  OpMatrix P = OpMatrix::identity(B.algebra(), B.m());
  OpMatrix S = right_scalar(P, apow);
  for (int n = 1; n <= N; ++n) {
    P = matmul(B, P);
    apow = mul(apow, ainv);
    S = S + right_scalar(P, apow);
  }
  const double q = normB / absA;
  NeumannResult out{std::move(S), std::pow(q, N + 1) / absA / (1.0 - q)};
  return out;
}

OpMatrix neumann_inverse(const OpMatrix& A, const OpMatrix& B) {
  check_compatible(A, B);
  require_associative(A.algebra(), "Neumann inverse");
  RealMatrix Ra = realify(A);
  LuFactors f = LuFactors::factor(Ra);
  if (f.singular()) fail(Err::Singular, "A is not invertible");
  OpMatrix Ainv = derealify(f.inverse(), A.algebra(), A.m());
  const double na = op_norm(Ainv);
  const double nb = op_norm(B);
  if (!(nb < 1.0 / na)) fail(Err::NormConditionViolated, "||B|| must be below ||A^{-1}||^{-1}");

  OpMatrix G = -1.0 * matmul(Ainv, B);
  const double q = na * nb;  // >= ||G||
  // q^k / (1 - q) <= 1e-16 fixes the truncation order analytically
  int kmax = 400;
  if (q > 0.0) {
    double need = std::log(1e-16 * (1.0 - q)) / std::log(q);
    kmax = std::min(400, static_cast<int>(std::ceil(std::max(need, 1.0))));
  }
  OpMatrix S = OpMatrix::identity(A.algebra(), A.m());
  OpMatrix term = S;
  for (int k = 1; k <= kmax; ++k) {
    term = matmul(term, G);
    S = S + term;
  }
  return matmul(S, Ainv);
}

Element MobiusBridge::map(const Element& alpha) const {
  return cone_inverse(alpha - Element::scalar(alpha.algebra(), lambda));
}

MobiusBridge mobius_bridge(const OpMatrix& A, double lambda) {
  if (!(lambda > 0.0)) fail(Err::BadInput, "bridge point must be positive");
  OpMatrix B = -1.0 * resolvent(A, lambda);
  return MobiusBridge{std::move(B), lambda};
}

double cr_residual_resolvent(const OpMatrix& B, const Element& alpha, double h) {
  ConeParts p = cone_decompose(alpha);
  if (!p.j) fail(Err::BadInput, "plane of a real point is ambiguous; pass a non-real alpha");
  const Algebra& alg = B.algebra();
  const Element& j = *p.j;
  auto C = [&](double a, double b) { return resolvent(B, Element::scalar(alg, a) + b * j); };
  OpMatrix da = (0.5 / h) * (C(p.a + h, p.b) - C(p.a - h, p.b));
  OpMatrix db = (0.5 / h) * (C(p.a, p.b + h) - C(p.a, p.b - h));
  return op_norm(da + right_scalar(db, j));
}

double right_linearity_residual(const OpMatrix& M, Rng& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    ModuleVec x = random_vec(M.algebra(), M.m(), rng);
    Element alpha = random_element(M.algebra(), rng);
    ModuleVec lhs = apply(M, vec_right_scalar(x, alpha));
    ModuleVec rhs = vec_right_scalar(apply(M, x), alpha);
    double scale = 1.0 + vec_norm(x) * euclid_norm(alpha);
    worst = std::max(worst, vec_norm(vec_sub(lhs, rhs)) / scale);
  }
  return worst;
}

Element random_element(const Algebra& alg, Rng& rng) {
  Element e(alg);
  for (int k = 0; k < alg.dim(); ++k) e[k] = rng.normal();
  return e;
}

Element random_imaginary_unit(const Algebra& alg, Rng& rng) {
  switch (alg.kind()) {
    case AlgebraKind::Real:
      fail(Err::WrongAlgebra, "the reals contain no square roots of -1");
    case AlgebraKind::Complex: {
      Element j = Element::basis(alg, 1);
      return rng.uniform() < 0.5 ? j : -j;
    }
    case AlgebraKind::Quaternion:
    case AlgebraKind::Octonion: {
      Element e(alg);
      double n = 0.0;
      while (n < 1e-6) {
        for (int k = 1; k < alg.dim(); ++k) e[k] = rng.normal();
        n = euclid_norm(e);
      }
      e *= 1.0 / n;
      return e;
    }
    case AlgebraKind::Clifford: {
      // unit vectors in the span of the degree-one generators square to -1
      Element e(alg);
      double n = 0.0;
      while (n < 1e-6) {
        for (int k = 1; k <= alg.clifford_n(); ++k) e[k] = rng.normal();
        n = euclid_norm(e);
      }
      e *= 1.0 / n;
      return e;
    }
  }
  fail(Err::WrongAlgebra, "unreachable");
}

Element random_cone_element(const Algebra& alg, Rng& rng) {
  if (alg.kind() == AlgebraKind::Real) return Element::scalar(alg, rng.normal());
  Element j = random_imaginary_unit(alg, rng);
  return Element::scalar(alg, rng.normal()) + std::abs(rng.normal()) * j;
}

OpMatrix random_op(const Algebra& alg, int m, Rng& rng) {
  OpMatrix M(alg, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) M.at(i, k) = random_element(alg, rng);
  return M;
}

ModuleVec random_vec(const Algebra& alg, int m, Rng& rng) {
  ModuleVec x;
  for (int i = 0; i < m; ++i) x.push_back(random_element(alg, rng));
  return x;
}

}  // namespace slicesemi
