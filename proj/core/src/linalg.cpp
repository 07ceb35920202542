#include "slicesemi/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "slicesemi/rng.hpp"

namespace slicesemi {

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

static void check_same_shape(const RealMatrix& x, const RealMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail(Err::BadInput, "matrix shape mismatch");
}

RealMatrix operator+(const RealMatrix& x, const RealMatrix& y) {
  check_same_shape(x, y);
  RealMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

RealMatrix operator-(const RealMatrix& x, const RealMatrix& y) {
  check_same_shape(x, y);
  RealMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
  if (x.cols != y.rows) fail(Err::BadInput, "matrix product shape mismatch");
  RealMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      double v = x.at(i, k);
      if (v == 0.0) continue;
      const double* yr = &y.a[static_cast<std::size_t>(k) * y.cols];
      double* rr = &r.a[static_cast<std::size_t>(i) * r.cols];
      for (int j = 0; j < y.cols; ++j) rr[j] += v * yr[j];
    }
  }
  return r;
}

RealMatrix operator*(double s, const RealMatrix& x) {
  RealMatrix r = x;
  for (double& v : r.a) v *= s;
  return r;
}

RealMatrix transpose(const RealMatrix& x) {
  RealMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

std::vector<double> matvec(const RealMatrix& x, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != x.cols) fail(Err::BadInput, "matvec shape mismatch");
  std::vector<double> r(x.rows, 0.0);
  for (int i = 0; i < x.rows; ++i) {
    double s = 0.0;
    const double* row = &x.a[static_cast<std::size_t>(i) * x.cols];
    for (int j = 0; j < x.cols; ++j) s += row[j] * v[j];
    r[i] = s;
  }
  return r;
}

double norm_inf(const RealMatrix& x) {
  double m = 0.0;
  for (int i = 0; i < x.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < x.cols; ++j) s += std::abs(x.at(i, j));
    m = std::max(m, s);
  }
  return m;
}

double norm_one(const RealMatrix& x) {
  double m = 0.0;
  for (int j = 0; j < x.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < x.rows; ++i) s += std::abs(x.at(i, j));
    m = std::max(m, s);
  }
  return m;
}

double norm_frob(const RealMatrix& x) {
  double s = 0.0;
  for (double v : x.a) s += v * v;
  return std::sqrt(s);
}

double vec_norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

LuFactors LuFactors::factor(const RealMatrix& A, double rel_pivot_tol) {
  if (!A.square()) fail(Err::BadInput, "LU requires a square matrix");
  LuFactors f;
  f.lu_ = A;
  const int n = A.rows;
  f.piv_.resize(n);
  const double scale = norm_inf(A);
  const double tol = rel_pivot_tol * (scale > 0.0 ? scale : 1.0);
  f.min_pivot_ = scale > 0.0 ? scale : 0.0;

  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(f.lu_.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(f.lu_.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    f.piv_[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu_.at(k, j), f.lu_.at(p, j));
      f.pivot_sign_ = -f.pivot_sign_;
    }
    f.min_pivot_ = std::min(f.min_pivot_, best);
    if (best <= tol) {
      f.singular_ = true;
      continue;
    }
    const double inv = 1.0 / f.lu_.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      double l = f.lu_.at(i, k) * inv;
      f.lu_.at(i, k) = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j < n; ++j) f.lu_.at(i, j) -= l * f.lu_.at(k, j);
    }
  }
  return f;
}

double LuFactors::det() const {
  if (singular_) return 0.0;
  double d = pivot_sign_;
  for (int i = 0; i < lu_.rows; ++i) d *= lu_.at(i, i);
  return d;
}

std::vector<double> LuFactors::solve(const std::vector<double>& b) const {
  if (singular_) fail(Err::Singular, "pivot below threshold");
  const int n = lu_.rows;
  if (static_cast<int>(b.size()) != n) fail(Err::BadInput, "rhs size mismatch");
  std::vector<double> x = b;
  for (int k = 0; k < n; ++k) {
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (int i = k + 1; i < n; ++i) x[i] -= lu_.at(i, k) * x[k];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_.at(i, j) * x[j];
    x[i] /= lu_.at(i, i);
  }
  return x;
}

std::vector<double> LuFactors::solve_transpose(const std::vector<double>& b) const {
  if (singular_) fail(Err::Singular, "pivot below threshold");
  const int n = lu_.rows;
  if (static_cast<int>(b.size()) != n) fail(Err::BadInput, "rhs size mismatch");
  // P A = L U, so A^T x = b becomes U^T y = b, L^T z = y, x = P^T z.
  std::vector<double> y = b;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) y[i] -= lu_.at(j, i) * y[j];
    y[i] /= lu_.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) y[i] -= lu_.at(j, i) * y[j];
  for (int k = n - 1; k >= 0; --k)
    if (piv_[k] != k) std::swap(y[k], y[piv_[k]]);
  return y;
}

RealMatrix LuFactors::solve(const RealMatrix& B) const {
  if (B.rows != lu_.rows) fail(Err::BadInput, "rhs shape mismatch");
  RealMatrix X(B.rows, B.cols);
  std::vector<double> col(B.rows);
  for (int j = 0; j < B.cols; ++j) {
    for (int i = 0; i < B.rows; ++i) col[i] = B.at(i, j);
    std::vector<double> x = solve(col);
    for (int i = 0; i < B.rows; ++i) X.at(i, j) = x[i];
  }
  return X;
}

RealMatrix LuFactors::inverse() const { return solve(RealMatrix::identity(lu_.rows)); }

RealMatrix lu_solve(const RealMatrix& A, const RealMatrix& B) {
  return LuFactors::factor(A).solve(B);
}

double det(const RealMatrix& A) { return LuFactors::factor(A).det(); }

double op_norm2(const RealMatrix& A) {
  if (A.rows == 0 || A.cols == 0) return 0.0;
  double fn = norm_frob(A);
  if (fn == 0.0) return 0.0;

  const RealMatrix At = transpose(A);
  Rng rng(0x5eed5eedULL);
  std::vector<double> v(A.cols);
  for (double& x : v) x = rng.normal();

  double sigma = 0.0;
  double prev = -1.0;
  int stagnant = 0;
  const int max_iters = 10000;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> w = matvec(A, v);
    double nw = vec_norm2(w);
    if (nw == 0.0) {
      for (double& x : v) x = rng.normal();
      continue;
    }
    std::vector<double> u = matvec(At, w);
    double nu = vec_norm2(u);
    sigma = nw > 0.0 ? nu / nw : 0.0;
    if (nu == 0.0) break;
    for (int i = 0; i < A.cols; ++i) v[i] = u[i] / nu;
    if (prev >= 0.0 && std::abs(sigma - prev) <= 1e-8 * std::max(sigma, 1e-300)) {
      if (++stagnant >= 3) break;
    } else {
      stagnant = 0;
    }
    if (it > 0 && it % 500 == 0 && std::abs(sigma - prev) > 1e-6 * sigma) {
      // slow mixing: blend in a fresh random direction
      for (double& x : v) x += 0.1 * rng.normal();
      double nv = vec_norm2(v);
      for (double& x : v) x /= nv;
    }
    prev = sigma;
  }
  return sigma;
}

double smallest_sv(const RealMatrix& A, double rel_pivot_tol) {
  if (!A.square()) fail(Err::BadInput, "smallest_sv requires a square matrix");
  LuFactors f = LuFactors::factor(A, rel_pivot_tol);
  if (f.singular()) return 0.0;
  // power iteration on (A^-T A^-1): dominant value is 1/sigma_min^2
  Rng rng(0xabcdefULL);
  const int n = A.rows;
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  double nv = vec_norm2(v);
  for (double& x : v) x /= nv;

  double mu = 0.0, prev = -1.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w = f.solve(v);
    std::vector<double> u = f.solve_transpose(w);
    double nu = vec_norm2(u);
    if (!(nu > 0.0) || !std::isfinite(nu)) return 0.0;
    mu = nu;
    for (int i = 0; i < n; ++i) v[i] = u[i] / nu;
    if (prev > 0.0 && std::abs(mu - prev) <= 1e-6 * mu && it > 4) break;
    prev = mu;
  }
  return 1.0 / std::sqrt(mu);
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder Hessenberg reduction + Francis double-shift QR.
// ---------------------------------------------------------------------------

static void hessenberg_reduce(RealMatrix& A) {
  const int n = A.rows;
  for (int k = 0; k < n - 2; ++k) {
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(A.at(i, k));
    if (scale == 0.0) continue;
    std::vector<double> v(n, 0.0);
    double h = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = A.at(i, k) / scale;
      h += v[i] * v[i];
    }
    double g = v[k + 1] >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    h -= v[k + 1] * g;
    if (h == 0.0) continue;
    v[k + 1] -= g;

    // A <- (I - v v^T / h) A (I - v v^T / h)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * A.at(i, j);
      s /= h;
      for (int i = k + 1; i < n; ++i) A.at(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += A.at(i, j) * v[j];
      s /= h;
      for (int j = k + 1; j < n; ++j) A.at(i, j) -= s * v[j];
    }
    A.at(k + 1, k) = scale * g;
    for (int i = k + 2; i < n; ++i) A.at(i, k) = 0.0;
  }
}

static double sign_with(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
static std::vector<std::complex<double>> hqr(RealMatrix& H) {
  const int n = H.rows;
  std::vector<std::complex<double>> eig(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(H.at(i, j));
  if (anorm == 0.0) return eig;  // zero matrix

  const double eps = 2.22e-16;
  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(H.at(l - 1, l - 1)) + std::abs(H.at(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(H.at(l, l - 1)) <= eps * s) {
          H.at(l, l - 1) = 0.0;
          break;
        }
      }
      double x = H.at(nn, nn);
      if (l == nn) {
        eig[nn--] = x + t;
      } else {
        double y = H.at(nn - 1, nn - 1);
        double w = H.at(nn, nn - 1) * H.at(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_with(z, p);
            eig[nn - 1] = eig[nn] = x + z;
            if (z != 0.0) eig[nn] = x - w / z;
          } else {
            eig[nn - 1] = std::complex<double>(x + p, z);
            eig[nn] = std::conj(eig[nn - 1]);
          }
          nn -= 2;
        } else {
          if (its == 60) fail(Err::NoConvergence, "QR iteration cap reached");
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
            t += x;
            for (int i = 0; i <= nn; ++i) H.at(i, i) -= x;
            double s = std::abs(H.at(nn, nn - 1)) + std::abs(H.at(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = 0;
          for (m = nn - 2; m >= l; --m) {
            z = H.at(m, m);
            double r2 = x - z;
            double s2 = y - z;
            p = (r2 * s2 - w) / H.at(m + 1, m) + H.at(m, m + 1);
            q = H.at(m + 1, m + 1) - z - r2 - s2;
            r = H.at(m + 2, m + 1);
            double s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            double u = std::abs(H.at(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) *
                       (std::abs(H.at(m - 1, m - 1)) + std::abs(z) + std::abs(H.at(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            H.at(i, i - 2) = 0.0;
            if (i != m + 2) H.at(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = H.at(k, k - 1);
              q = H.at(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = H.at(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = sign_with(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) H.at(k, k - 1) = -H.at(k, k - 1);
            } else {
              H.at(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            double yy = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = H.at(k, j) + q * H.at(k + 1, j);
              if (k != nn - 1) {
                p += r * H.at(k + 2, j);
                H.at(k + 2, j) -= p * z;
              }
              H.at(k + 1, j) -= p * yy;
              H.at(k, j) -= p * x;
            }
            int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * H.at(i, k) + yy * H.at(i, k + 1);
              if (k != nn - 1) {
                p += z * H.at(i, k + 2);
                H.at(i, k + 2) -= p * r;
              }
              H.at(i, k + 1) -= p * q;
              H.at(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return eig;
}

std::vector<std::complex<double>> eig_complex(const RealMatrix& A) {
  if (!A.square()) fail(Err::BadInput, "eig_complex requires a square matrix");
  if (A.rows > 256) fail(Err::BadInput, "eig_complex limited to n <= 256");
  if (A.rows == 0) return {};
  RealMatrix H = A;
  hessenberg_reduce(H);
  return hqr(H);
}

RealMatrix expm(const RealMatrix& A) {
  if (!A.square()) fail(Err::BadInput, "expm requires a square matrix");
  const int n = A.rows;
  double nrm = norm_one(A);
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  RealMatrix X = std::pow(2.0, -s) * A;

  // pick the Taylor degree from the remainder bound at ||X|| <= 1/2
  int degree = 1;
  double fact = 1.0;
  for (int d = 1; d < 40; ++d) {
    fact *= (d + 1);
    double rem = std::pow(0.5, d + 1) / fact / (1.0 - 0.5 / (d + 2));
    if (rem < 1e-14) {
      degree = d;
      break;
    }
  }

  RealMatrix E = RealMatrix::identity(n);  // Horner: E = I + X/ d (I + ...)
  for (int d = degree; d >= 1; --d) {
    E = (1.0 / d) * (X * E);
    for (int i = 0; i < n; ++i) E.at(i, i) += 1.0;
  }
  for (int k = 0; k < s; ++k) E = E * E;
  return E;
}

const char* err_name(Err e) {
  switch (e) {
    case Err::DescriptorMismatch: return "DescriptorMismatch";
    case Err::WrongAlgebra: return "WrongAlgebra";
    case Err::NonAssociative: return "NonAssociative";
    case Err::NotInCone: return "NotInCone";
    case Err::ZeroElement: return "ZeroElement";
    case Err::NotImaginaryUnit: return "NotImaginaryUnit";
    case Err::OnSphere: return "OnSphere";
    case Err::Singular: return "Singular";
    case Err::NoConvergence: return "NoConvergence";
    case Err::OnSpectrum: return "OnSpectrum";
    case Err::NotConvergent: return "NotConvergent";
    case Err::NormConditionViolated: return "NormConditionViolated";
    case Err::NotCauchy: return "NotCauchy";
    case Err::GridTooShort: return "GridTooShort";
    case Err::SpectrumOutsideCircle: return "SpectrumOutsideCircle";
    case Err::LoopHitsSpectrum: return "LoopHitsSpectrum";
    case Err::NotSectorial: return "NotSectorial";
    case Err::TailNotCertifiable: return "TailNotCertifiable";
    case Err::LambdaInsideKeyhole: return "LambdaInsideKeyhole";
    case Err::SphereNotEnclosed: return "SphereNotEnclosed";
    case Err::RealSliceRequired: return "RealSliceRequired";
    case Err::UnknownSuite: return "UnknownSuite";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace slicesemi
