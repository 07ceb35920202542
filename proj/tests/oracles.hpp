#pragma once

// Test-only reference implementations, deliberately independent of the
// library's computation paths: a recursive Cayley-Dickson product, a naive
// Clifford blade product, and a cyclic Jacobi eigensolver used for singular
// values. They exist to pin expected values, not to be fast.

#include <algorithm>
#include <cmath>
#include <vector>

#include "slicesemi/linalg.hpp"

namespace oracle {

// --- recursive Cayley-Dickson tower over the reals -------------------------

using Vec = std::vector<double>;

inline Vec cd_conj(const Vec& x) {
  Vec r = x;
  if (r.size() == 1) return r;
  std::size_t h = r.size() / 2;
  Vec p(r.begin(), r.begin() + h), q(r.begin() + h, r.end());
  Vec pc = cd_conj(p);
  Vec out;
  out.insert(out.end(), pc.begin(), pc.end());
  for (double v : q) out.push_back(-v);
  return out;
}

inline Vec cd_mul(const Vec& x, const Vec& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  std::size_t h = x.size() / 2;
  Vec p(x.begin(), x.begin() + h), q(x.begin() + h, x.end());
  Vec r(y.begin(), y.begin() + h), s(y.begin() + h, y.end());
  auto sub = [](const Vec& a, const Vec& b) {
    Vec o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] - b[i];
    return o;
  };
  auto add = [](const Vec& a, const Vec& b) {
    Vec o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] + b[i];
    return o;
  };
  // (p + q l)(r + s l) = (p r - conj(s) q) + (q conj(r) + s p) l
  Vec lo = sub(cd_mul(p, r), cd_mul(cd_conj(s), q));
  Vec hi = add(cd_mul(q, cd_conj(r)), cd_mul(s, p));
  Vec out = lo;
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

// --- naive Clifford blade product by bubble count ---------------------------

struct BladeProduct {
  std::vector<int> generators;  // sorted result blade
  int sign = 1;
};

inline BladeProduct clifford_blade_mul(std::vector<int> a, const std::vector<int>& b) {
  BladeProduct out;
  std::vector<int> seq = a;
  seq.insert(seq.end(), b.begin(), b.end());
  int sign = 1;
  // bubble sort, one swap = one transposition
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    for (std::size_t k = 0; k + 1 < seq.size() - i; ++k)
      if (seq[k] > seq[k + 1]) {
        std::swap(seq[k], seq[k + 1]);
        sign = -sign;
      }
  // contract adjacent equal generators, e_k e_k = -1
  std::vector<int> reduced;
  for (std::size_t i = 0; i < seq.size();) {
    if (i + 1 < seq.size() && seq[i] == seq[i + 1]) {
      sign = -sign;
      i += 2;
    } else {
      reduced.push_back(seq[i]);
      ++i;
    }
  }
  out.generators = std::move(reduced);
  out.sign = sign;
  return out;
}

// --- cyclic Jacobi for symmetric matrices -----------------------------------

inline std::vector<double> jacobi_eigenvalues(slicesemi::RealMatrix A) {
  const int n = A.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A.at(p, q) * A.at(p, q);
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = 0.5 * (A.at(q, q) - A.at(p, p)) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A.at(k, p), akq = A.at(k, q);
          A.at(k, p) = c * akp - s * akq;
          A.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A.at(p, k), aqk = A.at(q, k);
          A.at(p, k) = c * apk - s * aqk;
          A.at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = A.at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::vector<double> jacobi_singular_values(const slicesemi::RealMatrix& A) {
  slicesemi::RealMatrix G = slicesemi::transpose(A) * A;
  std::vector<double> ev = jacobi_eigenvalues(G);
  std::vector<double> sv;
  for (double v : ev) sv.push_back(std::sqrt(std::max(v, 0.0)));
  std::sort(sv.begin(), sv.end());
  return sv;
}

}  // namespace oracle
