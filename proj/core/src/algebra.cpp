#include "slicesemi/algebra.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace slicesemi {

namespace {

// quaternion product on raw coefficient arrays, basis {1, i, j, k}
std::array<double, 4> quat_mul(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

std::array<double, 4> quat_conj(const std::array<double, 4>& p) {
  return {p[0], -p[1], -p[2], -p[3]};
}

// octonion product by Cayley-Dickson doubling: (p + q l)(r + s l) =
// (p r - conj(s) q) + (q conj(r) + s p) l, with basis o_h = (1,i,j,k,l,il,jl,kl).
std::array<double, 8> oct_mul(const std::array<double, 8>& x, const std::array<double, 8>& y) {
  std::array<double, 4> p{x[0], x[1], x[2], x[3]}, q{x[4], x[5], x[6], x[7]};
  std::array<double, 4> r{y[0], y[1], y[2], y[3]}, s{y[4], y[5], y[6], y[7]};
  std::array<double, 4> lo = quat_mul(p, r);
  std::array<double, 4> t = quat_mul(quat_conj(s), q);
  std::array<double, 4> hi = quat_mul(q, quat_conj(r));
  std::array<double, 4> u = quat_mul(s, p);
  std::array<double, 8> out{};
  for (int h = 0; h < 4; ++h) {
    out[h] = lo[h] - t[h];
    out[4 + h] = hi[h] + u[h];
  }
  return out;
}

// transpositions needed to merge the sorted generator lists of two blades
int blade_reorder_sign(unsigned a, unsigned b) {
  int sum = 0;
  a >>= 1;
  while (a != 0) {
    sum += std::popcount(a & b);
    a >>= 1;
  }
  return (sum & 1) ? -1 : 1;
}

std::string clifford_label(unsigned mask, int n) {
  if (mask == 0) return "1";
  std::string s = "e";
  bool wide = n >= 10;
  bool first = true;
  for (int k = 1; k <= n; ++k) {
    if (mask & (1u << (k - 1))) {
      if (!first && wide) s += '_';
      s += std::to_string(k);
      first = false;
    }
  }
  return s;
}

}  // namespace

Algebra* Algebra::build(AlgebraKind kind, int clifford_n) {
  auto* alg = new Algebra();
  alg->kind_ = kind;
  alg->clifford_n_ = clifford_n;
  switch (kind) {
    case AlgebraKind::Real: alg->dim_ = 1; break;
    case AlgebraKind::Complex: alg->dim_ = 2; break;
    case AlgebraKind::Quaternion: alg->dim_ = 4; break;
    case AlgebraKind::Octonion: alg->dim_ = 8; break;
    case AlgebraKind::Clifford: alg->dim_ = 1 << clifford_n; break;
  }
  alg->assoc_ = (kind != AlgebraKind::Octonion);
  const int d = alg->dim_;
  alg->tbl_idx_.assign(static_cast<std::size_t>(d) * d, 0);
  alg->tbl_sign_.assign(static_cast<std::size_t>(d) * d, 0);
  alg->conj_sign_.assign(d, 1);
  alg->labels_.resize(d);

  auto set = [&](int i, int k, int idx, int sign) {
    alg->tbl_idx_[static_cast<std::size_t>(i) * d + k] = static_cast<std::uint16_t>(idx);
    alg->tbl_sign_[static_cast<std::size_t>(i) * d + k] = static_cast<std::int8_t>(sign);
  };

  switch (kind) {
    case AlgebraKind::Real:
      set(0, 0, 0, 1);
      alg->labels_ = {"1"};
      break;
    case AlgebraKind::Complex:
      set(0, 0, 0, 1);
      set(0, 1, 1, 1);
      set(1, 0, 1, 1);
      set(1, 1, 0, -1);
      alg->conj_sign_[1] = -1;
      alg->labels_ = {"1", "i"};
      break;
    case AlgebraKind::Quaternion: {
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
          std::array<double, 4> a{}, b{};
          a[i] = 1.0;
          b[k] = 1.0;
          std::array<double, 4> p = quat_mul(a, b);
          for (int r = 0; r < 4; ++r)
            if (p[r] != 0.0) set(i, k, r, p[r] > 0 ? 1 : -1);
        }
      for (int k = 1; k < 4; ++k) alg->conj_sign_[k] = -1;
      alg->labels_ = {"1", "i", "j", "k"};
      break;
    }
    case AlgebraKind::Octonion: {
      for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) {
          std::array<double, 8> a{}, b{};
          a[i] = 1.0;
          b[k] = 1.0;
          std::array<double, 8> p = oct_mul(a, b);
          for (int r = 0; r < 8; ++r)
            if (p[r] != 0.0) set(i, k, r, p[r] > 0 ? 1 : -1);
        }
      for (int k = 1; k < 8; ++k) alg->conj_sign_[k] = -1;
      for (int k = 0; k < 8; ++k) alg->labels_[k] = "o" + std::to_string(k);
      break;
    }
    case AlgebraKind::Clifford: {
      const int n = clifford_n;
      // canonical basis order: by cardinality, then lexicographic on the
      // sorted generator lists
      std::vector<unsigned> order(static_cast<std::size_t>(d));
      for (int m = 0; m < d; ++m) order[m] = static_cast<unsigned>(m);
      auto lex_less = [n](unsigned a, unsigned b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb) return ca < cb;
        for (int k = 0; k < n; ++k) {
          bool ia = a & (1u << k), ib = b & (1u << k);
          if (ia != ib) return ia;  // smaller first generator wins
        }
        return false;
      };
      std::sort(order.begin(), order.end(), lex_less);
      std::vector<int> index_of(static_cast<std::size_t>(d));
      for (int m = 0; m < d; ++m) index_of[order[m]] = m;

      for (int i = 0; i < d; ++i) {
        unsigned ma = order[i];
        for (int k = 0; k < d; ++k) {
          unsigned mb = order[k];
          int sign = blade_reorder_sign(ma, mb);
          // signature (0,n): every repeated generator contracts to -1
          if (std::popcount(ma & mb) & 1) sign = -sign;
          set(i, k, index_of[ma ^ mb], sign);
        }
      }
      for (int k = 0; k < d; ++k) {
        int card = std::popcount(order[k]);
        alg->conj_sign_[k] = static_cast<std::int8_t>(((card * (card + 1) / 2) & 1) ? -1 : 1);
        alg->labels_[k] = clifford_label(order[k], n);
      }
      break;
    }
  }
  return alg;
}

const Algebra& Algebra::real() {
  static const Algebra* a = build(AlgebraKind::Real, 0);
  return *a;
}
const Algebra& Algebra::complex_alg() {
  static const Algebra* a = build(AlgebraKind::Complex, 0);
  return *a;
}
const Algebra& Algebra::quaternion() {
  static const Algebra* a = build(AlgebraKind::Quaternion, 0);
  return *a;
}
const Algebra& Algebra::octonion() {
  static const Algebra* a = build(AlgebraKind::Octonion, 0);
  return *a;
}

const Algebra& Algebra::clifford(int n) {
  if (n < 1 || n > 12) fail(Err::BadInput, "Clifford signature (0,n) supported for 1 <= n <= 12");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Algebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::unique_ptr<Algebra>(build(AlgebraKind::Clifford, n))).first;
  return *it->second;
}

const Algebra& Algebra::from_code(const std::string& code) {
  if (code == "R") return real();
  if (code == "C") return complex_alg();
  if (code == "H") return quaternion();
  if (code == "O") return octonion();
  if (code.size() > 2 && code.substr(0, 2) == "Cl") {
    try {
      return clifford(std::stoi(code.substr(2)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  fail(Err::BadInput, "unknown algebra code '" + code + "'");
}

std::string Algebra::code() const {
  switch (kind_) {
    case AlgebraKind::Real: return "R";
    case AlgebraKind::Complex: return "C";
    case AlgebraKind::Quaternion: return "H";
    case AlgebraKind::Octonion: return "O";
    case AlgebraKind::Clifford: return "Cl" + std::to_string(clifford_n_);
  }
  return "?";
}

Element::Element(const Algebra& alg, std::vector<double> coeffs) : alg_(&alg), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != alg.dim())
    fail(Err::BadInput, "coefficient count does not match algebra dimension");
}

Element Element::scalar(const Algebra& alg, double v) {
  Element e(alg);
  e.c_[0] = v;
  return e;
}

Element Element::basis(const Algebra& alg, int k) {
  if (k < 0 || k >= alg.dim()) fail(Err::BadInput, "basis index out of range");
  Element e(alg);
  e.c_[k] = 1.0;
  return e;
}

static void check_same_algebra(const Element& x, const Element& y) {
  if (&x.algebra() != &y.algebra()) fail(Err::DescriptorMismatch, "elements of different algebras");
}

Element& Element::operator+=(const Element& y) {
  check_same_algebra(*this, y);
  for (int k = 0; k < dim(); ++k) c_[k] += y.c_[k];
  return *this;
}

Element& Element::operator-=(const Element& y) {
  check_same_algebra(*this, y);
  for (int k = 0; k < dim(); ++k) c_[k] -= y.c_[k];
  return *this;
}

Element& Element::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Element operator+(const Element& x, const Element& y) {
  Element r = x;
  r += y;
  return r;
}
Element operator-(const Element& x, const Element& y) {
  Element r = x;
  r -= y;
  return r;
}
Element operator-(const Element& x) {
  Element r = x;
  r *= -1.0;
  return r;
}
Element operator*(double s, const Element& x) {
  Element r = x;
  r *= s;
  return r;
}
Element operator*(const Element& x, double s) { return s * x; }

Element mul(const Element& x, const Element& y) {
  check_same_algebra(x, y);
  const Algebra& alg = x.algebra();
  const int d = alg.dim();
  Element out(alg);
  for (int i = 0; i < d; ++i) {
    double xi = x[i];
    if (xi == 0.0) continue;
    for (int k = 0; k < d; ++k) {
      double yk = y[k];
      if (yk == 0.0) continue;
      out[alg.basis_mul_index(i, k)] += alg.basis_mul_sign(i, k) * xi * yk;
    }
  }
  return out;
}

Element operator*(const Element& x, const Element& y) { return mul(x, y); }

Element conj(const Element& x) {
  const Algebra& alg = x.algebra();
  Element r = x;
  for (int k = 0; k < alg.dim(); ++k) r[k] *= alg.conj_sign(k);
  return r;
}

Element trace(const Element& x) { return x + conj(x); }
Element normsq(const Element& x) { return mul(x, conj(x)); }

Element pow_int(const Element& x, int n) {
  if (n < 0) fail(Err::BadInput, "negative power");
  Element r = Element::scalar(x.algebra(), 1.0);
  for (int k = 0; k < n; ++k) r = mul(r, x);  // power associativity makes the order irrelevant
  return r;
}

double scalar_part(const Element& x) { return x[0]; }

Element imag_part(const Element& x) {
  Element r = x - conj(x);
  r *= 0.5;
  return r;
}

double offreal_norm(const Element& x) {
  double s = 0.0;
  for (int k = 1; k < x.dim(); ++k) s += x[k] * x[k];
  return std::sqrt(s);
}

bool is_scalar(const Element& x, double tol_abs) { return offreal_norm(x) <= tol_abs; }

double euclid_norm(const Element& x) {
  double s = 0.0;
  for (int k = 0; k < x.dim(); ++k) s += x[k] * x[k];
  return std::sqrt(s);
}

double abs_cone(const Element& x) { return euclid_norm(x); }

RealMatrix left_mult_matrix(const Element& x) {
  const Algebra& alg = x.algebra();
  const int d = alg.dim();
  RealMatrix L(d, d);
  for (int i = 0; i < d; ++i) {
    double xi = x[i];
    if (xi == 0.0) continue;
    for (int k = 0; k < d; ++k) L.at(alg.basis_mul_index(i, k), k) += alg.basis_mul_sign(i, k) * xi;
  }
  return L;
}

double clifford_op_norm(const Element& x) {
  if (x.algebra().kind() != AlgebraKind::Clifford)
    fail(Err::WrongAlgebra, "Clifford operator norm defined for Clifford kinds");
  return op_norm2(left_mult_matrix(x));
}

bool in_quadratic_cone(const Element& x) {
  switch (x.algebra().kind()) {
    case AlgebraKind::Real:
    case AlgebraKind::Complex:
    case AlgebraKind::Quaternion:
    case AlgebraKind::Octonion:
      return true;  // division *-algebras: the cone is everything
    case AlgebraKind::Clifford: break;
  }
  const double scale = 1.0 + euclid_norm(x);
  if (offreal_norm(x) <= kConeTol * scale) return true;
  Element t = trace(x);
  Element n = normsq(x);
  if (offreal_norm(t) > kConeTol * 2.0 * scale) return false;
  if (offreal_norm(n) > kConeTol * scale * scale) return false;
  const double b = euclid_norm(imag_part(x));
  if (b <= 1e-7 * scale) return true;  // below the discriminant's float resolution; real-adjacent
  const double tr = scalar_part(t);
  const double nr = scalar_part(n);
  const double disc = tr * tr - 4.0 * nr;
  // strict inequality with a margin at the roundoff floor of t^2 - 4n
  return disc < -4e-14 * scale * scale;
}

ConeParts cone_decompose(const Element& x) {
  if (!in_quadratic_cone(x)) fail(Err::NotInCone, "element outside the quadratic cone");
  ConeParts parts;
  parts.a = 0.5 * scalar_part(trace(x));
  Element im = imag_part(x);
  const double b = euclid_norm(im);
  const double scale = 1.0 + euclid_norm(x);
  if (b <= kConeTol * scale) return parts;  // numerically real
  parts.b = b;
  im *= 1.0 / b;
  parts.j = std::move(im);
  return parts;
}

bool is_imaginary_unit(const Element& x) {
  if (!in_quadratic_cone(x)) return false;
  Element sq = mul(x, x);
  sq[0] += 1.0;
  return euclid_norm(sq) <= kConeTol * (1.0 + euclid_norm(x)) * (1.0 + euclid_norm(x));
}

Element cone_inverse(const Element& x) {
  if (!in_quadratic_cone(x)) fail(Err::NotInCone, "element outside the quadratic cone");
  const double ns = scalar_part(normsq(x));
  if (!(ns > 1e-300)) fail(Err::ZeroElement, "inverse of (numerically) zero element");
  Element r = conj(x);
  r *= 1.0 / ns;
  return r;
}

double arg(const Element& x) {
  ConeParts p = cone_decompose(x);
  if (p.a == 0.0 && p.b == 0.0) fail(Err::ZeroElement, "arg of zero element");
  if (euclid_norm(x) < 1e-300) fail(Err::ZeroElement, "arg of zero element");
  return std::atan2(p.b, p.a);
}

bool approx_equal(const Element& x, const Element& y, double tol_abs) {
  if (&x.algebra() != &y.algebra()) return false;
  return euclid_norm(x - y) <= tol_abs;
}

}  // namespace slicesemi
