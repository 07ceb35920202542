#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicesemi/error.hpp"
#include "slicesemi/linalg.hpp"

namespace slicesemi {

enum class AlgebraKind { Real, Complex, Quaternion, Octonion, Clifford };

// Relative tolerance used when deciding that trace/norm of an element are
// real, i.e. for membership queries against the quadratic cone.
inline constexpr double kConeTol = 1e-10;

/// Descriptor of one concrete *-algebra family: the reals, the complex
/// numbers, quaternions, octonions, or a Clifford algebra of signature (0,n).
///
/// Descriptors are interned and immutable. The signed multiplication table
/// (basis_i * basis_k = sign * basis_idx) is built once at construction:
///  - quaternions from the Hamilton relations,
///  - octonions by Cayley-Dickson doubling of the quaternions,
///  - Clifford from e_k^2 = -1, e_k e_h = -e_h e_k, with the basis ordered by
///    cardinality then lexicographically and signs from transposition counts.
class Algebra {
public:
  static const Algebra& real();
  static const Algebra& complex_alg();
  static const Algebra& quaternion();
  static const Algebra& octonion();
  static const Algebra& clifford(int n);  // 1 <= n <= 12 (table is dim^2)
  static const Algebra& from_code(const std::string& code);  // R, C, H, O, Cl<n>

  AlgebraKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool associative() const { return assoc_; }
  int clifford_n() const { return clifford_n_; }
  std::string code() const;
  const std::string& basis_label(int k) const { return labels_[k]; }

  int basis_mul_index(int i, int k) const { return tbl_idx_[static_cast<std::size_t>(i) * dim_ + k]; }
  int basis_mul_sign(int i, int k) const { return tbl_sign_[static_cast<std::size_t>(i) * dim_ + k]; }
  int conj_sign(int k) const { return conj_sign_[k]; }

  bool operator==(const Algebra& other) const { return this == &other; }

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

private:
  Algebra() = default;
  static Algebra* build(AlgebraKind kind, int clifford_n);

  AlgebraKind kind_ = AlgebraKind::Real;
  int clifford_n_ = 0;
  int dim_ = 1;
  bool assoc_ = true;
  std::vector<std::uint16_t> tbl_idx_;
  std::vector<std::int8_t> tbl_sign_;
  std::vector<std::int8_t> conj_sign_;
  std::vector<std::string> labels_;
};

/// Immutable value in a fixed algebra: real coefficients over the canonical
/// basis. All arithmetic is table-driven and allocates its result.
class Element {
public:
  explicit Element(const Algebra& alg) : alg_(&alg), c_(alg.dim(), 0.0) {}
  Element(const Algebra& alg, std::vector<double> coeffs);

  static Element scalar(const Algebra& alg, double v);
  static Element basis(const Algebra& alg, int k);

  const Algebra& algebra() const { return *alg_; }
  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

  Element& operator+=(const Element& y);
  Element& operator-=(const Element& y);
  Element& operator*=(double s);

private:
  const Algebra* alg_;
  std::vector<double> c_;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(double s, const Element& x);
Element operator*(const Element& x, double s);
Element operator*(const Element& x, const Element& y);  // algebra product

Element mul(const Element& x, const Element& y);
Element conj(const Element& x);     // the anti-involution x -> x^c
Element trace(const Element& x);    // t(x) = x + x^c
Element normsq(const Element& x);   // n(x) = x x^c
Element pow_int(const Element& x, int n);

double scalar_part(const Element& x);
Element imag_part(const Element& x);  // (x - x^c)/2
bool is_scalar(const Element& x, double tol_abs);
double offreal_norm(const Element& x);  // euclidean size of coefficients 1..dim-1

double euclid_norm(const Element& x);
double abs_cone(const Element& x);  // sqrt(n(x)) for cone members; equals euclid_norm there

// Realified left multiplication: column k holds the coefficients of x * e_k.
RealMatrix left_mult_matrix(const Element& x);

// Operator norm sup{|x a| : |a| = 1} of left multiplication; Clifford only.
double clifford_op_norm(const Element& x);

struct ConeParts {
  double a = 0.0;          // re(x)
  double b = 0.0;          // |im(x)|, canonically >= 0
  std::optional<Element> j;  // absent iff x is (numerically) real
};

bool in_quadratic_cone(const Element& x);
bool is_imaginary_unit(const Element& x);
ConeParts cone_decompose(const Element& x);
Element cone_inverse(const Element& x);  // n(x)^{-1} x^c
double arg(const Element& x);            // angle in [0, pi] of the polar form rho e^(theta j)

bool approx_equal(const Element& x, const Element& y, double tol_abs);

}  // namespace slicesemi
