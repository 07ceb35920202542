#pragma once

#include <complex>
#include <vector>

#include "slicesemi/error.hpp"

namespace slicesemi {

// Dense row-major real matrix. Self-contained kernel: LU, operator 2-norm,
// real Schur eigenvalues, matrix exponential. Doubles as the brute-force
// oracle behind the spherical-spectrum machinery, so no external BLAS/LAPACK.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static RealMatrix identity(int n);
  static RealMatrix zeros(int r, int c) { return RealMatrix(r, c); }

  bool square() const { return rows == cols; }
};

RealMatrix operator+(const RealMatrix& x, const RealMatrix& y);
RealMatrix operator-(const RealMatrix& x, const RealMatrix& y);
RealMatrix operator*(const RealMatrix& x, const RealMatrix& y);
RealMatrix operator*(double s, const RealMatrix& x);
RealMatrix transpose(const RealMatrix& x);

std::vector<double> matvec(const RealMatrix& x, const std::vector<double>& v);

double norm_inf(const RealMatrix& x);   // max row sum
double norm_one(const RealMatrix& x);   // max column sum
double norm_frob(const RealMatrix& x);
double vec_norm2(const std::vector<double>& v);

// LU factorization with partial pivoting. `rel_pivot_tol` scales the
// singularity threshold by norm_inf of the input.
class LuFactors {
public:
  static LuFactors factor(const RealMatrix& A, double rel_pivot_tol = 1e-13);

  bool singular() const { return singular_; }
  double min_pivot() const { return min_pivot_; }
  double det() const;

  // Throw Err::Singular when the factorization flagged a null pivot.
  std::vector<double> solve(const std::vector<double>& b) const;
  std::vector<double> solve_transpose(const std::vector<double>& b) const;
  RealMatrix solve(const RealMatrix& B) const;
  RealMatrix inverse() const;

  int n() const { return lu_.rows; }

private:
  RealMatrix lu_;
  std::vector<int> piv_;
  int pivot_sign_ = 1;
  bool singular_ = false;
  double min_pivot_ = 0.0;
};

RealMatrix lu_solve(const RealMatrix& A, const RealMatrix& B);
double det(const RealMatrix& A);

// Largest singular value by power iteration on A^T A. Relative accuracy
// about 1e-8; restarts with a reseeded vector if the iteration stagnates.
double op_norm2(const RealMatrix& A);

// Smallest singular value via inverse iteration on the LU factors.
// Returns 0 when the pivoting declares the matrix singular.
double smallest_sv(const RealMatrix& A, double rel_pivot_tol = 1e-13);

// All eigenvalues of a square real matrix (n <= 256): Householder reduction
// to Hessenberg form followed by Francis double-shift QR.
std::vector<std::complex<double>> eig_complex(const RealMatrix& A);

// Scaling-and-squaring Taylor exponential; the truncation degree is chosen
// so the series remainder after scaling ||A/2^s|| <= 0.5 stays below 1e-14.
RealMatrix expm(const RealMatrix& A);

}  // namespace slicesemi
