#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "slicesemi/algebra.hpp"
#include "slicesemi/linalg.hpp"
#include "slicesemi/operators.hpp"
#include "slicesemi/rng.hpp"

using namespace slicesemi;

namespace {

RealMatrix random_matrix(int r, int c, Rng& rng) {
  RealMatrix m(r, c);
  for (double& v : m.a) v = rng.normal();
  return m;
}

std::vector<std::complex<double>> sorted_eigs(std::vector<std::complex<double>> e) {
  std::sort(e.begin(), e.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return e;
}

}  // namespace

TEST_CASE("lu solve basics") {
  RealMatrix I = RealMatrix::identity(4);
  RealMatrix B = random_matrix(4, 2, *(new Rng(1)));
  RealMatrix X = lu_solve(I, B);
  CHECK(norm_frob(X - B) == doctest::Approx(0.0));

  RealMatrix D(2, 2);
  D.at(0, 0) = 2.0;
  D.at(1, 1) = 4.0;
  RealMatrix b(2, 1);
  b.at(0, 0) = 1.0;
  b.at(1, 0) = 1.0;
  RealMatrix x = lu_solve(D, b);
  CHECK(x.at(0, 0) == doctest::Approx(0.5));
  CHECK(x.at(1, 0) == doctest::Approx(0.25));

  CHECK(det(D) == doctest::Approx(8.0));
  RealMatrix S(2, 2);
  S.at(0, 0) = 1.0;
  S.at(0, 1) = 2.0;
  S.at(1, 0) = 2.0;
  S.at(1, 1) = 4.0;
  CHECK_THROWS_AS((void)lu_solve(S, b), Error);
  CHECK(det(S) == 0.0);
}

TEST_CASE("lu solve round trip on random well conditioned systems") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + rng.uniform_int(7);
    RealMatrix A = random_matrix(n, n, rng);
    for (int i = 0; i < n; ++i) A.at(i, i) += 4.0;  // diagonally dominated
    RealMatrix X = random_matrix(n, 3, rng);
    RealMatrix B = A * X;
    RealMatrix Y = lu_solve(A, B);
    CHECK(norm_frob(Y - X) <= 1e-10 * (1.0 + norm_frob(X)));
  }
}

TEST_CASE("transpose solve agrees with solving the transposed system") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + rng.uniform_int(5);
    RealMatrix A = random_matrix(n, n, rng);
    for (int i = 0; i < n; ++i) A.at(i, i) += 3.0;
    std::vector<double> b(n);
    for (double& v : b) v = rng.normal();
    LuFactors f = LuFactors::factor(A);
    std::vector<double> x1 = f.solve_transpose(b);
    RealMatrix bt(n, 1);
    for (int i = 0; i < n; ++i) bt.at(i, 0) = b[i];
    RealMatrix x2 = lu_solve(transpose(A), bt);
    for (int i = 0; i < n; ++i) CHECK(x1[i] == doctest::Approx(x2.at(i, 0)).epsilon(1e-10));
  }
}

TEST_CASE("operator two norm") {
  CHECK(op_norm2(RealMatrix::identity(5)) == doctest::Approx(1.0));

  RealMatrix D(2, 2);
  D.at(0, 0) = 3.0;
  D.at(1, 1) = -5.0;
  CHECK(op_norm2(D) == doctest::Approx(5.0));

  Rng rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + rng.uniform_int(7);
    RealMatrix A = random_matrix(n, n, rng);
    double ref = oracle::jacobi_singular_values(A).back();
    CHECK(op_norm2(A) == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("smallest singular value") {
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + rng.uniform_int(6);
    RealMatrix A = random_matrix(n, n, rng);
    double ref = oracle::jacobi_singular_values(A).front();
    if (ref < 1e-10) continue;
    CHECK(smallest_sv(A) == doctest::Approx(ref).epsilon(1e-4));
  }
  RealMatrix S(2, 2);
  S.at(0, 0) = 1.0;
  S.at(0, 1) = 2.0;
  S.at(1, 0) = 2.0;
  S.at(1, 1) = 4.0;
  CHECK(smallest_sv(S) == 0.0);
}

TEST_CASE("eigenvalues of simple matrices") {
  RealMatrix D(2, 2);
  D.at(0, 0) = 1.0;
  D.at(1, 1) = 2.0;
  auto e = sorted_eigs(eig_complex(D));
  CHECK(e[0] == std::complex<double>(1.0, 0.0));
  CHECK(e[1].real() == doctest::Approx(2.0));

  RealMatrix R(2, 2);  // quarter turn
  R.at(0, 1) = -1.0;
  R.at(1, 0) = 1.0;
  e = sorted_eigs(eig_complex(R));
  CHECK(e[0].real() == doctest::Approx(0.0));
  CHECK(std::abs(e[0].imag()) == doctest::Approx(1.0));
  CHECK(e[1] == std::conj(e[0]));

  // companion matrix of u^2 - 2u + 5, roots 1 +- 2i by the quadratic formula
  RealMatrix Cmp(2, 2);
  Cmp.at(0, 0) = 2.0;
  Cmp.at(0, 1) = -5.0;
  Cmp.at(1, 0) = 1.0;
  e = sorted_eigs(eig_complex(Cmp));
  CHECK(e[0].real() == doctest::Approx(1.0));
  CHECK(e[1].real() == doctest::Approx(1.0));
  CHECK(std::max(e[0].imag(), e[1].imag()) == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues agree with the Jacobi oracle on symmetric matrices") {
  Rng rng(6);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + rng.uniform_int(9);
    RealMatrix A = random_matrix(n, n, rng);
    RealMatrix S = 0.5 * (A + transpose(A));
    std::vector<double> ref = oracle::jacobi_eigenvalues(S);
    auto e = eig_complex(S);
    std::vector<double> got;
    for (auto& z : e) {
      CHECK(std::abs(z.imag()) <= 1e-8 * (1.0 + norm_inf(S)));
      got.push_back(z.real());
    }
    std::sort(got.begin(), got.end());
    for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  }
}

TEST_CASE("eigenvalues of random matrices annihilate their shifts") {
  // a + bi is an eigenvalue iff the realified 2n shift matrix is singular
  Rng rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 3 + rng.uniform_int(6);
    RealMatrix A = random_matrix(n, n, rng);
    auto eigs = eig_complex(A);
    for (const auto& z : eigs) {
      RealMatrix S(2 * n, 2 * n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          S.at(i, k) = A.at(i, k);
          S.at(n + i, n + k) = A.at(i, k);
        }
      for (int i = 0; i < n; ++i) {
        S.at(i, i) -= z.real();
        S.at(n + i, n + i) -= z.real();
        S.at(i, n + i) = z.imag();
        S.at(n + i, i) = -z.imag();
      }
      CHECK(smallest_sv(S) <= 1e-8 * (1.0 + norm_inf(A)));
    }
  }
}

TEST_CASE("eigenvalues of a realified left multiplication") {
  const Algebra& H = Algebra::quaternion();
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    double a = rng.normal(), b = std::abs(rng.normal());
    Element q = Element::scalar(H, a) + b * random_imaginary_unit(H, rng);
    auto e = sorted_eigs(eig_complex(left_mult_matrix(q)));
    REQUIRE(e.size() == 4);
    // a +- b i, each twice
    for (const auto& z : e) CHECK(z.real() == doctest::Approx(a).epsilon(1e-9));
    CHECK(std::abs(e[0].imag()) == doctest::Approx(b).epsilon(1e-9));
    CHECK(std::abs(e[3].imag()) == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("matrix exponential") {
  CHECK(norm_frob(expm(RealMatrix::zeros(3, 3)) - RealMatrix::identity(3)) == doctest::Approx(0.0));

  RealMatrix one(1, 1);
  one.at(0, 0) = 1.0;
  CHECK(expm(one).at(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

  // e^{pi L_j} = L_{e^{pi j}} = -Id
  const Algebra& H = Algebra::quaternion();
  RealMatrix Lj = left_mult_matrix(Element::basis(H, 2));
  RealMatrix E = expm(3.14159265358979323846 * Lj);
  CHECK(norm_frob(E + RealMatrix::identity(4)) <= 1e-12);

  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + rng.uniform_int(5);
    RealMatrix A = random_matrix(n, n, rng);
    RealMatrix B = A * A - 2.0 * A;  // commutes with A
    RealMatrix lhs = expm(A + B);
    RealMatrix rhs = expm(A) * expm(B);
    CHECK(norm_frob(lhs - rhs) <= 1e-10 * (1.0 + norm_frob(lhs)));
  }
}

TEST_CASE("expm against the scalar series") {
  Rng rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    RealMatrix A = random_matrix(4, 4, rng);
    RealMatrix S = RealMatrix::identity(4);
    RealMatrix term = RealMatrix::identity(4);
    for (int k = 1; k <= 60; ++k) {
      term = (1.0 / k) * (term * A);
      S = S + term;
    }
    CHECK(norm_frob(expm(A) - S) <= 1e-11 * norm_frob(S));
  }
}
