#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "qconn/expm.hpp"

using namespace qconn;

TEST_CASE("expm of zero is the identity") {
  MatrixCd z = MatrixCd::Zero(6, 6);
  CHECK((expm_dense(z) - MatrixCd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("expm of a diagonal matrix exponentiates the diagonal") {
  MatrixCd d = MatrixCd::Zero(4, 4);
  d(0, 0) = Complex(0.3, 0.0);
  d(1, 1) = Complex(0.0, 1.2);
  d(2, 2) = Complex(-2.0, 0.5);
  d(3, 3) = Complex(7.0, -3.0);  // exercises the squaring path
  MatrixCd e = expm_dense(d);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(e(i, i) - std::exp(d(i, i))) <
          1e-13 * std::abs(std::exp(d(i, i))));
    for (int j = 0; j < 4; ++j) {
      if (i != j) CHECK(std::abs(e(i, j)) < 1e-13 * std::abs(std::exp(d(3, 3))));
    }
  }
}

TEST_CASE("expm of a rotation generator gives cosine/sine blocks") {
  const double theta = 0.7;
  MatrixCd a = MatrixCd::Zero(2, 2);
  a(0, 1) = Complex(theta, 0.0);
  a(1, 0) = Complex(-theta, 0.0);
  MatrixCd e = expm_dense(a);
  CHECK(std::abs(e(0, 0) - std::cos(theta)) < 1e-14);
  CHECK(std::abs(e(0, 1) - std::sin(theta)) < 1e-14);
  CHECK(std::abs(e(1, 0) + std::sin(theta)) < 1e-14);
  CHECK(std::abs(e(1, 1) - std::cos(theta)) < 1e-14);
}

TEST_CASE("expm of i times hermitian is unitary and invertible by negation") {
  const int n = 24;
  MatrixCd r = MatrixCd::Random(n, n);
  MatrixCd herm = Complex(0.5, 0.0) * (r + r.adjoint());
  MatrixCd a = Complex(0.0, 1.0) * herm;
  MatrixCd u = expm_dense(a);
  CHECK((u.adjoint() * u - MatrixCd::Identity(n, n)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((expm_dense(-a) * u - MatrixCd::Identity(n, n)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("expm matches the addition law on commuting arguments") {
  MatrixCd a = MatrixCd::Zero(3, 3);
  a(0, 1) = Complex(1.0, 0.3);
  a(1, 2) = Complex(-0.4, 0.0);
  a(0, 2) = Complex(0.2, -0.1);  // strictly upper triangular, nilpotent
  MatrixCd two = expm_dense(MatrixCd(2.0 * a));
  MatrixCd once = expm_dense(a);
  CHECK(((once * once) - two).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("expm rejects non-finite input and absurd norms") {
  MatrixCd bad = MatrixCd::Zero(3, 3);
  bad(1, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(expm_dense(bad), std::runtime_error);

  MatrixCd huge = MatrixCd::Zero(2, 2);
  huge(0, 0) = Complex(1e300, 0.0);
  CHECK_THROWS_AS(expm_dense(huge), std::runtime_error);
}

TEST_CASE("expm wrapper keeps the grid") {
  GridSpec g = GridSpec::line(16, 4.0);
  OperatorMatrix p = build_momentum(g);
  OperatorMatrix u = expm(Complex(0.0, 1.0) * p);
  CHECK(u.grid() == g);
  CHECK((u.dense().adjoint() * u.dense() - MatrixCd::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() < 1e-13);
}
