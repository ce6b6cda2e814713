#include <doctest.h>

#include <cmath>

#include "pmusched/rng.hpp"
#include "pmusched/svd.hpp"

using namespace pmusched;

namespace {

double recon_error(const CMatrix& m, const SvdResult& s) {
  CMatrix r = s.reconstruct();
  double err = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) err += std::norm(m.at(i, j) - r.at(i, j));
  return std::sqrt(err);
}

CMatrix random_matrix(int n, Rng& rng) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = Cplx(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
  return m;
}

}  // namespace

TEST_CASE("identity matrix has unit singular values") {
  CMatrix m(3, 3);
  for (int i = 0; i < 3; ++i) m.at(i, i) = 1.0;
  SvdResult s = svd(m);
  for (double v : s.sigma) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal complex matrix: singular values are moduli") {
  CMatrix m(2, 2);
  m.at(0, 0) = Cplx(3, 0);
  m.at(1, 1) = Cplx(0, -4);
  SvdResult s = svd(m);
  CHECK(s.sigma[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s.sigma[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(recon_error(m, s) < 1e-12);
}

TEST_CASE("random matrices satisfy the SVD contracts") {
  Rng rng(2718);
  for (int n : {1, 2, 3, 5, 10, 25, 50}) {
    CMatrix m = random_matrix(n, rng);
    SvdResult s = svd(m);

    // descending order
    for (int k = 1; k < n; ++k) CHECK(s.sigma[k - 1] >= s.sigma[k]);

    // unit-norm left vectors
    for (int k = 0; k < n; ++k) {
      double norm = 0;
      for (const Cplx& z : s.u[k]) norm += std::norm(z);
      CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-10);
    }

    // reconstruction within 1e-8 relative
    double fro = m.fro_norm();
    CHECK(recon_error(m, s) <= 1e-8 * fro);

    // Frobenius identity
    double sum2 = 0;
    for (double v : s.sigma) sum2 += v * v;
    CHECK(std::abs(std::sqrt(sum2) - fro) <= 1e-9 * fro);

    // phase normalization: largest-magnitude entry of each u is real >= 0
    for (int k = 0; k < n; ++k) {
      int imax = 0;
      for (int i = 1; i < n; ++i)
        if (std::abs(s.u[k][i]) > std::abs(s.u[k][imax])) imax = i;
      CHECK(s.u[k][imax].imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(s.u[k][imax].real() >= 0);
    }
  }
}

TEST_CASE("rank-deficient matrices keep unit-norm vectors") {
  CMatrix m(3, 3);  // rank one
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Cplx(i + 1, 0) * Cplx(j + 1, 0);
  SvdResult s = svd(m);
  CHECK(s.sigma[1] < 1e-10);
  CHECK(s.sigma[2] < 1e-10);
  for (int k = 0; k < 3; ++k) {
    double norm = 0;
    for (const Cplx& z : s.u[k]) norm += std::norm(z);
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-10);
  }
  CHECK(recon_error(m, s) <= 1e-8 * m.fro_norm());
}

TEST_CASE("hermitian sanity: singular values match eigenvalue moduli") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3
  CMatrix m(2, 2);
  m.at(0, 0) = Cplx(2, 0);
  m.at(0, 1) = Cplx(0, 1);
  m.at(1, 0) = Cplx(0, -1);
  m.at(1, 1) = Cplx(2, 0);
  SvdResult s = svd(m);
  CHECK(s.sigma[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.sigma[1] == doctest::Approx(1.0).epsilon(1e-12));
}
