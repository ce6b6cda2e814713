#pragma once

#include <complex>
#include <vector>

#include "pmusched/errors.hpp"

namespace pmusched {

using Cplx = std::complex<double>;

// Dense complex matrix, row major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  Cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const Cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  double fro_norm() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Cplx> a_;
};

struct SvdResult {
  std::vector<double> sigma;         // descending
  std::vector<std::vector<Cplx>> u;  // left singular vectors, unit norm
  std::vector<std::vector<Cplx>> v;  // right singular vectors

  CMatrix reconstruct() const;  // sum_n sigma_n u_n v_n^H
};

// One-sided Jacobi SVD of a square complex matrix. Each u_n is phase
// normalized so its largest-magnitude entry is real nonnegative. Throws
// NoConvergence when the sweep cap is reached.
SvdResult svd(const CMatrix& m);

}  // namespace pmusched
