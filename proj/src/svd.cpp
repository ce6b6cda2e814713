#include "pmusched/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pmusched {

double CMatrix::fro_norm() const {
  double s = 0;
  for (const Cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix SvdResult::reconstruct() const {
  const int n = static_cast<int>(sigma.size());
  CMatrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) += sigma[k] * u[k][i] * std::conj(v[k][j]);
  return m;
}

SvdResult svd(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("svd expects a square matrix");
  const int n = m.rows();
  // columns of a are orthogonalized in place; vt accumulates the rotations
  std::vector<std::vector<Cplx>> a(n, std::vector<Cplx>(n));
  std::vector<std::vector<Cplx>> v(n, std::vector<Cplx>(n));
  for (int j = 0; j < n; ++j) {
    v[j][j] = 1.0;
    for (int i = 0; i < n; ++i) a[j][i] = m.at(i, j);
  }

  const double fro2 = [&] {
    double s = 0;
    for (const auto& col : a)
      for (const Cplx& z : col) s += std::norm(z);
    return s;
  }();
  const double tol = 1e-12 * (fro2 > 0 ? fro2 : 1.0);

  constexpr int kMaxSweeps = 60;
  double worst = 0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Cplx g(0, 0);
        double gii = 0, gjj = 0;
        for (int k = 0; k < n; ++k) {
          g += std::conj(a[i][k]) * a[j][k];
          gii += std::norm(a[i][k]);
          gjj += std::norm(a[j][k]);
        }
        double r = std::abs(g);
        worst = std::max(worst, r);
        if (r <= tol) continue;
        // rotate the phase of column j so the Gram off-diagonal is real,
        // then apply a real Jacobi rotation
        Cplx phase = g / r;  // e^{i arg g}
        double tau = (gjj - gii) / (2 * r);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t);
        double s = c * t;
        for (int k = 0; k < n; ++k) {
          Cplx aj = a[j][k] * std::conj(phase);
          Cplx ai = a[i][k];
          a[i][k] = c * ai - s * aj;
          a[j][k] = s * ai + c * aj;
        }
        for (int k = 0; k < n; ++k) {
          Cplx vj = v[j][k] * std::conj(phase);
          Cplx vi = v[i][k];
          v[i][k] = c * vi - s * vj;
          v[j][k] = s * vi + c * vj;
        }
      }
    if (worst <= tol) break;
    if (sweep == kMaxSweeps - 1) throw NoConvergence(worst / (fro2 > 0 ? fro2 : 1.0));
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (const Cplx& z : a[j]) s += std::norm(z);
    norms[j] = std::sqrt(s);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return norms[x] > norms[y]; });

  SvdResult res;
  res.sigma.resize(n);
  res.u.assign(n, std::vector<Cplx>(n));
  res.v.assign(n, std::vector<Cplx>(n));
  const double tiny = 1e-300;
  for (int k = 0; k < n; ++k) {
    int j = idx[k];
    res.sigma[k] = norms[j];
    if (norms[j] > tiny) {
      for (int i = 0; i < n; ++i) res.u[k][i] = a[j][i] / norms[j];
    } else {
      res.u[k][k] = 1.0;  // zero singular value: any unit vector works
    }
    res.v[k] = v[j];
    // phase normalization: largest-magnitude entry of u becomes real >= 0
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(res.u[k][i]) > std::abs(res.u[k][imax])) imax = i;
    double mag = std::abs(res.u[k][imax]);
    if (mag > 0) {
      Cplx rot = std::conj(res.u[k][imax]) / mag;
      for (int i = 0; i < n; ++i) {
        res.u[k][i] *= rot;
        res.v[k][i] *= rot;
      }
      res.u[k][imax] = Cplx(std::abs(res.u[k][imax]), 0);
    }
  }
  return res;
}

}  // namespace pmusched
