#include "pmusched/derive.hpp"

#include <algorithm>
#include <cmath>

#include "pmusched/rng.hpp"

namespace pmusched {

CMatrix pmu_submatrix(const AdmittanceMatrix& y, const PowerNetwork& net,
                      const Placement& placement) {
  std::vector<int> ids = placement.pmu_buses;
  std::sort(ids.begin(), ids.end());
  const int n = static_cast<int>(ids.size());
  CMatrix sub(n, n);
  for (int i = 0; i < n; ++i) {
    int bi = net.bus_index(ids[i]);
    if (bi < 0) throw Error("placement bus " + std::to_string(ids[i]) + " not in network");
    for (int j = 0; j < n; ++j) sub.at(i, j) = y.at(bi, net.bus_index(ids[j]));
  }
  return sub;
}

std::vector<Cost> derive_weights(const SvdResult& svd, int n) {
  std::vector<Cost> w(svd.sigma.size());
  for (std::size_t k = 0; k < svd.sigma.size(); ++k)
    w[k] = static_cast<Cost>(std::ceil(svd.sigma[k] / n));
  return w;
}

std::vector<int> derive_precedence(const SvdResult& svd, const Placement& placement) {
  std::vector<int> ids = placement.pmu_buses;
  std::sort(ids.begin(), ids.end());
  const int n = static_cast<int>(ids.size());
  std::vector<std::uint8_t> ranked(n, 0);
  std::vector<int> chain;
  chain.reserve(n);
  for (int k = 0; k < n; ++k) {
    // entries of sigma_k u_k by descending magnitude, ties to the smaller bus
    int pick = -1;
    double pick_mag = -1;
    for (int i = 0; i < n; ++i) {
      if (ranked[i]) continue;
      double mag = svd.sigma[k] * std::abs(svd.u[k][i]);
      if (mag > pick_mag) {
        pick = i;
        pick_mag = mag;
      }
    }
    ranked[pick] = 1;
    chain.push_back(ids[pick]);
  }
  return chain;
}

Instance derive_instance(const PowerNetwork& net, const Placement& placement,
                         std::uint64_t seed) {
  AdmittanceMatrix y = build_admittance(net);
  CMatrix sub = pmu_submatrix(y, net, placement);
  SvdResult s = svd(sub);
  const int n = sub.rows();
  std::vector<Cost> w = derive_weights(s, n);
  std::vector<int> chain = derive_precedence(s, placement);

  Instance inst;
  inst.n = n;
  inst.w = w;  // rank order: job k is the PMU ranked k+1
  inst.p.resize(n);
  Rng rng(seed);
  for (int k = 0; k < n; ++k) inst.p[k] = rng.uniform_int(1, 50);
  for (int k = 0; k + 1 < n; ++k) inst.prec.emplace_back(k, k + 1);
  inst.labels.reserve(n);
  for (int id : chain) inst.labels.push_back(std::to_string(id));
  return inst;
}

Instance derive_instance(const PowerNetwork& net, std::uint64_t seed,
                         const PlacementLimits& limits) {
  return derive_instance(net, place_pmus(net, limits), seed);
}

}  // namespace pmusched
