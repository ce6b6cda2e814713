#pragma once

#include <cstdint>
#include <vector>

#include "pmusched/grid.hpp"
#include "pmusched/instance.hpp"
#include "pmusched/placement.hpp"
#include "pmusched/svd.hpp"

namespace pmusched {

// Principal submatrix of the admittance matrix on the PMU buses, in ascending
// bus-id order. The i-th row/column belongs to the i-th smallest PMU bus.
CMatrix pmu_submatrix(const AdmittanceMatrix& y, const PowerNetwork& net,
                      const Placement& placement);

// w_n = ceil(||sigma_n u_n|| / N) = ceil(sigma_n / N), indexed by rank.
std::vector<Cost> derive_weights(const SvdResult& svd, int n);

// Transmission ranks: walk the vectors sigma_n u_n in descending sigma order
// and give rank n to the PMU holding the largest-magnitude entry not ranked
// yet. Returns PMU bus ids, first transmitted first.
std::vector<int> derive_precedence(const SvdResult& svd, const Placement& placement);

// Full pipeline: placement -> submatrix -> SVD -> weights + precedence chain,
// with processing times drawn uniformly from [1, 50] per seed. Job k of the
// result is the rank-(k+1) PMU; labels carry bus ids.
Instance derive_instance(const PowerNetwork& net, std::uint64_t seed,
                         const PlacementLimits& limits = {});

// Same, reusing an already computed placement.
Instance derive_instance(const PowerNetwork& net, const Placement& placement,
                         std::uint64_t seed);

}  // namespace pmusched
