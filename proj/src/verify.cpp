#include "pmusched/verify.hpp"

#include <fstream>

#include "pmusched/instance_io.hpp"
#include "pmusched/rng.hpp"

namespace pmusched {

VerifyOutcome verify_sweep(const VerifyParams& params) {
  VerifyOutcome out;
  Rng rng(params.seed);
  for (int t = 0; t < params.trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(2, params.n_max));
    double density =
        params.densities[rng.uniform_int(0, static_cast<std::int64_t>(params.densities.size()) - 1)];
    std::uint64_t inst_seed = rng.next();
    Instance inst = random_instance(inst_seed, n, density, params.weight_max);
    ++out.trials_run;

    std::string failure;
    try {
      Schedule oracle = brute_force_optimal(inst);

      SolveLimits limits;
      limits.validate = true;
      SolveResult res = solve(inst, limits);
      out.stats.constraints_applied += res.stats.constraints_applied;
      out.stats.invariant_checks += res.stats.invariant_checks;
      out.stats.strengthenings += res.stats.strengthenings;

      if (!res.proven_optimal) failure = "solver did not prove optimality";
      else if (res.best_objective != oracle.objective)
        failure = "solver objective " + std::to_string(res.best_objective) +
                  " != oracle " + std::to_string(oracle.objective);
      else if (!is_feasible(inst, res.best_schedule.order))
        failure = "solver schedule violates precedence";
      else if (res.global_lb > res.best_objective)
        failure = "global lb above the incumbent";
      else {
        // LB/UB sandwich on a standalone bound computation
        PrecedenceRelation prec(inst.n, inst.prec);
        LagrangianOptions lopts;
        lopts.validate = true;
        Schedule ref = improve_schedule(inst, prec, initial_heuristic(inst, prec, 1));
        BoundResult bound = compute_bound(inst, prec, ref.order, lopts);
        out.stats.invariant_checks += bound.stats.invariant_checks;
        if (bound.state.lb > oracle.objective)
          failure = "root lb " + std::to_string(bound.state.lb) + " above optimum " +
                    std::to_string(oracle.objective);
        else if (bound.extraction.complete() && bound.upper < oracle.objective)
          failure = "upper bound below optimum";
      }
    } catch (const Error& e) {
      failure = std::string("exception: ") + e.what();
    }

    if (!failure.empty()) {
      ++out.failures;
      if (out.first_failure.empty()) {
        out.first_failure = "trial " + std::to_string(t) + " (seed " +
                            std::to_string(inst_seed) + "): " + failure;
        std::ofstream rep(params.reproducer_path);
        rep << instance_to_json(inst);
      }
      if (params.log) *params.log << "FAIL trial " << t << ": " << failure << "\n";
    }
  }
  if (params.log) {
    *params.log << (out.ok() ? "PASS" : "FAIL") << ": " << out.trials_run - out.failures << "/"
                << out.trials_run << " trials, " << out.stats.invariant_checks
                << " invariant checks, " << out.stats.constraints_applied
                << " constraints applied\n";
  }
  return out;
}

}  // namespace pmusched
