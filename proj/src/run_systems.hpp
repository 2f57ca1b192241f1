#ifndef UALGEO_SRC_RUN_SYSTEMS_HPP_
#define UALGEO_SRC_RUN_SYSTEMS_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ualgeo/parallel.hpp"
#include "ualgeo/superproduct.hpp"

namespace ualgeo::detail {

  struct Outcome {
    Congruence expected;
    Congruence got;
  };

  // Runs `check` over the systems of the policy in fixed-size chunks; a chunk
  // is evaluated in parallel and then folded in index order, so the reports
  // do not depend on the number of jobs. `check` returns one optional failure
  // per report.
  template <std::size_t K, typename Check>
  void run_systems(FreeAlgebra const&            f,
                   CheckOptions const&           options,
                   std::array<CheckReport*, K>   reports,
                   Check&&                       check) {
    SystemEnumerator const systems(f.size(), options.policy, options.limits);
    for (auto* r : reports) {
      r->policy = systems.kind();
      if (systems.kind() == PolicyKind::sample) {
        r->seed = systems.seed();
      }
    }
    using Slot                = std::array<std::optional<Outcome>, K>;
    std::uint64_t const chunk = 4096;
    for (std::uint64_t begin = 0; begin < systems.count(); begin += chunk) {
      std::uint64_t const end = std::min(systems.count(), begin + chunk);
      std::vector<Slot>   slots(end - begin);
      parallel_for(end - begin, options.jobs, [&](std::uint64_t i) {
        slots[i] = check(systems[begin + i]);
      });
      for (std::uint64_t i = 0; i < slots.size(); ++i) {
        for (std::size_t r = 0; r < K; ++r) {
          auto& report = *reports[r];
          ++report.systems_checked;
          if (!slots[i][r]) {
            continue;
          }
          ++report.failure_count;
          if (report.failures.size() < options.max_failures) {
            auto s = systems[begin + i];
            report.failures.push_back({begin + i,
                                       s,
                                       render_equations(f, s),
                                       std::move(slots[i][r]->expected),
                                       std::move(slots[i][r]->got)});
          }
        }
      }
    }
    for (auto* r : reports) {
      r->scope = "algebra " + f.base().name() + ", n = "
                 + std::to_string(f.vars()) + ", "
                 + std::string(to_string(r->policy)) + " policy, "
                 + std::to_string(r->systems_checked)
                 + " systems over a free algebra of size "
                 + std::to_string(f.size());
    }
  }

  template <typename Check>
  void run_systems(FreeAlgebra const&  f,
                   CheckOptions const& options,
                   CheckReport&        report,
                   Check&&             check) {
    run_systems<1>(f, options, {&report}, [&](EquationSystem const& s) {
      return std::array<std::optional<Outcome>, 1>{check(s)};
    });
  }

}  // namespace ualgeo::detail

#endif  // UALGEO_SRC_RUN_SYSTEMS_HPP_
