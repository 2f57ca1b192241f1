#ifndef UALGEO_SUITE_HPP_
#define UALGEO_SUITE_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "io.hpp"
#include "limits.hpp"
#include "systems.hpp"

namespace ualgeo {

  // Every *.json algebra in `dir`, ordered by file name.
  std::vector<FiniteAlgebra> load_corpus(std::filesystem::path const& dir);

  struct SuiteOptions {
    std::filesystem::path corpus;
    SystemPolicy          policy;
    unsigned              jobs     = 1;
    std::uint64_t         families = 1000;
    Limits                limits;
  };

  struct SuiteResult {
    Json report;
    bool passed = false;
  };

  // Runs the verification battery over the corpus: free algebra sizes,
  // closure laws, the union identity, the super-product axiom and theorem
  // checks with negative controls, filter powers with geometric equivalence
  // and quasi-identity transfer, the pvar comparison, and the negative
  // discrimination cases. The report contains no timings and does not depend
  // on options.jobs.
  SuiteResult run_suite(SuiteOptions const& options);

}  // namespace ualgeo

#endif  // UALGEO_SUITE_HPP_
