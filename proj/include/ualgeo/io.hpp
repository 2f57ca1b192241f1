#ifndef UALGEO_IO_HPP_
#define UALGEO_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "congruence.hpp"
#include "filterpower.hpp"
#include "free_algebra.hpp"
#include "radical.hpp"
#include "superproduct.hpp"
#include "term.hpp"

namespace ualgeo {

  // Object keys keep insertion order so that reports are stable byte for
  // byte.
  using Json = nlohmann::ordered_json;

  // Reads a whole file; throws invalid_input if it cannot be opened.
  std::string read_file(std::filesystem::path const& path);

  // Algebra files:
  //   {"name": str, "signature": [{"op": str, "arity": int}], "size": int,
  //    "tables": {op: nested arrays of depth arity}}
  // with a bare integer for a nullary table. Unknown keys are rejected.
  AlgebraSpec   parse_algebra_spec(Json const& j);
  FiniteAlgebra parse_algebra(Json const& j);
  FiniteAlgebra parse_algebra(std::string const& text);
  FiniteAlgebra read_algebra(std::filesystem::path const& path);
  Json          algebra_to_json(FiniteAlgebra const& a);

  struct SystemFile {
    std::size_t                      vars = 0;
    std::vector<std::pair<Term, Term>> equations;
  };

  // System files: {"vars": n, "equations": [{"lhs": term, "rhs": term}]}.
  SystemFile parse_system(Json const& j, Signature const& sig);
  SystemFile read_system(std::filesystem::path const& path, Signature const& sig);

  // Sorted list of blocks of element indices.
  Json congruence_to_json(Congruence const& theta);
  // The same blocks rendered by witness terms.
  Json congruence_terms_to_json(FreeAlgebra const& f, Congruence const& theta);
  Json system_to_json(FreeAlgebra const& f, EquationSystem const& s);
  Json free_to_json(FreeAlgebra const& f);

  Json report_to_json(FreeAlgebra const& f, CheckReport const& report);
  Json report_to_json(AxiomReport const& report, FreeAlgebra const& f);
  Json report_to_json(GeomEqReport const& report, FiniteAlgebra const& a);

  // Throws syntax_error with the parser's message.
  Json parse_json(std::string const& text);

}  // namespace ualgeo

#endif  // UALGEO_IO_HPP_
