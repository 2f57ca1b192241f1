#ifndef UALGEO_SUPERPRODUCT_HPP_
#define UALGEO_SUPERPRODUCT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "congruence.hpp"
#include "free_algebra.hpp"
#include "radical.hpp"
#include "systems.hpp"

namespace ualgeo {

  // A finite set of congruences on one free algebra, deduplicated and kept in
  // lattice_order.
  class CongruenceFamily {
   public:
    CongruenceFamily() = default;
    explicit CongruenceFamily(std::vector<Congruence> members);

    std::vector<Congruence> const& members() const noexcept {
      return _members;
    }

    std::size_t size() const noexcept {
      return _members.size();
    }

    bool empty() const noexcept {
      return _members.empty();
    }

    bool contains(Congruence const& theta) const;

    bool operator==(CongruenceFamily const&) const = default;

   private:
    std::vector<Congruence> _members;
  };

  enum class SuperProductKind { join, rad_union, full, meet };

  // The built-in maps from families of congruences to congruences. join,
  // rad_union and full are super-product operations; meet is not and exists
  // so that the checkers have something to reject.
  class SuperProductOp {
   public:
    static SuperProductOp join() {
      return SuperProductOp(SuperProductKind::join);
    }

    static SuperProductOp full() {
      return SuperProductOp(SuperProductKind::full);
    }

    static SuperProductOp meet() {
      return SuperProductOp(SuperProductKind::meet);
    }

    // C(K) = radical over `context` of the union of K.
    static SuperProductOp rad_union(FiniteAlgebra context);

    // "join", "radunion", "full" or "meet"; radunion needs a context.
    static SuperProductOp parse(std::string_view              name,
                                std::optional<FiniteAlgebra> context);

    SuperProductKind kind() const noexcept {
      return _kind;
    }

    std::string name() const;

    std::optional<FiniteAlgebra> const& context() const noexcept {
      return _context;
    }

   private:
    explicit SuperProductOp(SuperProductKind kind) : _kind(kind) {}

    SuperProductKind             _kind;
    std::optional<FiniteAlgebra> _context;
  };

  enum class TMapMethod {
    automatic,       // solution-set closure, falling back to sampling if allowed
    subsets,         // literal enumeration of all 2^|S| subsystems, |S| <= 16
    solution_sets,   // closure of solution sets under intersection
    sampled,         // seeded random subsystems
  };

  struct TMapOptions {
    TMapMethod    method          = TMapMethod::automatic;
    bool          allow_sampling  = false;
    std::uint64_t seed            = 0;
    std::uint64_t samples         = 1000;
  };

  // { radical(S0) : S0 ⊆ S } for the interpreting algebra. Never empty: the
  // empty subsystem always contributes radical(∅).
  CongruenceFamily t_map(Interpretation const& in,
                         EquationSystem const& s,
                         TMapOptions const&    options = {},
                         Limits const&         limits  = Limits::defaults());

  CongruenceFamily t_map(FreeAlgebra const&    f,
                         EquationSystem const& s,
                         TMapOptions const&    options = {},
                         Limits const&         limits  = Limits::defaults());

  Congruence apply(SuperProductOp const&   op,
                   FreeAlgebra const&      f,
                   CongruenceFamily const& k);

  // Least upper bound in Con(F); throws empty_family on an empty family.
  Congruence family_join(FreeAlgebra const& f, CongruenceFamily const& k);

  // Seeded random nonempty families of congruences on f.
  std::vector<CongruenceFamily> random_families(FreeAlgebra const& f,
                                                std::uint64_t      count,
                                                std::uint64_t      seed,
                                                Limits const&      limits
                                                = Limits::defaults());

  struct AxiomWitness {
    std::uint64_t    family_index;
    CongruenceFamily family;
    Congruence       member;
    ElementPair      pair;  // in member, missing from C(family)
  };

  struct AxiomReport {
    std::string                 op;
    std::string                 algebra;
    std::size_t                 n = 0;
    std::uint64_t               families_checked = 0;
    std::uint64_t               failure_count    = 0;
    std::optional<AxiomWitness> witness;

    bool passed() const noexcept {
      return failure_count == 0;
    }
  };

  AxiomReport check_axiom(SuperProductOp const&              op,
                          FreeAlgebra const&                 f,
                          std::span<CongruenceFamily const>  families);

  struct SystemFailure {
    std::uint64_t                                    index;
    EquationSystem                                   system;
    std::vector<std::pair<std::string, std::string>> equations;
    Congruence                                       expected;
    Congruence                                       got;
  };

  struct CheckOptions {
    SystemPolicy policy;
    unsigned     jobs         = 1;
    bool         force        = false;
    std::size_t  max_failures = 10;
    Limits       limits;
  };

  // Shared envelope of every per-system verification report.
  struct CheckReport {
    std::string                check;
    std::string                op;
    std::string                algebra;
    std::size_t                n = 0;
    PolicyKind                 policy = PolicyKind::exhaustive;
    std::optional<std::uint64_t> seed;
    std::uint64_t              systems_checked = 0;
    std::uint64_t              failure_count   = 0;
    std::vector<SystemFailure> failures;
    std::string                hypothesis;  // theorem checks only
    std::string                verdict;
    std::string                scope;

    bool passed() const noexcept {
      return verdict == "pass";
    }
  };

  // C(T_B(S)) ⊆ Rad_B(S) for every system of the policy over F_var(B)(n).
  CheckReport check_hypothesis(SuperProductOp const& op,
                               FiniteAlgebra const&  b,
                               std::size_t           n,
                               CheckOptions const&   options = {});

  // C(T_A(S)) = Rad_A(S) for every system of the policy. Runs the hypothesis
  // check first and throws hypothesis_not_established if it fails, unless
  // options.force is set, in which case inequalities are reported with
  // verdict "expected-fail".
  CheckReport check_theorem(SuperProductOp const& op,
                            FiniteAlgebra const&  a,
                            std::size_t           n,
                            CheckOptions const&   options = {});

  std::vector<std::pair<std::string, std::string>> render_equations(
      FreeAlgebra const&    f,
      EquationSystem const& s);

}  // namespace ualgeo

#endif  // UALGEO_SUPERPRODUCT_HPP_
