#ifndef UALGEO_FILTERPOWER_HPP_
#define UALGEO_FILTERPOWER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "congruence.hpp"
#include "free_algebra.hpp"
#include "limits.hpp"
#include "radical.hpp"
#include "superproduct.hpp"

namespace ualgeo {

  // A proper filter on I = {0, ..., index_size - 1}. On a finite index set
  // every proper filter is principal, so it is stored by its core J: the
  // members are the subsets of I containing J.
  class Filter {
   public:
    // Indices in `core` are 0-based; throws improper_filter if it is empty
    // and out_of_range if an index is not in I.
    static Filter principal(std::size_t index_size, std::vector<std::size_t> core);

    // Members are bitmasks over I (bit i is index i), index_size <= 16. The
    // set must be nonempty, upward closed, closed under intersection and
    // must not contain the empty set.
    static Filter from_members(std::size_t                     index_size,
                               std::span<std::uint32_t const> members);

    std::size_t index_size() const noexcept {
      return _index_size;
    }

    std::vector<std::size_t> const& core() const noexcept {
      return _core;
    }

    std::uint32_t core_mask() const noexcept;

    bool contains(std::uint32_t mask) const noexcept {
      return (mask & core_mask()) == core_mask();
    }

    // All members as ascending bitmasks; index_size <= 16.
    std::vector<std::uint32_t> members() const;

    bool operator==(Filter const&) const = default;

   private:
    Filter(std::size_t index_size, std::vector<std::size_t> core)
        : _index_size(index_size), _core(std::move(core)) {}

    std::size_t              _index_size;
    std::vector<std::size_t> _core;
  };

  // Tuples of A^I related iff they agree on a member of the filter, that is,
  // on the core.
  Congruence filter_congruence(FiniteAlgebra const& a,
                               Filter const&        filter,
                               Limits const&        limits = Limits::defaults());

  struct FilterPower {
    FiniteAlgebra algebra;          // A^I / filter, named "A^I/J"
    FiniteAlgebra restricted;       // A^|J|
    Homomorphism  restriction;      // algebra -> restricted, a verified bijection
  };

  // Throws std::logic_error if the restriction map fails its certificate.
  FilterPower filter_power(FiniteAlgebra const& a,
                           Filter const&        filter,
                           Limits const&        limits = Limits::defaults());

  struct GeomEqFailure {
    std::size_t   n;
    SystemFailure failure;  // expected = radical over A, got = radical over B
  };

  struct GeomEqReport {
    std::string                  algebra;
    std::string                  other;
    std::vector<std::size_t>     n_values;
    PolicyKind                   policy = PolicyKind::exhaustive;
    std::optional<std::uint64_t> seed;
    std::uint64_t                systems_checked = 0;
    std::uint64_t                failure_count   = 0;
    std::vector<GeomEqFailure>   failures;
    std::string                  verdict;  // equivalent, not-equivalent, incomparable
    std::string                  reason;   // for incomparable
    std::string                  scope;

    bool passed() const noexcept {
      return verdict == "equivalent";
    }

    GeomEqFailure const* witness() const noexcept {
      return failures.empty() ? nullptr : &failures.front();
    }
  };

  // Compares radical over A and radical over B on F_var(A)(n) for each n and
  // every system of the policy. B is read through the witness terms of F; if
  // B does not satisfy the identities of A in n variables the verdict is
  // "incomparable".
  GeomEqReport geometric_equivalence(FiniteAlgebra const&       a,
                                     FiniteAlgebra const&       b,
                                     std::span<std::size_t const> n_values,
                                     CheckOptions const&        options = {});

  // F / radical(s).
  FiniteAlgebra coordinate_algebra(FreeAlgebra const& f, EquationSystem const& s);

  struct CoordinateEmbedding {
    FiniteAlgebra                     coordinate;
    std::size_t                       m = 0;  // satisfying assignments
    std::vector<std::vector<Element>> assignments;
    // images[c] is the value vector of class c across the assignments.
    std::vector<std::vector<Element>> images;
    bool                              injective      = false;
    bool                              homomorphism   = false;

    bool degenerate() const noexcept {
      return m == 0;
    }

    bool verified() const noexcept {
      return injective && homomorphism;
    }
  };

  // The map from F/radical(s) into A^m sending a class to its values at the
  // m satisfying assignments, with both properties checked componentwise.
  // For m = 0 the coordinate algebra is trivial and the embedding into A^0
  // is reported as verified.
  CoordinateEmbedding coordinate_embedding(FreeAlgebra const&    f,
                                           EquationSystem const& s);

  // Per system: rad_var(S) ⊆ rad_pvar_oracle(S) = radical(S) and the
  // coordinate embedding verifies. expected = radical, got = pvar oracle.
  CheckReport check_lemma(FiniteAlgebra const& a,
                          std::size_t          n,
                          CheckOptions const&  options = {});

}  // namespace ualgeo

#endif  // UALGEO_FILTERPOWER_HPP_
