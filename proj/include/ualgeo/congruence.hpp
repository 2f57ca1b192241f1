#ifndef UALGEO_CONGRUENCE_HPP_
#define UALGEO_CONGRUENCE_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <type_traits>
#include <vector>

#include "algebra.hpp"
#include "limits.hpp"
#include "term.hpp"

namespace ualgeo {

  using Block = std::vector<Element>;

  // An equivalence relation on {0..m-1} in canonical form: rep[i] is the least
  // element of the class of i. Equality of relations is equality of arrays.
  // Whether it is compatible with some algebra is a separate question, see
  // is_congruence.
  class Congruence {
   public:
    Congruence() = default;

    static Congruence diagonal(std::size_t m);
    static Congruence full(std::size_t m);

    // Canonicalizes an arbitrary class labelling.
    template <typename T>
    static Congruence from_labels(std::span<T const> labels);

    // Throws bad_partition unless the blocks are a partition of {0..m-1}.
    static Congruence from_blocks(std::size_t m, std::span<Block const> blocks);

    std::size_t size() const noexcept {
      return _rep.size();
    }

    Element rep(Element i) const {
      return _rep[i];
    }

    std::vector<Element> const& reps() const noexcept {
      return _rep;
    }

    bool related(Element a, Element b) const {
      return _rep[a] == _rep[b];
    }

    std::size_t number_of_classes() const noexcept;

    // Number of ordered pairs in the relation.
    std::size_t number_of_pairs() const;

    // Blocks sorted by least element, each sorted ascending.
    std::vector<Block> blocks() const;

    // this ⊆ that as relations.
    bool subset_of(Congruence const& that) const;

    bool is_diagonal() const noexcept;
    bool is_full() const noexcept;

    auto operator<=>(Congruence const&) const = default;

   private:
    explicit Congruence(std::vector<Element> rep) : _rep(std::move(rep)) {}

    std::vector<Element> _rep;
  };

  template <typename T>
  Congruence Congruence::from_labels(std::span<T const> labels) {
    std::vector<Element> rep(labels.size());
    if constexpr (std::is_integral_v<T>) {
      // Small nonnegative labels are resolved through a direct lookup table.
      std::size_t const bound = 4 * labels.size() + 1;
      bool              small = true;
      for (auto x : labels) {
        if (std::cmp_less(x, 0) || std::cmp_greater_equal(x, bound)) {
          small = false;
          break;
        }
      }
      if (small) {
        std::vector<Element> first(bound, static_cast<Element>(-1));
        for (std::size_t i = 0; i < labels.size(); ++i) {
          auto& f = first[static_cast<std::size_t>(labels[i])];
          if (f == static_cast<Element>(-1)) {
            f = static_cast<Element>(i);
          }
          rep[i] = f;
        }
        return Congruence(std::move(rep));
      }
    }
    std::map<T, Element> first;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = first.emplace(labels[i], static_cast<Element>(i));
      rep[i]              = it->second;
    }
    return Congruence(std::move(rep));
  }

  // f(lhs) and f(rhs) lie in different classes although lhs and rhs are related
  // componentwise.
  struct CompatibilityWitness {
    std::size_t          op;
    std::vector<Element> lhs;
    std::vector<Element> rhs;
  };

  struct CongruenceCheck {
    bool                                ok = true;
    std::optional<CompatibilityWitness> witness;

    explicit operator bool() const noexcept {
      return ok;
    }
  };

  CongruenceCheck is_congruence(FiniteAlgebra const& a, Congruence const& theta);
  CongruenceCheck is_congruence(FiniteAlgebra const&   a,
                                std::span<Block const> partition);

  using ElementPair = std::pair<Element, Element>;

  // Least congruence containing `pairs` (union-find plus a compatibility
  // fixpoint).
  Congruence generated_congruence(FiniteAlgebra const&         a,
                                  std::span<ElementPair const> pairs);

  Congruence meet(Congruence const& x, Congruence const& y);
  Congruence join(FiniteAlgebra const& a,
                  Congruence const&    x,
                  Congruence const&    y);

  // Every congruence of a, ordered from the diagonal upwards (more classes
  // first, ties by representative array).
  std::vector<Congruence> all_congruences(FiniteAlgebra const& a,
                                          Limits const&        limits
                                          = Limits::defaults());

  // Every congruence containing `bottom`, in the same order.
  std::vector<Congruence> congruences_above(FiniteAlgebra const& a,
                                            Congruence const&    bottom,
                                            Limits const&        limits
                                            = Limits::defaults());

  // Ordering used for all congruence lists.
  bool lattice_order(Congruence const& x, Congruence const& y);

}  // namespace ualgeo

#endif  // UALGEO_CONGRUENCE_HPP_
