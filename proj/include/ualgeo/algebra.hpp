#ifndef UALGEO_ALGEBRA_HPP_
#define UALGEO_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "limits.hpp"
#include "term.hpp"

namespace ualgeo {

  class Congruence;

  // Unvalidated algebra description, as read from a file. Table entries are
  // wide signed integers so that out-of-range values survive until validation.
  struct AlgebraSpec {
    std::string                                   name;
    Signature                                     signature;
    std::int64_t                                  size = 0;
    std::map<std::string, std::vector<std::int64_t>> tables;
  };

  // Returns the first violated invariant, or nothing when it is valid.
  std::optional<Error> validate(AlgebraSpec const& spec);

  // Tuples over {0..m-1} are encoded big-endian: (a1, ..., ak) has index
  // a1*m^(k-1) + ... + ak. Operation tables, direct powers, and assignment
  // spaces all share this convention.
  std::size_t encode_tuple(std::span<Element const> tuple, std::size_t radix);
  std::vector<Element> decode_tuple(std::size_t index,
                                    std::size_t radix,
                                    std::size_t length);
  // radix^exponent, or nothing on overflow past `cap`.
  std::optional<std::size_t> checked_power(std::size_t radix,
                                           std::size_t exponent,
                                           std::size_t cap);

  class FiniteAlgebra {
   public:
    // Tables are given in signature order, each flattened big-endian.
    FiniteAlgebra(std::string                      name,
                  Signature                        sig,
                  std::size_t                      size,
                  std::vector<std::vector<Element>> tables);

    static FiniteAlgebra from_spec(AlgebraSpec const& spec);

    std::string const& name() const noexcept {
      return _name;
    }

    Signature const& signature() const noexcept {
      return _sig;
    }

    std::size_t size() const noexcept {
      return _size;
    }

    std::span<Element const> table(std::size_t op) const {
      return _tables.at(op);
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      return _tables[op][encode_tuple(args, _size)];
    }

    Element apply(std::size_t op, std::initializer_list<Element> args) const {
      return apply(op, std::span<Element const>(args.begin(), args.size()));
    }

    AlgebraSpec to_spec() const;

    FiniteAlgebra renamed(std::string name) const;

    bool operator==(FiniteAlgebra const& that) const {
      return _sig == that._sig && _size == that._size
             && _tables == that._tables;
    }

   private:
    std::string                       _name;
    Signature                         _sig;
    std::size_t                       _size;
    std::vector<std::vector<Element>> _tables;
  };

  FiniteAlgebra trivial_algebra(Signature const& sig,
                                std::string      name = "trivial");

  struct Homomorphism {
    std::vector<Element> map;

    auto operator<=>(Homomorphism const&) const = default;
  };

  bool is_homomorphism(FiniteAlgebra const&     source,
                       FiniteAlgebra const&     target,
                       std::span<Element const> map);

  FiniteAlgebra direct_power(FiniteAlgebra const& a,
                             std::size_t          k,
                             Limits const&        limits = Limits::defaults());

  FiniteAlgebra direct_product(FiniteAlgebra const& a,
                               FiniteAlgebra const& b,
                               Limits const& limits = Limits::defaults());

  // Least subuniverse containing `seed` and every constant, sorted ascending.
  std::vector<Element> subuniverse_generated(FiniteAlgebra const&     a,
                                             std::span<Element const> seed);

  // Deterministic greedy generating set (constants are implicit).
  std::vector<Element> generating_set(FiniteAlgebra const& a);

  // Every homomorphism a -> b, sorted by map array.
  std::vector<Homomorphism> enumerate_homomorphisms(
      FiniteAlgebra const& a,
      FiniteAlgebra const& b,
      Limits const&        limits = Limits::defaults());

  struct Quotient {
    FiniteAlgebra algebra;
    Homomorphism  projection;
  };

  // Classes are numbered by ascending minimal representative.
  Quotient quotient(FiniteAlgebra const& a, Congruence const& theta);

  // Lexicographically least isomorphism, if any.
  std::optional<Homomorphism> find_isomorphism(
      FiniteAlgebra const& a,
      FiniteAlgebra const& b,
      Limits const&        limits = Limits::defaults());

}  // namespace ualgeo

#endif  // UALGEO_ALGEBRA_HPP_
