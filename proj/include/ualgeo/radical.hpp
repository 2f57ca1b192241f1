#ifndef UALGEO_RADICAL_HPP_
#define UALGEO_RADICAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "congruence.hpp"
#include "free_algebra.hpp"

namespace ualgeo {

  // A finite set of equations p ≈ q between free-algebra elements. Pairs are
  // stored with p < q, sorted and without duplicates; trivial equations p ≈ p
  // are dropped.
  class EquationSystem {
   public:
    EquationSystem() = default;
    explicit EquationSystem(std::span<ElementPair const> pairs);
    EquationSystem(std::initializer_list<ElementPair> pairs)
        : EquationSystem(std::span<ElementPair const>(pairs.begin(), pairs.size())) {}

    // Every nontrivial pair of a relation, read back as a system.
    static EquationSystem from_congruence(Congruence const& theta);

    static EquationSystem from_terms(
        FreeAlgebra const&                        f,
        std::span<std::pair<Term, Term> const>    equations);

    std::vector<ElementPair> const& pairs() const noexcept {
      return _pairs;
    }

    std::size_t size() const noexcept {
      return _pairs.size();
    }

    bool empty() const noexcept {
      return _pairs.empty();
    }

    bool contains(ElementPair p) const;

    // Subsystem selected by the bits of `mask` (bit i = pairs()[i]).
    EquationSystem subsystem(std::uint64_t mask) const;

    EquationSystem with(ElementPair p) const;

    auto operator<=>(EquationSystem const&) const = default;

   private:
    std::vector<ElementPair> _pairs;
  };

  // All pairs (p, q) with p < q over a free algebra of size m, ordered
  // lexicographically. Exhaustive system enumeration indexes this list.
  std::vector<ElementPair> off_diagonal_pairs(std::size_t m);

  // The term functions of F evaluated in an algebra B of the same signature.
  // For B = A these are F's own value vectors. For another B, each witness
  // term is evaluated in B and the result is checked to be a homomorphic image
  // of F, i.e. every n-variable identity of A also holds in B. Otherwise the
  // radicals of A and B do not live on the same F and construction throws
  // incomparable_free_algebra.
  class Interpretation {
   public:
    explicit Interpretation(FreeAlgebra const& f);
    Interpretation(FreeAlgebra const&   f,
                   FiniteAlgebra const& b,
                   Limits const&        limits = Limits::defaults());

    FreeAlgebra const& free() const noexcept {
      return *_free;
    }

    std::string const& algebra_name() const noexcept {
      return _name;
    }

    std::size_t carrier_size() const noexcept {
      return _carrier;
    }

    std::size_t points() const noexcept {
      return _points;
    }

    Element value(std::size_t e, std::size_t point) const {
      return _values[e * _points + point];
    }

   private:
    FreeAlgebra const*   _free;
    std::string          _name;
    std::size_t          _carrier = 0;
    std::size_t          _points  = 0;
    std::vector<Element> _values;
  };

  // Indices of the points (assignments) satisfying every equation of s.
  std::vector<std::size_t> satisfying_points(Interpretation const& in,
                                             EquationSystem const& s);

  std::vector<std::vector<Element>> satisfying_assignments(
      FreeAlgebra const&    f,
      EquationSystem const& s);

  // Pairs of elements that agree on every point of `points`.
  Congruence agreement_congruence(Interpretation const&    in,
                                  std::span<std::size_t const> points);

  // All consequences of s over the interpreting algebra. An unsatisfiable
  // system has the full relation as its radical.
  Congruence radical(Interpretation const& in, EquationSystem const& s);
  Congruence radical(FreeAlgebra const& f, EquationSystem const& s);

  struct QuasiIdentityResult {
    bool                                holds = true;
    std::optional<std::vector<Element>> counterexample;

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  // Truth of  ∀x̄ (body → head)  in the interpreting algebra; on failure, an
  // assignment satisfying the body but not the head.
  QuasiIdentityResult holds_quasi_identity(Interpretation const& in,
                                           EquationSystem const& body,
                                           ElementPair           head);

  // Precomputed agreement sets of every pair of elements of F over one
  // interpretation, as bitsets over the points. Answers radical and
  // quasi-identity queries with word operations instead of re-evaluating
  // every point; meant for repeated queries on a small F.
  class RadicalTable {
   public:
    explicit RadicalTable(Interpretation const& in,
                          Limits const&         limits = Limits::defaults());

    // Bitset of the points satisfying every equation of s.
    std::vector<std::uint64_t> solutions(EquationSystem const& s) const;

    Congruence radical(EquationSystem const& s) const;

    // Radical of an arbitrary set of points, given as a bitset.
    Congruence radical(std::span<std::uint64_t const> points) const;

    // Points where elements x < y agree.
    std::span<std::uint64_t const> agreement(Element x, Element y) const {
      return agree(x, y);
    }

    std::size_t words() const noexcept {
      return _words;
    }

    // True iff every point of `points` satisfies head.
    bool entails(std::span<std::uint64_t const> points, ElementPair head) const;

   private:
    std::span<std::uint64_t const> agree(Element x, Element y) const;

    std::size_t                _size;
    std::size_t                _words;
    std::size_t                _points = 0;
    std::vector<std::uint64_t> _bits;
  };

  // Consequences of s together with all identities of A: the congruence of F
  // generated by s.
  Congruence rad_var(FreeAlgebra const& f, EquationSystem const& s);

  // Least congruence above rad_var(s) whose quotient is separated by
  // homomorphisms into A, found by ascending search through the interval and
  // a generic homomorphism enumeration. Independent of radical().
  Congruence rad_pvar_oracle(FreeAlgebra const&    f,
                             EquationSystem const& s,
                             Limits const&         limits = Limits::defaults());

  // Whether distinct elements of `quotient` are always told apart by some
  // homomorphism into `target`.
  bool is_separated_by(FiniteAlgebra const& quotient,
                       FiniteAlgebra const& target,
                       Limits const&        limits = Limits::defaults());

}  // namespace ualgeo

#endif  // UALGEO_RADICAL_HPP_
