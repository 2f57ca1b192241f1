#ifndef UALGEO_FREE_ALGEBRA_HPP_
#define UALGEO_FREE_ALGEBRA_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "limits.hpp"
#include "term.hpp"

namespace ualgeo {

  // The free algebra of var(A) on x1..xn, held extensionally: element e is the
  // n-ary term function A^n -> A given by its value vector over all
  // assignments ("points", big-endian order). Every element carries the
  // least-depth witness term, ties broken by the canonical string in shortlex
  // order (length first).
  //
  // Elements are numbered by (witness depth, witness string).
  class FreeAlgebra {
   public:
    static FreeAlgebra build(FiniteAlgebra const& base,
                             std::size_t          n,
                             Limits const&        limits = Limits::defaults());

    FiniteAlgebra const& base() const noexcept {
      return _base;
    }

    // F itself as a finite algebra over element indices.
    FiniteAlgebra const& algebra() const noexcept {
      return _algebra;
    }

    Signature const& signature() const noexcept {
      return _base.signature();
    }

    std::size_t vars() const noexcept {
      return _n;
    }

    std::size_t size() const noexcept {
      return _witnesses.size();
    }

    // |A|^n
    std::size_t points() const noexcept {
      return _points;
    }

    std::span<Element const> values(std::size_t e) const {
      return std::span<Element const>(_values).subspan(e * _points, _points);
    }

    Element value(std::size_t e, std::size_t point) const {
      return _values[e * _points + point];
    }

    // Assignment (a1..an) of the given point index.
    std::vector<Element> assignment(std::size_t point) const {
      return decode_tuple(point, _base.size(), _n);
    }

    Term const& witness(std::size_t e) const {
      return _witnesses.at(e);
    }

    std::string const& witness_string(std::size_t e) const {
      return _witness_strings.at(e);
    }

    // Element index of x_i (1-based). Distinct variables may coincide, e.g.
    // over a trivial base algebra.
    Element generator(std::size_t i) const {
      return _generators.at(i - 1);
    }

    std::vector<Element> const& generators() const noexcept {
      return _generators;
    }

    std::optional<Element> find(std::span<Element const> vector) const;

    // Depth of the witness of e.
    std::size_t depth(std::size_t e) const {
      return _witnesses.at(e).depth();
    }

   private:
    FreeAlgebra(FiniteAlgebra base, FiniteAlgebra algebra)
        : _base(std::move(base)), _algebra(std::move(algebra)) {}

    FiniteAlgebra                               _base;
    FiniteAlgebra                               _algebra;
    std::size_t                                 _n      = 0;
    std::size_t                                 _points = 0;
    std::vector<Element>                        _values;
    std::vector<Term>                           _witnesses;
    std::vector<std::string>                    _witness_strings;
    std::vector<Element>                        _generators;
    std::map<std::vector<Element>, Element>     _index;
  };

  FreeAlgebra build_free(FiniteAlgebra const& base,
                         std::size_t          n,
                         Limits const&        limits = Limits::defaults());

  // The element the term function of t corresponds to.
  Element term_to_element(FreeAlgebra const& f, Term const& t);

  Term const& witness_term(FreeAlgebra const& f, std::size_t e);

}  // namespace ualgeo

#endif  // UALGEO_FREE_ALGEBRA_HPP_
