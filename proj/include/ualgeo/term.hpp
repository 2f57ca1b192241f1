#ifndef UALGEO_TERM_HPP_
#define UALGEO_TERM_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "limits.hpp"

namespace ualgeo {

  // Carrier elements are always 0..m-1.
  using Element = std::uint32_t;

  struct Symbol {
    std::string name;
    std::size_t arity = 0;

    bool operator==(Symbol const&) const = default;
  };

  // Names follow [a-zA-Z_+*^~-][a-zA-Z0-9_+*^~-]* and must not look like a
  // variable (x followed only by digits).
  bool is_valid_symbol_name(std::string_view name) noexcept;

  class Signature {
   public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    Signature& add(std::string name, std::size_t arity);

    std::size_t size() const noexcept {
      return _symbols.size();
    }

    Symbol const& operator[](std::size_t op) const {
      return _symbols.at(op);
    }

    std::vector<Symbol> const& symbols() const noexcept {
      return _symbols;
    }

    std::optional<std::size_t> find(std::string_view name) const noexcept;

    bool has_constants() const noexcept;

    bool operator==(Signature const&) const = default;

   private:
    std::vector<Symbol> _symbols;
  };

  // Immutable term tree. Copies share subterms.
  class Term {
   public:
    // 1-based variable index.
    static Term variable(std::size_t index);

    // Checked construction against a signature.
    static Term apply(Signature const& sig,
                      std::string_view symbol,
                      std::vector<Term> args);

    // Unchecked: the caller guarantees that op / name / arity agree.
    static Term apply_unchecked(std::size_t op,
                                std::string name,
                                std::vector<Term> args);

    bool is_variable() const noexcept {
      return _var != 0;
    }

    std::size_t variable_index() const noexcept {
      return _var;
    }

    std::size_t op() const noexcept {
      return _op;
    }

    std::string const& symbol() const noexcept {
      return *_name;
    }

    std::span<Term const> args() const noexcept {
      if (!_args) {
        return {};
      }
      return *_args;
    }

    // Variables and constants have depth 0.
    std::size_t depth() const noexcept {
      return _depth;
    }

    std::size_t max_variable() const noexcept {
      return _max_var;
    }

    bool operator==(Term const& that) const;

   private:
    Term() = default;

    std::size_t                                  _var     = 0;
    std::size_t                                  _op      = 0;
    std::shared_ptr<std::string const>           _name;
    std::shared_ptr<std::vector<Term> const>     _args;
    std::size_t                                  _depth   = 0;
    std::size_t                                  _max_var = 0;
  };

  class FiniteAlgebra;

  Term parse_term(std::string_view text, Signature const& sig, std::size_t n);

  std::string format_term(Term const& t);

  Element eval_term(Term const&              t,
                    FiniteAlgebra const&     algebra,
                    std::span<Element const> assignment);

  // All terms of depth <= max_depth over x1..xn, ordered by depth and then by
  // canonical string.
  std::vector<Term> enumerate_terms(Signature const& sig,
                                    std::size_t      n,
                                    std::size_t      max_depth,
                                    Limits const&    limits
                                    = Limits::defaults());

}  // namespace ualgeo

#endif  // UALGEO_TERM_HPP_
