#include "ualgeo/term.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "ualgeo/algebra.hpp"
#include "ualgeo/error.hpp"

namespace ualgeo {

  namespace {
    bool is_symbol_start(char c) noexcept {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_'
             || c == '+' || c == '*' || c == '^' || c == '~' || c == '-';
    }

    bool is_symbol_char(char c) noexcept {
      return is_symbol_start(c) || std::isdigit(static_cast<unsigned char>(c));
    }

    bool looks_like_variable(std::string_view s) noexcept {
      return s.size() >= 2 && s[0] == 'x'
             && std::all_of(s.begin() + 1, s.end(), [](char c) {
                  return std::isdigit(static_cast<unsigned char>(c));
                });
    }
  }  // namespace

  bool is_valid_symbol_name(std::string_view name) noexcept {
    if (name.empty() || !is_symbol_start(name[0])) {
      return false;
    }
    if (!std::all_of(name.begin(), name.end(), is_symbol_char)) {
      return false;
    }
    return !looks_like_variable(name);
  }

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature::Signature(std::vector<Symbol> symbols) {
    for (auto& s : symbols) {
      add(std::move(s.name), s.arity);
    }
  }

  Signature& Signature::add(std::string name, std::size_t arity) {
    if (!is_valid_symbol_name(name)) {
      fail(ErrorKind::invalid_input, "invalid symbol name \"" + name + "\"");
    }
    if (find(name)) {
      fail(ErrorKind::invalid_input, "duplicate symbol name \"" + name + "\"");
    }
    _symbols.push_back({std::move(name), arity});
    return *this;
  }

  std::optional<std::size_t> Signature::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
      if (_symbols[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  bool Signature::has_constants() const noexcept {
    return std::any_of(_symbols.begin(), _symbols.end(), [](Symbol const& s) {
      return s.arity == 0;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Term
  ////////////////////////////////////////////////////////////////////////

  Term Term::variable(std::size_t index) {
    if (index == 0) {
      fail(ErrorKind::variable_out_of_range, "variable indices start at 1");
    }
    Term t;
    t._var     = index;
    t._max_var = index;
    return t;
  }

  Term Term::apply(Signature const&  sig,
                   std::string_view  symbol,
                   std::vector<Term> args) {
    auto op = sig.find(symbol);
    if (!op) {
      fail(ErrorKind::unknown_symbol, std::string(symbol));
    }
    if (sig[*op].arity != args.size()) {
      fail(ErrorKind::arity_mismatch,
           std::string(symbol) + " expects " + std::to_string(sig[*op].arity)
               + " arguments, got " + std::to_string(args.size()));
    }
    return apply_unchecked(*op, std::string(symbol), std::move(args));
  }

  Term Term::apply_unchecked(std::size_t       op,
                             std::string       name,
                             std::vector<Term> args) {
    Term t;
    t._op   = op;
    t._name = std::make_shared<std::string const>(std::move(name));
    for (auto const& a : args) {
      t._depth   = std::max(t._depth, a._depth + 1);
      t._max_var = std::max(t._max_var, a._max_var);
    }
    if (!args.empty()) {
      t._args = std::make_shared<std::vector<Term> const>(std::move(args));
    }
    return t;
  }

  bool Term::operator==(Term const& that) const {
    if (_var != that._var) {
      return false;
    }
    if (is_variable()) {
      return true;
    }
    if (*_name != *that._name) {
      return false;
    }
    auto lhs = args();
    auto rhs = that.args();
    return std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing and formatting
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Parser {
     public:
      Parser(std::string_view text, Signature const& sig, std::size_t n)
          : _text(text), _sig(sig), _n(n) {}

      Term parse() {
        Term t = term();
        skip_space();
        if (_pos != _text.size()) {
          error("unexpected trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void error(std::string const& what) const {
        fail(ErrorKind::syntax_error,
             what + " at offset " + std::to_string(_pos) + " in \""
                 + std::string(_text) + "\"");
      }

      void skip_space() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      std::string_view atom() {
        std::size_t start = _pos;
        while (_pos < _text.size() && _text[_pos] != '(' && _text[_pos] != ')'
               && !std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          if (static_cast<unsigned char>(_text[_pos]) > 0x7f) {
            error("non-ASCII character");
          }
          ++_pos;
        }
        if (start == _pos) {
          error("expected a term");
        }
        return _text.substr(start, _pos - start);
      }

      Term variable(std::string_view tok) {
        if (tok.size() > 2 && tok[1] == '0') {
          error("variable index with a leading zero");
        }
        if (tok.size() > 12) {
          fail(ErrorKind::variable_out_of_range, std::string(tok));
        }
        std::size_t index = std::stoull(std::string(tok.substr(1)));
        if (index == 0 || index > _n) {
          fail(ErrorKind::variable_out_of_range,
               std::string(tok) + " with " + std::to_string(_n)
                   + " variables");
        }
        return Term::variable(index);
      }

      Term term() {
        skip_space();
        if (_pos == _text.size()) {
          error("unexpected end of input");
        }
        if (_text[_pos] == ')') {
          error("unexpected ')'");
        }
        if (_text[_pos] != '(') {
          auto tok = atom();
          if (looks_like_variable(tok)) {
            return variable(tok);
          }
          // Bare constant sugar.
          return Term::apply(_sig, checked_symbol(tok), {});
        }
        ++_pos;
        skip_space();
        if (_pos < _text.size() && (_text[_pos] == '(' || _text[_pos] == ')')) {
          error("expected an operation symbol");
        }
        auto              sym = checked_symbol(atom());
        std::vector<Term> args;
        while (true) {
          skip_space();
          if (_pos == _text.size()) {
            error("unbalanced parentheses");
          }
          if (_text[_pos] == ')') {
            ++_pos;
            break;
          }
          args.push_back(term());
        }
        return Term::apply(_sig, sym, std::move(args));
      }

      std::string_view checked_symbol(std::string_view tok) {
        if (looks_like_variable(tok)) {
          error("variable in operator position");
        }
        if (!is_valid_symbol_name(tok)) {
          error("malformed symbol \"" + std::string(tok) + "\"");
        }
        return tok;
      }

      std::string_view _text;
      Signature const& _sig;
      std::size_t      _n;
      std::size_t      _pos = 0;
    };

    void format_into(Term const& t, std::string& out) {
      if (t.is_variable()) {
        out += 'x';
        out += std::to_string(t.variable_index());
        return;
      }
      out += '(';
      out += t.symbol();
      for (auto const& a : t.args()) {
        out += ' ';
        format_into(a, out);
      }
      out += ')';
    }
  }  // namespace

  Term parse_term(std::string_view text, Signature const& sig, std::size_t n) {
    return Parser(text, sig, n).parse();
  }

  std::string format_term(Term const& t) {
    std::string out;
    format_into(t, out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Element eval(Term const&              t,
                 FiniteAlgebra const&     a,
                 std::span<Element const> assignment) {
      if (t.is_variable()) {
        return assignment[t.variable_index() - 1];
      }
      auto const& sig = a.signature();
      std::size_t op  = t.op();
      if (op >= sig.size() || sig[op].name != t.symbol()) {
        auto found = sig.find(t.symbol());
        if (!found) {
          fail(ErrorKind::signature_mismatch,
               "symbol " + t.symbol() + " not in algebra " + a.name());
        }
        op = *found;
      }
      if (sig[op].arity != t.args().size()) {
        fail(ErrorKind::signature_mismatch,
             "arity of " + t.symbol() + " differs in algebra " + a.name());
      }
      std::vector<Element> args;
      args.reserve(t.args().size());
      for (auto const& s : t.args()) {
        args.push_back(eval(s, a, assignment));
      }
      return a.apply(op, args);
    }
  }  // namespace

  Element eval_term(Term const&              t,
                    FiniteAlgebra const&     algebra,
                    std::span<Element const> assignment) {
    if (t.max_variable() > assignment.size()) {
      fail(ErrorKind::variable_out_of_range,
           "assignment of length " + std::to_string(assignment.size())
               + " for a term using x" + std::to_string(t.max_variable()));
    }
    for (Element v : assignment) {
      if (v >= algebra.size()) {
        fail(ErrorKind::out_of_range, "assignment value outside the carrier");
      }
    }
    return eval(t, algebra, assignment);
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Saturating arithmetic for the count estimate.
    std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
      if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
      }
      return a * b;
    }

    std::uint64_t sat_pow(std::uint64_t a, std::size_t k) {
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < k; ++i) {
        r = sat_mul(r, a);
      }
      return r;
    }

    void sort_level(std::vector<Term>& level) {
      std::vector<std::pair<std::string, std::size_t>> keys;
      keys.reserve(level.size());
      for (std::size_t i = 0; i < level.size(); ++i) {
        keys.emplace_back(format_term(level[i]), i);
      }
      std::sort(keys.begin(), keys.end());
      std::vector<Term> sorted;
      sorted.reserve(level.size());
      for (auto const& k : keys) {
        sorted.push_back(level[k.second]);
      }
      level = std::move(sorted);
    }
  }  // namespace

  std::vector<Term> enumerate_terms(Signature const& sig,
                                    std::size_t      n,
                                    std::size_t      max_depth,
                                    Limits const&    limits) {
    std::vector<Term> result;
    std::vector<Term> level;
    for (std::size_t i = 1; i <= n; ++i) {
      level.push_back(Term::variable(i));
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig[op].arity == 0) {
        level.push_back(Term::apply_unchecked(op, sig[op].name, {}));
      }
    }
    if (level.size() > limits.terms) {
      fail(ErrorKind::limit_exceeded, "term enumeration");
    }
    sort_level(level);
    result = level;

    // `result` holds every term of depth <= d - 1, `fresh_begin` marks the
    // start of depth exactly d - 1.
    std::size_t fresh_begin = 0;
    for (std::size_t d = 1; d <= max_depth; ++d) {
      std::uint64_t older = fresh_begin;
      std::uint64_t total = result.size();
      std::uint64_t count = 0;
      for (auto const& s : sig.symbols()) {
        if (s.arity > 0) {
          count += sat_pow(total, s.arity) - sat_pow(older, s.arity);
        }
      }
      if (count == 0) {
        break;
      }
      if (count > limits.terms || result.size() + count > limits.terms) {
        fail(ErrorKind::limit_exceeded,
             "term enumeration at depth " + std::to_string(d) + " needs "
                 + std::to_string(count) + " more terms");
      }
      level.clear();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t k = sig[op].arity;
        if (k == 0) {
          continue;
        }
        std::vector<std::size_t> idx(k, 0);
        while (true) {
          bool uses_fresh = std::any_of(idx.begin(), idx.end(), [&](auto i) {
            return i >= fresh_begin;
          });
          if (uses_fresh) {
            std::vector<Term> args;
            args.reserve(k);
            for (auto i : idx) {
              args.push_back(result[i]);
            }
            level.push_back(
                Term::apply_unchecked(op, sig[op].name, std::move(args)));
          }
          std::size_t j = k;
          while (j > 0 && ++idx[j - 1] == total) {
            idx[j - 1] = 0;
            --j;
          }
          if (j == 0) {
            break;
          }
        }
      }
      sort_level(level);
      fresh_begin = result.size();
      result.insert(result.end(), level.begin(), level.end());
    }
    return result;
  }

}  // namespace ualgeo
