#include "ualgeo/radical.hpp"

#include <algorithm>

#include "ualgeo/error.hpp"

namespace ualgeo {

  ////////////////////////////////////////////////////////////////////////
  // EquationSystem
  ////////////////////////////////////////////////////////////////////////

  EquationSystem::EquationSystem(std::span<ElementPair const> pairs) {
    for (auto [p, q] : pairs) {
      if (p == q) {
        continue;
      }
      _pairs.emplace_back(std::min(p, q), std::max(p, q));
    }
    std::sort(_pairs.begin(), _pairs.end());
    _pairs.erase(std::unique(_pairs.begin(), _pairs.end()), _pairs.end());
  }

  EquationSystem EquationSystem::from_congruence(Congruence const& theta) {
    std::vector<ElementPair> pairs;
    for (auto const& block : theta.blocks()) {
      for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = i + 1; j < block.size(); ++j) {
          pairs.emplace_back(block[i], block[j]);
        }
      }
    }
    return EquationSystem(pairs);
  }

  EquationSystem EquationSystem::from_terms(
      FreeAlgebra const&                     f,
      std::span<std::pair<Term, Term> const> equations) {
    std::vector<ElementPair> pairs;
    for (auto const& [lhs, rhs] : equations) {
      pairs.emplace_back(term_to_element(f, lhs), term_to_element(f, rhs));
    }
    return EquationSystem(pairs);
  }

  bool EquationSystem::contains(ElementPair p) const {
    if (p.first > p.second) {
      std::swap(p.first, p.second);
    }
    return std::binary_search(_pairs.begin(), _pairs.end(), p);
  }

  EquationSystem EquationSystem::subsystem(std::uint64_t mask) const {
    EquationSystem result;
    for (std::size_t i = 0; i < _pairs.size() && i < 64; ++i) {
      if (mask >> i & 1) {
        result._pairs.push_back(_pairs[i]);
      }
    }
    return result;
  }

  EquationSystem EquationSystem::with(ElementPair p) const {
    auto pairs = _pairs;
    pairs.push_back(p);
    return EquationSystem(pairs);
  }

  std::vector<ElementPair> off_diagonal_pairs(std::size_t m) {
    std::vector<ElementPair> pairs;
    for (Element p = 0; p < m; ++p) {
      for (Element q = p + 1; q < m; ++q) {
        pairs.emplace_back(p, q);
      }
    }
    return pairs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Interpretation
  ////////////////////////////////////////////////////////////////////////

  Interpretation::Interpretation(FreeAlgebra const& f)
      : _free(&f),
        _name(f.base().name()),
        _carrier(f.base().size()),
        _points(f.points()) {
    _values.reserve(f.size() * f.points());
    for (std::size_t e = 0; e < f.size(); ++e) {
      auto v = f.values(e);
      _values.insert(_values.end(), v.begin(), v.end());
    }
  }

  Interpretation::Interpretation(FreeAlgebra const&   f,
                                 FiniteAlgebra const& b,
                                 Limits const&        limits)
      : _free(&f), _name(b.name()), _carrier(b.size()) {
    if (b.signature() != f.signature()) {
      fail(ErrorKind::signature_mismatch,
           b.name() + " and " + f.base().name() + " have different signatures");
    }
    auto points = checked_power(b.size(), f.vars(), limits.free_points);
    if (!points) {
      fail(ErrorKind::limit_exceeded,
           "|B|^n for " + b.name() + " exceeds the point cap");
    }
    _points = *points;
    _values.resize(f.size() * _points);
    for (std::size_t p = 0; p < _points; ++p) {
      auto assignment = decode_tuple(p, b.size(), f.vars());
      for (std::size_t e = 0; e < f.size(); ++e) {
        _values[e * _points + p] = eval_term(f.witness(e), b, assignment);
      }
    }
    // The witness evaluation must be a homomorphism from F, otherwise terms
    // that are equal in F could differ in B.
    auto const& fa  = f.algebra();
    auto const& sig = f.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t const    k = sig[op].arity;
      std::vector<Element> t(k, 0);
      std::vector<Element> args(k);
      while (true) {
        Element const image = fa.apply(op, t);
        for (std::size_t p = 0; p < _points; ++p) {
          for (std::size_t i = 0; i < k; ++i) {
            args[i] = value(t[i], p);
          }
          if (b.apply(op, args) != value(image, p)) {
            fail(ErrorKind::incomparable_free_algebra,
                 b.name() + " violates an identity of " + f.base().name()
                     + " in " + std::to_string(f.vars()) + " variables");
          }
        }
        std::size_t j = k;
        while (j > 0 && ++t[j - 1] == f.size()) {
          t[j - 1] = 0;
          --j;
        }
        if (j == 0) {
          break;
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Radicals
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_indices(FreeAlgebra const& f, EquationSystem const& s) {
      for (auto [p, q] : s.pairs()) {
        if (q >= f.size()) {
          fail(ErrorKind::index_out_of_range,
               "equation refers to element " + std::to_string(q)
                   + " of a free algebra of size " + std::to_string(f.size()));
        }
      }
    }
  }  // namespace

  std::vector<std::size_t> satisfying_points(Interpretation const& in,
                                             EquationSystem const& s) {
    check_indices(in.free(), s);
    std::vector<std::size_t> result;
    for (std::size_t p = 0; p < in.points(); ++p) {
      bool ok = std::all_of(s.pairs().begin(), s.pairs().end(), [&](auto e) {
        return in.value(e.first, p) == in.value(e.second, p);
      });
      if (ok) {
        result.push_back(p);
      }
    }
    return result;
  }

  std::vector<std::vector<Element>> satisfying_assignments(
      FreeAlgebra const&    f,
      EquationSystem const& s) {
    std::vector<std::vector<Element>> result;
    for (auto p : satisfying_points(Interpretation(f), s)) {
      result.push_back(f.assignment(p));
    }
    return result;
  }

  Congruence agreement_congruence(Interpretation const&        in,
                                  std::span<std::size_t const> points) {
    std::size_t const m = in.free().size();
    if (m <= 64) {
      // Compare each element with the least element of every earlier class.
      std::vector<Element> rep(m);
      std::vector<Element> minima;
      for (Element y = 0; y < m; ++y) {
        rep[y] = y;
        for (auto x : minima) {
          bool agree = true;
          for (auto p : points) {
            if (in.value(x, p) != in.value(y, p)) {
              agree = false;
              break;
            }
          }
          if (agree) {
            rep[y] = x;
            break;
          }
        }
        if (rep[y] == y) {
          minima.push_back(y);
        }
      }
      return Congruence::from_labels(std::span<Element const>(rep));
    }
    std::vector<std::vector<Element>> labels(m);
    for (std::size_t e = 0; e < m; ++e) {
      labels[e].reserve(points.size());
      for (auto p : points) {
        labels[e].push_back(in.value(e, p));
      }
    }
    return Congruence::from_labels(
        std::span<std::vector<Element> const>(labels));
  }

  Congruence radical(Interpretation const& in, EquationSystem const& s) {
    auto points = satisfying_points(in, s);
    return agreement_congruence(in, points);
  }

  Congruence radical(FreeAlgebra const& f, EquationSystem const& s) {
    return radical(Interpretation(f), s);
  }

  QuasiIdentityResult holds_quasi_identity(Interpretation const& in,
                                           EquationSystem const& body,
                                           ElementPair           head) {
    auto const& f = in.free();
    if (head.first >= f.size() || head.second >= f.size()) {
      fail(ErrorKind::index_out_of_range, "head of the quasi-identity");
    }
    for (auto p : satisfying_points(in, body)) {
      if (in.value(head.first, p) != in.value(head.second, p)) {
        return {false, decode_tuple(p, in.carrier_size(), f.vars())};
      }
    }
    return {};
  }

  RadicalTable::RadicalTable(Interpretation const& in, Limits const& limits)
      : _size(in.free().size()), _words((in.points() + 63) / 64) {
    std::size_t const pairs = _size * (_size - 1) / 2;
    if (_size > limits.free_elements || pairs * _words > (std::size_t(1) << 24)) {
      fail(ErrorKind::limit_exceeded,
           "agreement table for a free algebra of size " + std::to_string(_size)
               + " over " + std::to_string(in.points()) + " points");
    }
    _bits.assign(pairs * _words, 0);
    std::uint64_t* out = _bits.data();
    for (Element x = 0; x < _size; ++x) {
      for (Element y = x + 1; y < _size; ++y) {
        for (std::size_t p = 0; p < in.points(); ++p) {
          if (in.value(x, p) == in.value(y, p)) {
            out[p / 64] |= std::uint64_t(1) << (p % 64);
          }
        }
        out += _words;
      }
    }
    _points = in.points();
  }

  std::span<std::uint64_t const> RadicalTable::agree(Element x, Element y) const {
    // Row-major upper triangle: pairs (x, y) with x < y.
    std::size_t const index = x * (2 * _size - x - 1) / 2 + (y - x - 1);
    return {_bits.data() + index * _words, _words};
  }

  std::vector<std::uint64_t> RadicalTable::solutions(EquationSystem const& s) const {
    std::vector<std::uint64_t> out(_words, ~std::uint64_t(0));
    if (_points % 64 != 0) {
      out.back() = (std::uint64_t(1) << (_points % 64)) - 1;
    }
    for (auto [x, y] : s.pairs()) {
      if (y >= _size) {
        fail(ErrorKind::index_out_of_range,
             "equation (" + std::to_string(x) + ", " + std::to_string(y)
                 + ") refers to a missing element");
      }
      auto a = agree(x, y);
      for (std::size_t w = 0; w < _words; ++w) {
        out[w] &= a[w];
      }
    }
    return out;
  }

  bool RadicalTable::entails(std::span<std::uint64_t const> points,
                             ElementPair                    head) const {
    auto [x, y] = head;
    if (x >= _size || y >= _size) {
      fail(ErrorKind::index_out_of_range, "head of the quasi-identity");
    }
    if (x == y) {
      return true;
    }
    auto a = agree(std::min(x, y), std::max(x, y));
    for (std::size_t w = 0; w < _words; ++w) {
      if (points[w] & ~a[w]) {
        return false;
      }
    }
    return true;
  }

  Congruence RadicalTable::radical(EquationSystem const& s) const {
    return radical(solutions(s));
  }

  Congruence RadicalTable::radical(std::span<std::uint64_t const> sol) const {
    std::vector<Element> rep(_size);
    for (Element y = 0; y < _size; ++y) {
      rep[y] = y;
      for (Element x = 0; x < y; ++x) {
        if (rep[x] == x && entails(sol, {x, y})) {
          rep[y] = x;
          break;
        }
      }
    }
    return Congruence::from_labels(std::span<Element const>(rep));
  }

  Congruence rad_var(FreeAlgebra const& f, EquationSystem const& s) {
    check_indices(f, s);
    return generated_congruence(f.algebra(), s.pairs());
  }

  bool is_separated_by(FiniteAlgebra const& quotient,
                       FiniteAlgebra const& target,
                       Limits const&        limits) {
    auto homs = enumerate_homomorphisms(quotient, target, limits);
    std::vector<std::vector<Element>> labels(quotient.size());
    for (auto const& h : homs) {
      for (std::size_t e = 0; e < quotient.size(); ++e) {
        labels[e].push_back(h.map[e]);
      }
    }
    return Congruence::from_labels(std::span<std::vector<Element> const>(labels))
        .is_diagonal();
  }

  Congruence rad_pvar_oracle(FreeAlgebra const&    f,
                             EquationSystem const& s,
                             Limits const&         limits) {
    auto bottom     = rad_var(f, s);
    auto candidates = congruences_above(f.algebra(), bottom, limits);
    std::stable_sort(candidates.begin(),
                     candidates.end(),
                     [](Congruence const& x, Congruence const& y) {
                       return x.number_of_pairs() < y.number_of_pairs();
                     });
    // The separable congruences are closed under intersection, so the first
    // one by relation size is the least one.
    for (auto const& theta : candidates) {
      if (is_separated_by(quotient(f.algebra(), theta).algebra, f.base(), limits)) {
        return theta;
      }
    }
    // Unreachable: the full relation is always separable.
    return Congruence::full(f.size());
  }

}  // namespace ualgeo
