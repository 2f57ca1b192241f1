// Shared helpers for the unit tests: corpus access and brute-force oracles
// that share no code with the library routines they check.

#ifndef UALGEO_TESTS_FIXTURES_HPP_
#define UALGEO_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ualgeo/algebra.hpp"
#include "ualgeo/congruence.hpp"
#include "ualgeo/free_algebra.hpp"
#include "ualgeo/io.hpp"
#include "ualgeo/radical.hpp"
#include "ualgeo/term.hpp"

#ifndef UALGEO_CORPUS_DIR
#error "UALGEO_CORPUS_DIR must point at data/corpus"
#endif

namespace ualgeo::test {

  inline FiniteAlgebra corpus(std::string const& file) {
    return read_algebra(std::string(UALGEO_CORPUS_DIR) + "/" + file + ".json");
  }

  inline std::vector<std::string> corpus_files() {
    return {"trivial", "s2", "chain3", "z2group", "pointed_z2", "z3group", "groupoid3"};
  }

  // Kind of the Error thrown by fn, or nothing if it returns normally.
  template <typename Fn>
  std::optional<ErrorKind> error_kind(Fn&& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.kind();
    }
    return std::nullopt;
  }

  // Odometer over {0..radix-1}^k, last coordinate fastest.
  inline bool advance(std::vector<Element>& t, std::size_t radix) {
    for (std::size_t j = t.size(); j > 0; --j) {
      if (++t[j - 1] < radix) {
        return true;
      }
      t[j - 1] = 0;
    }
    return false;
  }

  inline std::vector<std::vector<Element>> all_tuples(std::size_t radix, std::size_t k) {
    std::vector<std::vector<Element>> out;
    std::vector<Element>              t(k, 0);
    do {
      out.push_back(t);
    } while (advance(t, radix));
    return out;
  }

  // Table lookup written out by hand, big-endian.
  inline Element lookup(FiniteAlgebra const& a, std::size_t op, std::vector<Element> const& t) {
    std::size_t index = 0;
    for (auto x : t) {
      index = index * a.size() + x;
    }
    return a.table(op)[index];
  }

  namespace oracle {

    using Relation = std::vector<std::vector<bool>>;

    inline Congruence from_relation(Relation const& r) {
      std::vector<Element> rep(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        rep[i] = static_cast<Element>(i);
        for (std::size_t j = 0; j < i; ++j) {
          if (r[i][j]) {
            rep[i] = static_cast<Element>(j);
            break;
          }
        }
      }
      return Congruence::from_labels(std::span<Element const>(rep));
    }

    inline Relation to_relation(Congruence const& theta) {
      Relation r(theta.size(), std::vector<bool>(theta.size()));
      for (Element i = 0; i < theta.size(); ++i) {
        for (Element j = 0; j < theta.size(); ++j) {
          r[i][j] = theta.related(i, j);
        }
      }
      return r;
    }

    // Least fixed point of reflexive, symmetric, transitive and compatibility
    // closure, computed on an explicit boolean relation.
    inline Congruence congruence_closure(FiniteAlgebra const&            a,
                                         std::vector<ElementPair> const& pairs) {
      std::size_t const m = a.size();
      Relation          r(m, std::vector<bool>(m, false));
      for (std::size_t i = 0; i < m; ++i) {
        r[i][i] = true;
      }
      for (auto [x, y] : pairs) {
        r[x][y] = r[y][x] = true;
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
              if (r[i][j] && r[j][k] && !r[i][k]) {
                r[i][k] = r[k][i] = true;
                changed           = true;
              }
            }
          }
        }
        for (std::size_t op = 0; op < a.signature().size(); ++op) {
          std::size_t const arity = a.signature()[op].arity;
          if (arity == 0) {
            continue;
          }
          auto const tuples = all_tuples(m, arity);
          for (auto const& s : tuples) {
            for (auto const& t : tuples) {
              bool related = true;
              for (std::size_t i = 0; i < arity && related; ++i) {
                related = r[s[i]][t[i]];
              }
              if (!related) {
                continue;
              }
              auto const x = lookup(a, op, s);
              auto const y = lookup(a, op, t);
              if (!r[x][y]) {
                r[x][y] = r[y][x] = true;
                changed           = true;
              }
            }
          }
        }
      }
      return from_relation(r);
    }

    // All set partitions of {0..m-1} as restricted growth strings.
    inline std::vector<std::vector<Element>> partitions(std::size_t m) {
      std::vector<std::vector<Element>> out;
      std::vector<Element>              s(m, 0);
      std::function<void(std::size_t, Element)> go = [&](std::size_t i, Element max) {
        if (i == m) {
          out.push_back(s);
          return;
        }
        for (Element v = 0; v <= max + 1; ++v) {
          s[i] = v;
          go(i + 1, std::max(max, v));
        }
      };
      if (m == 0) {
        return out;
      }
      s[0] = 0;
      if (m == 1) {
        out.push_back(s);
        return out;
      }
      go(1, 0);
      return out;
    }

    inline bool compatible(FiniteAlgebra const& a, std::vector<Element> const& label) {
      for (std::size_t op = 0; op < a.signature().size(); ++op) {
        std::size_t const arity  = a.signature()[op].arity;
        auto const        tuples = all_tuples(a.size(), arity);
        for (auto const& s : tuples) {
          for (auto const& t : tuples) {
            bool related = true;
            for (std::size_t i = 0; i < arity && related; ++i) {
              related = label[s[i]] == label[t[i]];
            }
            if (related && label[lookup(a, op, s)] != label[lookup(a, op, t)]) {
              return false;
            }
          }
        }
      }
      return true;
    }

    // Con(A) by filtering every partition.
    inline std::set<std::vector<Element>> congruences(FiniteAlgebra const& a) {
      std::set<std::vector<Element>> out;
      for (auto const& p : partitions(a.size())) {
        if (compatible(a, p)) {
          out.insert(Congruence::from_labels(std::span<Element const>(p)).reps());
        }
      }
      return out;
    }

    // Every map a -> b tested against every operation.
    inline std::vector<std::vector<Element>> homomorphisms(FiniteAlgebra const& a,
                                                           FiniteAlgebra const& b) {
      std::vector<std::vector<Element>> out;
      for (auto const& map : all_tuples(b.size(), a.size())) {
        bool ok = true;
        for (std::size_t op = 0; op < a.signature().size() && ok; ++op) {
          std::size_t const arity = a.signature()[op].arity;
          for (auto const& t : all_tuples(a.size(), arity)) {
            std::vector<Element> image(arity);
            for (std::size_t i = 0; i < arity; ++i) {
              image[i] = map[t[i]];
            }
            if (map[lookup(a, op, t)] != lookup(b, op, image)) {
              ok = false;
              break;
            }
          }
        }
        if (ok) {
          out.push_back(map);
        }
      }
      return out;
    }

    // Value vector of a term over all assignments in big-endian order.
    inline std::vector<Element> vector_of(Term const& t, FiniteAlgebra const& a, std::size_t n) {
      std::vector<Element> out;
      for (auto const& point : all_tuples(a.size(), n)) {
        out.push_back(eval_term(t, a, point));
      }
      return out;
    }

    // Distinct term functions of depth <= max_depth. Each level applies the
    // operations to one representative term per function found so far, which
    // reaches every function of the full term enumeration since a term's
    // function depends only on the functions of its arguments.
    inline std::size_t term_function_count(FiniteAlgebra const& a,
                                           std::size_t          n,
                                           std::size_t          max_depth) {
      auto const&                           sig = a.signature();
      std::map<std::vector<Element>, Term>  found;
      for (std::size_t i = 1; i <= n; ++i) {
        auto t = Term::variable(i);
        found.emplace(vector_of(t, a, n), t);
      }
      for (auto const& s : sig.symbols()) {
        if (s.arity == 0) {
          auto t = Term::apply(sig, s.name, {});
          found.emplace(vector_of(t, a, n), t);
        }
      }
      for (std::size_t d = 1; d <= max_depth; ++d) {
        std::vector<Term> reps;
        for (auto const& [v, t] : found) {
          reps.push_back(t);
        }
        for (auto const& s : sig.symbols()) {
          if (s.arity == 0) {
            continue;
          }
          for (auto const& idx : all_tuples(reps.size(), s.arity)) {
            std::vector<Term> args;
            for (auto i : idx) {
              args.push_back(reps[i]);
            }
            auto t = Term::apply(sig, s.name, std::move(args));
            found.emplace(vector_of(t, a, n), t);
          }
        }
      }
      return found.size();
    }

    // Satisfying assignments and radical by direct evaluation of the witness
    // terms of F in `b`.
    inline std::vector<std::vector<Element>> solutions(FreeAlgebra const&    f,
                                                       FiniteAlgebra const&  b,
                                                       EquationSystem const& s) {
      std::vector<std::vector<Element>> out;
      for (auto const& point : all_tuples(b.size(), f.vars())) {
        bool ok = true;
        for (auto [x, y] : s.pairs()) {
          if (eval_term(f.witness(x), b, point) != eval_term(f.witness(y), b, point)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          out.push_back(point);
        }
      }
      return out;
    }

    inline Congruence radical(FreeAlgebra const&    f,
                              FiniteAlgebra const&  b,
                              EquationSystem const& s) {
      auto const sol = solutions(f, b, s);
      Relation   r(f.size(), std::vector<bool>(f.size(), true));
      for (auto const& point : sol) {
        for (std::size_t x = 0; x < f.size(); ++x) {
          for (std::size_t y = 0; y < f.size(); ++y) {
            if (eval_term(f.witness(x), b, point) != eval_term(f.witness(y), b, point)) {
              r[x][y] = false;
            }
          }
        }
      }
      return from_relation(r);
    }

    // Values of every element of F at one assignment, via its witness term.
    inline std::vector<Element> vector_of_assignment(FreeAlgebra const&          f,
                                                     std::vector<Element> const& point) {
      std::vector<Element> out;
      for (std::size_t e = 0; e < f.size(); ++e) {
        out.push_back(eval_term(f.witness(e), f.base(), point));
      }
      return out;
    }

    // Every subset of the pairs p < q, in bitmask order.
    inline std::vector<EquationSystem> all_systems(std::size_t m) {
      std::vector<ElementPair> pairs;
      for (Element p = 0; p < m; ++p) {
        for (Element q = p + 1; q < m; ++q) {
          pairs.emplace_back(p, q);
        }
      }
      std::vector<EquationSystem> out;
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
        std::vector<ElementPair> chosen;
        for (std::size_t b = 0; b < pairs.size(); ++b) {
          if (mask >> b & 1) {
            chosen.push_back(pairs[b]);
          }
        }
        out.emplace_back(chosen);
      }
      return out;
    }

  }  // namespace oracle

}  // namespace ualgeo::test

#endif  // UALGEO_TESTS_FIXTURES_HPP_
