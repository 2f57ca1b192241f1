#include "ualgeo/free_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "ualgeo/error.hpp"

namespace ualgeo {

  namespace {
    bool next_tuple(std::vector<std::size_t>& t, std::size_t radix) {
      for (std::size_t j = t.size(); j > 0; --j) {
        if (++t[j - 1] < radix) {
          return true;
        }
        t[j - 1] = 0;
      }
      return false;
    }

    // Shortlex: shorter strings first, then lexicographic.
    bool shortlex_less(std::string const& x, std::string const& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    }

    struct Best {
      std::string      text;
      std::optional<Term> term;
    };

    std::string application_string(std::string const&               name,
                                   std::vector<std::size_t> const&  args,
                                   std::vector<Best> const&         best) {
      std::string s = "(" + name;
      for (auto a : args) {
        s += ' ';
        s += best[a].text;
      }
      s += ')';
      return s;
    }
  }  // namespace

  FreeAlgebra FreeAlgebra::build(FiniteAlgebra const& base,
                                 std::size_t          n,
                                 Limits const&        limits) {
    if (n == 0) {
      fail(ErrorKind::out_of_range, "free algebras need at least one variable");
    }
    auto const points = checked_power(base.size(), n, limits.free_points);
    if (!points) {
      fail(ErrorKind::limit_exceeded,
           "|A|^n for " + base.name() + " with n = " + std::to_string(n)
               + " exceeds the point cap " + std::to_string(limits.free_points));
    }
    std::size_t const P   = *points;
    auto const&       sig = base.signature();

    // Closure of the projections and constants, level by level. Ids here are
    // provisional (discovery order).
    std::vector<std::vector<Element>>       vecs;
    std::vector<std::size_t>                depth;
    std::map<std::vector<Element>, std::size_t> index;

    auto add = [&](std::vector<Element> v, std::size_t d) -> std::size_t {
      auto [it, inserted] = index.emplace(v, vecs.size());
      if (inserted) {
        vecs.push_back(std::move(v));
        depth.push_back(d);
        if (vecs.size() > limits.free_elements) {
          fail(ErrorKind::limit_exceeded,
               "free algebra over " + base.name() + " on "
                   + std::to_string(n) + " generators exceeds "
                   + std::to_string(limits.free_elements)
                   + " elements (partial size "
                   + std::to_string(vecs.size()) + ")");
        }
      }
      return it->second;
    };

    std::vector<std::size_t> projection(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Element> v(P);
      for (std::size_t p = 0; p < P; ++p) {
        v[p] = decode_tuple(p, base.size(), n)[i];
      }
      projection[i] = add(std::move(v), 0);
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig[op].arity == 0) {
        add(std::vector<Element>(P, base.table(op)[0]), 0);
      }
    }

    auto pointwise = [&](std::size_t                     op,
                         std::vector<std::size_t> const& args) {
      std::vector<Element> out(P);
      std::vector<Element> a(args.size());
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t i = 0; i < args.size(); ++i) {
          a[i] = vecs[args[i]][p];
        }
        out[p] = base.apply(op, a);
      }
      return out;
    };

    std::size_t level_begin = 0;
    for (std::size_t d = 1;; ++d) {
      std::size_t const cur = vecs.size();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const k = sig[op].arity;
        if (k == 0) {
          continue;
        }
        std::vector<std::size_t> t(k, 0);
        do {
          if (std::any_of(t.begin(), t.end(), [&](auto e) {
                return e >= level_begin;
              })) {
            add(pointwise(op, t), d);
          }
        } while (next_tuple(t, cur));
      }
      if (vecs.size() == cur) {
        break;
      }
      level_begin = cur;
    }

    std::size_t const m = vecs.size();

    // Operation tables over provisional ids.
    std::vector<std::vector<std::size_t>> tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<std::size_t> t(sig[op].arity, 0);
      do {
        tables[op].push_back(index.at(pointwise(op, t)));
      } while (next_tuple(t, m));
    }
    auto table_index = [&](std::vector<std::size_t> const& t) {
      std::size_t i = 0;
      for (auto e : t) {
        i = i * m + e;
      }
      return i;
    };

    // Witnesses. best[e] is the shortlex-least string among terms of depth
    // <= D for e; the witness of e is best[e] at D = depth[e]. Choosing the
    // least string for each argument gives the least application string: the
    // length is a sum of argument lengths, and once the lengths are fixed the
    // comparison runs argument by argument.
    std::size_t const max_depth = *std::max_element(depth.begin(), depth.end());
    std::vector<Best> best(m);
    for (std::size_t i = n; i > 0; --i) {
      auto& b = best[projection[i - 1]];
      b.text  = "x" + std::to_string(i);
      b.term  = Term::variable(i);
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig[op].arity == 0) {
        auto&       b = best[tables[op][0]];
        std::string s = "(" + sig[op].name + ")";
        if (!b.term || shortlex_less(s, b.text)) {
          b.text = s;
          b.term = Term::apply_unchecked(op, sig[op].name, {});
        }
      }
    }
    std::vector<Best> witness(m);
    for (std::size_t e = 0; e < m; ++e) {
      if (depth[e] == 0) {
        witness[e] = best[e];
      }
    }
    for (std::size_t D = 1; D <= max_depth; ++D) {
      std::vector<std::size_t> available;
      for (std::size_t e = 0; e < m; ++e) {
        if (depth[e] <= D - 1) {
          available.push_back(e);
        }
      }
      std::vector<Best> next = best;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const k = sig[op].arity;
        if (k == 0) {
          continue;
        }
        std::vector<std::size_t> t(k, 0);
        std::vector<std::size_t> args(k);
        do {
          for (std::size_t i = 0; i < k; ++i) {
            args[i] = available[t[i]];
          }
          std::size_t g = tables[op][table_index(args)];
          std::string s = application_string(sig[op].name, args, best);
          if (!next[g].term || shortlex_less(s, next[g].text)) {
            std::vector<Term> sub;
            for (auto a : args) {
              sub.push_back(*best[a].term);
            }
            next[g].text = std::move(s);
            next[g].term = Term::apply_unchecked(op, sig[op].name, std::move(sub));
          }
        } while (next_tuple(t, available.size()));
      }
      best = std::move(next);
      for (std::size_t e = 0; e < m; ++e) {
        if (depth[e] == D) {
          witness[e] = best[e];
        }
      }
    }

    // Final numbering by depth, then witness string.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&](auto x, auto y) {
      if (depth[x] != depth[y]) {
        return depth[x] < depth[y];
      }
      return witness[x].text < witness[y].text;
    });
    std::vector<Element> renumber(m);
    for (std::size_t i = 0; i < m; ++i) {
      renumber[order[i]] = static_cast<Element>(i);
    }

    std::vector<std::vector<Element>> final_tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t const        k = sig[op].arity;
      std::vector<std::size_t> t(k, 0);
      std::vector<std::size_t> old(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          old[i] = order[t[i]];
        }
        final_tables[op].push_back(renumber[tables[op][table_index(old)]]);
      } while (next_tuple(t, m));
    }

    FreeAlgebra f(base,
                  FiniteAlgebra("F_" + base.name() + "(" + std::to_string(n) + ")",
                                sig,
                                m,
                                std::move(final_tables)));
    f._n      = n;
    f._points = P;
    f._values.reserve(m * P);
    for (std::size_t i = 0; i < m; ++i) {
      auto const& v = vecs[order[i]];
      f._values.insert(f._values.end(), v.begin(), v.end());
      f._witnesses.push_back(*witness[order[i]].term);
      f._witness_strings.push_back(witness[order[i]].text);
      f._index.emplace(v, static_cast<Element>(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
      f._generators.push_back(renumber[projection[i]]);
    }
    return f;
  }

  std::optional<Element> FreeAlgebra::find(std::span<Element const> vector) const {
    auto it = _index.find(std::vector<Element>(vector.begin(), vector.end()));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  FreeAlgebra build_free(FiniteAlgebra const& base,
                         std::size_t          n,
                         Limits const&        limits) {
    return FreeAlgebra::build(base, n, limits);
  }

  namespace {
    Element to_element(FreeAlgebra const& f, Term const& t) {
      if (t.is_variable()) {
        if (t.variable_index() > f.vars()) {
          fail(ErrorKind::variable_out_of_range,
               "x" + std::to_string(t.variable_index()) + " in a free algebra on "
                   + std::to_string(f.vars()) + " generators");
        }
        return f.generator(t.variable_index());
      }
      auto const& sig = f.signature();
      auto        op  = sig.find(t.symbol());
      if (!op || sig[*op].arity != t.args().size()) {
        fail(ErrorKind::signature_mismatch,
             t.symbol() + " does not match the signature of " + f.base().name());
      }
      std::vector<Element> args;
      for (auto const& a : t.args()) {
        args.push_back(to_element(f, a));
      }
      return f.algebra().apply(*op, args);
    }
  }  // namespace

  Element term_to_element(FreeAlgebra const& f, Term const& t) {
    return to_element(f, t);
  }

  Term const& witness_term(FreeAlgebra const& f, std::size_t e) {
    if (e >= f.size()) {
      fail(ErrorKind::index_out_of_range,
           "element " + std::to_string(e) + " of a free algebra of size "
               + std::to_string(f.size()));
    }
    return f.witness(e);
  }

}  // namespace ualgeo
