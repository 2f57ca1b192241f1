#include "ualgeo/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ualgeo/error.hpp"

namespace ualgeo {

  Congruence Congruence::diagonal(std::size_t m) {
    std::vector<Element> rep(m);
    std::iota(rep.begin(), rep.end(), Element(0));
    return Congruence(std::move(rep));
  }

  Congruence Congruence::full(std::size_t m) {
    return Congruence(std::vector<Element>(m, 0));
  }

  Congruence Congruence::from_blocks(std::size_t            m,
                                     std::span<Block const> blocks) {
    std::vector<Element> label(m, 0);
    std::vector<char>    seen(m, 0);
    Element              b = 0;
    for (auto const& block : blocks) {
      if (block.empty()) {
        fail(ErrorKind::bad_partition, "empty block");
      }
      for (Element e : block) {
        if (e >= m) {
          fail(ErrorKind::bad_partition,
               "element " + std::to_string(e) + " outside the carrier");
        }
        if (seen[e]) {
          fail(ErrorKind::bad_partition,
               "element " + std::to_string(e) + " occurs twice");
        }
        seen[e]  = 1;
        label[e] = b;
      }
      ++b;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      fail(ErrorKind::bad_partition, "blocks do not cover the carrier");
    }
    return from_labels(std::span<Element const>(label));
  }

  std::size_t Congruence::number_of_classes() const noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < _rep.size(); ++i) {
      count += (_rep[i] == i);
    }
    return count;
  }

  std::size_t Congruence::number_of_pairs() const {
    std::vector<std::size_t> sizes(_rep.size(), 0);
    for (Element r : _rep) {
      ++sizes[r];
    }
    std::size_t total = 0;
    for (auto s : sizes) {
      total += s * s;
    }
    return total;
  }

  std::vector<Block> Congruence::blocks() const {
    std::vector<Block>       result;
    std::vector<std::size_t> slot(_rep.size(), 0);
    for (Element i = 0; i < _rep.size(); ++i) {
      if (_rep[i] == i) {
        slot[i] = result.size();
        result.emplace_back();
      }
      result[slot[_rep[i]]].push_back(i);
    }
    return result;
  }

  bool Congruence::subset_of(Congruence const& that) const {
    if (that.size() != size()) {
      fail(ErrorKind::algebra_mismatch, "congruences on different carriers");
    }
    for (std::size_t i = 0; i < _rep.size(); ++i) {
      if (that._rep[i] != that._rep[_rep[i]]) {
        return false;
      }
    }
    return true;
  }

  bool Congruence::is_diagonal() const noexcept {
    for (std::size_t i = 0; i < _rep.size(); ++i) {
      if (_rep[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool Congruence::is_full() const noexcept {
    return std::all_of(_rep.begin(), _rep.end(), [](Element r) {
      return r == 0;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Compatibility
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool next_tuple(std::vector<Element>& t, std::size_t radix) {
      for (std::size_t j = t.size(); j > 0; --j) {
        if (++t[j - 1] < radix) {
          return true;
        }
        t[j - 1] = 0;
      }
      return false;
    }
  }  // namespace

  CongruenceCheck is_congruence(FiniteAlgebra const& a, Congruence const& theta) {
    if (theta.size() != a.size()) {
      fail(ErrorKind::bad_partition, "partition size differs from the carrier");
    }
    // Two tuples are related componentwise iff they have the same tuple of
    // representatives, so comparing every tuple with its representative tuple
    // is enough.
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> t(sig[op].arity, 0);
      std::vector<Element> r(sig[op].arity);
      do {
        for (std::size_t i = 0; i < t.size(); ++i) {
          r[i] = theta.rep(t[i]);
        }
        if (!theta.related(a.apply(op, t), a.apply(op, r))) {
          return {false, CompatibilityWitness{op, r, t}};
        }
      } while (next_tuple(t, a.size()));
    }
    return {};
  }

  CongruenceCheck is_congruence(FiniteAlgebra const&   a,
                                std::span<Block const> partition) {
    return is_congruence(a, Congruence::from_blocks(a.size(), partition));
  }

  ////////////////////////////////////////////////////////////////////////
  // Generation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t m) : _parent(m) {
        std::iota(_parent.begin(), _parent.end(), Element(0));
      }

      Element find(Element x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      // Keeps the smaller root so that roots end up as class minima.
      bool unite(Element x, Element y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        _parent[y] = x;
        return true;
      }

     private:
      std::vector<Element> _parent;
    };
  }  // namespace

  Congruence generated_congruence(FiniteAlgebra const&         a,
                                  std::span<ElementPair const> pairs) {
    std::size_t const m = a.size();
    UnionFind         uf(m);
    for (auto [x, y] : pairs) {
      if (x >= m || y >= m) {
        fail(ErrorKind::out_of_range, "pair outside the carrier");
      }
      uf.unite(x, y);
    }
    auto const& sig     = a.signature();
    bool        changed = true;
    while (changed) {
      changed = false;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const k = sig[op].arity;
        if (k == 0) {
          continue;
        }
        auto const           table = a.table(op);
        std::vector<Element> t(k, 0);
        std::size_t          index = 0;
        do {
          // index is the encoding of t; rindex that of its root tuple.
          std::size_t rindex  = 0;
          bool        differs = false;
          for (std::size_t i = 0; i < k; ++i) {
            Element const r = uf.find(t[i]);
            differs |= (r != t[i]);
            rindex = rindex * m + r;
          }
          if (differs && uf.unite(table[index], table[rindex])) {
            changed = true;
          }
          ++index;
        } while (next_tuple(t, m));
      }
    }
    std::vector<Element> roots(m);
    for (Element i = 0; i < m; ++i) {
      roots[i] = uf.find(i);
    }
    return Congruence::from_labels(std::span<Element const>(roots));
  }

  Congruence meet(Congruence const& x, Congruence const& y) {
    if (x.size() != y.size()) {
      fail(ErrorKind::algebra_mismatch, "meet of congruences on different carriers");
    }
    std::vector<ElementPair> labels(x.size());
    for (Element i = 0; i < x.size(); ++i) {
      labels[i] = {x.rep(i), y.rep(i)};
    }
    return Congruence::from_labels(std::span<ElementPair const>(labels));
  }

  Congruence join(FiniteAlgebra const& a,
                  Congruence const&    x,
                  Congruence const&    y) {
    if (x.size() != y.size() || x.size() != a.size()) {
      fail(ErrorKind::algebra_mismatch, "join of congruences on different carriers");
    }
    std::vector<ElementPair> pairs;
    for (Element i = 0; i < x.size(); ++i) {
      if (x.rep(i) != i) {
        pairs.emplace_back(x.rep(i), i);
      }
      if (y.rep(i) != i) {
        pairs.emplace_back(y.rep(i), i);
      }
    }
    return generated_congruence(a, pairs);
  }

  bool lattice_order(Congruence const& x, Congruence const& y) {
    auto cx = x.number_of_classes();
    auto cy = y.number_of_classes();
    if (cx != cy) {
      return cx > cy;
    }
    return x < y;
  }

  std::vector<Congruence> congruences_above(FiniteAlgebra const& a,
                                            Congruence const&    bottom,
                                            Limits const&        limits) {
    std::size_t const       m = a.size();
    std::vector<Congruence> principal;
    for (Element x = 0; x < m; ++x) {
      for (Element y = x + 1; y < m; ++y) {
        if (!bottom.related(x, y)) {
          ElementPair p{x, y};
          principal.push_back(
              generated_congruence(a, std::span<ElementPair const>(&p, 1)));
        }
      }
    }
    // Every congruence above `bottom` is `bottom` joined with finitely many
    // principal congruences, so adding one principal at a time reaches all of
    // them.
    std::set<Congruence>    seen{bottom};
    std::vector<Congruence> work{bottom};
    while (!work.empty()) {
      Congruence theta = std::move(work.back());
      work.pop_back();
      for (auto const& p : principal) {
        if (p.subset_of(theta)) {
          continue;
        }
        Congruence next = join(a, theta, p);
        if (seen.insert(next).second) {
          if (seen.size() > limits.interval) {
            fail(ErrorKind::limit_exceeded,
                 "more than " + std::to_string(limits.interval)
                     + " congruences in the interval");
          }
          work.push_back(std::move(next));
        }
      }
    }
    std::vector<Congruence> result(seen.begin(), seen.end());
    std::sort(result.begin(), result.end(), lattice_order);
    return result;
  }

  std::vector<Congruence> all_congruences(FiniteAlgebra const& a,
                                          Limits const&        limits) {
    if (a.size() > limits.congruence_enum) {
      fail(ErrorKind::limit_exceeded,
           "all_congruences is capped at carriers of size "
               + std::to_string(limits.congruence_enum));
    }
    return congruences_above(a, Congruence::diagonal(a.size()), limits);
  }

}  // namespace ualgeo
