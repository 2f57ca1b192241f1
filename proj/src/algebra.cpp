#include "ualgeo/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "ualgeo/congruence.hpp"

namespace ualgeo {

  ////////////////////////////////////////////////////////////////////////
  // Tuple encoding
  ////////////////////////////////////////////////////////////////////////

  std::size_t encode_tuple(std::span<Element const> tuple, std::size_t radix) {
    std::size_t index = 0;
    for (Element a : tuple) {
      index = index * radix + a;
    }
    return index;
  }

  std::vector<Element> decode_tuple(std::size_t index,
                                    std::size_t radix,
                                    std::size_t length) {
    std::vector<Element> tuple(length);
    for (std::size_t i = length; i > 0; --i) {
      tuple[i - 1] = static_cast<Element>(index % radix);
      index /= radix;
    }
    return tuple;
  }

  std::optional<std::size_t> checked_power(std::size_t radix,
                                           std::size_t exponent,
                                           std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
      if (radix != 0 && r > cap / radix) {
        return std::nullopt;
      }
      r *= radix;
    }
    if (r > cap) {
      return std::nullopt;
    }
    return r;
  }

  namespace {
    // Advances a big-endian counter; false once it wraps around.
    bool next_tuple(std::vector<Element>& t, std::size_t radix) {
      for (std::size_t j = t.size(); j > 0; --j) {
        if (++t[j - 1] < radix) {
          return true;
        }
        t[j - 1] = 0;
      }
      return false;
    }

    std::size_t table_size(std::size_t m, std::size_t arity) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < arity; ++i) {
        r *= m;
      }
      return r;
    }

    void require_same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b) {
      if (a.signature() != b.signature()) {
        fail(ErrorKind::signature_mismatch,
             a.name() + " and " + b.name() + " have different signatures");
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Validation and construction
  ////////////////////////////////////////////////////////////////////////

  std::optional<Error> validate(AlgebraSpec const& spec) {
    if (spec.size < 1) {
      return Error(ErrorKind::empty_carrier, spec.name);
    }
    auto const m = static_cast<std::size_t>(spec.size);
    for (auto const& [name, table] : spec.tables) {
      if (!spec.signature.find(name)) {
        return Error(ErrorKind::unknown_symbol,
                     "table for " + name + " which is not in the signature");
      }
    }
    for (auto const& sym : spec.signature.symbols()) {
      auto it = spec.tables.find(sym.name);
      if (it == spec.tables.end()) {
        return Error(ErrorKind::missing_table, sym.name);
      }
      auto expected = checked_power(m, sym.arity, SIZE_MAX / 2);
      if (!expected || it->second.size() != *expected) {
        return Error(ErrorKind::arity_mismatch,
                     "table for " + sym.name + " has "
                         + std::to_string(it->second.size())
                         + " entries, arity " + std::to_string(sym.arity)
                         + " needs " + std::to_string(expected.value_or(0)));
      }
      for (auto v : it->second) {
        if (v < 0 || v >= spec.size) {
          return Error(ErrorKind::entry_out_of_range,
                       "entry " + std::to_string(v) + " in table " + sym.name
                           + " of an algebra of size "
                           + std::to_string(spec.size));
        }
      }
    }
    return std::nullopt;
  }

  FiniteAlgebra::FiniteAlgebra(std::string                       name,
                               Signature                         sig,
                               std::size_t                       size,
                               std::vector<std::vector<Element>> tables)
      : _name(std::move(name)),
        _sig(std::move(sig)),
        _size(size),
        _tables(std::move(tables)) {
    if (_size == 0) {
      fail(ErrorKind::empty_carrier, _name);
    }
    if (_tables.size() != _sig.size()) {
      fail(ErrorKind::missing_table, _name);
    }
    for (std::size_t op = 0; op < _sig.size(); ++op) {
      if (_tables[op].size() != table_size(_size, _sig[op].arity)) {
        fail(ErrorKind::arity_mismatch, "table for " + _sig[op].name);
      }
      for (Element v : _tables[op]) {
        if (v >= _size) {
          fail(ErrorKind::entry_out_of_range, "table for " + _sig[op].name);
        }
      }
    }
  }

  FiniteAlgebra FiniteAlgebra::from_spec(AlgebraSpec const& spec) {
    if (auto err = validate(spec)) {
      throw *err;
    }
    std::vector<std::vector<Element>> tables;
    for (auto const& sym : spec.signature.symbols()) {
      auto const& t = spec.tables.at(sym.name);
      tables.emplace_back(t.begin(), t.end());
    }
    return FiniteAlgebra(spec.name,
                         spec.signature,
                         static_cast<std::size_t>(spec.size),
                         std::move(tables));
  }

  AlgebraSpec FiniteAlgebra::to_spec() const {
    AlgebraSpec spec;
    spec.name      = _name;
    spec.signature = _sig;
    spec.size      = static_cast<std::int64_t>(_size);
    for (std::size_t op = 0; op < _sig.size(); ++op) {
      spec.tables[_sig[op].name].assign(_tables[op].begin(), _tables[op].end());
    }
    return spec;
  }

  FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra copy = *this;
    copy._name         = std::move(name);
    return copy;
  }

  FiniteAlgebra trivial_algebra(Signature const& sig, std::string name) {
    std::vector<std::vector<Element>> tables(sig.size(),
                                             std::vector<Element>(1, 0));
    return FiniteAlgebra(std::move(name), sig, 1, std::move(tables));
  }

  bool is_homomorphism(FiniteAlgebra const&     source,
                       FiniteAlgebra const&     target,
                       std::span<Element const> map) {
    if (source.signature() != target.signature()
        || map.size() != source.size()) {
      return false;
    }
    if (std::any_of(map.begin(), map.end(), [&](Element v) {
          return v >= target.size();
        })) {
      return false;
    }
    auto const&          sig = source.signature();
    std::vector<Element> image;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> t(sig[op].arity, 0);
      image.resize(sig[op].arity);
      do {
        for (std::size_t i = 0; i < t.size(); ++i) {
          image[i] = map[t[i]];
        }
        if (map[source.apply(op, t)] != target.apply(op, image)) {
          return false;
        }
      } while (next_tuple(t, source.size()));
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Componentwise operations on the product of `factors`, with big-endian
    // mixed-radix encoding of the carrier.
    FiniteAlgebra componentwise(std::string                               name,
                                std::vector<FiniteAlgebra const*> const& factors) {
      auto const& sig  = factors.front()->signature();
      std::size_t size = 1;
      for (auto f : factors) {
        size *= f->size();
      }
      auto decode = [&](std::size_t index) {
        std::vector<Element> parts(factors.size());
        for (std::size_t i = factors.size(); i > 0; --i) {
          parts[i - 1] = static_cast<Element>(index % factors[i - 1]->size());
          index /= factors[i - 1]->size();
        }
        return parts;
      };
      std::vector<std::vector<Element>> decoded(size);
      for (std::size_t e = 0; e < size; ++e) {
        decoded[e] = decode(e);
      }
      std::vector<std::vector<Element>> tables;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t          k = sig[op].arity;
        std::vector<Element> table;
        table.reserve(table_size(size, k));
        std::vector<Element> t(k, 0);
        std::vector<Element> args(k);
        do {
          std::size_t out = 0;
          for (std::size_t c = 0; c < factors.size(); ++c) {
            for (std::size_t i = 0; i < k; ++i) {
              args[i] = decoded[t[i]][c];
            }
            out = out * factors[c]->size() + factors[c]->apply(op, args);
          }
          table.push_back(static_cast<Element>(out));
        } while (next_tuple(t, size));
        tables.push_back(std::move(table));
      }
      return FiniteAlgebra(std::move(name), sig, size, std::move(tables));
    }
  }  // namespace

  FiniteAlgebra direct_power(FiniteAlgebra const& a,
                             std::size_t          k,
                             Limits const&        limits) {
    if (k == 0) {
      fail(ErrorKind::out_of_range, "direct power exponent must be positive");
    }
    if (!checked_power(a.size(), k, limits.carrier)) {
      fail(ErrorKind::limit_exceeded,
           a.name() + "^" + std::to_string(k) + " exceeds the carrier cap "
               + std::to_string(limits.carrier));
    }
    std::vector<FiniteAlgebra const*> factors(k, &a);
    return componentwise(a.name() + "^" + std::to_string(k), factors);
  }

  FiniteAlgebra direct_product(FiniteAlgebra const& a,
                               FiniteAlgebra const& b,
                               Limits const&        limits) {
    require_same_signature(a, b);
    if (b.size() != 0 && a.size() > limits.carrier / b.size()) {
      fail(ErrorKind::limit_exceeded,
           a.name() + " x " + b.name() + " exceeds the carrier cap");
    }
    return componentwise("(" + a.name() + " x " + b.name() + ")", {&a, &b});
  }

  ////////////////////////////////////////////////////////////////////////
  // Subuniverses
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // One way of producing an element from earlier ones.
    struct Derivation {
      Element              element;
      std::size_t          op;
      std::vector<Element> args;
    };

    // Extends `in` to a subuniverse, appending one derivation per new element
    // in discovery order.
    void close_subuniverse(FiniteAlgebra const&     a,
                           std::vector<char>&       in,
                           std::vector<Element>&    members,
                           std::vector<Derivation>* derivations) {
      auto const& sig     = a.signature();
      bool        changed = true;
      while (changed) {
        changed               = false;
        std::size_t const cur = members.size();
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t k = sig[op].arity;
          if (k > 0 && cur == 0) {
            continue;
          }
          std::vector<std::size_t> idx(k, 0);
          std::vector<Element>     args(k);
          while (true) {
            for (std::size_t i = 0; i < k; ++i) {
              args[i] = members[idx[i]];
            }
            Element v = a.apply(op, args);
            if (!in[v]) {
              in[v] = 1;
              members.push_back(v);
              if (derivations) {
                derivations->push_back({v, op, args});
              }
              changed = true;
            }
            std::size_t j = k;
            while (j > 0 && ++idx[j - 1] == cur) {
              idx[j - 1] = 0;
              --j;
            }
            if (j == 0) {
              break;
            }
          }
        }
      }
    }
  }  // namespace

  std::vector<Element> subuniverse_generated(FiniteAlgebra const&     a,
                                             std::span<Element const> seed) {
    if (seed.empty() && !a.signature().has_constants()) {
      fail(ErrorKind::empty_subuniverse,
           a.name() + " has no constants and the seed is empty");
    }
    std::vector<char>    in(a.size(), 0);
    std::vector<Element> members;
    for (Element s : seed) {
      if (s >= a.size()) {
        fail(ErrorKind::out_of_range, "seed element outside the carrier");
      }
      if (!in[s]) {
        in[s] = 1;
        members.push_back(s);
      }
    }
    close_subuniverse(a, in, members, nullptr);
    std::sort(members.begin(), members.end());
    return members;
  }

  namespace {
    struct GeneratorPlan {
      std::vector<Element> generators;
      // Derivations grouped by the number of generators they depend on:
      // stage[j] lists elements reachable from constants and generators
      // 0..j-1 but not earlier. stage[0] is the constant closure.
      std::vector<std::vector<Derivation>> stages;
    };

    GeneratorPlan plan_generators(FiniteAlgebra const& a) {
      GeneratorPlan        plan;
      std::vector<char>    in(a.size(), 0);
      std::vector<Element> members;
      plan.stages.emplace_back();
      close_subuniverse(a, in, members, &plan.stages.back());
      for (Element e = 0; e < a.size(); ++e) {
        if (in[e]) {
          continue;
        }
        plan.generators.push_back(e);
        in[e] = 1;
        members.push_back(e);
        plan.stages.emplace_back();
        close_subuniverse(a, in, members, &plan.stages.back());
      }
      return plan;
    }

    // Invariants preserved by isomorphisms, one vector per element.
    std::vector<std::vector<std::size_t>> element_invariants(
        FiniteAlgebra const& a) {
      auto const&                           sig = a.signature();
      std::vector<std::vector<std::size_t>> inv(a.size());
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t              k = sig[op].arity;
        std::vector<std::size_t> preimages(a.size(), 0);
        for (Element v : a.table(op)) {
          ++preimages[v];
        }
        for (Element e = 0; e < a.size(); ++e) {
          inv[e].push_back(preimages[e]);
          if (k > 0) {
            std::vector<Element> diag(k, e);
            inv[e].push_back(a.apply(op, diag) == e ? 1 : 0);
          }
        }
      }
      return inv;
    }

    class HomSearch {
     public:
      HomSearch(FiniteAlgebra const& a,
                FiniteAlgebra const& b,
                Limits const&        limits)
          : _a(a),
            _b(b),
            _limits(limits),
            _plan(plan_generators(a)),
            _map(a.size(), 0),
            _defined(a.size(), 0) {}

      std::vector<Homomorphism> run() {
        std::vector<std::pair<Element, Element>> trail;
        if (apply_stage(0, trail)) {
          search(0);
        }
        std::sort(_found.begin(), _found.end());
        return std::move(_found);
      }

     private:
      bool assign(Element x, Element y, std::vector<std::pair<Element, Element>>& trail) {
        if (_defined[x]) {
          return _map[x] == y;
        }
        _defined[x] = 1;
        _map[x]     = y;
        trail.emplace_back(x, y);
        return true;
      }

      void undo(std::vector<std::pair<Element, Element>>& trail) {
        for (auto [x, y] : trail) {
          _defined[x] = 0;
        }
        trail.clear();
      }

      // Images of derived elements are forced; a clash means no extension.
      bool apply_stage(std::size_t stage,
                       std::vector<std::pair<Element, Element>>& trail) {
        std::vector<Element> image;
        for (auto const& d : _plan.stages[stage]) {
          image.resize(d.args.size());
          for (std::size_t i = 0; i < d.args.size(); ++i) {
            image[i] = _map[d.args[i]];
          }
          if (!assign(d.element, _b.apply(d.op, image), trail)) {
            return false;
          }
        }
        return true;
      }

      void search(std::size_t g) {
        if (++_nodes > _limits.hom_nodes) {
          fail(ErrorKind::limit_exceeded,
               "homomorphism search node cap "
                   + std::to_string(_limits.hom_nodes));
        }
        if (g == _plan.generators.size()) {
          if (is_homomorphism(_a, _b, _map)) {
            _found.push_back({_map});
          }
          return;
        }
        Element const x = _plan.generators[g];
        auto          try_image = [&](Element y) {
          std::vector<std::pair<Element, Element>> trail;
          if (assign(x, y, trail) && apply_stage(g + 1, trail)) {
            search(g + 1);
          }
          undo(trail);
        };
        for (Element y = 0; y < _b.size(); ++y) {
          try_image(y);
        }
      }

      FiniteAlgebra const&              _a;
      FiniteAlgebra const&              _b;
      Limits const&                     _limits;
      GeneratorPlan                     _plan;
      std::vector<Element>              _map;
      std::vector<char>                 _defined;
      std::vector<Homomorphism>         _found;
      std::uint64_t                     _nodes = 0;
    };

    // Bijective search in element order with forward propagation: whenever
    // every argument of an operation tuple has an image, the image of the
    // result is forced. Candidates are tried in ascending order, so the first
    // complete assignment is the lexicographically least isomorphism.
    class IsoSearch {
     public:
      IsoSearch(FiniteAlgebra const& a, FiniteAlgebra const& b, Limits const& limits)
          : _a(a),
            _b(b),
            _limits(limits),
            _map(a.size(), 0),
            _defined(a.size(), 0),
            _used(b.size(), 0) {
        auto ia = element_invariants(a);
        auto ib = element_invariants(b);
        _candidates.resize(a.size());
        for (Element x = 0; x < a.size(); ++x) {
          for (Element y = 0; y < b.size(); ++y) {
            if (ia[x] == ib[y]) {
              _candidates[x].push_back(y);
            }
          }
        }
      }

      std::optional<Homomorphism> run() {
        auto const& sig = _a.signature();
        for (std::size_t op = 0; op < sig.size(); ++op) {
          if (sig[op].arity == 0 && !set(_a.table(op)[0], _b.table(op)[0])) {
            return std::nullopt;
          }
        }
        if (!propagate() || !search(0)) {
          return std::nullopt;
        }
        return Homomorphism{_map};
      }

     private:
      bool set(Element x, Element y) {
        if (_defined[x]) {
          return _map[x] == y;
        }
        if (_used[y]) {
          return false;
        }
        _defined[x] = 1;
        _used[y]    = 1;
        _map[x]     = y;
        _order.push_back(x);
        return true;
      }

      void undo(std::size_t mark) {
        while (_order.size() > mark) {
          Element x   = _order.back();
          _defined[x] = 0;
          _used[_map[x]] = 0;
          _order.pop_back();
        }
        _cursor = std::min(_cursor, mark);
      }

      bool propagate() {
        auto const&          sig = _a.signature();
        std::vector<Element> args, image;
        std::vector<std::size_t> idx;
        for (; _cursor < _order.size(); ++_cursor) {
          Element const x = _order[_cursor];
          for (std::size_t op = 0; op < sig.size(); ++op) {
            std::size_t const k = sig[op].arity;
            if (k == 0) {
              continue;
            }
            std::size_t const d = _order.size();
            args.resize(k);
            image.resize(k);
            for (std::size_t pos = 0; pos < k; ++pos) {
              idx.assign(k - 1, 0);
              while (true) {
                for (std::size_t i = 0, j = 0; i < k; ++i) {
                  args[i] = i == pos ? x : _order[idx[j++]];
                  image[i] = _map[args[i]];
                }
                if (!set(_a.apply(op, args), _b.apply(op, image))) {
                  return false;
                }
                std::size_t j = k - 1;
                while (j > 0 && ++idx[j - 1] == d) {
                  idx[j - 1] = 0;
                  --j;
                }
                if (j == 0) {
                  break;
                }
              }
            }
          }
        }
        return true;
      }

      bool search(Element x) {
        while (x < _a.size() && _defined[x]) {
          ++x;
        }
        if (x == _a.size()) {
          return true;
        }
        for (Element y : _candidates[x]) {
          if (++_nodes > _limits.hom_nodes) {
            fail(ErrorKind::limit_exceeded,
                 "homomorphism search node cap "
                     + std::to_string(_limits.hom_nodes));
          }
          std::size_t const mark = _order.size();
          if (set(x, y) && propagate() && search(x + 1)) {
            return true;
          }
          undo(mark);
        }
        return false;
      }

      FiniteAlgebra const&              _a;
      FiniteAlgebra const&              _b;
      Limits const&                     _limits;
      std::vector<Element>              _map;
      std::vector<char>                 _defined;
      std::vector<char>                 _used;
      std::vector<Element>              _order;
      std::size_t                       _cursor = 0;
      std::vector<std::vector<Element>> _candidates;
      std::uint64_t                     _nodes = 0;
    };
  }  // namespace

  std::vector<Element> generating_set(FiniteAlgebra const& a) {
    return plan_generators(a).generators;
  }

  std::vector<Homomorphism> enumerate_homomorphisms(FiniteAlgebra const& a,
                                                    FiniteAlgebra const& b,
                                                    Limits const& limits) {
    require_same_signature(a, b);
    return HomSearch(a, b, limits).run();
  }

  std::optional<Homomorphism> find_isomorphism(FiniteAlgebra const& a,
                                               FiniteAlgebra const& b,
                                               Limits const&        limits) {
    require_same_signature(a, b);
    if (a.size() != b.size()) {
      return std::nullopt;
    }
    return IsoSearch(a, b, limits).run();
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  Quotient quotient(FiniteAlgebra const& a, Congruence const& theta) {
    if (theta.size() != a.size()) {
      fail(ErrorKind::algebra_mismatch,
           "partition size differs from the carrier of " + a.name());
    }
    if (auto check = is_congruence(a, theta); !check) {
      fail(ErrorKind::not_a_congruence,
           "partition is not compatible with "
               + a.signature()[check.witness->op].name);
    }
    std::vector<Element> cls(a.size());
    std::vector<Element> reps;
    for (Element e = 0; e < a.size(); ++e) {
      if (theta.rep(e) == e) {
        cls[e] = static_cast<Element>(reps.size());
        reps.push_back(e);
      } else {
        cls[e] = cls[theta.rep(e)];
      }
    }
    std::size_t const                 q   = reps.size();
    auto const&                       sig = a.signature();
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> t(sig[op].arity, 0);
      std::vector<Element> args(sig[op].arity);
      std::vector<Element> table;
      do {
        for (std::size_t i = 0; i < t.size(); ++i) {
          args[i] = reps[t[i]];
        }
        table.push_back(cls[a.apply(op, args)]);
      } while (next_tuple(t, q));
      tables.push_back(std::move(table));
    }
    return {FiniteAlgebra(a.name() + "/~", sig, q, std::move(tables)),
            Homomorphism{std::move(cls)}};
  }

}  // namespace ualgeo
