#include "ualgeo/superproduct.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ualgeo/error.hpp"
#include "run_systems.hpp"

namespace ualgeo {

  CongruenceFamily::CongruenceFamily(std::vector<Congruence> members)
      : _members(std::move(members)) {
    std::sort(_members.begin(), _members.end(), lattice_order);
    _members.erase(std::unique(_members.begin(), _members.end()),
                   _members.end());
    for (auto const& m : _members) {
      if (m.size() != _members.front().size()) {
        fail(ErrorKind::algebra_mismatch,
             "family members live on different carriers");
      }
    }
  }

  bool CongruenceFamily::contains(Congruence const& theta) const {
    return std::find(_members.begin(), _members.end(), theta) != _members.end();
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  SuperProductOp SuperProductOp::rad_union(FiniteAlgebra context) {
    SuperProductOp op(SuperProductKind::rad_union);
    op._context = std::move(context);
    return op;
  }

  SuperProductOp SuperProductOp::parse(std::string_view             name,
                                       std::optional<FiniteAlgebra> context) {
    if (name == "join") {
      return join();
    }
    if (name == "full") {
      return full();
    }
    if (name == "meet") {
      return meet();
    }
    if (name == "radunion") {
      if (!context) {
        fail(ErrorKind::invalid_input, "radunion needs a context algebra");
      }
      return rad_union(std::move(*context));
    }
    fail(ErrorKind::invalid_input,
         "unknown super-product operation \"" + std::string(name) + "\"");
  }

  std::string SuperProductOp::name() const {
    switch (_kind) {
      case SuperProductKind::join:
        return "join";
      case SuperProductKind::rad_union:
        return "radunion(" + _context->name() + ")";
      case SuperProductKind::full:
        return "full";
      case SuperProductKind::meet:
        return "meet";
    }
    return "?";
  }

  namespace {
    // The congruence generated by the union of the members, Δ if there are
    // none.
    Congruence join_all(FreeAlgebra const& f, std::vector<Congruence> const& members) {
      std::vector<ElementPair> pairs;
      for (auto const& theta : members) {
        for (Element i = 0; i < theta.size(); ++i) {
          if (theta.rep(i) != i) {
            pairs.emplace_back(theta.rep(i), i);
          }
        }
      }
      return generated_congruence(f.algebra(), pairs);
    }

    // An operation prepared for repeated application on one free algebra.
    class BoundOp {
     public:
      BoundOp(SuperProductOp const& op, FreeAlgebra const& f) : _op(op), _f(f) {
        if (op.kind() == SuperProductKind::rad_union) {
          if (op.context()->signature() != f.signature()) {
            fail(ErrorKind::context_mismatch,
                 "context algebra " + op.context()->name()
                     + " has a different signature");
          }
          _context.emplace(f, *op.context());
        }
      }

      Congruence operator()(CongruenceFamily const& k) const {
        auto const& members = k.members();
        for (auto const& m : members) {
          if (m.size() != _f.size()) {
            fail(ErrorKind::algebra_mismatch,
                 "family member is not a congruence of " + _f.algebra().name());
          }
        }
        switch (_op.kind()) {
          case SuperProductKind::join:
            return family_join_or_bottom(members);
          case SuperProductKind::full:
            return Congruence::full(_f.size());
          case SuperProductKind::meet: {
            if (members.empty()) {
              fail(ErrorKind::empty_family, "meet of an empty family");
            }
            Congruence result = members.front();
            for (std::size_t i = 1; i < members.size(); ++i) {
              result = meet(result, members[i]);
            }
            return result;
          }
          case SuperProductKind::rad_union: {
            std::vector<ElementPair> pairs;
            for (auto const& m : members) {
              auto const s = EquationSystem::from_congruence(m);
              pairs.insert(pairs.end(), s.pairs().begin(), s.pairs().end());
            }
            return radical(*_context, EquationSystem(pairs));
          }
        }
        return Congruence::full(_f.size());
      }

     private:
      Congruence family_join_or_bottom(std::vector<Congruence> const& members) const {
        return join_all(_f, members);
      }

      SuperProductOp const&         _op;
      FreeAlgebra const&            _f;
      std::optional<Interpretation> _context;
    };
  }  // namespace

  Congruence apply(SuperProductOp const&   op,
                   FreeAlgebra const&      f,
                   CongruenceFamily const& k) {
    return BoundOp(op, f)(k);
  }

  Congruence family_join(FreeAlgebra const& f, CongruenceFamily const& k) {
    if (k.empty()) {
      fail(ErrorKind::empty_family, "join of an empty family");
    }
    for (auto const& m : k.members()) {
      if (m.size() != f.size()) {
        fail(ErrorKind::algebra_mismatch,
             "family member is not a congruence of " + f.algebra().name());
      }
    }
    return join_all(f, k.members());
  }

  ////////////////////////////////////////////////////////////////////////
  // T map
  ////////////////////////////////////////////////////////////////////////

  namespace {
    using Bits = std::vector<std::uint64_t>;

    CongruenceFamily t_map_subsets(Interpretation const& in,
                                   EquationSystem const& s) {
      if (s.size() > 16) {
        fail(ErrorKind::limit_exceeded,
             "subset enumeration of a system with " + std::to_string(s.size())
                 + " equations (cap 16)");
      }
      std::set<Congruence> found;
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << s.size()); ++mask) {
        found.insert(radical(in, s.subsystem(mask)));
      }
      return CongruenceFamily({found.begin(), found.end()});
    }

    // Rad(S0) depends only on the solution set of S0, which is the
    // intersection of the solution sets of its equations. Closing
    // {all points} under intersection with each equation's solution set
    // yields exactly the solution sets of the subsystems.
    CongruenceFamily t_map_solution_sets(Interpretation const& in,
                                         EquationSystem const& s,
                                         Limits const&         limits) {
      std::size_t const P     = in.points();
      std::size_t const words = (P + 63) / 64;
      Bits              all(words, 0);
      for (std::size_t p = 0; p < P; ++p) {
        all[p / 64] |= std::uint64_t(1) << (p % 64);
      }
      std::set<Bits> sets{all};
      for (auto [x, y] : s.pairs()) {
        Bits agree(words, 0);
        for (std::size_t p = 0; p < P; ++p) {
          if (in.value(x, p) == in.value(y, p)) {
            agree[p / 64] |= std::uint64_t(1) << (p % 64);
          }
        }
        std::vector<Bits> added;
        for (auto const& b : sets) {
          Bits c(words);
          for (std::size_t w = 0; w < words; ++w) {
            c[w] = b[w] & agree[w];
          }
          added.push_back(std::move(c));
        }
        sets.insert(added.begin(), added.end());
        if (sets.size() > limits.family) {
          fail(ErrorKind::limit_exceeded,
               "more than " + std::to_string(limits.family)
                   + " distinct solution sets");
        }
      }
      std::set<Congruence> found;
      std::vector<std::size_t> points;
      for (auto const& b : sets) {
        points.clear();
        for (std::size_t p = 0; p < P; ++p) {
          if (b[p / 64] >> (p % 64) & 1) {
            points.push_back(p);
          }
        }
        found.insert(agreement_congruence(in, points));
      }
      return CongruenceFamily({found.begin(), found.end()});
    }

    CongruenceFamily t_map_sampled(Interpretation const& in,
                                   EquationSystem const& s,
                                   TMapOptions const&    options) {
      std::set<Congruence> found{radical(in, EquationSystem())};
      SplitMix64           g(options.seed);
      for (std::uint64_t i = 0; i < options.samples; ++i) {
        std::vector<ElementPair> chosen;
        for (auto p : s.pairs()) {
          if (g() >> 63) {
            chosen.push_back(p);
          }
        }
        found.insert(radical(in, EquationSystem(chosen)));
      }
      return CongruenceFamily({found.begin(), found.end()});
    }
  }  // namespace

  CongruenceFamily t_map(Interpretation const& in,
                         EquationSystem const& s,
                         TMapOptions const&    options,
                         Limits const&         limits) {
    switch (options.method) {
      case TMapMethod::subsets:
        return t_map_subsets(in, s);
      case TMapMethod::solution_sets:
        return t_map_solution_sets(in, s, limits);
      case TMapMethod::sampled:
        return t_map_sampled(in, s, options);
      case TMapMethod::automatic:
        break;
    }
    try {
      return t_map_solution_sets(in, s, limits);
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::limit_exceeded || !options.allow_sampling) {
        throw;
      }
    }
    return t_map_sampled(in, s, options);
  }

  CongruenceFamily t_map(FreeAlgebra const&    f,
                         EquationSystem const& s,
                         TMapOptions const&    options,
                         Limits const&         limits) {
    return t_map(Interpretation(f), s, options, limits);
  }

  ////////////////////////////////////////////////////////////////////////
  // Axiom check
  ////////////////////////////////////////////////////////////////////////

  std::vector<CongruenceFamily> random_families(FreeAlgebra const& f,
                                                std::uint64_t      count,
                                                std::uint64_t      seed,
                                                Limits const&      limits) {
    std::vector<Congruence> pool;
    if (f.size() <= limits.congruence_enum) {
      pool = all_congruences(f.algebra(), limits);
    }
    std::vector<CongruenceFamily> families;
    families.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      SplitMix64              g(mix_seed(seed, i));
      std::size_t const       k = 1 + g.below(4);
      std::vector<Congruence> members;
      for (std::size_t j = 0; j < k; ++j) {
        if (!pool.empty()) {
          members.push_back(pool[g.below(pool.size())]);
        } else {
          std::vector<ElementPair> pairs;
          std::size_t const        r = 1 + g.below(2);
          for (std::size_t t = 0; t < r; ++t) {
            pairs.emplace_back(static_cast<Element>(g.below(f.size())),
                               static_cast<Element>(g.below(f.size())));
          }
          members.push_back(generated_congruence(f.algebra(), pairs));
        }
      }
      families.emplace_back(std::move(members));
    }
    return families;
  }

  AxiomReport check_axiom(SuperProductOp const&             op,
                          FreeAlgebra const&                f,
                          std::span<CongruenceFamily const> families) {
    AxiomReport report;
    report.op      = op.name();
    report.algebra = f.base().name();
    report.n       = f.vars();
    BoundOp const bound(op, f);
    for (std::uint64_t i = 0; i < families.size(); ++i) {
      auto const& k   = families[i];
      Congruence  got = bound(k);
      ++report.families_checked;
      for (auto const& theta : k.members()) {
        if (theta.subset_of(got)) {
          continue;
        }
        ++report.failure_count;
        if (!report.witness) {
          for (Element x = 0; x < theta.size() && !report.witness; ++x) {
            Element r = theta.rep(x);
            if (!got.related(r, x)) {
              report.witness = AxiomWitness{i, k, theta, {r, x}};
            }
          }
        }
        break;
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Hypothesis and theorem
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::pair<std::string, std::string>> render_equations(
      FreeAlgebra const&    f,
      EquationSystem const& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [p, q] : s.pairs()) {
      out.emplace_back(f.witness_string(p), f.witness_string(q));
    }
    return out;
  }

  namespace {
    TMapOptions tmap_options(CheckOptions const& options) {
      TMapOptions t;
      t.allow_sampling = false;
      t.seed           = options.policy.seed;
      return t;
    }
  }  // namespace

  namespace {
    struct Pair {
      CheckReport hypothesis;
      CheckReport theorem;
    };

    // Both checks share the per-system work: C(T(S)) and Rad(S).
    Pair run_checks(SuperProductOp const& op,
                    FiniteAlgebra const&  a,
                    std::size_t           n,
                    CheckOptions const&   options,
                    bool                  theorem) {
      auto const f = build_free(a, n, options.limits);
      Pair       out;
      for (auto* r : {&out.hypothesis, &out.theorem}) {
        r->op      = op.name();
        r->algebra = a.name();
        r->n       = n;
      }
      out.hypothesis.check = "hypothesis";
      out.theorem.check    = "theorem";
      Interpretation const in(f);
      BoundOp const        bound(op, f);
      auto const           topts = tmap_options(options);
      using Slot = std::array<std::optional<detail::Outcome>, 2>;
      auto check = [&](EquationSystem const& s) {
        Slot       slot;
        Congruence expected = radical(in, s);
        Congruence got      = bound(t_map(in, s, topts, options.limits));
        if (!got.subset_of(expected)) {
          slot[0] = detail::Outcome{expected, got};
        }
        if (theorem && got != expected) {
          slot[1] = detail::Outcome{std::move(expected), std::move(got)};
        }
        return slot;
      };
      detail::run_systems<2>(f, options, {&out.hypothesis, &out.theorem}, check);
      out.hypothesis.scope += "; checked for this algebra only, not for every "
                              "member of the variety";
      out.hypothesis.verdict = out.hypothesis.failure_count == 0 ? "pass" : "fail";
      return out;
    }
  }  // namespace

  CheckReport check_hypothesis(SuperProductOp const& op,
                               FiniteAlgebra const&  b,
                               std::size_t           n,
                               CheckOptions const&   options) {
    return run_checks(op, b, n, options, false).hypothesis;
  }

  CheckReport check_theorem(SuperProductOp const& op,
                            FiniteAlgebra const&  a,
                            std::size_t           n,
                            CheckOptions const&   options) {
    auto [hyp, report] = run_checks(op, a, n, options, true);
    if (!hyp.passed() && !options.force) {
      fail(ErrorKind::hypothesis_not_established,
           "C(T(S)) is not contained in Rad(S) for " + op.name() + " over "
               + a.name() + " (" + std::to_string(hyp.failure_count)
               + " counterexamples)");
    }
    report.hypothesis = hyp.passed() ? "established" : "not-established";
    if (report.failure_count == 0) {
      report.verdict = "pass";
    } else {
      report.verdict = hyp.passed() ? "fail" : "expected-fail";
    }
    return report;
  }

}  // namespace ualgeo
