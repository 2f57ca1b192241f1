#include "ualgeo/filterpower.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ualgeo/error.hpp"
#include "run_systems.hpp"

namespace ualgeo {

  ////////////////////////////////////////////////////////////////////////
  // Filters
  ////////////////////////////////////////////////////////////////////////

  Filter Filter::principal(std::size_t index_size, std::vector<std::size_t> core) {
    if (index_size > 31) {
      fail(ErrorKind::limit_exceeded, "index sets are limited to 31 points");
    }
    if (core.empty()) {
      fail(ErrorKind::improper_filter, "the core of a proper filter is nonempty");
    }
    for (auto i : core) {
      if (i >= index_size) {
        fail(ErrorKind::out_of_range,
             "core index " + std::to_string(i + 1) + " is not in I = {1.."
                 + std::to_string(index_size) + "}");
      }
    }
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    return Filter(index_size, std::move(core));
  }

  Filter Filter::from_members(std::size_t                    index_size,
                              std::span<std::uint32_t const> members) {
    if (index_size > 16) {
      fail(ErrorKind::limit_exceeded,
           "explicit member sets are limited to |I| <= 16");
    }
    std::uint32_t const universe = (std::uint32_t(1) << index_size) - 1;
    std::set<std::uint32_t> set(members.begin(), members.end());
    if (set.empty()) {
      fail(ErrorKind::improper_filter, "a filter has at least the member I");
    }
    std::uint32_t core = universe;
    for (auto x : set) {
      if (x & ~universe) {
        fail(ErrorKind::out_of_range,
             "member " + std::to_string(x) + " is not a subset of I");
      }
      core &= x;
    }
    for (auto x : set) {
      for (auto y : set) {
        if (!set.contains(x & y)) {
          fail(ErrorKind::improper_filter, "members are not closed under intersection");
        }
      }
    }
    if (core == 0) {
      fail(ErrorKind::improper_filter, "the empty set is a member");
    }
    for (std::uint32_t x = 0; x <= universe; ++x) {
      if ((x & core) == core && !set.contains(x)) {
        fail(ErrorKind::improper_filter, "members are not upward closed");
      }
    }
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < index_size; ++i) {
      if (core >> i & 1) {
        indices.push_back(i);
      }
    }
    return Filter(index_size, std::move(indices));
  }

  std::uint32_t Filter::core_mask() const noexcept {
    std::uint32_t mask = 0;
    for (auto i : _core) {
      mask |= std::uint32_t(1) << i;
    }
    return mask;
  }

  std::vector<std::uint32_t> Filter::members() const {
    if (_index_size > 16) {
      fail(ErrorKind::limit_exceeded, "member listing is limited to |I| <= 16");
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < (std::uint32_t(1) << _index_size); ++x) {
      if (contains(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Filter powers
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Index in A^|J| of the restriction of tuple t of A^I to the core.
    std::size_t restrict_tuple(std::size_t         t,
                               std::size_t         radix,
                               Filter const&       filter) {
      auto const  tuple = decode_tuple(t, radix, filter.index_size());
      std::size_t out   = 0;
      for (auto i : filter.core()) {
        out = out * radix + tuple[i];
      }
      return out;
    }

    std::string core_string(Filter const& filter) {
      std::string out = "{";
      for (std::size_t j = 0; j < filter.core().size(); ++j) {
        out += (j == 0 ? "" : ",") + std::to_string(filter.core()[j] + 1);
      }
      return out + "}";
    }
  }  // namespace

  Congruence filter_congruence(FiniteAlgebra const& a,
                               Filter const&        filter,
                               Limits const&        limits) {
    auto const size = checked_power(a.size(), filter.index_size(), limits.carrier);
    if (!size) {
      fail(ErrorKind::limit_exceeded,
           a.name() + "^" + std::to_string(filter.index_size())
               + " exceeds the carrier cap");
    }
    std::vector<std::size_t> labels(*size);
    for (std::size_t t = 0; t < *size; ++t) {
      labels[t] = restrict_tuple(t, a.size(), filter);
    }
    return Congruence::from_labels(std::span<std::size_t const>(labels));
  }

  FilterPower filter_power(FiniteAlgebra const& a,
                           Filter const&        filter,
                           Limits const&        limits) {
    auto const power = direct_power(a, filter.index_size(), limits);
    auto const theta = filter_congruence(a, filter, limits);
    auto       q     = quotient(power, theta);
    auto restricted  = direct_power(a, filter.core().size(), limits);

    std::vector<Element> map(q.algebra.size());
    for (std::size_t t = 0; t < power.size(); ++t) {
      map[q.projection.map[t]]
          = static_cast<Element>(restrict_tuple(t, a.size(), filter));
    }
    std::vector<Element> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    bool const bijective = q.algebra.size() == restricted.size()
                           && std::adjacent_find(sorted.begin(), sorted.end())
                                  == sorted.end();
    if (!bijective || !is_homomorphism(q.algebra, restricted, map)) {
      throw std::logic_error("restriction map of the filter power of " + a.name()
                             + " failed its isomorphism certificate");
    }
    auto name = a.name() + "^" + std::to_string(filter.index_size()) + "/"
                + core_string(filter);
    return {q.algebra.renamed(std::move(name)),
            std::move(restricted),
            Homomorphism{std::move(map)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Geometric equivalence
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct ClassInfo {
      std::uint64_t least;  // least system, as a bitmask, with these solutions
      std::uint64_t count;  // number of systems with these solutions
    };

    // Every system over f, grouped by its pair of solution sets in A^n and
    // B^n. Adding equation p to a system intersects both sets with the
    // agreement sets of p, so after step p the classes are exactly those of
    // the systems inside the first p + 1 pairs.
    std::map<std::vector<std::uint64_t>, ClassInfo>
    solution_classes(std::vector<ElementPair> const& pairs,
                     RadicalTable const&             rad_a,
                     RadicalTable const&             rad_b,
                     std::size_t                     points_a,
                     std::size_t                     points_b,
                     Limits const&                   limits) {
      std::size_t const          wa = rad_a.words(), wb = rad_b.words();
      std::vector<std::uint64_t> all(wa + wb, ~std::uint64_t(0));
      if (points_a % 64 != 0) {
        all[wa - 1] = (std::uint64_t(1) << (points_a % 64)) - 1;
      }
      if (points_b % 64 != 0) {
        all[wa + wb - 1] = (std::uint64_t(1) << (points_b % 64)) - 1;
      }
      std::map<std::vector<std::uint64_t>, ClassInfo> classes{{all, {0, 1}}};
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto const [x, y] = pairs[p];
        auto const ga     = rad_a.agreement(x, y);
        auto const gb     = rad_b.agreement(x, y);
        auto       next   = classes;
        for (auto const& [key, info] : classes) {
          auto cut = key;
          for (std::size_t w = 0; w < wa; ++w) {
            cut[w] &= ga[w];
          }
          for (std::size_t w = 0; w < wb; ++w) {
            cut[wa + w] &= gb[w];
          }
          std::uint64_t const least = info.least | std::uint64_t(1) << p;
          auto [it, fresh] = next.try_emplace(std::move(cut), ClassInfo{least, 0});
          it->second.least = std::min(it->second.least, least);
          it->second.count += info.count;
        }
        if (next.size() > limits.systems) {
          fail(ErrorKind::limit_exceeded,
               "more than " + std::to_string(limits.systems)
                   + " distinct solution sets");
        }
        classes = std::move(next);
      }
      return classes;
    }

    EquationSystem system_of(std::vector<ElementPair> const& pairs, std::uint64_t mask) {
      std::vector<ElementPair> chosen;
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (mask >> b & 1) {
          chosen.push_back(pairs[b]);
        }
      }
      return EquationSystem(chosen);
    }

  }  // namespace

  GeomEqReport geometric_equivalence(FiniteAlgebra const&         a,
                                     FiniteAlgebra const&         b,
                                     std::span<std::size_t const> n_values,
                                     CheckOptions const&          options) {
    if (a.signature() != b.signature()) {
      fail(ErrorKind::signature_mismatch,
           a.name() + " and " + b.name() + " have different signatures");
    }
    GeomEqReport report;
    report.algebra  = a.name();
    report.other    = b.name();
    report.n_values = {n_values.begin(), n_values.end()};
    report.verdict  = "equivalent";
    std::vector<std::string> scopes;
    for (auto n : n_values) {
      auto const f = build_free(a, n, options.limits);
      Interpretation const in_a(f);
      std::optional<Interpretation> in_b;
      try {
        in_b.emplace(f, b, options.limits);
      } catch (Error const& e) {
        if (e.kind() != ErrorKind::incomparable_free_algebra) {
          throw;
        }
        report.verdict = "incomparable";
        report.reason  = e.what();
        report.failures.clear();
        report.failure_count = 0;
        break;
      }
      RadicalTable const rad_a(in_a, options.limits);
      RadicalTable const rad_b(*in_b, options.limits);
      auto const         pairs = off_diagonal_pairs(f.size());
      if (options.policy.kind != PolicyKind::sample && pairs.size() < 64) {
        // Exact over all 2^k systems, one radical pair per solution class.
        auto const classes = solution_classes(
            pairs, rad_a, rad_b, in_a.points(), in_b->points(), options.limits);
        std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> bad;
        std::size_t const wa = rad_a.words();
        for (auto const& [key, info] : classes) {
          std::span<std::uint64_t const> const k(key);
          if (rad_a.radical(k.first(wa)) != rad_b.radical(k.subspan(wa))) {
            bad.emplace_back(info.least, key);
            report.failure_count += info.count;
          }
        }
        std::sort(bad.begin(), bad.end());
        for (auto const& [least, key] : bad) {
          if (report.failures.size() >= options.max_failures) {
            break;
          }
          std::span<std::uint64_t const> const k(key);
          auto s = system_of(pairs, least);
          auto eq = render_equations(f, s);
          report.failures.push_back(
              {n,
               {least, std::move(s), std::move(eq), rad_a.radical(k.first(wa)),
                rad_b.radical(k.subspan(wa))}});
        }
        std::uint64_t const total = std::uint64_t(1) << pairs.size();
        report.policy             = PolicyKind::exhaustive;
        report.seed.reset();
        report.systems_checked += total;
        scopes.push_back("algebra " + a.name() + ", n = " + std::to_string(n)
                         + ", exhaustive policy, " + std::to_string(total)
                         + " systems in " + std::to_string(classes.size())
                         + " solution classes over a free algebra of size "
                         + std::to_string(f.size()));
        continue;
      }
      CheckReport        part;
      CheckOptions       local = options;
      local.max_failures = options.max_failures > report.failures.size()
                               ? options.max_failures - report.failures.size()
                               : 0;
      detail::run_systems(f, local, part, [&](EquationSystem const& s) {
        std::optional<detail::Outcome> out;
        auto x = rad_a.radical(s);
        auto y = rad_b.radical(s);
        if (x != y) {
          out = detail::Outcome{std::move(x), std::move(y)};
        }
        return out;
      });
      report.policy = part.policy;
      report.seed   = part.seed;
      report.systems_checked += part.systems_checked;
      report.failure_count += part.failure_count;
      for (auto& failure : part.failures) {
        report.failures.push_back({n, std::move(failure)});
      }
      scopes.push_back(part.scope);
    }
    if (report.verdict != "incomparable" && report.failure_count > 0) {
      report.verdict = "not-equivalent";
    }
    for (std::size_t i = 0; i < scopes.size(); ++i) {
      report.scope += (i == 0 ? "" : "; ") + scopes[i];
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coordinate algebras
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra coordinate_algebra(FreeAlgebra const& f, EquationSystem const& s) {
    return quotient(f.algebra(), radical(f, s)).algebra;
  }

  CoordinateEmbedding coordinate_embedding(FreeAlgebra const&    f,
                                           EquationSystem const& s) {
    Interpretation const in(f);
    auto const           theta  = radical(in, s);
    auto const           points = satisfying_points(in, s);
    auto                 q      = quotient(f.algebra(), theta);

    CoordinateEmbedding out{q.algebra, points.size(), {}, {}, false, false};
    for (auto p : points) {
      out.assignments.push_back(decode_tuple(p, f.base().size(), f.vars()));
    }
    out.images.assign(q.algebra.size(), {});
    std::vector<bool> seen(q.algebra.size(), false);
    for (std::size_t e = 0; e < f.size(); ++e) {
      auto const c = q.projection.map[e];
      if (!seen[c]) {
        seen[c] = true;
        for (auto p : points) {
          out.images[c].push_back(f.value(e, p));
        }
      }
    }
    if (out.m == 0) {
      // F/F² is trivial and A^0 is the one-element algebra.
      out.injective    = q.algebra.size() == 1;
      out.homomorphism = out.injective;
      return out;
    }

    std::set<std::vector<Element>> distinct(out.images.begin(), out.images.end());
    out.injective = distinct.size() == out.images.size();

    auto const&          c   = q.algebra;
    auto const&          a   = f.base();
    out.homomorphism         = true;
    std::vector<Element> args;
    for (std::size_t op = 0; op < c.signature().size() && out.homomorphism; ++op) {
      std::size_t const    k = c.signature()[op].arity;
      std::vector<Element> t(k, 0);
      args.resize(k);
      while (out.homomorphism) {
        auto const& image = out.images[c.apply(op, t)];
        for (std::size_t j = 0; j < out.m; ++j) {
          for (std::size_t i = 0; i < k; ++i) {
            args[i] = out.images[t[i]][j];
          }
          if (a.apply(op, args) != image[j]) {
            out.homomorphism = false;
            break;
          }
        }
        std::size_t i = k;
        while (i > 0 && ++t[i - 1] == c.size()) {
          t[i - 1] = 0;
          --i;
        }
        if (i == 0) {
          break;
        }
      }
    }
    return out;
  }

  CheckReport check_lemma(FiniteAlgebra const& a,
                          std::size_t          n,
                          CheckOptions const&  options) {
    auto const  f = build_free(a, n, options.limits);
    CheckReport report;
    report.check   = "lemma1";
    report.op      = "pvar";
    report.algebra = a.name();
    report.n       = n;
    Interpretation const in(f);
    detail::run_systems(f, options, report, [&](EquationSystem const& s) {
      std::optional<detail::Outcome> out;
      auto       rad  = radical(in, s);
      auto const var  = rad_var(f, s);
      auto       pvar = rad_pvar_oracle(f, s, options.limits);
      bool const ok   = var.subset_of(pvar) && pvar == rad
                      && coordinate_embedding(f, s).verified();
      if (!ok) {
        out = detail::Outcome{std::move(rad), std::move(pvar)};
      }
      return out;
    });
    report.verdict = report.failure_count == 0 ? "pass" : "fail";
    return report;
  }

}  // namespace ualgeo
