#include "ualgeo/suite.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "ualgeo/error.hpp"
#include "ualgeo/filterpower.hpp"
#include "ualgeo/parallel.hpp"

namespace ualgeo {

  std::vector<FiniteAlgebra> load_corpus(std::filesystem::path const& dir) {
    if (!std::filesystem::is_directory(dir)) {
      fail(ErrorKind::invalid_input, "corpus directory " + dir.string() + " not found");
    }
    std::vector<std::filesystem::path> files;
    for (auto const& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    std::vector<FiniteAlgebra> out;
    for (auto const& p : files) {
      out.push_back(read_algebra(p));
    }
    return out;
  }

  namespace {
    // Systems over F(n) are enumerated exhaustively in the sections that also
    // walk subsets only when there are at most this many.
    constexpr std::uint64_t small_scope = 1024;

    Json verdict(Json j, bool ok) {
      j["verdict"] = ok ? "pass" : "fail";
      return j;
    }

    Json head(std::string const& section, FiniteAlgebra const& a, std::size_t n) {
      Json j;
      j["section"] = section;
      j["algebra"] = a.name();
      j["n"]       = n;
      return j;
    }

    bool small(FreeAlgebra const& f, SuiteOptions const& o) {
      SystemPolicy p{PolicyKind::automatic, o.policy.seed, o.policy.count};
      Limits       l = o.limits;
      l.systems      = small_scope;
      return SystemEnumerator(f.size(), p, l).kind() == PolicyKind::exhaustive;
    }

    CheckOptions check_options(SuiteOptions const& o) {
      CheckOptions c;
      c.policy = o.policy;
      c.jobs   = o.jobs;
      c.limits = o.limits;
      return c;
    }

    ////////////////////////////////////////////////////////////////////////
    // Radical laws
    ////////////////////////////////////////////////////////////////////////

    struct LawCounts {
      std::uint64_t extensive  = 0;
      std::uint64_t monotone   = 0;
      std::uint64_t idempotent = 0;
      std::uint64_t union_id   = 0;
      bool          union_checked = false;
    };

    // Set union of the relations radical(S0) over all subsystems S0.
    bool union_identity(Interpretation const& in,
                        EquationSystem const& s,
                        Congruence const&     rad) {
      std::size_t const m = in.free().size();
      std::vector<bool> related(m * m, false);
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << s.size()); ++mask) {
        auto const r = radical(in, s.subsystem(mask));
        for (Element x = 0; x < m; ++x) {
          for (Element y = 0; y < m; ++y) {
            if (r.related(x, y)) {
              related[x * m + y] = true;
            }
          }
        }
      }
      for (Element x = 0; x < m; ++x) {
        for (Element y = 0; y < m; ++y) {
          if (related[x * m + y] != rad.related(x, y)) {
            return false;
          }
        }
      }
      return true;
    }

    Json radical_laws(FiniteAlgebra const& a, std::size_t n, SuiteOptions const& o) {
      auto const           f = build_free(a, n, o.limits);
      Interpretation const in(f);
      bool const           exhaustive = small(f, o);
      SystemPolicy         policy     = o.policy;
      if (exhaustive) {
        policy.kind = PolicyKind::exhaustive;
      }
      SystemEnumerator const systems(f.size(), policy, o.limits);
      auto const&            pairs = systems.pair_set();
      std::vector<LawCounts> slots(systems.count());
      parallel_for(systems.count(), o.jobs, [&](std::uint64_t i) {
        auto const s   = systems[i];
        auto const rad = radical(in, s);
        auto&      c   = slots[i];
        for (auto [x, y] : s.pairs()) {
          c.extensive += !rad.related(x, y);
        }
        c.idempotent += radical(in, EquationSystem::from_congruence(rad)) != rad;
        // Monotonicity along covering steps S ⊂ S ∪ {p} implies it for all
        // S ⊆ S'. Sampled systems take one deterministic step.
        for (std::size_t b = 0; b < pairs.size(); ++b) {
          if (!exhaustive && b != i % pairs.size()) {
            continue;
          }
          if (!s.contains(pairs[b])) {
            c.monotone += !rad.subset_of(radical(in, s.with(pairs[b])));
          }
        }
        // Every subsystem is visited, so sampled systems are limited to at
        // most 2^6 of them.
        if (exhaustive || s.size() <= 6) {
          c.union_checked = true;
          c.union_id += !union_identity(in, s, rad);
        }
      });
      LawCounts     total;
      std::uint64_t union_systems = 0;
      for (auto const& c : slots) {
        total.extensive += c.extensive;
        total.monotone += c.monotone;
        total.idempotent += c.idempotent;
        total.union_id += c.union_id;
        union_systems += c.union_checked;
      }
      Json j                       = head("radical-laws", a, n);
      j["policy"]                  = to_string(systems.kind());
      j["systems_checked"]         = systems.count();
      j["extensive_violations"]    = total.extensive;
      j["monotone_violations"]     = total.monotone;
      j["idempotent_violations"]   = total.idempotent;
      j["union_systems_checked"]   = union_systems;
      j["union_violations"]        = total.union_id;
      bool const ok = total.extensive + total.monotone + total.idempotent
                          + total.union_id
                      == 0;
      return verdict(std::move(j), ok);
    }

    ////////////////////////////////////////////////////////////////////////
    // Super-product operations
    ////////////////////////////////////////////////////////////////////////

    std::vector<SuperProductOp> operations(FiniteAlgebra const& a) {
      return {SuperProductOp::join(),
              SuperProductOp::rad_union(a),
              SuperProductOp::full(),
              SuperProductOp::meet()};
    }

    void axiom_sections(FiniteAlgebra const& a,
                        std::size_t          n,
                        SuiteOptions const&  o,
                        Json&                out) {
      auto const f        = build_free(a, n, o.limits);
      auto const families = random_families(f, o.families, o.policy.seed, o.limits);
      for (auto const& op : operations(a)) {
        auto const report   = check_axiom(op, f, families);
        bool const control  = op.kind() == SuperProductKind::meet && f.size() > 1;
        Json       j        = head("axiom", a, n);
        j["op"]             = op.name();
        j["expected"]       = control ? "fail" : "pass";
        j["report"]         = report_to_json(report, f);
        bool const ok       = report.passed() != control;
        out.push_back(verdict(std::move(j), ok));
      }
    }

    void theorem_sections(FiniteAlgebra const& a,
                          std::size_t          n,
                          SuiteOptions const&  o,
                          Json&                out) {
      auto const f    = build_free(a, n, o.limits);
      auto       opts = check_options(o);
      for (auto const& op : operations(a)) {
        bool const trivial = f.size() == 1;
        auto const hyp     = check_hypothesis(op, a, n, opts);
        Json       j       = head("hypothesis", a, n);
        j["op"]            = op.name();
        bool const full    = op.kind() == SuperProductKind::full;
        j["expected"]      = full && !trivial ? "fail" : "pass";
        j["report"]        = report_to_json(f, hyp);
        bool ok            = hyp.passed() == (!full || trivial);
        if (full && !trivial) {
          // The first counterexample is the empty system: F² ⊄ Δ.
          ok = ok && !hyp.failures.empty() && hyp.failures.front().system.empty();
        }
        out.push_back(verdict(std::move(j), ok));
        if (!hyp.passed()) {
          continue;
        }
        auto const thm     = check_theorem(op, a, n, opts);
        bool const meet    = op.kind() == SuperProductKind::meet;
        Json       t       = head("theorem", a, n);
        t["op"]            = op.name();
        t["expected"]      = meet && !trivial ? "fail" : "pass";
        t["report"]        = report_to_json(f, thm);
        out.push_back(verdict(std::move(t), thm.passed() == (!meet || trivial)));
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Filter powers
    ////////////////////////////////////////////////////////////////////////

    // Compares the truth of every quasi-identity with at most two body
    // equations over F(n) in A and in B. Returns the number of disagreements.
    std::uint64_t quasi_identity_transfer(FreeAlgebra const&   f,
                                          FiniteAlgebra const& b,
                                          unsigned             jobs,
                                          Limits const&        limits,
                                          std::uint64_t&       checked) {
      Interpretation const in_a(f);
      Interpretation const in_b(f, b, limits);
      auto const           pairs = off_diagonal_pairs(f.size());
      std::vector<EquationSystem> bodies{EquationSystem()};
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        bodies.push_back({pairs[i]});
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
          bodies.push_back({pairs[i], pairs[j]});
        }
      }
      std::vector<std::uint64_t> slots(bodies.size(), 0);
      parallel_for(bodies.size(), jobs, [&](std::uint64_t i) {
        for (auto const& h : pairs) {
          slots[i] += holds_quasi_identity(in_a, bodies[i], h).holds
                      != holds_quasi_identity(in_b, bodies[i], h).holds;
        }
      });
      checked += bodies.size() * pairs.size();
      std::uint64_t total = 0;
      for (auto x : slots) {
        total += x;
      }
      return total;
    }

    void filter_sections(FiniteAlgebra const& a, SuiteOptions const& o, Json& out) {
      std::vector<std::size_t> const ns{1, 2};
      std::vector<FreeAlgebra>       free;
      for (auto n : ns) {
        free.push_back(build_free(a, n, o.limits));
      }
      for (std::size_t index = 1; index <= 3; ++index) {
        for (std::uint32_t mask = 1; mask < (1u << index); ++mask) {
          std::vector<std::size_t> core;
          for (std::size_t i = 0; i < index; ++i) {
            if (mask >> i & 1) {
              core.push_back(i);
            }
          }
          auto const filter = Filter::principal(index, core);
          Json       j      = head("filter-power", a, 0);
          j.erase("n");
          j["index_size"] = index;
          std::vector<std::size_t> one_based;
          for (auto i : core) {
            one_based.push_back(i + 1);
          }
          j["core"] = one_based;
          bool ok   = true;
          std::optional<FilterPower> fp;
          try {
            fp.emplace(filter_power(a, filter, o.limits));
            j["certificate"] = "verified";
          } catch (std::logic_error const& e) {
            j["certificate"] = e.what();
            out.push_back(verdict(std::move(j), false));
            continue;
          }
          j["power"] = fp->algebra.name();
          j["size"]  = fp->algebra.size();
          auto const geq = geometric_equivalence(a, fp->algebra, ns, check_options(o));
          j["geometric_equivalence"] = report_to_json(geq, a);
          ok                         = ok && geq.passed();
          std::uint64_t checked = 0, disagreements = 0;
          for (auto const& f : free) {
            disagreements
                += quasi_identity_transfer(f, fp->algebra, o.jobs, o.limits, checked);
          }
          j["quasi_identities_checked"]   = checked;
          j["quasi_identity_disagreements"] = disagreements;
          ok = ok && disagreements == 0;
          out.push_back(verdict(std::move(j), ok));
        }
      }
    }

    void lemma_sections(FiniteAlgebra const& a, SuiteOptions const& o, Json& out) {
      for (std::size_t n = 1; n <= 2; ++n) {
        auto const f = build_free(a, n, o.limits);
        if (!small(f, o)) {
          continue;
        }
        auto opts        = check_options(o);
        opts.policy.kind = PolicyKind::exhaustive;
        auto const r     = check_lemma(a, n, opts);
        Json       j     = head("lemma1", a, n);
        j["report"]      = report_to_json(f, r);
        out.push_back(verdict(std::move(j), r.passed()));
      }
    }

    FiniteAlgebra const* by_name(std::vector<FiniteAlgebra> const& corpus,
                                 std::string const&                name) {
      for (auto const& a : corpus) {
        if (a.name() == name) {
          return &a;
        }
      }
      return nullptr;
    }

    void negative_sections(std::vector<FiniteAlgebra> const& corpus,
                           SuiteOptions const&               o,
                           Json&                             out) {
      auto const* s2  = by_name(corpus, "S2");
      auto const* tr  = by_name(corpus, "trivial");
      if (s2 && tr) {
        std::vector<std::size_t> const ns{1, 2};
        auto const r = geometric_equivalence(*s2, *tr, ns, check_options(o));
        Json       j;
        j["section"]  = "discrimination";
        j["case"]     = "S2 vs trivial";
        j["expected"] = "not-equivalent with witness S = {}";
        j["report"]   = report_to_json(r, *s2);
        bool const ok = r.verdict == "not-equivalent" && r.witness()
                        && r.witness()->failure.system.empty();
        out.push_back(verdict(std::move(j), ok));
      }
      if (auto const* z2 = by_name(corpus, "Z2")) {
        auto const         square = direct_power(*z2, 2, o.limits);
        std::vector<Block> bad{{0, 2}, {1}, {3}};
        auto const         check = is_congruence(square, bad);
        Json               j;
        j["section"]   = "discrimination";
        j["case"]      = "bad partition of Z2^2";
        j["partition"] = bad;
        j["expected"]  = "rejected with an operation witness";
        if (check.witness) {
          j["witness"] = {{"op", square.signature()[check.witness->op].name},
                          {"lhs", check.witness->lhs},
                          {"rhs", check.witness->rhs}};
        }
        out.push_back(verdict(std::move(j), !check.ok && check.witness));
      }
    }
  }  // namespace

  SuiteResult run_suite(SuiteOptions const& options) {
    auto const corpus = load_corpus(options.corpus);
    Json       sections = Json::array();
    for (auto const& a : corpus) {
      Json sizes = head("free", a, 0);
      sizes.erase("n");
      for (std::size_t n = 1; n <= 2; ++n) {
        sizes["sizes"][std::to_string(n)] = build_free(a, n, options.limits).size();
      }
      sections.push_back(verdict(std::move(sizes), true));
      sections.push_back(radical_laws(a, 2, options));
      axiom_sections(a, 2, options, sections);
      theorem_sections(a, 2, options, sections);
      filter_sections(a, options, sections);
      lemma_sections(a, options, sections);
    }
    negative_sections(corpus, options, sections);

    SuiteResult result;
    result.passed = true;
    std::uint64_t failed = 0;
    for (auto const& s : sections) {
      if (s["verdict"] != "pass") {
        result.passed = false;
        ++failed;
      }
    }
    Json& j = result.report;
    j["suite"]  = "ualgeo";
    j["corpus"] = Json::array();
    for (auto const& a : corpus) {
      j["corpus"].push_back(a.name());
    }
    j["policy"]          = to_string(options.policy.kind);
    j["seed"]            = options.policy.seed;
    j["samples"]         = options.policy.count;
    j["families"]        = options.families;
    j["sections"]        = std::move(sections);
    j["sections_failed"] = failed;
    j["verdict"]         = result.passed ? "pass" : "fail";
    return result;
  }

}  // namespace ualgeo
