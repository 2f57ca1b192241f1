// Command-line front end. Exit codes: 0 success or verdict pass, 1 verdict
// fail, 2 usage or file error, 3 cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ualgeo/error.hpp"
#include "ualgeo/filterpower.hpp"
#include "ualgeo/io.hpp"
#include "ualgeo/suite.hpp"

#ifndef UALGEO_CORPUS_DIR
#define UALGEO_CORPUS_DIR "data/corpus"
#endif

using namespace ualgeo;

namespace {

  constexpr int exit_pass  = 0;
  constexpr int exit_fail  = 1;
  constexpr int exit_usage = 2;
  constexpr int exit_cap   = 3;

  struct Config {
    std::string           algebra;
    std::size_t           vars = 0;
    std::string           system;
    std::string           op;
    std::string           context;
    std::string           other;
    std::string           policy = "auto";
    std::optional<std::uint64_t> seed;
    std::uint64_t         samples = 10000;
    std::uint64_t         families = 1000;
    bool                  json = false;
    unsigned              jobs = 1;
    bool                  force = false;
    std::size_t           index_size = 0;
    std::string           core;
    std::string           corpus = UALGEO_CORPUS_DIR;
    std::optional<std::size_t>   cap_free;
    std::optional<std::size_t>   cap_carrier;
    std::optional<std::uint64_t> cap_systems;
    Limits                limits;
  };

  [[noreturn]] void usage(std::string const& what) {
    fail(ErrorKind::invalid_input, what);
  }

  // UALGEO_CAP_OVERRIDE is a comma-separated list of name=value pairs, for
  // example "free_elements=8192,systems=4194304".
  void apply_cap_override(Limits& limits, char const* text) {
    if (text == nullptr || *text == '\0') {
      return;
    }
    std::stringstream in(text);
    std::string       item;
    while (std::getline(in, item, ',')) {
      auto const eq = item.find('=');
      if (eq == std::string::npos) {
        usage("UALGEO_CAP_OVERRIDE entry \"" + item + "\" is not name=value");
      }
      auto const        name = item.substr(0, eq);
      std::uint64_t     value;
      try {
        std::size_t used = 0;
        value            = std::stoull(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1 || value == 0) {
          throw std::invalid_argument(item);
        }
      } catch (std::exception const&) {
        usage("UALGEO_CAP_OVERRIDE value in \"" + item + "\" is not a positive integer");
      }
      if (name == "carrier") {
        limits.carrier = value;
      } else if (name == "hom_nodes") {
        limits.hom_nodes = value;
      } else if (name == "congruence_enum") {
        limits.congruence_enum = value;
      } else if (name == "free_elements") {
        limits.free_elements = value;
      } else if (name == "free_points") {
        limits.free_points = value;
      } else if (name == "systems") {
        limits.systems = value;
      } else if (name == "terms") {
        limits.terms = value;
      } else if (name == "interval") {
        limits.interval = value;
      } else if (name == "family") {
        limits.family = value;
      } else {
        usage("UALGEO_CAP_OVERRIDE names unknown cap \"" + name + "\"");
      }
    }
  }

  void finalize(Config& c) {
    apply_cap_override(c.limits, std::getenv("UALGEO_CAP_OVERRIDE"));
    if (c.cap_free) {
      c.limits.free_elements = *c.cap_free;
    }
    if (c.cap_carrier) {
      c.limits.carrier = *c.cap_carrier;
    }
    if (c.cap_systems) {
      c.limits.systems = *c.cap_systems;
    }
    if (c.policy == "sample" && !c.seed) {
      usage("--policy sample requires --seed");
    }
  }

  SystemPolicy policy_of(Config const& c) {
    return {parse_policy(c.policy), c.seed.value_or(0), c.samples};
  }

  CheckOptions check_options(Config const& c) {
    CheckOptions o;
    o.policy = policy_of(c);
    o.jobs   = c.jobs;
    o.force  = c.force;
    o.limits = c.limits;
    return o;
  }

  // A bare file name that does not exist is looked up in the bundled corpus.
  std::filesystem::path resolve(std::string const& path) {
    std::filesystem::path const p(path);
    if (!std::filesystem::exists(p) && !p.has_parent_path()) {
      auto bundled = std::filesystem::path(UALGEO_CORPUS_DIR) / p;
      if (std::filesystem::exists(bundled)) {
        return bundled;
      }
    }
    return p;
  }

  FiniteAlgebra read_named(std::string const& path) {
    return read_algebra(resolve(path));
  }

  FiniteAlgebra load_algebra(std::string const& path) {
    if (path.empty()) {
      usage("--algebra is required");
    }
    return read_named(path);
  }

  std::size_t require_vars(Config const& c) {
    if (c.vars == 0) {
      usage("--vars must be a positive integer");
    }
    return c.vars;
  }

  std::string render_block(FreeAlgebra const& f, Block const& block) {
    std::string out = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
      out += (i == 0 ? "" : ", ") + f.witness_string(block[i]);
    }
    return out + "}";
  }

  std::string render(FreeAlgebra const& f, Congruence const& theta) {
    auto const  blocks = theta.blocks();
    std::string out    = "{";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      out += (i == 0 ? "" : ", ") + render_block(f, blocks[i]);
    }
    return out + "}";
  }

  std::string render_plain(Congruence const& theta) {
    auto const  blocks = theta.blocks();
    std::string out    = "{";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      out += i == 0 ? "{" : ", {";
      for (std::size_t j = 0; j < blocks[i].size(); ++j) {
        out += (j == 0 ? "" : ", ") + std::to_string(blocks[i][j]);
      }
      out += "}";
    }
    return out + "}";
  }

  std::string render(FreeAlgebra const& f, EquationSystem const& s) {
    std::string out = "{";
    bool        first = true;
    for (auto const& [lhs, rhs] : render_equations(f, s)) {
      out += (first ? "" : ", ") + lhs + " = " + rhs;
      first = false;
    }
    return out + "}";
  }

  void print_json(Json const& j) {
    std::cout << j.dump(2) << '\n';
  }

  SuperProductOp operation_of(Config const& c, FiniteAlgebra const& a) {
    if (c.op.empty()) {
      usage("--op is required (join, radunion, full or meet)");
    }
    std::optional<FiniteAlgebra> context;
    if (c.op == "radunion") {
      context = c.context.empty() ? a : read_named(c.context);
    }
    return SuperProductOp::parse(c.op, std::move(context));
  }

  // Reads the system file and normalizes it into F(n).
  struct LoadedSystem {
    FreeAlgebra    free;
    EquationSystem system;
  };

  LoadedSystem load_system(Config const& c, FiniteAlgebra const& a) {
    if (c.system.empty()) {
      usage("--system is required");
    }
    auto const file = read_system(c.system, a.signature());
    if (c.vars != 0 && c.vars != file.vars) {
      usage("--vars " + std::to_string(c.vars) + " differs from the system's vars "
            + std::to_string(file.vars));
    }
    auto f = build_free(a, file.vars, c.limits);
    auto s = EquationSystem::from_terms(f, file.equations);
    return {std::move(f), std::move(s)};
  }

  int print_check(FreeAlgebra const& f, CheckReport const& r, bool json) {
    if (json) {
      print_json(report_to_json(f, r));
    } else {
      std::cout << r.check << " " << r.op << " on " << r.algebra << ", n = " << r.n
                << ": " << r.verdict << '\n';
      std::cout << "  policy " << to_string(r.policy);
      if (r.seed) {
        std::cout << " (seed " << *r.seed << ")";
      }
      std::cout << ", " << r.systems_checked << " systems checked, "
                << r.failure_count << " failures\n";
      if (!r.hypothesis.empty()) {
        std::cout << "  hypothesis: " << r.hypothesis << '\n';
      }
      std::cout << "  scope: " << r.scope << '\n';
      for (auto const& x : r.failures) {
        std::cout << "  system #" << x.index << ": " << render(f, x.system) << '\n'
                  << "    expected " << render(f, x.expected) << '\n'
                  << "    got      " << render(f, x.got) << '\n';
      }
    }
    return r.verdict == "pass" || r.verdict == "expected-fail" ? exit_pass : exit_fail;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int cmd_validate(Config const& c) {
    if (c.algebra.empty()) {
      usage("--algebra is required");
    }
    auto const spec  = parse_algebra_spec(parse_json(read_file(resolve(c.algebra))));
    auto const error = validate(spec);
    if (c.json) {
      Json j;
      j["algebra"] = spec.name;
      j["valid"]   = !error;
      if (error) {
        j["error"]   = to_string(error->kind());
        j["message"] = error->what();
      }
      print_json(j);
    } else if (error) {
      std::cout << spec.name << ": invalid: " << error->what() << '\n';
    } else {
      std::cout << spec.name << ": valid, size " << spec.size << ", "
                << spec.signature.size() << " operation symbols\n";
    }
    return error ? exit_fail : exit_pass;
  }

  int cmd_free(Config const& c) {
    auto const a = load_algebra(c.algebra);
    auto const f = build_free(a, require_vars(c), c.limits);
    if (c.json) {
      print_json(free_to_json(f));
      return exit_pass;
    }
    std::cout << "free algebra of var(" << a.name() << ") on " << f.vars()
              << " generators: " << f.size() << " elements\n";
    for (std::size_t e = 0; e < f.size(); ++e) {
      std::cout << "  " << f.witness_string(e) << '\n';
    }
    return exit_pass;
  }

  int cmd_congruences(Config const& c) {
    auto const a = load_algebra(c.algebra);
    if (c.vars == 0) {
      auto const all = all_congruences(a, c.limits);
      if (c.json) {
        Json j;
        j["algebra"]     = a.name();
        j["count"]       = all.size();
        j["congruences"] = Json::array();
        for (auto const& theta : all) {
          j["congruences"].push_back(congruence_to_json(theta));
        }
        print_json(j);
      } else {
        std::cout << a.name() << ": " << all.size() << " congruences\n";
        for (auto const& theta : all) {
          std::cout << "  " << render_plain(theta) << '\n';
        }
      }
      return exit_pass;
    }
    auto const f   = build_free(a, c.vars, c.limits);
    auto const all = all_congruences(f.algebra(), c.limits);
    if (c.json) {
      Json j;
      j["algebra"]     = a.name();
      j["n"]           = c.vars;
      j["count"]       = all.size();
      j["congruences"] = Json::array();
      for (auto const& theta : all) {
        j["congruences"].push_back(congruence_terms_to_json(f, theta));
      }
      print_json(j);
    } else {
      std::cout << "free algebra of var(" << a.name() << ") on " << c.vars
                << " generators: " << all.size() << " congruences\n";
      for (auto const& theta : all) {
        std::cout << "  " << render(f, theta) << '\n';
      }
    }
    return exit_pass;
  }

  int cmd_radical(Config const& c) {
    auto const a             = load_algebra(c.algebra);
    auto const [f, s]        = load_system(c, a);
    auto const rad           = radical(f, s);
    auto const solutions     = satisfying_assignments(f, s);
    if (c.json) {
      Json j;
      j["algebra"]     = a.name();
      j["n"]           = f.vars();
      j["system"]      = system_to_json(f, s);
      j["solutions"]   = solutions;
      j["radical"]     = congruence_terms_to_json(f, rad);
      print_json(j);
    } else {
      std::cout << "system " << render(f, s) << " over " << a.name() << ", n = "
                << f.vars() << '\n'
                << "  " << solutions.size() << " satisfying assignments\n"
                << "  radical " << render(f, rad) << '\n';
    }
    return exit_pass;
  }

  int cmd_tmap(Config const& c) {
    auto const a      = load_algebra(c.algebra);
    auto const [f, s] = load_system(c, a);
    TMapOptions options;
    options.seed    = c.seed.value_or(0);
    options.samples = c.samples;
    std::optional<FiniteAlgebra> context;
    if (!c.context.empty()) {
      context = read_named(c.context);
    }
    auto const family = context
                            ? t_map(Interpretation(f, *context, c.limits), s,
                                    options, c.limits)
                            : t_map(f, s, options, c.limits);
    if (c.json) {
      Json j;
      j["algebra"] = context ? context->name() : a.name();
      j["n"]       = f.vars();
      j["system"]  = system_to_json(f, s);
      j["family"]  = Json::array();
      for (auto const& theta : family.members()) {
        j["family"].push_back(congruence_terms_to_json(f, theta));
      }
      print_json(j);
    } else {
      std::cout << "T(" << render(f, s) << ") has " << family.size() << " members\n";
      for (auto const& theta : family.members()) {
        std::cout << "  " << render(f, theta) << '\n';
      }
    }
    return exit_pass;
  }

  int cmd_check_axiom(Config const& c) {
    auto const a        = load_algebra(c.algebra);
    auto const op       = operation_of(c, a);
    auto const f        = build_free(a, require_vars(c), c.limits);
    auto const families = random_families(f, c.families, c.seed.value_or(0), c.limits);
    auto const r        = check_axiom(op, f, families);
    if (c.json) {
      print_json(report_to_json(r, f));
    } else {
      std::cout << "axiom " << r.op << " on " << r.algebra << ", n = " << r.n << ": "
                << (r.passed() ? "pass" : "fail") << '\n'
                << "  " << r.families_checked << " families checked, "
                << r.failure_count << " failures\n";
      if (r.witness) {
        std::cout << "  family #" << r.witness->family_index << ":";
        for (auto const& theta : r.witness->family.members()) {
          std::cout << ' ' << render(f, theta);
        }
        std::cout << "\n  member " << render(f, r.witness->member) << " relates "
                  << f.witness_string(r.witness->pair.first) << " and "
                  << f.witness_string(r.witness->pair.second)
                  << ", which C(K) separates\n";
      }
    }
    return r.passed() ? exit_pass : exit_fail;
  }

  int cmd_check_hypothesis(Config const& c) {
    auto const a  = load_algebra(c.algebra);
    auto const op = operation_of(c, a);
    auto const n  = require_vars(c);
    auto const r  = check_hypothesis(op, a, n, check_options(c));
    return print_check(build_free(a, n, c.limits), r, c.json);
  }

  int cmd_check_theorem(Config const& c) {
    auto const a    = load_algebra(c.algebra);
    auto const op   = operation_of(c, a);
    auto const n    = require_vars(c);
    auto const opts = check_options(c);
    auto const f    = build_free(a, n, c.limits);
    if (!c.force) {
      auto const hyp = check_hypothesis(op, a, n, opts);
      if (!hyp.passed()) {
        if (!c.json) {
          std::cout << "refusing the theorem check: the hypothesis fails "
                       "(use --force to run it anyway)\n";
        }
        print_check(f, hyp, c.json);
        return exit_fail;
      }
    }
    return print_check(f, check_theorem(op, a, n, opts), c.json);
  }

  Filter filter_of(Config const& c) {
    if (c.index_size == 0) {
      usage("--index-size must be a positive integer");
    }
    std::vector<std::size_t> core;
    std::stringstream        in(c.core);
    std::string              item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        auto const  i    = std::stoull(item, &used);
        if (used != item.size() || i == 0) {
          throw std::invalid_argument(item);
        }
        core.push_back(i - 1);
      } catch (std::exception const&) {
        usage("--core entries are 1-based indices, got \"" + item + "\"");
      }
    }
    return Filter::principal(c.index_size, std::move(core));
  }

  int cmd_filter_power(Config const& c) {
    auto const a      = load_algebra(c.algebra);
    auto const filter = filter_of(c);
    auto const fp     = filter_power(a, filter, c.limits);
    if (c.json) {
      Json j;
      j["algebra"]     = algebra_to_json(fp.algebra);
      j["restricted"]  = fp.restricted.name();
      j["restriction"] = fp.restriction.map;
      j["certificate"] = "verified";
      print_json(j);
    } else {
      std::cout << fp.algebra.name() << ": " << fp.algebra.size() << " elements\n"
                << "  restriction to the core is an isomorphism onto "
                << fp.restricted.name() << " (verified)\n";
    }
    return exit_pass;
  }

  int cmd_geom_eq(Config const& c) {
    auto const               a = load_algebra(c.algebra);
    std::optional<FiniteAlgebra> b;
    if (!c.other.empty()) {
      b = read_named(c.other);
    } else if (c.index_size != 0) {
      b = filter_power(a, filter_of(c), c.limits).algebra;
    } else {
      usage("geom-eq needs --other or --index-size/--core");
    }
    std::vector<std::size_t> ns;
    if (c.vars != 0) {
      ns.push_back(c.vars);
    } else {
      ns = {1, 2};
    }
    auto const r = geometric_equivalence(a, *b, ns, check_options(c));
    if (c.json) {
      print_json(report_to_json(r, a));
    } else {
      std::cout << r.algebra << " vs " << r.other << ": " << r.verdict << '\n'
                << "  " << r.systems_checked << " systems checked, "
                << r.failure_count << " differences\n";
      if (!r.reason.empty()) {
        std::cout << "  " << r.reason << '\n';
      }
      std::cout << "  scope: " << r.scope << '\n';
      if (auto const* w = r.witness()) {
        auto const f = build_free(a, w->n, c.limits);
        std::cout << "  witness n = " << w->n << ", system "
                  << render(f, w->failure.system) << '\n'
                  << "    radical over " << r.algebra << " "
                  << render(f, w->failure.expected) << '\n'
                  << "    radical over " << r.other << " "
                  << render(f, w->failure.got) << '\n';
      }
    }
    return r.passed() ? exit_pass : exit_fail;
  }

  int cmd_lemma1(Config const& c) {
    auto const a = load_algebra(c.algebra);
    if (c.system.empty()) {
      auto const n = require_vars(c);
      auto const r = check_lemma(a, n, check_options(c));
      return print_check(build_free(a, n, c.limits), r, c.json);
    }
    auto const [f, s] = load_system(c, a);
    auto const rad    = radical(f, s);
    auto const var    = rad_var(f, s);
    auto const pvar   = rad_pvar_oracle(f, s, c.limits);
    auto const emb    = coordinate_embedding(f, s);
    bool const ok     = var.subset_of(pvar) && pvar == rad && emb.verified();
    if (c.json) {
      Json j;
      j["algebra"]         = a.name();
      j["n"]               = f.vars();
      j["system"]          = system_to_json(f, s);
      j["radical"]         = congruence_terms_to_json(f, rad);
      j["rad_var"]         = congruence_terms_to_json(f, var);
      j["rad_pvar"]        = congruence_terms_to_json(f, pvar);
      j["coordinate_size"] = emb.coordinate.size();
      j["power"]           = emb.m;
      j["injective"]       = emb.injective;
      j["homomorphism"]    = emb.homomorphism;
      j["verdict"]         = ok ? "pass" : "fail";
      print_json(j);
    } else {
      std::cout << "system " << render(f, s) << " over " << a.name() << '\n'
                << "  radical   " << render(f, rad) << '\n'
                << "  rad_var   " << render(f, var) << '\n'
                << "  rad_pvar  " << render(f, pvar) << '\n'
                << "  coordinate algebra of size " << emb.coordinate.size()
                << " embeds in " << a.name() << "^" << emb.m << ": "
                << (emb.verified() ? "verified" : "not verified")
                << (emb.degenerate() ? " (degenerate)" : "") << '\n'
                << "  " << (ok ? "pass" : "fail") << '\n';
    }
    return ok ? exit_pass : exit_fail;
  }

  int cmd_suite(Config const& c) {
    SuiteOptions o;
    o.corpus   = c.corpus;
    o.policy   = policy_of(c);
    o.jobs     = c.jobs;
    o.families = c.families;
    o.limits   = c.limits;
    auto const r = run_suite(o);
    if (c.json) {
      print_json(r.report);
    } else {
      for (auto const& s : r.report["sections"]) {
        std::cout << s["verdict"].get<std::string>() << "  "
                  << s["section"].get<std::string>();
        if (s.contains("algebra")) {
          std::cout << " " << s["algebra"].get<std::string>();
        }
        if (s.contains("case")) {
          std::cout << " " << s["case"].get<std::string>();
        }
        if (s.contains("op")) {
          std::cout << " " << s["op"].get<std::string>();
        }
        if (s.contains("n")) {
          std::cout << " n=" << s["n"].get<std::size_t>();
        }
        if (s.contains("core")) {
          std::cout << " I=" << s["index_size"].get<std::size_t>()
                    << " J=" << s["core"].dump();
        }
        std::cout << '\n';
      }
      std::cout << "suite: " << r.report["verdict"].get<std::string>() << " ("
                << r.report["sections_failed"].get<std::uint64_t>()
                << " sections failed)\n";
    }
    return r.passed ? exit_pass : exit_fail;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radicals, congruences, free algebras and super-product checks "
               "over finite algebras"};
  app.require_subcommand(1);
  Config c;

  auto add_algebra = [&](CLI::App* s) {
    s->add_option("--algebra", c.algebra, "Algebra JSON file")->required();
  };
  auto add_vars = [&](CLI::App* s) {
    s->add_option("--vars", c.vars, "Number of variables n")
        ->check(CLI::PositiveNumber);
  };
  auto add_policy = [&](CLI::App* s) {
    s->add_option("--policy", c.policy, "exhaustive, sample or auto")
        ->check(CLI::IsMember({"exhaustive", "sample", "auto"}));
    s->add_option("--seed", c.seed, "Seed for sampled systems");
    s->add_option("--samples", c.samples, "Number of sampled systems")
        ->check(CLI::PositiveNumber);
    s->add_option("--jobs", c.jobs, "Worker threads for per-system checks")
        ->check(CLI::PositiveNumber);
  };
  auto add_op = [&](CLI::App* s) {
    s->add_option("--op", c.op, "join, radunion, full or meet")
        ->required()
        ->check(CLI::IsMember({"join", "radunion", "full", "meet"}));
    s->add_option("--context", c.context,
                  "Context algebra for radunion (default: the algebra itself)");
  };
  auto add_filter = [&](CLI::App* s) {
    s->add_option("--index-size", c.index_size, "|I|")->check(CLI::PositiveNumber);
    s->add_option("--core", c.core, "Core J as 1-based indices, e.g. 1,2");
  };
  auto add_common = [&](CLI::App* s) {
    s->add_flag("--json", c.json, "Emit JSON");
    s->add_option("--cap-free", c.cap_free, "Free algebra element cap")
        ->check(CLI::PositiveNumber);
    s->add_option("--cap-carrier", c.cap_carrier, "Carrier cap")
        ->check(CLI::PositiveNumber);
    s->add_option("--cap-systems", c.cap_systems, "Exhaustive system cap")
        ->check(CLI::PositiveNumber);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Validate an algebra file");
  add_algebra(validate_cmd);

  auto* free_cmd = app.add_subcommand("free", "Build the relative free algebra");
  add_algebra(free_cmd);
  add_vars(free_cmd);

  auto* con_cmd = app.add_subcommand(
      "congruences", "List the congruences of an algebra or of its free algebra");
  add_algebra(con_cmd);
  add_vars(con_cmd);

  auto* rad_cmd = app.add_subcommand("radical", "Radical of an equation system");
  add_algebra(rad_cmd);
  add_vars(rad_cmd);
  rad_cmd->add_option("--system", c.system, "System JSON file")->required();

  auto* tmap_cmd = app.add_subcommand("tmap", "Radicals of all subsystems");
  add_algebra(tmap_cmd);
  add_vars(tmap_cmd);
  tmap_cmd->add_option("--system", c.system, "System JSON file")->required();
  tmap_cmd->add_option("--context", c.context, "Interpret in this algebra instead");
  tmap_cmd->add_option("--seed", c.seed, "Seed for sampled subsystems");
  tmap_cmd->add_option("--samples", c.samples, "Sampled subsystems when exact fails");

  auto* axiom_cmd = app.add_subcommand("check-axiom",
                                       "Check theta ⊆ C(K) on random families");
  add_algebra(axiom_cmd);
  add_vars(axiom_cmd);
  add_op(axiom_cmd);
  axiom_cmd->add_option("--seed", c.seed, "Seed for the families");
  axiom_cmd->add_option("--families", c.families, "Number of families")
      ->check(CLI::PositiveNumber);

  auto* hyp_cmd = app.add_subcommand("check-hypothesis",
                                     "Check C(T(S)) ⊆ Rad(S) for every system");
  add_algebra(hyp_cmd);
  add_vars(hyp_cmd);
  add_op(hyp_cmd);
  add_policy(hyp_cmd);

  auto* thm_cmd = app.add_subcommand("check-theorem",
                                     "Check C(T(S)) = Rad(S) for every system");
  add_algebra(thm_cmd);
  add_vars(thm_cmd);
  add_op(thm_cmd);
  add_policy(thm_cmd);
  thm_cmd->add_flag("--force", c.force, "Run even if the hypothesis fails");

  auto* fp_cmd = app.add_subcommand("filter-power", "Build A^I/F for a principal filter");
  add_algebra(fp_cmd);
  add_filter(fp_cmd);

  auto* geq_cmd = app.add_subcommand(
      "geom-eq", "Compare radicals over two algebras (default n = 1, 2)");
  add_algebra(geq_cmd);
  add_vars(geq_cmd);
  add_policy(geq_cmd);
  add_filter(geq_cmd);
  geq_cmd->add_option("--other", c.other, "Second algebra JSON file");

  auto* lemma_cmd = app.add_subcommand(
      "lemma1", "Compare radical, rad_var and the pvar oracle");
  add_algebra(lemma_cmd);
  add_vars(lemma_cmd);
  add_policy(lemma_cmd);
  lemma_cmd->add_option("--system", c.system, "Single system JSON file");

  auto* suite_cmd = app.add_subcommand("suite", "Run the battery over the corpus");
  suite_cmd->add_option("--corpus", c.corpus, "Directory of algebra files");
  add_policy(suite_cmd);
  suite_cmd->add_option("--families", c.families, "Families per axiom check")
      ->check(CLI::PositiveNumber);

  for (auto* s : app.get_subcommands({})) {
    add_common(s);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    finalize(c);
    if (*validate_cmd) {
      return cmd_validate(c);
    }
    if (*free_cmd) {
      return cmd_free(c);
    }
    if (*con_cmd) {
      return cmd_congruences(c);
    }
    if (*rad_cmd) {
      return cmd_radical(c);
    }
    if (*tmap_cmd) {
      return cmd_tmap(c);
    }
    if (*axiom_cmd) {
      return cmd_check_axiom(c);
    }
    if (*hyp_cmd) {
      return cmd_check_hypothesis(c);
    }
    if (*thm_cmd) {
      return cmd_check_theorem(c);
    }
    if (*fp_cmd) {
      return cmd_filter_power(c);
    }
    if (*geq_cmd) {
      return cmd_geom_eq(c);
    }
    if (*lemma_cmd) {
      return cmd_lemma1(c);
    }
    if (*suite_cmd) {
      return cmd_suite(c);
    }
  } catch (Error const& e) {
    std::cerr << "ualgeo: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::limit_exceeded:
        return exit_cap;
      case ErrorKind::hypothesis_not_established:
        return exit_fail;
      default:
        return exit_usage;
    }
  } catch (std::exception const& e) {
    std::cerr << "ualgeo: internal error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
