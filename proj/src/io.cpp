#include "ualgeo/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ualgeo/error.hpp"

namespace ualgeo {

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorKind::invalid_input, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  Json parse_json(std::string const& text) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      fail(ErrorKind::syntax_error, e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Algebras
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void reject_unknown_keys(Json const&                  j,
                             std::set<std::string> const& allowed,
                             std::string const&           where) {
      if (!j.is_object()) {
        fail(ErrorKind::invalid_input, where + " must be a JSON object");
      }
      for (auto const& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
          fail(ErrorKind::invalid_input, "unknown key \"" + key + "\" in " + where);
        }
      }
      for (auto const& key : allowed) {
        if (!j.contains(key)) {
          fail(ErrorKind::invalid_input, "missing key \"" + key + "\" in " + where);
        }
      }
    }

    std::int64_t as_integer(Json const& j, std::string const& what) {
      if (!j.is_number_integer()) {
        fail(ErrorKind::invalid_input, what + " must be an integer");
      }
      return j.get<std::int64_t>();
    }

    std::string as_string(Json const& j, std::string const& what) {
      if (!j.is_string()) {
        fail(ErrorKind::invalid_input, what + " must be a string");
      }
      return j.get<std::string>();
    }

    // Flattens a table of nesting depth `arity` in row-major order.
    void flatten(Json const&                j,
                 std::size_t                depth,
                 std::string const&         op,
                 std::vector<std::int64_t>& out) {
      if (depth == 0) {
        if (j.is_array()) {
          fail(ErrorKind::arity_mismatch,
               "table of " + op + " is nested deeper than its arity");
        }
        out.push_back(as_integer(j, "entry of the table of " + op));
        return;
      }
      if (!j.is_array()) {
        fail(ErrorKind::arity_mismatch,
             "table of " + op + " is nested less deeply than its arity");
      }
      for (auto const& x : j) {
        flatten(x, depth - 1, op, out);
      }
    }

    Json unflatten(std::span<Element const> flat, std::size_t arity, std::size_t m) {
      if (arity == 0) {
        return flat[0];
      }
      Json        out         = Json::array();
      std::size_t const chunk = flat.size() / m;
      for (std::size_t i = 0; i < m; ++i) {
        out.push_back(unflatten(flat.subspan(i * chunk, chunk), arity - 1, m));
      }
      return out;
    }
  }  // namespace

  AlgebraSpec parse_algebra_spec(Json const& j) {
    reject_unknown_keys(j, {"name", "signature", "size", "tables"}, "algebra");
    AlgebraSpec spec;
    spec.name = as_string(j["name"], "name");
    if (!j["signature"].is_array()) {
      fail(ErrorKind::invalid_input, "signature must be an array");
    }
    for (auto const& s : j["signature"]) {
      reject_unknown_keys(s, {"op", "arity"}, "signature entry");
      auto const arity = as_integer(s["arity"], "arity");
      if (arity < 0) {
        fail(ErrorKind::invalid_input, "arity must be nonnegative");
      }
      spec.signature.add(as_string(s["op"], "op"), static_cast<std::size_t>(arity));
    }
    spec.size = as_integer(j["size"], "size");
    if (!j["tables"].is_object()) {
      fail(ErrorKind::invalid_input, "tables must be an object");
    }
    for (auto const& [op, table] : j["tables"].items()) {
      auto const id = spec.signature.find(op);
      if (!id) {
        fail(ErrorKind::unknown_symbol, "table for undeclared symbol " + op);
      }
      std::vector<std::int64_t> flat;
      flatten(table, spec.signature[*id].arity, op, flat);
      spec.tables.emplace(op, std::move(flat));
    }
    return spec;
  }

  FiniteAlgebra parse_algebra(Json const& j) {
    return FiniteAlgebra::from_spec(parse_algebra_spec(j));
  }

  FiniteAlgebra parse_algebra(std::string const& text) {
    return parse_algebra(parse_json(text));
  }

  FiniteAlgebra read_algebra(std::filesystem::path const& path) {
    return parse_algebra(read_file(path));
  }

  Json algebra_to_json(FiniteAlgebra const& a) {
    Json j;
    j["name"]      = a.name();
    j["signature"] = Json::array();
    for (auto const& s : a.signature().symbols()) {
      j["signature"].push_back({{"op", s.name}, {"arity", s.arity}});
    }
    j["size"]   = a.size();
    j["tables"] = Json::object();
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      j["tables"][a.signature()[op].name]
          = unflatten(a.table(op), a.signature()[op].arity, a.size());
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Systems
  ////////////////////////////////////////////////////////////////////////

  SystemFile parse_system(Json const& j, Signature const& sig) {
    reject_unknown_keys(j, {"vars", "equations"}, "system");
    auto const vars = as_integer(j["vars"], "vars");
    if (vars < 1) {
      fail(ErrorKind::invalid_input, "vars must be positive");
    }
    SystemFile out;
    out.vars = static_cast<std::size_t>(vars);
    if (!j["equations"].is_array()) {
      fail(ErrorKind::invalid_input, "equations must be an array");
    }
    for (auto const& eq : j["equations"]) {
      reject_unknown_keys(eq, {"lhs", "rhs"}, "equation");
      out.equations.emplace_back(
          parse_term(as_string(eq["lhs"], "lhs"), sig, out.vars),
          parse_term(as_string(eq["rhs"], "rhs"), sig, out.vars));
    }
    return out;
  }

  SystemFile read_system(std::filesystem::path const& path, Signature const& sig) {
    return parse_system(parse_json(read_file(path)), sig);
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences and free algebras
  ////////////////////////////////////////////////////////////////////////

  Json congruence_to_json(Congruence const& theta) {
    Json out = Json::array();
    for (auto const& block : theta.blocks()) {
      out.push_back(block);
    }
    return out;
  }

  Json congruence_terms_to_json(FreeAlgebra const& f, Congruence const& theta) {
    Json out = Json::array();
    for (auto const& block : theta.blocks()) {
      Json b = Json::array();
      for (auto e : block) {
        b.push_back(f.witness_string(e));
      }
      out.push_back(std::move(b));
    }
    return out;
  }

  Json system_to_json(FreeAlgebra const& f, EquationSystem const& s) {
    Json out = Json::array();
    for (auto const& [lhs, rhs] : render_equations(f, s)) {
      out.push_back({{"lhs", lhs}, {"rhs", rhs}});
    }
    return out;
  }

  Json free_to_json(FreeAlgebra const& f) {
    Json j;
    j["algebra"]  = f.base().name();
    j["n"]        = f.vars();
    j["size"]     = f.size();
    j["elements"] = Json::array();
    for (std::size_t e = 0; e < f.size(); ++e) {
      auto v = f.values(e);
      j["elements"].push_back({{"index", e},
                               {"witness", f.witness_string(e)},
                               {"vector", std::vector<Element>(v.begin(), v.end())}});
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Json failure_to_json(FreeAlgebra const& f, SystemFailure const& x) {
      Json j;
      j["index"]    = x.index;
      j["system"]   = system_to_json(f, x.system);
      j["expected"] = congruence_terms_to_json(f, x.expected);
      j["got"]      = congruence_terms_to_json(f, x.got);
      return j;
    }
  }  // namespace

  Json report_to_json(FreeAlgebra const& f, CheckReport const& r) {
    Json j;
    j["check"]   = r.check;
    j["op"]      = r.op;
    j["algebra"] = r.algebra;
    j["n"]       = r.n;
    j["policy"]  = to_string(r.policy);
    if (r.seed) {
      j["seed"] = *r.seed;
    }
    j["systems_checked"] = r.systems_checked;
    j["failure_count"]   = r.failure_count;
    j["failures"]        = Json::array();
    for (auto const& x : r.failures) {
      j["failures"].push_back(failure_to_json(f, x));
    }
    if (!r.hypothesis.empty()) {
      j["hypothesis"] = r.hypothesis;
    }
    j["verdict"] = r.verdict;
    j["scope"]   = r.scope;
    return j;
  }

  Json report_to_json(AxiomReport const& r, FreeAlgebra const& f) {
    Json j;
    j["check"]            = "axiom";
    j["op"]               = r.op;
    j["algebra"]          = r.algebra;
    j["n"]                = r.n;
    j["families_checked"] = r.families_checked;
    j["failure_count"]    = r.failure_count;
    j["failures"]         = Json::array();
    if (r.witness) {
      Json family = Json::array();
      for (auto const& theta : r.witness->family.members()) {
        family.push_back(congruence_terms_to_json(f, theta));
      }
      j["failures"].push_back(
          {{"index", r.witness->family_index},
           {"family", std::move(family)},
           {"member", congruence_terms_to_json(f, r.witness->member)},
           {"pair",
            {f.witness_string(r.witness->pair.first),
             f.witness_string(r.witness->pair.second)}}});
    }
    j["verdict"] = r.passed() ? "pass" : "fail";
    return j;
  }

  Json report_to_json(GeomEqReport const& r, FiniteAlgebra const& a) {
    Json j;
    j["check"]    = "geom-eq";
    j["op"]       = "radical";
    j["algebra"]  = r.algebra;
    j["other"]    = r.other;
    j["n"]        = r.n_values;
    j["policy"]   = to_string(r.policy);
    if (r.seed) {
      j["seed"] = *r.seed;
    }
    j["systems_checked"] = r.systems_checked;
    j["failure_count"]   = r.failure_count;
    j["failures"]        = Json::array();
    std::map<std::size_t, FreeAlgebra> free;
    for (auto const& x : r.failures) {
      if (!free.contains(x.n)) {
        free.emplace(x.n, build_free(a, x.n));
      }
      auto entry = failure_to_json(free.at(x.n), x.failure);
      entry["n"] = x.n;
      j["failures"].push_back(std::move(entry));
    }
    j["verdict"] = r.verdict;
    if (!r.reason.empty()) {
      j["reason"] = r.reason;
    }
    j["scope"] = r.scope;
    return j;
  }

}  // namespace ualgeo
