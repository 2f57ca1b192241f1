#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace ualgeo;
using ualgeo::test::corpus;
using ualgeo::test::error_kind;

namespace {
  AlgebraSpec z2_spec() {
    return corpus("z2group").to_spec();
  }

  Element enc(Element a, Element b) {
    return static_cast<Element>(a * 2 + b);
  }
}  // namespace

TEST_CASE("validate") {
  CHECK_FALSE(validate(z2_spec()).has_value());

  SUBCASE("entry out of range") {
    auto spec          = z2_spec();
    spec.tables["+"][3] = 2;
    auto e             = validate(spec);
    REQUIRE(e.has_value());
    CHECK(e->kind() == ErrorKind::entry_out_of_range);
    spec.tables["+"][3] = -1;
    CHECK(validate(spec)->kind() == ErrorKind::entry_out_of_range);
  }
  SUBCASE("wrong table length") {
    auto spec       = z2_spec();
    spec.tables["+"] = {0, 1};
    CHECK(validate(spec)->kind() == ErrorKind::arity_mismatch);
  }
  SUBCASE("missing table") {
    auto spec = z2_spec();
    spec.tables.erase("-");
    CHECK(validate(spec)->kind() == ErrorKind::missing_table);
  }
  SUBCASE("empty carrier") {
    auto spec = z2_spec();
    spec.size = 0;
    CHECK(validate(spec)->kind() == ErrorKind::empty_carrier);
  }
  SUBCASE("from_spec throws") {
    auto spec = z2_spec();
    spec.size = 0;
    CHECK(error_kind([&] { FiniteAlgebra::from_spec(spec); }) == ErrorKind::empty_carrier);
  }
}

TEST_CASE("tuple encoding") {
  std::vector<Element> t{1, 0, 2};
  CHECK(encode_tuple(t, 3) == 1 * 9 + 0 * 3 + 2);
  CHECK(decode_tuple(11, 3, 3) == t);
  for (std::size_t i = 0; i < 27; ++i) {
    auto d = decode_tuple(i, 3, 3);
    CHECK(encode_tuple(d, 3) == i);
  }
  CHECK(checked_power(2, 10, 4096) == 1024u);
  CHECK_FALSE(checked_power(2, 13, 4096).has_value());
  CHECK(checked_power(7, 0, 1) == 1u);
}

TEST_CASE("direct_power") {
  auto const z2 = corpus("z2group");
  auto const s2 = corpus("s2");
  CHECK(direct_power(s2, 3).size() == 8);
  CHECK(direct_power(z2, 1) == z2);
  auto const sq = direct_power(z2, 2);
  CHECK(sq.apply(0, {enc(0, 1), enc(1, 1)}) == enc(1, 0));
  Limits limits;
  limits.carrier = 4;
  CHECK(error_kind([&] { direct_power(z2, 3, limits); }) == ErrorKind::limit_exceeded);
}

TEST_CASE("direct_product") {
  auto const s2 = corpus("s2");
  auto const c3 = corpus("chain3");
  auto const z2 = corpus("z2group");
  auto const p  = direct_product(s2, c3);
  CHECK(p.size() == 6);
  // (1,2) meet (1,1) = (1,1), pair (a,b) encoded a*3+b.
  CHECK(p.apply(0, {5, 4}) == 4);
  CHECK(error_kind([&] { direct_product(s2, z2); }) == ErrorKind::signature_mismatch);
}

TEST_CASE("subuniverse_generated") {
  auto const z2 = corpus("z2group");
  auto const s2 = corpus("s2");
  CHECK(subuniverse_generated(z2, std::vector<Element>{}) == std::vector<Element>{0});
  CHECK(subuniverse_generated(s2, std::vector<Element>{0, 1}) == std::vector<Element>{0, 1});
  CHECK(subuniverse_generated(direct_power(z2, 2), std::vector<Element>{enc(1, 1)})
        == std::vector<Element>{enc(0, 0), enc(1, 1)});
  CHECK(error_kind([&] { subuniverse_generated(s2, std::vector<Element>{}); })
        == ErrorKind::empty_subuniverse);

  SUBCASE("closure laws") {
    for (auto const& file : test::corpus_files()) {
      auto const a = corpus(file);
      CAPTURE(file);
      for (std::uint32_t mask = 1; mask < (1u << a.size()); ++mask) {
        std::vector<Element> seed;
        for (Element x = 0; x < a.size(); ++x) {
          if (mask >> x & 1) {
            seed.push_back(x);
          }
        }
        auto const sub = subuniverse_generated(a, seed);
        CHECK(std::includes(sub.begin(), sub.end(), seed.begin(), seed.end()));
        CHECK(subuniverse_generated(a, sub) == sub);
        auto bigger = seed;
        for (Element x = 0; x < a.size(); ++x) {
          if (!(mask >> x & 1)) {
            bigger.push_back(x);
            std::sort(bigger.begin(), bigger.end());
            auto const sup = subuniverse_generated(a, bigger);
            CHECK(std::includes(sup.begin(), sup.end(), sub.begin(), sub.end()));
            break;
          }
        }
      }
      auto const gens = generating_set(a);
      CHECK(subuniverse_generated(a, gens).size() == a.size());
    }
  }
}

TEST_CASE("enumerate_homomorphisms") {
  auto const s2 = corpus("s2");
  auto const z2 = corpus("z2group");
  auto const hs = enumerate_homomorphisms(s2, s2);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0].map == std::vector<Element>{0, 0});
  CHECK(hs[1].map == std::vector<Element>{0, 1});
  CHECK(hs[2].map == std::vector<Element>{1, 1});
  auto const hz = enumerate_homomorphisms(z2, z2);
  REQUIRE(hz.size() == 2);
  CHECK(hz[0].map == std::vector<Element>{0, 0});
  CHECK(hz[1].map == std::vector<Element>{0, 1});
  auto const triv = trivial_algebra(s2.signature());
  CHECK(enumerate_homomorphisms(corpus("chain3"), triv).size() == 1);

  SUBCASE("agrees with brute force") {
    std::vector<std::string> const same_sig[] = {
        {"trivial", "s2", "chain3"}, {"z2group", "z3group"}, {"groupoid3"}, {"pointed_z2"}};
    for (auto const& group : same_sig) {
      for (auto const& x : group) {
        for (auto const& y : group) {
          auto const a = corpus(x);
          auto const b = corpus(y);
          CAPTURE(x);
          CAPTURE(y);
          auto const found = enumerate_homomorphisms(a, b);
          auto const brute = test::oracle::homomorphisms(a, b);
          REQUIRE(found.size() == brute.size());
          for (std::size_t i = 0; i < found.size(); ++i) {
            CHECK(found[i].map == brute[i]);
            CHECK(is_homomorphism(a, b, found[i].map));
          }
        }
      }
    }
  }

  SUBCASE("into a power") {
    auto const sq    = direct_power(z2, 2);
    auto const found = enumerate_homomorphisms(z2, sq);
    CHECK(found.size() == test::oracle::homomorphisms(z2, sq).size());
    CHECK(found.size() == 4);
  }

  SUBCASE("cap") {
    Limits limits;
    limits.hom_nodes = 2;
    CHECK(error_kind([&] { enumerate_homomorphisms(corpus("chain3"), corpus("chain3"), limits); })
          == ErrorKind::limit_exceeded);
  }
}

TEST_CASE("quotient") {
  auto const z2 = corpus("z2group");
  auto const sq = direct_power(z2, 2);
  auto const full = quotient(sq, Congruence::full(4));
  CHECK(full.algebra.size() == 1);
  CHECK(full.projection.map == std::vector<Element>{0, 0, 0, 0});

  std::vector<Block> blocks{{enc(0, 0), enc(1, 1)}, {enc(0, 1), enc(1, 0)}};
  auto const q = quotient(sq, Congruence::from_blocks(4, blocks));
  CHECK(q.algebra.size() == 2);
  CHECK(find_isomorphism(q.algebra, z2).has_value());
  CHECK(is_homomorphism(sq, q.algebra, q.projection.map));

  std::vector<Block> bad{{enc(0, 0), enc(1, 0)}, {enc(0, 1)}, {enc(1, 1)}};
  CHECK(error_kind([&] { quotient(sq, Congruence::from_blocks(4, bad)); })
        == ErrorKind::not_a_congruence);

  for (auto const& file : test::corpus_files()) {
    auto const a = corpus(file);
    CHECK(find_isomorphism(quotient(a, Congruence::diagonal(a.size())).algebra, a).has_value());
    CHECK(quotient(a, Congruence::full(a.size())).algebra.size() == 1);
  }
}

TEST_CASE("find_isomorphism") {
  auto const s2 = corpus("s2");
  auto const c3 = corpus("chain3");
  auto const z2 = corpus("z2group");
  auto id = find_isomorphism(c3, c3);
  REQUIRE(id.has_value());
  CHECK(id->map == std::vector<Element>{0, 1, 2});
  CHECK_FALSE(find_isomorphism(s2, c3).has_value());
  CHECK(error_kind([&] { find_isomorphism(s2, z2); }) == ErrorKind::signature_mismatch);

  // Join of the same chain: the isomorphism reverses it.
  FiniteAlgebra rev("C3r", c3.signature(), 3, {{0, 1, 2, 1, 1, 2, 2, 2, 2}});
  auto iso = find_isomorphism(c3, rev);
  REQUIRE(iso.has_value());
  CHECK(iso->map == std::vector<Element>{2, 1, 0});

  SUBCASE("least isomorphism agrees with brute force") {
    std::vector<FiniteAlgebra> algebras{corpus("chain3"), rev, corpus("z3group"),
                                        corpus("groupoid3"), direct_power(corpus("s2"), 2),
                                        direct_power(z2, 2)};
    for (auto const& a : algebras) {
      for (auto const& b : algebras) {
        if (a.signature() != b.signature()) {
          continue;
        }
        std::optional<std::vector<Element>> least;
        for (auto const& h : test::oracle::homomorphisms(a, b)) {
          std::set<Element> image(h.begin(), h.end());
          if (a.size() == b.size() && image.size() == b.size()) {
            least = h;
            break;
          }
        }
        auto const found = find_isomorphism(a, b);
        CAPTURE(a.name());
        CAPTURE(b.name());
        REQUIRE(found.has_value() == least.has_value());
        if (found) {
          CHECK(found->map == *least);
        }
      }
    }
  }

  SUBCASE("larger powers") {
    for (auto const& file : {"chain3", "groupoid3", "z3group"}) {
      auto const cube = direct_power(corpus(file), 3);
      auto const id   = find_isomorphism(cube, cube);
      REQUIRE(id.has_value());
      CHECK(std::is_sorted(id->map.begin(), id->map.end()));
    }
  }

  SUBCASE("filter power of Z2 cubed") {
    auto const cube = direct_power(z2, 3);
    std::vector<Element> label(8);
    for (Element t = 0; t < 8; ++t) {
      label[t] = t >> 1;  // restriction to the first two coordinates
    }
    auto const q = quotient(cube, Congruence::from_labels(std::span<Element const>(label)));
    CHECK(find_isomorphism(q.algebra, direct_power(z2, 2)).has_value());
  }
}

TEST_CASE("powers satisfy the identities of the base") {
  for (auto const& file : {"s2", "z2group", "groupoid3", "pointed_z2"}) {
    auto const a  = corpus(file);
    auto const sq = direct_power(a, 2);
    CAPTURE(file);
    for (std::size_t n = 1; n <= 2; ++n) {
      auto const terms = enumerate_terms(a.signature(), n, file == std::string("s2") ? 2 : 1);
      std::vector<std::vector<Element>> va, vs;
      for (auto const& t : terms) {
        va.push_back(test::oracle::vector_of(t, a, n));
        vs.push_back(test::oracle::vector_of(t, sq, n));
      }
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
          if (va[i] == va[j]) {
            CHECK(vs[i] == vs[j]);
          }
        }
      }
    }
  }
}
