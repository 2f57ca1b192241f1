#include <doctest.h>

#include "fixtures.hpp"
#include "ualgeo/filterpower.hpp"

using namespace ualgeo;
using ualgeo::test::corpus;
using ualgeo::test::error_kind;

namespace {
  CheckOptions exhaustive() {
    CheckOptions o;
    o.policy = {PolicyKind::exhaustive, 0, 0};
    return o;
  }

  // Every nonempty core on an index set of the given size.
  std::vector<Filter> all_filters(std::size_t index_size) {
    std::vector<Filter> out;
    for (std::uint32_t mask = 1; mask < (1u << index_size); ++mask) {
      std::vector<std::size_t> core;
      for (std::size_t i = 0; i < index_size; ++i) {
        if (mask >> i & 1) {
          core.push_back(i);
        }
      }
      out.push_back(Filter::principal(index_size, core));
    }
    return out;
  }

  std::vector<std::size_t> class_sizes(Congruence const& c) {
    std::vector<std::size_t> out;
    for (auto const& b : c.blocks()) {
      out.push_back(b.size());
    }
    return out;
  }
}  // namespace

TEST_CASE("principal filters") {
  auto const f = Filter::principal(3, {1, 0});
  CHECK(f.core() == std::vector<std::size_t>{0, 1});
  CHECK(f.members() == std::vector<std::uint32_t>{0b011, 0b111});
  CHECK(f.contains(0b111));
  CHECK_FALSE(f.contains(0b101));
  CHECK(Filter::principal(3, {0, 1, 2}).members() == std::vector<std::uint32_t>{0b111});
  CHECK(error_kind([] { Filter::principal(3, {}); }) == ErrorKind::improper_filter);
  CHECK(error_kind([] { Filter::principal(3, {3}); }) == ErrorKind::out_of_range);
  CHECK(error_kind([] { Filter::principal(40, {0}); }) == ErrorKind::limit_exceeded);

  SUBCASE("member sets are upward and intersection closed") {
    for (std::size_t size = 1; size <= 4; ++size) {
      for (auto const& filter : all_filters(size)) {
        auto const members = filter.members();
        std::set<std::uint32_t> set(members.begin(), members.end());
        CHECK_FALSE(set.contains(0));
        for (auto x : members) {
          for (auto y : members) {
            CHECK(set.contains(x & y));
          }
          for (std::uint32_t z = 0; z < (1u << size); ++z) {
            if ((z & x) == x) {
              CHECK(set.contains(z));
            }
          }
        }
        CHECK(Filter::from_members(size, members) == filter);
      }
    }
  }
}

TEST_CASE("filters from member sets") {
  std::vector<std::uint32_t> good{0b110, 0b111};
  CHECK(Filter::from_members(3, good).core() == std::vector<std::size_t>{1, 2});
  std::vector<std::uint32_t> not_upward{0b011};
  std::vector<std::uint32_t> not_meet{0b011, 0b110, 0b111};
  std::vector<std::uint32_t> improper{0b000, 0b001, 0b010, 0b011};
  std::vector<std::uint32_t> none;
  std::vector<std::uint32_t> outside{0b1000, 0b111};
  CHECK(error_kind([&] { Filter::from_members(3, not_upward); }) == ErrorKind::improper_filter);
  CHECK(error_kind([&] { Filter::from_members(3, not_meet); }) == ErrorKind::improper_filter);
  CHECK(error_kind([&] { Filter::from_members(2, improper); }) == ErrorKind::improper_filter);
  CHECK(error_kind([&] { Filter::from_members(3, none); }) == ErrorKind::improper_filter);
  CHECK(error_kind([&] { Filter::from_members(3, outside); }) == ErrorKind::out_of_range);
  CHECK(error_kind([&] { Filter::from_members(17, good); }) == ErrorKind::limit_exceeded);
}

TEST_CASE("filter congruences") {
  auto const s2 = corpus("s2");
  CHECK(filter_congruence(s2, Filter::principal(3, {0, 1, 2})).is_diagonal());
  auto const c = filter_congruence(s2, Filter::principal(3, {0, 1}));
  CHECK(c.number_of_classes() == 4);
  CHECK(class_sizes(c) == std::vector<std::size_t>{2, 2, 2, 2});
  auto const d = filter_congruence(s2, Filter::principal(2, {0}));
  CHECK(class_sizes(d) == std::vector<std::size_t>{2, 2});
  // Tuples (a, b) encoded a*2+b agree on index 1.
  CHECK(d.blocks() == std::vector<Block>{{0, 1}, {2, 3}});
  Limits limits;
  limits.carrier = 4;
  CHECK(error_kind([&] { filter_congruence(s2, Filter::principal(3, {0}), limits); })
        == ErrorKind::limit_exceeded);

  SUBCASE("tuples agreeing on a member are related") {
    auto const a = corpus("chain3");
    for (auto const& filter : all_filters(3)) {
      auto const theta = filter_congruence(a, filter);
      CHECK(is_congruence(direct_power(a, 3), theta));
      for (std::size_t x = 0; x < 27; ++x) {
        for (std::size_t y = 0; y < 27; ++y) {
          auto const tx = decode_tuple(x, 3, 3);
          auto const ty = decode_tuple(y, 3, 3);
          std::uint32_t agree = 0;
          for (std::size_t i = 0; i < 3; ++i) {
            if (tx[i] == ty[i]) {
              agree |= 1u << i;
            }
          }
          CHECK(theta.related(static_cast<Element>(x), static_cast<Element>(y))
                == filter.contains(agree));
        }
      }
    }
  }
}

TEST_CASE("filter powers") {
  auto const z2 = corpus("z2group");
  auto const fp = filter_power(z2, Filter::principal(3, {0, 1}));
  CHECK(fp.algebra.size() == 4);
  CHECK(fp.algebra.name() == "Z2^3/{1,2}");
  CHECK(fp.restricted == direct_power(z2, 2));
  CHECK(is_homomorphism(fp.algebra, fp.restricted, fp.restriction.map));
  CHECK(find_isomorphism(fp.algebra, direct_power(z2, 2)).has_value());

  for (auto const& file : test::corpus_files()) {
    auto const a = corpus(file);
    CAPTURE(file);
    for (std::size_t size = 1; size <= 3; ++size) {
      for (auto const& filter : all_filters(size)) {
        auto const p = filter_power(a, filter);
        auto const k = filter.core().size();
        CHECK(p.algebra.size() == p.restricted.size());
        CHECK(p.restricted == direct_power(a, k));
        CHECK(is_homomorphism(p.algebra, p.restricted, p.restriction.map));
        std::set<Element> image(p.restriction.map.begin(), p.restriction.map.end());
        CHECK(image.size() == p.algebra.size());
        if (k == size) {
          CHECK(find_isomorphism(p.algebra, direct_power(a, size)).has_value());
        }
        if (k == 1) {
          CHECK(find_isomorphism(p.algebra, a).has_value());
        }
      }
    }
  }
}

TEST_CASE("geometric equivalence") {
  auto const z2 = corpus("z2group");
  auto const s2 = corpus("s2");
  std::vector<std::size_t> const ns{1, 2};

  auto const same = geometric_equivalence(z2, z2, ns, exhaustive());
  CHECK(same.verdict == "equivalent");
  CHECK(same.witness() == nullptr);
  CHECK(same.systems_checked == 2 + 64);

  auto const sq = geometric_equivalence(z2, direct_power(z2, 2), ns, exhaustive());
  CHECK(sq.passed());

  auto const triv = geometric_equivalence(s2, corpus("trivial"), ns, exhaustive());
  CHECK(triv.verdict == "not-equivalent");
  REQUIRE(triv.witness() != nullptr);
  CHECK(triv.witness()->n == 2);
  CHECK(triv.witness()->failure.system.empty());
  CHECK(triv.witness()->failure.expected.is_diagonal());
  CHECK(triv.witness()->failure.got.is_full());

  auto const inc = geometric_equivalence(z2, corpus("z3group"), ns, exhaustive());
  CHECK(inc.verdict == "incomparable");
  CHECK_FALSE(inc.reason.empty());
  CHECK(inc.witness() == nullptr);

  CHECK(error_kind([&] { geometric_equivalence(z2, s2, ns, exhaustive()); })
        == ErrorKind::signature_mismatch);

  CheckOptions sampled;
  sampled.policy = {PolicyKind::sample, 4, 200};
  auto const z3 = corpus("z3group");
  auto const r  = geometric_equivalence(z3, direct_power(z3, 2), ns, sampled);
  CHECK(r.passed());
  CHECK(r.policy == PolicyKind::sample);
  CHECK(r.seed == 4u);
}

TEST_CASE("exhaustive geometric equivalence matches per-system radicals") {
  std::vector<FiniteAlgebra> algebras;
  for (auto const& file : ualgeo::test::corpus_files()) {
    algebras.push_back(corpus(file));
  }
  algebras.push_back(direct_power(corpus("s2"), 2));
  for (auto const& a : algebras) {
    for (auto const& b : algebras) {
      if (a.signature() != b.signature()) {
        continue;
      }
      for (std::size_t n = 1; n <= 2; ++n) {
        auto const f = build_free(a, n);
        if (f.size() * (f.size() - 1) / 2 > 12) {
          continue;
        }
        std::vector<std::size_t> const ns{n};
        auto const r = geometric_equivalence(a, b, ns, exhaustive());
        if (r.verdict == "incomparable") {
          continue;
        }
        CAPTURE(a.name());
        CAPTURE(b.name());
        CAPTURE(n);
        auto const    systems = ualgeo::test::oracle::all_systems(f.size());
        std::uint64_t count   = 0;
        std::optional<std::uint64_t> first;
        for (std::uint64_t i = 0; i < systems.size(); ++i) {
          if (ualgeo::test::oracle::radical(f, a, systems[i])
              != ualgeo::test::oracle::radical(f, b, systems[i])) {
            ++count;
            first = first.value_or(i);
          }
        }
        CHECK(r.systems_checked == systems.size());
        CHECK(r.failure_count == count);
        CHECK(r.passed() == (count == 0));
        if (first) {
          REQUIRE(r.witness() != nullptr);
          CHECK(r.witness()->failure.index == *first);
          CHECK(r.witness()->failure.system == systems[*first]);
        }
        for (auto const& w : r.failures) {
          CHECK(ualgeo::test::oracle::radical(f, a, w.failure.system) == w.failure.expected);
          CHECK(ualgeo::test::oracle::radical(f, b, w.failure.system) == w.failure.got);
        }
      }
    }
  }
}

TEST_CASE("exhaustive geometric equivalence beyond plain enumeration") {
  auto const z3 = corpus("z3group");
  auto const p  = filter_power(z3, Filter::principal(3, {0, 2}));
  std::vector<std::size_t> const ns{1, 2};
  auto const r = geometric_equivalence(z3, p.algebra, ns, exhaustive());
  CHECK(r.passed());
  CHECK(r.policy == PolicyKind::exhaustive);
  CHECK(r.systems_checked == (std::uint64_t(1) << 3) + (std::uint64_t(1) << 36));
}

TEST_CASE("algebras are equivalent to their filter powers") {
  std::vector<std::size_t> const ns{1, 2};
  for (auto const& file : {"trivial", "s2", "chain3", "z2group", "groupoid3"}) {
    auto const a = corpus(file);
    CAPTURE(file);
    for (std::size_t size = 1; size <= 3; ++size) {
      for (auto const& filter : all_filters(size)) {
        auto const p = filter_power(a, filter);
        CHECK(geometric_equivalence(a, p.algebra, ns, exhaustive()).passed());
      }
    }
  }
}

TEST_CASE("quasi-identities transfer to filter powers") {
  for (auto const& file : {"s2", "z2group", "chain3", "pointed_z2"}) {
    auto const a = corpus(file);
    auto const b = filter_power(a, Filter::principal(3, {0, 2})).algebra;
    CAPTURE(file);
    for (std::size_t n = 1; n <= 2; ++n) {
      auto const f = build_free(a, n);
      Interpretation const in_a(f);
      Interpretation const in_b(f, b);
      auto const pairs = off_diagonal_pairs(f.size());
      std::vector<EquationSystem> bodies{EquationSystem()};
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        bodies.push_back(EquationSystem{pairs[i]});
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
          bodies.push_back(EquationSystem{pairs[i], pairs[j]});
        }
      }
      for (auto const& body : bodies) {
        for (auto const& head : pairs) {
          CHECK(holds_quasi_identity(in_a, body, head).holds
                == holds_quasi_identity(in_b, body, head).holds);
        }
      }
    }
  }
}

TEST_CASE("coordinate algebras") {
  auto const z2 = corpus("z2group");
  auto const f  = build_free(z2, 2);
  CHECK(find_isomorphism(coordinate_algebra(f, {}), f.algebra()).has_value());
  EquationSystem const s{{0, 3}};
  auto const c = coordinate_algebra(f, s);
  CHECK(c.size() == 2);
  CHECK(find_isomorphism(c, z2).has_value());
  auto const zp = build_free(corpus("pointed_z2"), 1);
  auto const one = term_to_element(zp, parse_term("(+ x1 (one))", zp.signature(), 1));
  CHECK(coordinate_algebra(zp, EquationSystem{{zp.generator(1), one}}).size() == 1);
}

TEST_CASE("coordinate embeddings") {
  auto const z2 = build_free(corpus("z2group"), 2);

  SUBCASE("examples") {
    auto const e = coordinate_embedding(z2, EquationSystem{{0, 3}});
    CHECK(e.m == 2);
    CHECK(e.coordinate.size() == 2);
    CHECK(e.verified());
    CHECK_FALSE(e.degenerate());

    auto const all = coordinate_embedding(z2, {});
    CHECK(all.m == 4);
    CHECK(all.coordinate.size() == 4);
    CHECK(all.verified());

    auto const s2 = build_free(corpus("s2"), 2);
    auto const x  = s2.generator(1);
    auto const xy = term_to_element(s2, parse_term("(meet x1 x2)", s2.signature(), 2));
    auto const se = coordinate_embedding(s2, EquationSystem{{x, xy}});
    CHECK(se.m == 3);
    CHECK(se.coordinate.size() == 2);
    CHECK(se.verified());
    CHECK(radical(s2, EquationSystem{{x, xy}}).blocks()
          == std::vector<Block>{{std::min(x, xy), std::max(x, xy)}, {s2.generator(2)}});

    auto const zp  = build_free(corpus("pointed_z2"), 1);
    auto const one = term_to_element(zp, parse_term("(+ x1 (one))", zp.signature(), 1));
    auto const u   = coordinate_embedding(zp, EquationSystem{{zp.generator(1), one}});
    CHECK(u.degenerate());
    CHECK(u.verified());
    CHECK(u.coordinate.size() == 1);
  }

  SUBCASE("projections are assignment homomorphisms") {
    for (auto const& file : {"s2", "z2group", "chain3", "groupoid3"}) {
      auto const a = corpus(file);
      for (std::size_t n = 1; n <= 2; ++n) {
        auto const f = build_free(a, n);
        if (f.size() > 6) {
          continue;
        }
        Interpretation const in(f);
        for (auto const& s : test::oracle::all_systems(f.size())) {
          auto const e = coordinate_embedding(f, s);
          CHECK(e.verified());
          CHECK(e.m == test::oracle::solutions(f, a, s).size());
          auto const q = quotient(f.algebra(), radical(f, s));
          for (std::size_t j = 0; j < e.m; ++j) {
            std::vector<Element> composed;
            for (std::size_t x = 0; x < f.size(); ++x) {
              composed.push_back(e.images[q.projection.map[x]][j]);
            }
            CHECK(composed == test::oracle::vector_of_assignment(f, e.assignments[j]));
            CHECK(is_homomorphism(f.algebra(), a, composed));
          }
        }
      }
    }
  }
}

TEST_CASE("check_lemma") {
  for (auto const& file : {"trivial", "s2", "z2group", "chain3", "pointed_z2"}) {
    auto const a = corpus(file);
    CAPTURE(file);
    for (std::size_t n = 1; n <= 2; ++n) {
      if (build_free(a, n).size() > 6) {
        continue;
      }
      auto const r = check_lemma(a, n, exhaustive());
      CHECK(r.passed());
      CHECK(r.check == "lemma1");
      CHECK(r.op == "pvar");
    }
  }
}
