#include <doctest.h>

#include "structcat/error.hpp"
#include "structcat/instances.hpp"
#include "structcat/random_category.hpp"
#include "structcat/structures.hpp"
#include "support.hpp"

using namespace structcat;

namespace {

std::vector<std::string> canonical_names(const ConcreteCategory& cc, const std::vector<Structure>& classes) {
  std::vector<std::string> out;
  for (const auto& s : classes) out.push_back(cc.C().object_name(s.canonical));
  return out;
}

// Partition, canonical member, strict classes refine loose ones, finer is
// representative-independent, isomorphism of structures is an equivalence.
void check_structure_properties(const ConcreteCategory& cc) {
  const auto& C = cc.C();
  for (std::uint32_t x = 0; x < cc.X().object_count(); ++x) {
    Obj x0{x};
    auto fib = cc.fiber(x0);
    auto strict = structure_classes(cc, x0, EquivalenceMode::strict);
    auto loose = structure_classes(cc, x0, EquivalenceMode::loose);
    for (const auto* classes : {&strict, &loose}) {
      std::vector<Obj> covered;
      for (const auto& s : *classes) {
        REQUIRE_FALSE(s.members.empty());
        CHECK(std::is_sorted(s.members.begin(), s.members.end()));
        CHECK(s.canonical == s.members.front());
        for (Obj m : s.members) CHECK(cc.U()(m) == x0);
        covered.insert(covered.end(), s.members.begin(), s.members.end());
      }
      std::sort(covered.begin(), covered.end());
      CHECK(covered == std::vector<Obj>(fib.begin(), fib.end()));
    }
    for (const auto& s : strict) {
      int containing = 0;
      for (const auto& l : loose)
        if (std::includes(l.members.begin(), l.members.end(), s.members.begin(), s.members.end())) ++containing;
      CHECK(containing == 1);
      CHECK(class_of(cc, s.members.back()) == s);
    }
    Mor id = cc.X().identity(x0);
    for (const auto& s1 : strict)
      for (const auto& s2 : strict) {
        bool any = false, all = true;
        for (Obj a : s1.members)
          for (Obj b : s2.members) {
            bool l = cc.liftable(id, a, b);
            any = any || l;
            all = all && l;
          }
        CHECK(any == all);
        CHECK(finer(cc, s1, s2) == any);
      }
    for (const auto& s1 : loose)
      for (const auto& s2 : loose)
        for (const auto& s3 : loose) {
          CHECK(structures_isomorphic(cc, s1, s1));
          CHECK(structures_isomorphic(cc, s1, s2) == structures_isomorphic(cc, s2, s1));
          if (structures_isomorphic(cc, s1, s2) && structures_isomorphic(cc, s2, s3))
            CHECK(structures_isomorphic(cc, s1, s3));
        }
    (void)C;
  }
}

}  // namespace

TEST_CASE("structure classes in Top_fin over a 2-point set") {
  TopFin t = build_top_fin({2});
  const auto& cc = t.concrete;
  CHECK(structure_classes(cc, t.base_of(0)).empty());

  auto strict = structure_classes(cc, t.base_of(2), EquivalenceMode::strict);
  CHECK(strict.size() == 4);
  for (const auto& s : strict) CHECK(s.members.size() == 1);

  auto loose = structure_classes(cc, t.base_of(2), EquivalenceMode::loose);
  REQUIRE(loose.size() == 3);
  CHECK(canonical_names(cc, loose) == std::vector<std::string>{"T2_9", "T2_b", "T2_f"});
  CHECK(loose[1].members == std::vector<Obj>{cc.C().object("T2_b"), cc.C().object("T2_d")});
}

TEST_CASE("isomorphic structures and the finer order on 2 points") {
  TopFin t = build_top_fin({2});
  const auto& cc = t.concrete;
  auto cls = [&](const char* name) { return class_of(cc, cc.C().object(name)); };
  Structure indiscrete = cls("T2_9"), sb = cls("T2_b"), sd = cls("T2_d"), discrete = cls("T2_f");

  CHECK(structures_isomorphic(cc, sb, sb));
  CHECK(structures_isomorphic(cc, sb, sd));
  CHECK_FALSE(structures_isomorphic(cc, discrete, indiscrete));

  CHECK(finer(cc, sb, sb));
  CHECK(finer(cc, discrete, indiscrete));
  CHECK_FALSE(finer(cc, indiscrete, discrete));
  CHECK_FALSE(finer(cc, sb, sd));
  CHECK_FALSE(finer(cc, sd, sb));

  auto poset = structure_poset(cc, t.base_of(2));
  REQUIRE(poset.nodes.size() == 4);
  CHECK(poset.labels == std::vector<std::string>{"T2_9", "T2_b", "T2_d", "T2_f"});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(poset.has_edge(3, i));  // discrete is the top
    CHECK(poset.has_edge(i, 0));  // indiscrete is the bottom
  }
  CHECK_FALSE(poset.has_edge(1, 2));
  CHECK_FALSE(poset.has_edge(2, 1));
  CHECK(check_order_axioms(poset).valid());
}

TEST_CASE("finer across different bases is an error") {
  TopFin t = build_top_fin({1, 2});
  const auto& cc = t.concrete;
  auto s1 = structure_classes(cc, t.base_of(1)).front();
  auto s2 = structure_classes(cc, t.base_of(2)).front();
  CHECK_THROWS_AS(finer(cc, s1, s2), BaseMismatch);
}

TEST_CASE("singleton fiber gives one node with a reflexive edge") {
  TopFin t = build_top_fin({1});
  auto poset = structure_poset(t.concrete, t.base_of(1));
  CHECK(poset.nodes.size() == 1);
  CHECK(poset.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
}

TEST_CASE("Top_fin over 3 points: the order is reverse inclusion of open sets") {
  TopFin t = build_top_fin({3});
  const auto& cc = t.concrete;
  auto poset = structure_poset(cc, t.base_of(3));
  REQUIRE(poset.nodes.size() == 29);
  for (std::size_t i = 0; i < 29; ++i)
    for (std::size_t j = 0; j < 29; ++j) {
      const auto& oi = t.spaces[poset.nodes[i].canonical.index].opens;
      const auto& oj = t.spaces[poset.nodes[j].canonical.index].opens;
      CHECK(poset.has_edge(i, j) == support::contains_all(oi, oj));
    }
  CHECK(check_order_axioms(poset).valid());
}

TEST_CASE("check_order_axioms on hand-built relations") {
  StructurePoset p;
  p.nodes.resize(3);
  p.labels = {"a", "b", "c"};

  SUBCASE("missing transitive edge") {
    p.edges = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}};
    auto r = check_order_axioms(p);
    REQUIRE(r.find("Transitivity"));
    CHECK(r.find("Transitivity")->witness == std::vector<std::string>{"a", "b", "c"});
    CHECK_FALSE(r.find("Reflexivity"));
    CHECK_FALSE(r.find("Antisymmetry"));
  }
  SUBCASE("missing reflexive edge") {
    p.edges = {{0, 0}, {2, 2}};
    auto r = check_order_axioms(p);
    REQUIRE(r.find("Reflexivity"));
    CHECK(r.find("Reflexivity")->witness == std::vector<std::string>{"b"});
  }
  SUBCASE("two-way edge") {
    p.edges = {{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}};
    auto r = check_order_axioms(p);
    REQUIRE(r.find("Antisymmetry"));
    CHECK(r.find("Antisymmetry")->witness == std::vector<std::string>{"a", "c"});
  }
}

TEST_CASE("structure properties on instances and seeded random categories") {
  check_structure_properties(build_top_fin({0, 1, 2}).concrete);
  check_structure_properties(build_preord_fin({0, 1, 2, 3}).concrete);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    ConcreteCategory cc = random_concrete_category(seed, {});
    check_structure_properties(cc);
    for (std::uint32_t x = 0; x < cc.X().object_count(); ++x)
      CHECK(check_order_axioms(structure_poset(cc, Obj{x})).valid());
  }
}
