#include <doctest.h>

#include "structcat/error.hpp"
#include "structcat/instances.hpp"
#include "support.hpp"

using namespace structcat;

namespace {

Topology topology(int n, std::vector<std::uint32_t> opens) {
  std::sort(opens.begin(), opens.end());
  return Topology{n, opens};
}

// Unions of all rectangles U x V, point (a, b) at a*n2 + b.
Topology rectangles(const Topology& t1, const Topology& t2) {
  std::vector<std::uint32_t> rects;
  for (auto u : t1.opens)
    for (auto v : t2.opens) {
      std::uint32_t r = 0;
      for (int a = 0; a < t1.n; ++a)
        for (int b = 0; b < t2.n; ++b)
          if (((u >> a) & 1u) && ((v >> b) & 1u)) r |= 1u << (a * t2.n + b);
      rects.push_back(r);
    }
  std::set<std::uint32_t> opens{0};
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << rects.size()); ++pick) {
    std::uint32_t u = 0;
    for (std::size_t i = 0; i < rects.size(); ++i)
      if ((pick >> i) & 1u) u |= rects[i];
    opens.insert(u);
  }
  return Topology{t1.n * t2.n, {opens.begin(), opens.end()}};
}

}  // namespace

TEST_CASE("topology counts match a brute-force enumeration") {
  const std::size_t expected[] = {1, 1, 4, 29, 355};
  for (int n = 0; n <= 4; ++n) {
    auto brute = support::brute_topologies(n);
    CHECK(brute.size() == expected[n]);
    CHECK(count_topologies(n) == brute.size());
    std::vector<std::vector<std::uint32_t>> mine;
    for (const auto& t : enumerate_topologies(n)) {
      CHECK(t.valid());
      mine.push_back(t.opens);
    }
    std::sort(mine.begin(), mine.end());
    std::sort(brute.begin(), brute.end());
    CHECK(mine == brute);
  }
  CHECK_THROWS_AS(count_topologies(5), BoundExceeded);
}

TEST_CASE("Top_fin objects and continuity") {
  TopFin t2 = build_top_fin({2});
  CHECK(t2.concrete.C().object_count() == 4);
  TopFin t = build_top_fin({0, 1, 2, 3});
  CHECK(t.concrete.C().object_count() == 1 + 1 + 4 + 29);
  const auto& C = t.concrete.C();
  // hom-sets are exactly the continuous functions, by direct preimage test
  for (std::uint32_t a = 0; a < C.object_count(); ++a)
    for (std::uint32_t b = 0; b < C.object_count(); ++b) {
      const auto& sa = t.spaces[a];
      const auto& sb = t.spaces[b];
      std::size_t continuous = 0;
      for (const auto& f : support::all_functions(sa.n, sb.n))
        if (support::continuous(f, sa, sb)) ++continuous;
      CHECK(C.hom_size(Obj{a}, Obj{b}) == continuous);
      for (auto m : C.hom_indices(Obj{a}, Obj{b}))
        CHECK(support::continuous(C.underlying_function(Mor{m}), sa, sb));
    }
  // the identity out of the discrete space is continuous into every space
  for (int n = 0; n <= 3; ++n) {
    Obj d = t.object_of(Topology::discrete(n));
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    for (Obj a : t.concrete.fiber(t.base_of(n))) CHECK(t.concrete.liftable(t.set_map(n, n, id), d, a));
  }
  CHECK_THROWS_AS(build_top_fin({5}), BoundExceeded);
  CHECK_THROWS_AS(build_preord_fin({4}), BoundExceeded);
}

TEST_CASE("Preord_fin objects are the preorders; morphisms the monotone maps") {
  PreordFin p = build_preord_fin({0, 1, 2, 3});
  const auto& C = p.concrete.C();
  CHECK(C.object_count() == 1 + 1 + 4 + 29);
  for (std::uint32_t a = 0; a < C.object_count(); ++a) {
    const auto& pa = p.orders[a];
    CHECK(pa.valid());
    for (std::uint32_t b = 0; b < C.object_count(); ++b) {
      const auto& pb = p.orders[b];
      std::size_t monotone = 0;
      for (const auto& f : support::all_functions(pa.n, pb.n)) {
        bool ok = true;
        for (int x = 0; x < pa.n; ++x)
          for (int y = 0; y < pa.n; ++y)
            if (pa.leq(x, y) && !pb.leq(f[x], f[y])) ok = false;
        if (ok) ++monotone;
      }
      CHECK(C.hom_size(Obj{a}, Obj{b}) == monotone);
    }
  }
}

TEST_CASE("initial topology oracle") {
  Topology sierpinski = topology(2, {0b00, 0b01, 0b11});
  CHECK(initial_topology_oracle(2, {}) == Topology::indiscrete(2));
  CHECK(initial_topology_oracle(3, {{{0, 1, 2}, Topology::discrete(3)}}) == Topology::discrete(3));
  // {0} included in the Sierpinski space
  CHECK(initial_topology_oracle(1, {{{0}, sierpinski}}) == Topology::discrete(1));
  // the output is always a topology containing every preimage
  for (const auto& f : support::all_functions(3, 2))
    for (const auto& g : support::all_functions(3, 2)) {
      auto t = initial_topology_oracle(3, {{f, sierpinski}, {g, Topology::discrete(2)}});
      CHECK(t.valid());
      for (auto u : sierpinski.opens) CHECK(t.is_open(support::preimage(f, u)));
      CHECK(t.is_open(support::preimage(g, 0b01)));
    }
}

TEST_CASE("final topology oracle") {
  CHECK(final_topology_oracle(2, {}) == Topology::discrete(2));
  // quotient of the discrete 3-point space collapsing 1 and 2
  CHECK(final_topology_oracle(2, {{{0, 1, 1}, Topology::discrete(3)}}) == Topology::discrete(2));
  // constant map from the indiscrete 2-point space, evaluated directly
  std::vector<std::uint32_t> opens;
  for (std::uint32_t u = 0; u < 4; ++u)
    if (Topology::indiscrete(2).is_open(support::preimage({0, 0}, u))) opens.push_back(u);
  CHECK(final_topology_oracle(2, {{{0, 0}, Topology::indiscrete(2)}}) == topology(2, opens));
  CHECK(final_topology_oracle(2, {{{0, 0}, Topology::indiscrete(2)}}) == Topology::discrete(2));
  // a map that is onto: the indiscrete source forces the indiscrete quotient
  CHECK(final_topology_oracle(2, {{{0, 1}, Topology::indiscrete(2)}}) == Topology::indiscrete(2));
}

TEST_CASE("product topology oracle") {
  Topology sierpinski = topology(2, {0b00, 0b01, 0b11});
  CHECK(product_topology_oracle(Topology::indiscrete(2), Topology::indiscrete(3)) == Topology::indiscrete(6));
  CHECK(product_topology_oracle(Topology::discrete(2), Topology::discrete(2)) == Topology::discrete(4));
  auto ss = product_topology_oracle(sierpinski, sierpinski);
  CHECK(ss == rectangles(sierpinski, sierpinski));
  CHECK(ss.opens == std::vector<std::uint32_t>{0b0000, 0b0001, 0b0011, 0b0101, 0b0111, 0b1111});
  for (const auto& a : enumerate_topologies(2))
    for (const auto& b : enumerate_topologies(2)) CHECK(product_topology_oracle(a, b) == rectangles(a, b));
  CHECK_THROWS_AS(product_topology_oracle(Topology::discrete(4), Topology::discrete(5)), BoundExceeded);
}

TEST_CASE("initial preorder oracle") {
  CHECK(initial_preorder_oracle(3, {}) == Preorder::chaotic(3));
  CHECK(initial_preorder_oracle(3, {{{0, 1, 2}, Preorder::discrete(3)}}) == Preorder::discrete(3));
  // two maps into the 2-chain 0 <= 1: the intersection of the pullbacks
  Preorder chain{2, 0b1011};
  REQUIRE(chain.valid());
  for (const auto& f : support::all_functions(3, 2))
    for (const auto& g : support::all_functions(3, 2)) {
      Preorder p = initial_preorder_oracle(3, {{f, chain}, {g, chain}});
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(p.leq(x, y) == (f[x] <= f[y] && g[x] <= g[y]));
    }
}

TEST_CASE("Set_fin objects") {
  FinCategory s = build_set_fin(2);
  CHECK(s.name() == "Set_fin");
  CHECK(s.object_count() == 3);
  CHECK(s.carrier_size(s.object("S2")) == 2);
}
