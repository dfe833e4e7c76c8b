#include "structcat/instances.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "structcat/error.hpp"
#include "structcat/parallel.hpp"

namespace structcat {

namespace {

std::uint32_t full_set(int n) { return n >= 32 ? ~0u : (1u << n) - 1; }

std::string hex(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i, value >>= 4) s[i] = "0123456789abcdef"[value & 15u];
  return s;
}

std::uint32_t preimage(const Function& f, std::uint32_t subset) {
  std::uint32_t r = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if ((subset >> f[x]) & 1u) r |= 1u << x;
  return r;
}

void check_function(const Function& f, int n, int m) {
  if (static_cast<int>(f.size()) != n) throw DomainMismatch("function must have " + std::to_string(n) + " images");
  for (int v : f)
    if (v < 0 || v >= m) throw DomainMismatch("function image out of range");
}

// Union/intersection closure of a family of subsets of {0..n-1}, with the
// empty and full set added.
Topology generate_topology(int n, const std::vector<std::uint32_t>& subbasis) {
  const std::uint32_t full = full_set(n);
  std::vector<bool> in_basis(std::size_t{1} << n, false);
  std::vector<std::uint32_t> basis;
  auto add_basis = [&](std::uint32_t s) {
    if (!in_basis[s]) {
      in_basis[s] = true;
      basis.push_back(s);
    }
  };
  add_basis(full);
  for (auto s : subbasis) add_basis(s);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add_basis(basis[i] & basis[j]);

  std::vector<bool> in_opens(std::size_t{1} << n, false);
  std::vector<std::uint32_t> opens{0};
  in_opens[0] = true;
  for (auto b : basis) {
    std::size_t current = opens.size();
    for (std::size_t i = 0; i < current; ++i) {
      std::uint32_t u = opens[i] | b;
      if (!in_opens[u]) {
        in_opens[u] = true;
        opens.push_back(u);
      }
    }
  }
  std::sort(opens.begin(), opens.end());
  return Topology{n, std::move(opens)};
}

std::vector<Preorder> enumerate_preorders(int n) {
  std::vector<Preorder> out;
  std::uint32_t diag = 0;
  for (int i = 0; i < n; ++i) diag |= 1u << (i * n + i);
  std::uint32_t bits = static_cast<std::uint32_t>(n * n);
  for (std::uint32_t r = 0; r < (1u << bits); ++r) {
    if ((r & diag) != diag) continue;
    Preorder p{n, r};
    if (p.valid()) out.push_back(p);
  }
  return out;
}

// Open sets of a finite topology are the up-sets of its specialization
// preorder; this is the route the Top_fin builder uses.
Topology upsets(const Preorder& p) {
  std::vector<std::uint32_t> opens;
  for (std::uint32_t u = 0; u <= full_set(p.n); ++u) {
    bool up = true;
    for (int x = 0; x < p.n && up; ++x)
      if ((u >> x) & 1u)
        for (int y = 0; y < p.n; ++y)
          if (p.leq(x, y) && !((u >> y) & 1u)) up = false;
    if (up) opens.push_back(u);
  }
  return Topology{p.n, std::move(opens)};
}

std::vector<int> normalized_sizes(std::vector<int> sizes, int bound, const char* what) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (int s : sizes)
    if (s < 0 || s > bound)
      throw BoundExceeded(std::string(what) + " carrier sizes must lie in 0.." + std::to_string(bound));
  return sizes;
}

template <typename Space, typename Admits>
ConcreteCategory assemble(const std::string& name, const std::vector<Space>& spaces, Admits admits) {
  int max_size = 0;
  for (const auto& s : spaces) max_size = std::max(max_size, s.n);
  FinCategory X = build_set_fin(max_size);

  std::vector<std::string> names;
  std::vector<int> carriers;
  for (const auto& s : spaces) {
    names.push_back(s.name());
    carriers.push_back(s.n);
  }
  const std::size_t n = spaces.size();
  std::vector<std::vector<std::uint32_t>> functions(n * n);
  parallel_for(n, [&](std::size_t a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto& codes = functions[a * n + b];
      std::uint32_t count = function_count(spaces[a].n, spaces[b].n);
      for (std::uint32_t code = 0; code < count; ++code)
        if (admits(spaces[a], spaces[b], code)) codes.push_back(code);
    }
  });
  FinCategory C = make_carrier_category(name, std::move(names), std::move(carriers), std::move(functions));

  std::vector<Obj> objects(C.object_count());
  for (std::uint32_t a = 0; a < C.object_count(); ++a)
    objects[a] = X.object("S" + std::to_string(C.carrier_size(Obj{a})));
  std::vector<Mor> morphisms(C.morphism_count());
  for (std::uint32_t m = 0; m < C.morphism_count(); ++m) {
    Mor f{m};
    morphisms[m] = *X.find_by_code(objects[C.dom(f).index], objects[C.cod(f).index], C.function_code(f));
  }
  Functor U("U", C.name(), X.name(), std::move(objects), std::move(morphisms));
  return ConcreteCategory(std::move(C), std::move(X), std::move(U));
}

}  // namespace

// ------------------------------------------------------------------ Topology

Topology Topology::discrete(int n) {
  Topology t{n, {}};
  for (std::uint32_t u = 0; u <= full_set(n); ++u) t.opens.push_back(u);
  return t;
}

Topology Topology::indiscrete(int n) {
  if (n == 0) return Topology{0, {0}};
  return Topology{n, {0, full_set(n)}};
}

bool Topology::is_open(std::uint32_t subset) const {
  return std::binary_search(opens.begin(), opens.end(), subset);
}

bool Topology::valid() const {
  if (!std::is_sorted(opens.begin(), opens.end()) ||
      std::adjacent_find(opens.begin(), opens.end()) != opens.end())
    return false;
  if (!is_open(0) || !is_open(full_set(n))) return false;
  for (auto a : opens) {
    if (a > full_set(n)) return false;
    for (auto b : opens)
      if (!is_open(a | b) || !is_open(a & b)) return false;
  }
  return true;
}

std::uint64_t Topology::family_mask() const {
  std::uint64_t m = 0;
  for (auto u : opens) m |= std::uint64_t{1} << u;
  return m;
}

std::string Topology::name() const {
  int width = std::max(1, (1 << n) / 4);
  return "T" + std::to_string(n) + "_" + hex(family_mask(), width);
}

// ------------------------------------------------------------------ Preorder

Preorder Preorder::discrete(int n) {
  Preorder p{n, 0};
  for (int i = 0; i < n; ++i) p.relation |= 1u << (i * n + i);
  return p;
}

Preorder Preorder::chaotic(int n) { return Preorder{n, full_set(n * n)}; }

bool Preorder::valid() const {
  for (int i = 0; i < n; ++i) {
    if (!leq(i, i)) return false;
    for (int j = 0; j < n; ++j)
      if (leq(i, j))
        for (int k = 0; k < n; ++k)
          if (leq(j, k) && !leq(i, k)) return false;
  }
  return true;
}

std::string Preorder::name() const {
  int width = std::max(1, (n * n + 3) / 4);
  return "P" + std::to_string(n) + "_" + hex(relation, width);
}

// ----------------------------------------------------------------- builders

FinCategory build_set_fin(int max_size) {
  if (max_size < 0 || max_size > kMaxSetSize)
    throw BoundExceeded("Set_fin size must lie in 0.." + std::to_string(kMaxSetSize));
  std::vector<std::string> names;
  std::vector<int> carriers;
  for (int i = 0; i <= max_size; ++i) {
    names.push_back("S" + std::to_string(i));
    carriers.push_back(i);
  }
  const std::size_t n = names.size();
  std::vector<std::vector<std::uint32_t>> functions(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::uint32_t count = function_count(carriers[a], carriers[b]);
      auto& codes = functions[a * n + b];
      codes.resize(count);
      for (std::uint32_t c = 0; c < count; ++c) codes[c] = c;
    }
  return make_carrier_category("Set_fin", std::move(names), std::move(carriers), std::move(functions));
}

std::vector<Topology> enumerate_topologies(int n) {
  if (n < 0 || n > kMaxTopologySize)
    throw BoundExceeded("topology enumeration supports 0.." + std::to_string(kMaxTopologySize) + " points");
  const std::uint32_t full = full_set(n);
  std::vector<std::uint32_t> inner;
  for (std::uint32_t u = 1; u < full; ++u) inner.push_back(u);
  std::vector<Topology> out;
  for (std::uint32_t pick = 0; pick < (1u << inner.size()); ++pick) {
    Topology t{n, {0}};
    for (std::size_t i = 0; i < inner.size(); ++i)
      if ((pick >> i) & 1u) t.opens.push_back(inner[i]);
    if (full != 0) t.opens.push_back(full);
    if (t.valid()) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const Topology& a, const Topology& b) { return a.family_mask() < b.family_mask(); });
  return out;
}

std::size_t count_topologies(int n) { return enumerate_topologies(n).size(); }

TopFin build_top_fin(std::vector<int> sizes) {
  sizes = normalized_sizes(std::move(sizes), kMaxTopologySize, "Top_fin");
  std::vector<Topology> spaces;
  for (int n : sizes) {
    std::set<std::uint64_t> seen;
    for (const auto& p : enumerate_preorders(n)) {
      Topology t = upsets(p);
      if (seen.insert(t.family_mask()).second) spaces.push_back(std::move(t));
    }
  }
  std::sort(spaces.begin(), spaces.end(),
            [](const Topology& a, const Topology& b) { return a.name() < b.name(); });

  // Preimage tables per (n, m): pre[code][subset].
  std::vector<std::vector<std::vector<std::uint32_t>>> pre(25);
  for (int n : sizes)
    for (int m : sizes) {
      auto& table = pre[n * 5 + m];
      std::uint32_t count = function_count(n, m);
      table.resize(count);
      for (std::uint32_t code = 0; code < count; ++code) {
        auto f = decode_function(code, n, m);
        for (std::uint32_t v = 0; v <= full_set(m); ++v) table[code].push_back(preimage(f, v));
      }
    }
  auto continuous = [&](const Topology& a, const Topology& b, std::uint32_t code) {
    const auto& row = pre[a.n * 5 + b.n][code];
    std::uint64_t amask = a.family_mask();
    for (auto v : b.opens)
      if (!((amask >> row[v]) & 1u)) return false;
    return true;
  };
  TopFin result{assemble("Top_fin", spaces, continuous), spaces};
  return result;
}

Obj TopFin::object_of(const Topology& t) const { return concrete.C().object(t.name()); }
Obj TopFin::base_of(int n) const { return concrete.X().object("S" + std::to_string(n)); }
Mor TopFin::set_map(int n, int m, const Function& f) const {
  check_function(f, n, m);
  return *concrete.X().find_by_code(base_of(n), base_of(m), encode_function(f, m));
}

PreordFin build_preord_fin(std::vector<int> sizes) {
  sizes = normalized_sizes(std::move(sizes), kMaxPreorderSize, "Preord_fin");
  std::vector<Preorder> orders;
  for (int n : sizes)
    for (const auto& p : enumerate_preorders(n)) orders.push_back(p);
  std::sort(orders.begin(), orders.end(),
            [](const Preorder& a, const Preorder& b) { return a.name() < b.name(); });
  auto monotone = [](const Preorder& a, const Preorder& b, std::uint32_t code) {
    Function f = decode_function(code, a.n, b.n);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (a.leq(i, j) && !b.leq(f[i], f[j])) return false;
    return true;
  };
  PreordFin result{assemble("Preord_fin", orders, monotone), orders};
  return result;
}

Obj PreordFin::object_of(const Preorder& p) const { return concrete.C().object(p.name()); }
Obj PreordFin::base_of(int n) const { return concrete.X().object("S" + std::to_string(n)); }
Mor PreordFin::set_map(int n, int m, const Function& f) const {
  check_function(f, n, m);
  return *concrete.X().find_by_code(base_of(n), base_of(m), encode_function(f, m));
}

// ------------------------------------------------------------------ oracles

Topology initial_topology_oracle(int n, const std::vector<MapToSpace>& family) {
  if (n < 0 || n > kMaxProductCarrier) throw BoundExceeded("oracle carrier must lie in 0..16");
  std::vector<std::uint32_t> subbasis;
  for (const auto& [f, space] : family) {
    check_function(f, n, space.n);
    for (auto v : space.opens) subbasis.push_back(preimage(f, v));
  }
  return generate_topology(n, subbasis);
}

Topology final_topology_oracle(int n, const std::vector<MapToSpace>& family) {
  if (n < 0 || n > kMaxProductCarrier) throw BoundExceeded("oracle carrier must lie in 0..16");
  for (const auto& [f, space] : family) check_function(f, space.n, n);
  Topology t{n, {}};
  for (std::uint32_t u = 0; u <= full_set(n); ++u) {
    bool open = true;
    for (const auto& [f, space] : family)
      if (!space.is_open(preimage(f, u))) {
        open = false;
        break;
      }
    if (open) t.opens.push_back(u);
  }
  return t;
}

Topology product_topology_oracle(const Topology& t1, const Topology& t2) {
  int n = t1.n * t2.n;
  if (n > kMaxProductCarrier) throw BoundExceeded("product carrier exceeds 16 points");
  Function p1(n), p2(n);
  for (int k = 0; k < n; ++k) {
    p1[k] = k / t2.n;
    p2[k] = k % t2.n;
  }
  return initial_topology_oracle(n, {{p1, t1}, {p2, t2}});
}

Preorder initial_preorder_oracle(int n, const std::vector<MapToOrder>& family) {
  if (n < 0 || n > 5) throw BoundExceeded("preorder carrier must lie in 0..5");
  for (const auto& [f, order] : family) check_function(f, n, order.n);
  Preorder p{n, 0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (const auto& [f, order] : family) le = le && order.leq(f[i], f[j]);
      if (le) p.relation |= 1u << (i * n + j);
    }
  return p;
}

}  // namespace structcat
