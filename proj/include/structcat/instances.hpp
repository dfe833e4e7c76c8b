#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "structcat/concrete.hpp"

namespace structcat {

// A topology on the carrier {0..n-1}; opens are subsets as n-bit masks,
// kept sorted.
struct Topology {
  int n = 0;
  std::vector<std::uint32_t> opens;

  static Topology discrete(int n);
  static Topology indiscrete(int n);

  bool is_open(std::uint32_t subset) const;
  // Contains the empty and full set and is closed under pairwise union and
  // intersection.
  bool valid() const;
  // opens as a bitmask over subsets (n <= 5).
  std::uint64_t family_mask() const;
  // Object identifier used by the Top_fin builder: T<n>_<hex family mask>.
  std::string name() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

// Reflexive, transitive relation on {0..n-1}; bit i*n+j set iff i <= j.
struct Preorder {
  int n = 0;
  std::uint32_t relation = 0;

  static Preorder discrete(int n);
  static Preorder chaotic(int n);

  bool leq(int i, int j) const { return (relation >> (i * n + j)) & 1u; }
  bool valid() const;
  std::string name() const;  // P<n>_<hex relation>

  friend bool operator==(const Preorder&, const Preorder&) = default;
};

// Images of 0..n-1.
using Function = std::vector<int>;

struct MapToSpace {
  Function map;
  Topology space;
};

struct MapToOrder {
  Function map;
  Preorder order;
};

inline constexpr int kMaxSetSize = 6;
inline constexpr int kMaxTopologySize = 4;
inline constexpr int kMaxPreorderSize = 3;
inline constexpr int kMaxProductCarrier = 16;

// Objects S0..S<max_size>, all functions. Carrier form.
FinCategory build_set_fin(int max_size);

// Enumerates open-set families directly (n <= 4).
std::vector<Topology> enumerate_topologies(int n);
std::size_t count_topologies(int n);

struct TopFin {
  ConcreteCategory concrete;
  std::vector<Topology> spaces;  // indexed by C-object

  Obj object_of(const Topology& t) const;
  Obj base_of(int n) const;  // the Set_fin object S<n>
  // The Set_fin morphism of a function n -> m.
  Mor set_map(int n, int m, const Function& f) const;
};

// Top_fin over the listed carrier sizes, with U forgetting topologies.
// Continuity is decided by direct preimage tests.
TopFin build_top_fin(std::vector<int> sizes);

struct PreordFin {
  ConcreteCategory concrete;
  std::vector<Preorder> orders;

  Obj object_of(const Preorder& p) const;
  Obj base_of(int n) const;
  Mor set_map(int n, int m, const Function& f) const;
};

PreordFin build_preord_fin(std::vector<int> sizes);

// Coarsest topology on n points making every map continuous: the preimages
// of all target opens, closed under intersection and union.
Topology initial_topology_oracle(int n, const std::vector<MapToSpace>& family);

// Finest topology on n points making every map (from its source space)
// continuous: the subsets whose preimages are all open.
Topology final_topology_oracle(int n, const std::vector<MapToSpace>& family);

// Product on the carrier n1*n2, point (a, b) at index a*n2 + b.
Topology product_topology_oracle(const Topology& t1, const Topology& t2);

// x <= y iff f_i(x) <= f_i(y) for every i.
Preorder initial_preorder_oracle(int n, const std::vector<MapToOrder>& family);

}  // namespace structcat
