#pragma once

#include <string>
#include <utility>
#include <vector>

#include "structcat/concrete.hpp"

namespace structcat {

// strict: A ~ A' when some isomorphism A' -> A lies over the identity of the
// base. loose: any isomorphism between objects over the same base.
enum class EquivalenceMode { strict, loose };

const char* to_string(EquivalenceMode mode);

// An equivalence class of C-objects over one X-object.
struct Structure {
  Obj base;
  std::vector<Obj> members;  // sorted, nonempty
  Obj canonical;             // least member
  EquivalenceMode mode = EquivalenceMode::strict;

  friend bool operator==(const Structure&, const Structure&) = default;
};

struct StructurePoset {
  Obj base;
  EquivalenceMode mode = EquivalenceMode::strict;
  std::vector<Structure> nodes;
  std::vector<std::string> labels;                       // canonical names
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (finer, coarser), sorted

  bool has_edge(std::size_t finer, std::size_t coarser) const;
};

std::vector<Structure> structure_classes(const ConcreteCategory& cc, Obj x0,
                                         EquivalenceMode mode = EquivalenceMode::strict);

// The class of A among the objects over U(A).
Structure class_of(const ConcreteCategory& cc, Obj a,
                   EquivalenceMode mode = EquivalenceMode::strict);

bool structures_isomorphic(const ConcreteCategory& cc, const Structure& s1, const Structure& s2);

// s1 >= s2. Throws BaseMismatch when the bases differ.
bool finer(const ConcreteCategory& cc, const Structure& s1, const Structure& s2);

StructurePoset structure_poset(const ConcreteCategory& cc, Obj x0,
                               EquivalenceMode mode = EquivalenceMode::strict);

// Reflexivity, transitivity and antisymmetry of the edge relation, each with
// its least witness.
ValidationReport check_order_axioms(const StructurePoset& poset);

}  // namespace structcat
