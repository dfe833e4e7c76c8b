#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "structcat/concrete.hpp"
#include "structcat/structures.hpp"

namespace structcat {

// A family of C-morphisms out of one apex.
struct Source {
  Obj apex;
  std::vector<Mor> family;
};

struct FamilyMember {
  Mor x_morphism;
  Obj object;  // target A_i for initial families, source A_i for final ones
};

// X-morphisms between a base and the underlying objects of C-objects:
// base -> U(A_i) when used for initiality, U(A_i) -> base for finality.
struct XFamily {
  Obj base;
  std::vector<FamilyMember> members;
};

struct Counterexample {
  Obj probe;       // B
  Mor x_morphism;  // f : U(B) -> U(apex), all composites lift, f does not
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct InitialityReport {
  bool initial = false;
  std::optional<Counterexample> counterexample;
  friend bool operator==(const InitialityReport&, const InitialityReport&) = default;
};

// Checks the "if" direction for every C-object B (in order) and every
// f : U(B) -> U(apex); the first failure is the counterexample.
InitialityReport is_initial_source(const ConcreteCategory& cc, const Source& s);

// Re-checks a counterexample by scanning hom-sets directly, without the
// lift index.
bool recheck_counterexample(const ConcreteCategory& cc, const Source& s, const Counterexample& cex);

// Index of the first member that does not lift out of A, if any.
std::optional<std::size_t> first_unliftable(const ConcreteCategory& cc, Obj a, const XFamily& xf);
bool admissible(const ConcreteCategory& cc, Obj a, const XFamily& xf);

// The lifted source (A -> A_i). Throws NotLiftable.
Source lifted_source(const ConcreteCategory& cc, Obj a, const XFamily& xf);

// Decides whether the structure of A is initial for xf. The verdict is
// recomputed for every member of A's strict class and must agree.
InitialityReport is_initial_structure(const ConcreteCategory& cc, Obj a, const XFamily& xf);

// Finality, computed as initiality in the opposite concrete category.
InitialityReport is_final_structure(const ConcreteCategory& cc, Obj a, const XFamily& into);
// Finality checked directly on sinks in C. Must agree with the above.
InitialityReport is_final_structure_direct(const ConcreteCategory& cc, Obj a, const XFamily& into);

// Least strict structure over x0 whose members make every member of xf lift,
// if such a minimum exists.
std::optional<Structure> coarsest_admissible(const ConcreteCategory& cc, Obj x0, const XFamily& xf);

struct TheoremReport {
  ValidationReport validation;
  std::vector<Structure> initial;     // structures found initial
  std::optional<Structure> coarsest;  // coarsest_admissible output
};

// For each strict structure over x0 that is initial for xf: it must be
// admissible, coarser than every admissible structure, equal to
// coarsest_admissible, and the only initial one. A coarsest structure that
// is not initial is recorded as a note, never as a violation.
TheoremReport verify_theorem(const ConcreteCategory& cc, Obj x0, const XFamily& xf);

enum class SearchDomain { random, top };

struct SearchConfig {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 40;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000;
  SearchDomain domain = SearchDomain::random;
  int max_carrier = 2;
  std::vector<int> top_sizes = {0, 1, 2};
};

struct SearchWitness {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t subseed = 0;
  ConcreteCategory cc;
  XFamily family;
  Structure coarsest;
  InitialityReport report;
};

// Seeded randomized search for a coarsest admissible structure that is not
// initial. Trials are split across workers; the witness with the smallest
// trial index wins.
std::optional<SearchWitness> search_coarsest_not_initial(const SearchConfig& config);

// Independent re-verification of both halves of a witness.
bool reverify_witness(const SearchWitness& w);

}  // namespace structcat
