#include "structcat/structures.hpp"

#include <algorithm>

#include "structcat/error.hpp"

namespace structcat {

namespace {

bool isomorphic_over_identity(const ConcreteCategory& cc, Obj from, Obj to) {
  const auto& C = cc.C();
  Mor id = cc.X().identity(cc.U()(from));
  auto there = cc.lift(id, from, to);
  if (!there) return false;
  auto back = cc.lift(id, to, from);
  if (!back) return false;
  return C.compose(*back, *there) == C.identity(from) && C.compose(*there, *back) == C.identity(to);
}

bool equivalent(const ConcreteCategory& cc, Obj a, Obj b, EquivalenceMode mode) {
  if (mode == EquivalenceMode::strict) return isomorphic_over_identity(cc, b, a);
  return !find_isomorphisms(cc.C(), b, a).empty();
}

}  // namespace

const char* to_string(EquivalenceMode mode) {
  return mode == EquivalenceMode::strict ? "strict" : "loose";
}

bool StructurePoset::has_edge(std::size_t finer, std::size_t coarser) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(finer, coarser));
}

std::vector<Structure> structure_classes(const ConcreteCategory& cc, Obj x0, EquivalenceMode mode) {
  auto members = cc.fiber(x0);
  std::vector<bool> assigned(members.size(), false);
  std::vector<Structure> classes;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (assigned[i]) continue;
    Structure s{x0, {members[i]}, members[i], mode};
    assigned[i] = true;
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!assigned[j] && equivalent(cc, members[i], members[j], mode)) {
        s.members.push_back(members[j]);
        assigned[j] = true;
      }
    }
    classes.push_back(std::move(s));
  }
  return classes;
}

Structure class_of(const ConcreteCategory& cc, Obj a, EquivalenceMode mode) {
  Structure s{cc.U()(a), {}, a, mode};
  for (Obj b : cc.fiber(s.base))
    if (b == a || equivalent(cc, a, b, mode)) s.members.push_back(b);
  s.canonical = s.members.front();
  return s;
}

bool structures_isomorphic(const ConcreteCategory& cc, const Structure& s1, const Structure& s2) {
  for (Obj a1 : s1.members)
    for (Obj a2 : s2.members)
      if (!find_isomorphisms(cc.C(), a1, a2).empty()) return true;
  return false;
}

bool finer(const ConcreteCategory& cc, const Structure& s1, const Structure& s2) {
  if (s1.base != s2.base)
    throw BaseMismatch("structures over " + cc.X().object_name(s1.base) + " and " +
                       cc.X().object_name(s2.base) + " are not comparable");
  Mor id = cc.X().identity(s1.base);
  for (Obj a1 : s1.members)
    for (Obj a2 : s2.members)
      if (cc.liftable(id, a1, a2)) return true;
  return false;
}

StructurePoset structure_poset(const ConcreteCategory& cc, Obj x0, EquivalenceMode mode) {
  StructurePoset poset;
  poset.base = x0;
  poset.mode = mode;
  poset.nodes = structure_classes(cc, x0, mode);
  for (const auto& s : poset.nodes) poset.labels.push_back(cc.C().object_name(s.canonical));
  for (std::size_t i = 0; i < poset.nodes.size(); ++i)
    for (std::size_t j = 0; j < poset.nodes.size(); ++j)
      if (finer(cc, poset.nodes[i], poset.nodes[j])) poset.edges.emplace_back(i, j);
  return poset;
}

ValidationReport check_order_axioms(const StructurePoset& poset) {
  ValidationReport report;
  const std::size_t n = poset.nodes.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (auto [i, j] : poset.edges) rel.at(i).at(j) = true;
  auto label = [&](std::size_t i) {
    return i < poset.labels.size() ? poset.labels[i] : std::to_string(i);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) {
      report.violations.push_back({"Reflexivity", {label(i)}});
      break;
    }
  }
  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][j])
          for (std::size_t k = 0; k < n; ++k)
            if (rel[j][k] && !rel[i][k]) {
              report.violations.push_back({"Transitivity", {label(i), label(j), label(k)}});
              return;
            }
  }();
  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rel[i][j] && rel[j][i]) {
          report.violations.push_back({"Antisymmetry", {label(i), label(j)}});
          return;
        }
  }();
  if (poset.mode == EquivalenceMode::loose)
    report.notes.push_back("loose mode: order axioms are reported, not asserted");
  return report;
}

}  // namespace structcat
