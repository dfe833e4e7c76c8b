#include "structcat/initiality.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "structcat/error.hpp"
#include "structcat/instances.hpp"
#include "structcat/parallel.hpp"
#include "structcat/random_category.hpp"

namespace structcat {

namespace {

// Lift by scanning hom(B, A), independent of the lift index.
bool lifts_by_scan(const ConcreteCategory& cc, Mor f, Obj b, Obj a) {
  for (auto m : cc.C().hom_indices(b, a))
    if (cc.U()(Mor{m}) == f) return true;
  return false;
}

void check_out_of_base(const ConcreteCategory& cc, const XFamily& xf) {
  const auto& X = cc.X();
  for (std::size_t i = 0; i < xf.members.size(); ++i) {
    const auto& [f, target] = xf.members[i];
    if (X.dom(f) != xf.base || X.cod(f) != cc.U()(target))
      throw DomainMismatch("family member " + std::to_string(i) + " (" + X.morphism_name(f) +
                           ") is not a morphism " + X.object_name(xf.base) + " -> U(" +
                           cc.C().object_name(target) + ")");
  }
}

std::string structure_label(const ConcreteCategory& cc, const Structure& s) {
  return cc.C().object_name(s.canonical);
}

}  // namespace

InitialityReport is_initial_source(const ConcreteCategory& cc, const Source& s) {
  const auto& C = cc.C();
  const auto& X = cc.X();
  const auto& U = cc.U();
  const Obj xa = U(s.apex);
  std::vector<Mor> images;
  std::vector<Obj> targets;
  for (Mor f : s.family) {
    if (C.dom(f) != s.apex) throw DomainMismatch(C.morphism_name(f) + " does not start at the apex");
    images.push_back(U(f));
    targets.push_back(C.cod(f));
  }
  for (std::uint32_t b = 0; b < C.object_count(); ++b) {
    const Obj B{b};
    for (auto fi : X.hom_indices(U(B), xa)) {
      const Mor f{fi};
      const bool lifts = cc.liftable(f, B, s.apex);
      bool composites = true;
      for (std::size_t i = 0; i < images.size() && composites; ++i) {
        auto composite = X.compose(images[i], f);
        if (!composite) throw std::logic_error("base category lacks a composite");
        composites = cc.liftable(*composite, B, targets[i]);
      }
      if (lifts && !composites) throw std::logic_error("a lifted morphism has a composite that does not lift");
      if (composites && !lifts) return {false, Counterexample{B, f}};
    }
  }
  return {true, std::nullopt};
}

bool recheck_counterexample(const ConcreteCategory& cc, const Source& s, const Counterexample& cex) {
  const auto& C = cc.C();
  const auto& X = cc.X();
  const auto& U = cc.U();
  if (X.dom(cex.x_morphism) != U(cex.probe) || X.cod(cex.x_morphism) != U(s.apex)) return false;
  if (lifts_by_scan(cc, cex.x_morphism, cex.probe, s.apex)) return false;
  for (Mor f : s.family) {
    auto composite = X.compose(U(f), cex.x_morphism);
    if (!composite || !lifts_by_scan(cc, *composite, cex.probe, C.cod(f))) return false;
  }
  return true;
}

std::optional<std::size_t> first_unliftable(const ConcreteCategory& cc, Obj a, const XFamily& xf) {
  for (std::size_t i = 0; i < xf.members.size(); ++i)
    if (!cc.liftable(xf.members[i].x_morphism, a, xf.members[i].object)) return i;
  return std::nullopt;
}

bool admissible(const ConcreteCategory& cc, Obj a, const XFamily& xf) {
  return !first_unliftable(cc, a, xf).has_value();
}

Source lifted_source(const ConcreteCategory& cc, Obj a, const XFamily& xf) {
  if (cc.U()(a) != xf.base)
    throw DomainMismatch(cc.C().object_name(a) + " does not lie over " + cc.X().object_name(xf.base));
  check_out_of_base(cc, xf);
  Source s{a, {}};
  for (std::size_t i = 0; i < xf.members.size(); ++i) {
    auto m = cc.lift(xf.members[i].x_morphism, a, xf.members[i].object);
    if (!m)
      throw NotLiftable(i, cc.X().morphism_name(xf.members[i].x_morphism) + " does not lift to " +
                               cc.C().object_name(a) + " -> " + cc.C().object_name(xf.members[i].object));
    s.family.push_back(*m);
  }
  return s;
}

InitialityReport is_initial_structure(const ConcreteCategory& cc, Obj a, const XFamily& xf) {
  InitialityReport report = is_initial_source(cc, lifted_source(cc, a, xf));
  for (Obj other : class_of(cc, a, EquivalenceMode::strict).members) {
    if (other == a) continue;
    if (!admissible(cc, other, xf))
      throw std::logic_error("admissibility differs inside a strict structure");
    if (is_initial_source(cc, lifted_source(cc, other, xf)).initial != report.initial)
      throw std::logic_error("initiality differs inside a strict structure");
  }
  return report;
}

InitialityReport is_final_structure(const ConcreteCategory& cc, Obj a, const XFamily& into) {
  return is_initial_structure(cc.opposite(), a, into);
}

InitialityReport is_final_structure_direct(const ConcreteCategory& cc, Obj a, const XFamily& into) {
  const auto& C = cc.C();
  const auto& X = cc.X();
  const auto& U = cc.U();
  const Obj xa = U(a);
  if (xa != into.base) throw DomainMismatch(C.object_name(a) + " does not lie over " + X.object_name(into.base));
  for (std::size_t i = 0; i < into.members.size(); ++i) {
    const auto& [f, source] = into.members[i];
    if (X.cod(f) != into.base || X.dom(f) != U(source))
      throw DomainMismatch("family member " + std::to_string(i) + " is not a morphism into the base");
  }
  auto decide = [&](Obj apex) -> InitialityReport {
    for (std::size_t i = 0; i < into.members.size(); ++i)
      if (!cc.liftable(into.members[i].x_morphism, into.members[i].object, apex))
        throw NotLiftable(i, X.morphism_name(into.members[i].x_morphism) + " does not lift to " +
                                 C.object_name(into.members[i].object) + " -> " + C.object_name(apex));
    for (std::uint32_t b = 0; b < C.object_count(); ++b) {
      const Obj B{b};
      for (auto fi : X.hom_indices(xa, U(B))) {
        const Mor f{fi};
        const bool lifts = cc.liftable(f, apex, B);
        bool composites = true;
        for (std::size_t i = 0; i < into.members.size() && composites; ++i) {
          auto composite = X.compose(f, into.members[i].x_morphism);
          if (!composite) throw std::logic_error("base category lacks a composite");
          composites = cc.liftable(*composite, into.members[i].object, B);
        }
        if (lifts && !composites) throw std::logic_error("a lifted morphism has a composite that does not lift");
        if (composites && !lifts) return {false, Counterexample{B, f}};
      }
    }
    return {true, std::nullopt};
  };
  InitialityReport report = decide(a);
  for (Obj other : class_of(cc, a, EquivalenceMode::strict).members)
    if (other != a && decide(other).initial != report.initial)
      throw std::logic_error("finality differs inside a strict structure");
  return report;
}

std::optional<Structure> coarsest_admissible(const ConcreteCategory& cc, Obj x0, const XFamily& xf) {
  if (xf.base != x0) throw DomainMismatch("family base differs from " + cc.X().object_name(x0));
  check_out_of_base(cc, xf);
  std::vector<Structure> candidates;
  for (auto& s : structure_classes(cc, x0, EquivalenceMode::strict))
    if (admissible(cc, s.canonical, xf)) candidates.push_back(std::move(s));
  for (const auto& s : candidates) {
    bool least = std::all_of(candidates.begin(), candidates.end(),
                             [&](const Structure& other) { return finer(cc, other, s); });
    if (least) return s;
  }
  return std::nullopt;
}

TheoremReport verify_theorem(const ConcreteCategory& cc, Obj x0, const XFamily& xf) {
  TheoremReport out;
  auto& report = out.validation;
  out.coarsest = coarsest_admissible(cc, x0, xf);

  auto classes = structure_classes(cc, x0, EquivalenceMode::strict);
  std::vector<const Structure*> admissible_structures;
  for (const auto& s : classes) {
    bool adm = admissible(cc, s.canonical, xf);
    for (Obj m : s.members)
      if (admissible(cc, m, xf) != adm)
        report.violations.push_back({"AdmissibilityInvariance", {structure_label(cc, s), cc.C().object_name(m)}});
    if (adm) admissible_structures.push_back(&s);
  }

  for (const Structure* s : admissible_structures) {
    if (!is_initial_structure(cc, s->canonical, xf).initial) continue;
    out.initial.push_back(*s);
    for (Obj m : s->members)
      if (!admissible(cc, m, xf))
        report.violations.push_back({"TheoremAdmissible", {structure_label(cc, *s), cc.C().object_name(m)}});
    for (const Structure* other : admissible_structures)
      if (!finer(cc, *other, *s))
        report.violations.push_back({"TheoremCoarsest", {structure_label(cc, *s), structure_label(cc, *other)}});
    if (!out.coarsest || !(*out.coarsest == *s))
      report.violations.push_back({"TheoremCoarsestMismatch", {structure_label(cc, *s)}});
  }
  for (std::size_t i = 0; i < out.initial.size(); ++i)
    for (std::size_t j = i + 1; j < out.initial.size(); ++j) {
      const auto& s = out.initial[i];
      const auto& t = out.initial[j];
      std::string why = finer(cc, s, t) && finer(cc, t, s) ? "antisymmetry fails" : "two initial structures";
      report.violations.push_back({"TheoremUnique", {structure_label(cc, s), structure_label(cc, t), why}});
    }
  if (out.coarsest && out.initial.empty())
    report.notes.push_back("coarsest admissible structure " + structure_label(cc, *out.coarsest) +
                           " is not initial; the converse is not asserted");
  if (!out.coarsest) report.notes.push_back("no coarsest admissible structure");
  return out;
}

// --------------------------------------------------------------------- search

namespace {

std::optional<XFamily> random_family(const ConcreteCategory& cc, std::mt19937_64& rng) {
  const auto& X = cc.X();
  std::vector<Obj> bases;
  for (std::uint32_t x = 0; x < X.object_count(); ++x)
    if (!cc.fiber(Obj{x}).empty()) bases.push_back(Obj{x});
  if (bases.empty()) return std::nullopt;
  XFamily xf{bases[uniform_below(rng, bases.size())], {}};
  std::size_t size = uniform_below(rng, 3);
  for (std::size_t tries = 0; xf.members.size() < size && tries < 16; ++tries) {
    Obj target{static_cast<std::uint32_t>(uniform_below(rng, cc.C().object_count()))};
    auto h = X.hom_indices(xf.base, cc.U()(target));
    if (h.empty()) continue;
    xf.members.push_back({Mor{h[uniform_below(rng, h.size())]}, target});
  }
  return xf;
}

}  // namespace

std::optional<SearchWitness> search_coarsest_not_initial(const SearchConfig& config) {
  if (config.budget == 0) return std::nullopt;
  if (config.max_objects == 0 || config.max_morphisms == 0)
    throw std::invalid_argument("search bounds must be positive");

  std::optional<ConcreteCategory> top;
  if (config.domain == SearchDomain::top) top = build_top_fin(config.top_sizes).concrete;

  const RandomCategoryConfig rc{config.max_objects, config.max_morphisms, config.max_carrier};
  auto trial = [&](std::uint64_t index) -> std::optional<SearchWitness> {
    std::uint64_t subseed = derive_seed(config.seed, index);
    ConcreteCategory cc = top ? *top : random_concrete_category(subseed, rc);
    std::uint64_t state = subseed;
    splitmix64(state);
    std::mt19937_64 rng(splitmix64(state));
    auto xf = random_family(cc, rng);
    if (!xf) return std::nullopt;
    auto coarsest = coarsest_admissible(cc, xf->base, *xf);
    if (!coarsest) return std::nullopt;
    auto report = is_initial_structure(cc, coarsest->canonical, *xf);
    if (report.initial) return std::nullopt;
    return SearchWitness{config.seed, index, subseed, cc, *xf, *coarsest, report};
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), config.budget));
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::optional<SearchWitness>> found(workers);
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < config.budget && i < best.load(); i += workers) {
      auto witness = trial(i);
      if (!witness) continue;
      found[w] = std::move(witness);
      std::uint64_t current = best.load();
      while (i < current && !best.compare_exchange_weak(current, i)) {
      }
      return;
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::optional<SearchWitness> winner;
  for (auto& f : found)
    if (f && (!winner || f->trial < winner->trial)) winner = std::move(f);
  return winner;
}

bool reverify_witness(const SearchWitness& w) {
  const auto& cc = w.cc;
  const auto& xf = w.family;
  const Mor id = cc.X().identity(xf.base);
  auto admissible_by_scan = [&](Obj a) {
    for (const auto& [f, target] : xf.members)
      if (!lifts_by_scan(cc, f, a, target)) return false;
    return true;
  };
  // coarsest: admissible, and every admissible object over the base maps to
  // it over the identity
  if (!admissible_by_scan(w.coarsest.canonical)) return false;
  for (Obj a : cc.fiber(xf.base))
    if (admissible_by_scan(a) && !lifts_by_scan(cc, id, a, w.coarsest.canonical)) return false;
  // not initial: the reported counterexample survives an independent check
  if (w.report.initial || !w.report.counterexample) return false;
  Source s{w.coarsest.canonical, {}};
  for (const auto& [f, target] : xf.members) {
    Mor lifted{};
    bool ok = false;
    for (auto m : cc.C().hom_indices(s.apex, target))
      if (cc.U()(Mor{m}) == f) {
        lifted = Mor{m};
        ok = true;
      }
    if (!ok) return false;
    s.family.push_back(lifted);
  }
  return recheck_counterexample(cc, s, *w.report.counterexample);
}

}  // namespace structcat
