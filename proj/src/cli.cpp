#include "structcat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "structcat/dsl.hpp"
#include "structcat/error.hpp"
#include "structcat/initiality.hpp"
#include "structcat/instances.hpp"
#include "structcat/limits.hpp"
#include "structcat/structures.hpp"

namespace structcat::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const auto& part : split(text, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 3)
      throw UsageError("bad size '" + part + "' in '" + text + "'");
    sizes.push_back(std::stoi(part));
  }
  if (sizes.empty()) throw UsageError("no sizes given");
  return sizes;
}

EquivalenceMode parse_mode(const std::string& mode) {
  if (mode == "strict") return EquivalenceMode::strict;
  if (mode == "loose") return EquivalenceMode::loose;
  throw UsageError("mode must be strict or loose, got '" + mode + "'");
}

// "f1:A1,f2:A2" with f_i in X and A_i in C.
std::vector<FamilyMember> parse_members(const ConcreteCategory& cc, const std::string& text) {
  std::vector<FamilyMember> members;
  for (const auto& item : split(text, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos || item.find(':', colon + 1) != std::string::npos)
      throw UsageError("family entry '" + item + "' is not of the form morphism:object");
    members.push_back({cc.X().morphism(item.substr(0, colon)), cc.C().object(item.substr(colon + 1))});
  }
  return members;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

void print_sorted(std::ostream& out, std::vector<std::string> lines) {
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << '\n';
}

std::string structure_line(const ConcreteCategory& cc, const Structure& s) {
  std::vector<std::string> names;
  for (Obj m : s.members) names.push_back(cc.C().object_name(m));
  return cc.C().object_name(s.canonical) + ": " + join(names);
}

std::string violation_line(const Violation& v) {
  return "violation " + v.law + (v.witness.empty() ? "" : " " + join(v.witness));
}

std::vector<std::string> report_lines(const ValidationReport& r) {
  std::vector<std::string> lines;
  for (const auto& v : r.violations) lines.push_back(violation_line(v));
  for (const auto& n : r.notes) lines.push_back("note " + n);
  return lines;
}

// A bundle directory, or one of set:<n>, top:<sizes>, preord:<sizes> built
// in memory (instances too large for text form stay reachable this way).
ConcreteCategory open_bundle(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    if (kind == "set" || kind == "top" || kind == "preord") {
      auto sizes = parse_sizes(spec.substr(colon + 1));
      if (kind == "top") return build_top_fin(sizes).concrete;
      if (kind == "preord") return build_preord_fin(sizes).concrete;
      FinCategory S = build_set_fin(*std::max_element(sizes.begin(), sizes.end()));
      return ConcreteCategory(S, S, Functor::identity(S, "U"));
    }
  }
  return load_bundle(spec);
}

struct Options {
  std::string file, kind, sizes, out_dir, bundle, base, mode = "strict", s1, s2, apex, family, factors;
  std::string search_kind, domain = "random", top_sizes = "0,1,2";
  bool check_concrete = false;
  std::size_t max_objects = 4, max_morphisms = 40;
  std::uint64_t seed = 0, budget = 1000;
  int max_carrier = 2;
};

int cmd_validate(const Options& o, std::ostream& out) {
  FinCategory cat = load_category(read_file(o.file), o.file);
  auto report = validate_category(cat);
  auto lines = report_lines(report);
  lines.push_back(std::string("valid ") + (report.valid() ? "true" : "false"));
  print_sorted(out, lines);
  return report.valid() ? kHolds : kFails;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.kind != "set" && o.kind != "top" && o.kind != "preord")
    throw UsageError("gen kind must be set, top or preord, got '" + o.kind + "'");
  std::optional<ConcreteCategory> cc;
  cc.emplace(open_bundle(o.kind + ":" + o.sizes));
  write_bundle(o.out_dir, *cc);
  print_sorted(out, {"category " + cc->C().name(), "objects " + std::to_string(cc->C().object_count()),
                     "morphisms " + std::to_string(cc->C().morphism_count())});
  return kHolds;
}

int cmd_fibers(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  std::vector<std::string> lines;
  for (Obj a : cc.fiber(cc.X().object(o.base))) lines.push_back(cc.C().object_name(a));
  print_sorted(out, lines);
  return kHolds;
}

int cmd_structures(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  std::vector<std::string> lines;
  for (const auto& s : structure_classes(cc, cc.X().object(o.base), parse_mode(o.mode)))
    lines.push_back(structure_line(cc, s));
  print_sorted(out, lines);
  return kHolds;
}

int cmd_order(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  auto poset = structure_poset(cc, cc.X().object(o.base), parse_mode(o.mode));
  std::vector<std::string> lines;
  for (auto [finer_node, coarser_node] : poset.edges)
    lines.push_back(poset.labels[finer_node] + " >= " + poset.labels[coarser_node]);
  auto axioms = check_order_axioms(poset);
  for (auto& l : report_lines(axioms)) lines.push_back(std::move(l));
  print_sorted(out, lines);
  return axioms.valid() ? kHolds : kFails;
}

int cmd_iso(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  auto mode = parse_mode(o.mode);
  Structure s1 = class_of(cc, cc.C().object(o.s1), mode);
  Structure s2 = class_of(cc, cc.C().object(o.s2), mode);
  std::vector<std::string> lines;
  bool iso = structures_isomorphic(cc, s1, s2);
  if (iso) {
    // least witness over all member pairs
    std::optional<std::pair<std::pair<Obj, Obj>, Mor>> best;
    for (Obj a : s1.members)
      for (Obj b : s2.members) {
        auto isos = find_isomorphisms(cc.C(), a, b);
        if (!isos.empty() && !best) best = {{a, b}, isos.front()};
      }
    if (best)
      lines.push_back("witness " + cc.C().morphism_name(best->second) + " : " + cc.C().object_name(best->first.first) +
                      " -> " + cc.C().object_name(best->first.second));
  }
  lines.push_back(std::string("isomorphic ") + (iso ? "true" : "false"));
  print_sorted(out, lines);
  return iso ? kHolds : kFails;
}

int print_initiality(const ConcreteCategory& cc, const std::string& what, Obj apex, const InitialityReport& r,
                     std::ostream& out) {
  std::vector<std::string> lines;
  lines.push_back(what + " " + (r.initial ? "true" : "false"));
  if (r.counterexample)
    lines.push_back("counterexample " + cc.C().object_name(r.counterexample->probe) + " " +
                    cc.X().morphism_name(r.counterexample->x_morphism));
  lines.push_back("apex " + cc.C().object_name(apex));
  print_sorted(out, lines);
  return r.initial ? kHolds : kFails;
}

int cmd_initial(const Options& o, std::ostream& out, bool final_structure) {
  ConcreteCategory cc = open_bundle(o.bundle);
  Obj apex = cc.C().object(o.apex);
  XFamily xf{cc.U()(apex), parse_members(cc, o.family)};
  try {
    auto report = final_structure ? is_final_structure(cc, apex, xf) : is_initial_structure(cc, apex, xf);
    return print_initiality(cc, final_structure ? "final" : "initial", apex, report, out);
  } catch (const NotLiftable& e) {
    const auto& m = xf.members[e.index()];
    print_sorted(out, {"not liftable " + cc.X().morphism_name(m.x_morphism) + " " + cc.C().object_name(m.object),
                       "apex " + cc.C().object_name(apex)});
    return kFails;
  }
}

int cmd_coarsest(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  Obj base = cc.X().object(o.base);
  XFamily xf{base, parse_members(cc, o.family)};
  auto s = coarsest_admissible(cc, base, xf);
  if (!s) {
    out << "coarsest none\n";
    return kFails;
  }
  out << "coarsest " << structure_line(cc, *s) << '\n';
  return kHolds;
}

int cmd_theorem(const Options& o, std::ostream& out) {
  ConcreteCategory cc = open_bundle(o.bundle);
  Obj base = cc.X().object(o.base);
  XFamily xf{base, parse_members(cc, o.family)};
  auto t = verify_theorem(cc, base, xf);
  auto lines = report_lines(t.validation);
  for (const auto& s : t.initial) lines.push_back("initial " + structure_line(cc, s));
  lines.push_back(t.coarsest ? "coarsest " + structure_line(cc, *t.coarsest) : "coarsest none");
  lines.push_back(std::string("theorem ") + (t.validation.valid() ? "holds" : "fails"));
  print_sorted(out, lines);
  return t.validation.valid() ? kHolds : kFails;
}

int cmd_product(const Options& o, std::ostream& out, bool coproduct) {
  ConcreteCategory cc = open_bundle(o.bundle);
  std::vector<Obj> factors;
  for (const auto& id : split(o.factors, ',')) factors.push_back(cc.C().object(id));
  if (factors.empty()) throw UsageError("no factors given");
  const std::string what = coproduct ? "coproduct" : "product";
  ProductReport r = coproduct ? find_coproducts(cc.C(), factors) : find_products(cc.C(), factors);
  if (!r.product) {
    out << what << " none\n";
    return kFails;
  }
  std::vector<std::string> legs;
  for (Mor m : r.product->legs) legs.push_back(cc.C().morphism_name(m));
  std::vector<std::string> lines{what + " " + cc.C().object_name(r.product->apex) + " " + join(legs)};
  int code = kHolds;
  if (o.check_concrete) {
    bool concrete = coproduct ? is_concrete_coproduct(cc, factors, *r.product)
                              : is_concrete_product(cc, factors, *r.product);
    lines.push_back(std::string("concrete ") + (concrete ? "true" : "false"));
    if (!concrete) code = kFails;
  }
  print_sorted(out, lines);
  return code;
}

int cmd_search(const Options& o, std::ostream& out) {
  if (o.search_kind != "coarsest-not-initial")
    throw UsageError("unknown search '" + o.search_kind + "'");
  SearchConfig config;
  config.max_objects = o.max_objects;
  config.max_morphisms = o.max_morphisms;
  config.seed = o.seed;
  config.budget = o.budget;
  config.max_carrier = o.max_carrier;
  if (o.domain == "random") config.domain = SearchDomain::random;
  else if (o.domain == "top") config.domain = SearchDomain::top;
  else throw UsageError("domain must be random or top, got '" + o.domain + "'");
  config.top_sizes = parse_sizes(o.top_sizes);
  if (config.max_objects == 0 || config.max_morphisms == 0) throw UsageError("search bounds must be positive");

  out << "seed " << config.seed << '\n' << "budget " << config.budget << '\n' << "domain " << o.domain << '\n';
  auto w = search_coarsest_not_initial(config);
  if (!w) {
    out << "witness none\n";
    return kFails;
  }
  const auto& cc = w->cc;
  std::vector<std::string> members;
  for (const auto& m : w->family.members)
    members.push_back(cc.X().morphism_name(m.x_morphism) + ":" + cc.C().object_name(m.object));
  std::vector<std::string> lines{
      "trial " + std::to_string(w->trial),
      "subseed " + std::to_string(w->subseed),
      "base " + cc.X().object_name(w->family.base),
      "family " + (members.empty() ? std::string("(empty)") : join(members)),
      "coarsest " + structure_line(cc, w->coarsest),
      "counterexample " + cc.C().object_name(w->report.counterexample->probe) + " " +
          cc.X().morphism_name(w->report.counterexample->x_morphism),
      std::string("reverified ") + (reverify_witness(*w) ? "true" : "false"),
  };
  print_sorted(out, lines);
  if (!o.out_dir.empty()) write_bundle(o.out_dir, cc);
  return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite concrete categories: structures, initiality, products."};
  app.name("structcat");
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check the category axioms of a .cat file");
  validate->add_option("file", o.file, "category file")->required();

  auto* gen = app.add_subcommand("gen", "Write an instance bundle (C.cat, X.cat, U.fun)");
  gen->add_option("kind", o.kind, "set, top or preord")->required();
  gen->add_option("sizes", o.sizes, "comma-separated carrier sizes; set uses the largest")->required();
  gen->add_option("-o,--out", o.out_dir, "bundle directory")->required();

  auto add_bundle = [&](CLI::App* sub) { sub->add_option("-c,--bundle", o.bundle, "bundle directory or set:<n>, top:<sizes>, preord:<sizes>")->required(); };
  auto add_base = [&](CLI::App* sub) { sub->add_option("--base", o.base, "base object of X")->required(); };
  auto add_mode = [&](CLI::App* sub) { sub->add_option("--mode", o.mode, "strict or loose")->capture_default_str(); };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "comma-separated morphism:object pairs");
  };

  auto* fibers = app.add_subcommand("fibers", "List the C-objects over a base object");
  add_bundle(fibers);
  add_base(fibers);
  auto* structures = app.add_subcommand("structures", "List structure classes over a base object");
  add_bundle(structures);
  add_base(structures);
  add_mode(structures);
  auto* order = app.add_subcommand("order", "Print the finer-than order on structures");
  add_bundle(order);
  add_base(order);
  add_mode(order);
  auto* iso = app.add_subcommand("iso", "Decide whether two structures are isomorphic");
  add_bundle(iso);
  iso->add_option("--s1", o.s1, "representative C-object")->required();
  iso->add_option("--s2", o.s2, "representative C-object")->required();
  add_mode(iso);
  auto* initial = app.add_subcommand("initial", "Decide initiality of an apex structure");
  auto* final_cmd = app.add_subcommand("final", "Decide finality of an apex structure");
  for (auto* sub : {initial, final_cmd}) {
    add_bundle(sub);
    sub->add_option("--apex", o.apex, "apex C-object")->required();
    add_family(sub);
  }
  auto* coarsest = app.add_subcommand("coarsest", "Find the coarsest admissible structure");
  auto* theorem = app.add_subcommand("theorem", "Check that an initial structure is the coarsest admissible one");
  for (auto* sub : {coarsest, theorem}) {
    add_bundle(sub);
    add_base(sub);
    add_family(sub);
  }
  auto* product = app.add_subcommand("product", "Find a product of objects of C");
  auto* coproduct = app.add_subcommand("coproduct", "Find a coproduct of objects of C");
  for (auto* sub : {product, coproduct}) {
    add_bundle(sub);
    sub->add_option("--factors", o.factors, "comma-separated C-objects")->required();
    sub->add_flag("--check-concrete", o.check_concrete, "also check that U preserves it");
  }
  auto* search = app.add_subcommand("search", "Seeded search for counterexamples");
  search->add_option("kind", o.search_kind, "coarsest-not-initial")->required();
  search->add_option("--max-objects", o.max_objects)->capture_default_str();
  search->add_option("--max-morphisms", o.max_morphisms)->capture_default_str();
  search->add_option("--seed", o.seed)->capture_default_str();
  search->add_option("--budget", o.budget)->capture_default_str();
  search->add_option("--max-carrier", o.max_carrier, "largest carrier of random objects (0..3)")->capture_default_str();
  search->add_option("--domain", o.domain, "random or top")->capture_default_str();
  search->add_option("--top-sizes", o.top_sizes, "carrier sizes for --domain top")->capture_default_str();
  search->add_option("--out", o.out_dir, "write the witness bundle here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (fibers->parsed()) return cmd_fibers(o, out);
    if (structures->parsed()) return cmd_structures(o, out);
    if (order->parsed()) return cmd_order(o, out);
    if (iso->parsed()) return cmd_iso(o, out);
    if (initial->parsed()) return cmd_initial(o, out, false);
    if (final_cmd->parsed()) return cmd_initial(o, out, true);
    if (coarsest->parsed()) return cmd_coarsest(o, out);
    if (theorem->parsed()) return cmd_theorem(o, out);
    if (product->parsed()) return cmd_product(o, out, false);
    if (coproduct->parsed()) return cmd_product(o, out, true);
    if (search->parsed()) return cmd_search(o, out);
  } catch (const ParseFailure& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace structcat::cli
