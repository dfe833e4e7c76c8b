#include "structcat/fincat.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "structcat/error.hpp"

namespace structcat {

namespace detail {

struct CategoryCore {
  std::vector<std::string> object_names;
  std::unordered_map<std::string, std::uint32_t> object_lookup;
  std::vector<std::uint32_t> dom, cod, identity;
  std::vector<std::uint32_t> hom_offset;  // n*n + 1, row = dom
  std::vector<std::uint32_t> hom_data;
  std::vector<std::uint32_t> hom_position;

  bool carrier = false;

  // table form
  std::vector<std::string> morphism_names;
  std::unordered_map<std::string, std::uint32_t> morphism_lookup;
  std::unordered_map<std::uint64_t, std::uint32_t> table;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> entries;

  // carrier form; packed holds one image per 4-bit nibble
  std::vector<int> carriers;
  std::vector<std::uint32_t> code;
  std::vector<std::uint32_t> packed;

  std::size_t n() const { return object_names.size(); }

  std::span<const std::uint32_t> hom(std::uint32_t a, std::uint32_t b) const {
    std::size_t slot = std::size_t{a} * n() + b;
    return {hom_data.data() + hom_offset[slot], hom_data.data() + hom_offset[slot + 1]};
  }

  std::optional<std::uint32_t> find_code(std::uint32_t a, std::uint32_t b,
                                         std::uint32_t c) const {
    auto h = hom(a, b);
    if (h.size() == function_count(carriers[a], carriers[b])) {
      if (c >= h.size()) return std::nullopt;
      return h[c];
    }
    auto it = std::lower_bound(h.begin(), h.end(), c,
                               [&](std::uint32_t m, std::uint32_t v) { return code[m] < v; });
    if (it == h.end() || code[*it] != c) return std::nullopt;
    return *it;
  }

  std::optional<std::uint32_t> compose(std::uint32_t g, std::uint32_t f) const {
    if (!carrier) {
      auto it = table.find((std::uint64_t{g} << 32) | f);
      if (it == table.end()) return std::nullopt;
      return it->second;
    }
    if (cod[f] != dom[g]) return std::nullopt;
    std::uint32_t a = dom[f];
    std::uint32_t c = cod[g];
    int width = carriers[a];
    std::uint32_t base = static_cast<std::uint32_t>(carriers[c]);
    std::uint32_t pf = packed[f];
    std::uint32_t pg = packed[g];
    std::uint32_t result = 0;
    for (int i = 0; i < width; ++i) {
      std::uint32_t d = (pf >> (4 * i)) & 15u;
      result = result * base + ((pg >> (4 * d)) & 15u);
    }
    return find_code(a, c, result);
  }

  void build_hom_index() {
    std::size_t nn = n() * n();
    hom_offset.assign(nn + 1, 0);
    for (std::size_t m = 0; m < dom.size(); ++m) ++hom_offset[std::size_t{dom[m]} * n() + cod[m] + 1];
    for (std::size_t s = 0; s < nn; ++s) hom_offset[s + 1] += hom_offset[s];
    hom_data.assign(dom.size(), 0);
    hom_position.assign(dom.size(), 0);
    std::vector<std::uint32_t> fill(hom_offset.begin(), hom_offset.end() - 1);
    for (std::uint32_t m = 0; m < dom.size(); ++m) {
      std::size_t slot = std::size_t{dom[m]} * n() + cod[m];
      hom_position[m] = fill[slot] - hom_offset[slot];
      hom_data[fill[slot]++] = m;
    }
  }
};

}  // namespace detail

namespace {

std::uint64_t key(std::uint32_t g, std::uint32_t f) { return (std::uint64_t{g} << 32) | f; }

const std::shared_ptr<const detail::CategoryCore>& empty_core() {
  static const auto core = std::make_shared<const detail::CategoryCore>([] {
    detail::CategoryCore c;
    c.hom_offset.assign(1, 0);
    return c;
  }());
  return core;
}

std::string digits_of(std::uint32_t packed, int width) {
  std::string s;
  s.reserve(width);
  for (int i = 0; i < width; ++i) s.push_back(static_cast<char>('0' + ((packed >> (4 * i)) & 15u)));
  return s;
}

}  // namespace

const Violation* ValidationReport::find(std::string_view l) const {
  for (const auto& v : violations)
    if (v.law == l) return &v;
  return nullptr;
}

std::uint32_t function_count(int domain_size, int codomain_size) {
  std::uint32_t r = 1;
  for (int i = 0; i < domain_size; ++i) r *= static_cast<std::uint32_t>(codomain_size);
  return r;
}

std::uint32_t encode_function(std::span<const int> images, int codomain_size) {
  std::uint32_t code = 0;
  for (int v : images) code = code * static_cast<std::uint32_t>(codomain_size) + static_cast<std::uint32_t>(v);
  return code;
}

std::vector<int> decode_function(std::uint32_t code, int domain_size, int codomain_size) {
  std::vector<int> images(domain_size, 0);
  for (int i = domain_size - 1; i >= 0; --i) {
    images[i] = static_cast<int>(code % static_cast<std::uint32_t>(codomain_size));
    code /= static_cast<std::uint32_t>(codomain_size);
  }
  return images;
}

std::string opposite_name(const std::string& name) {
  constexpr std::string_view suffix = "_op";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + std::string(suffix);
}

// ---------------------------------------------------------------- FinCategory

FinCategory::FinCategory() : core_(empty_core()) {}

FinCategory::FinCategory(std::string name, std::shared_ptr<const detail::CategoryCore> core,
                         bool flipped)
    : name_(std::move(name)), core_(std::move(core)), flipped_(flipped) {}

std::size_t FinCategory::object_count() const { return core_->n(); }
std::size_t FinCategory::morphism_count() const { return core_->dom.size(); }

const std::string& FinCategory::object_name(Obj a) const { return core_->object_names[a.index]; }

std::string FinCategory::morphism_name(Mor f) const {
  const auto& c = *core_;
  if (!c.carrier) return c.morphism_names[f.index];
  std::uint32_t d = c.dom[f.index];
  return "m_" + c.object_names[d] + "_" + c.object_names[c.cod[f.index]] + "_" +
         digits_of(c.packed[f.index], c.carriers[d]);
}

std::optional<Obj> FinCategory::find_object(std::string_view id) const {
  auto it = core_->object_lookup.find(std::string(id));
  if (it == core_->object_lookup.end()) return std::nullopt;
  return Obj{it->second};
}

std::optional<Mor> FinCategory::find_morphism(std::string_view id) const {
  const auto& c = *core_;
  if (!c.carrier) {
    auto it = c.morphism_lookup.find(std::string(id));
    if (it == c.morphism_lookup.end()) return std::nullopt;
    return Mor{it->second};
  }
  if (id.substr(0, 2) != "m_") return std::nullopt;
  std::string_view rest = id.substr(2);
  for (std::size_t p = rest.find('_'); p != std::string_view::npos; p = rest.find('_', p + 1)) {
    auto a = find_object(rest.substr(0, p));
    if (!a) continue;
    std::string_view tail = rest.substr(p + 1);
    for (std::size_t q = tail.find('_'); q != std::string_view::npos; q = tail.find('_', q + 1)) {
      auto b = find_object(tail.substr(0, q));
      if (!b) continue;
      std::string_view digits = tail.substr(q + 1);
      int n = c.carriers[a->index];
      int m = c.carriers[b->index];
      if (static_cast<int>(digits.size()) != n) continue;
      std::vector<int> images;
      bool ok = true;
      for (char ch : digits) {
        int v = ch - '0';
        if (v < 0 || v >= m) ok = false;
        images.push_back(v);
      }
      if (!ok) continue;
      auto found = c.find_code(a->index, b->index, encode_function(images, m));
      if (found) return Mor{*found};
    }
  }
  return std::nullopt;
}

Obj FinCategory::object(std::string_view id) const {
  auto a = find_object(id);
  if (!a) throw UnknownIdentifier("unknown object '" + std::string(id) + "' in " + name_);
  return *a;
}

Mor FinCategory::morphism(std::string_view id) const {
  auto f = find_morphism(id);
  if (!f) throw UnknownIdentifier("unknown morphism '" + std::string(id) + "' in " + name_);
  return *f;
}

Obj FinCategory::dom(Mor f) const {
  return Obj{flipped_ ? core_->cod[f.index] : core_->dom[f.index]};
}

Obj FinCategory::cod(Mor f) const {
  return Obj{flipped_ ? core_->dom[f.index] : core_->cod[f.index]};
}

Mor FinCategory::identity(Obj a) const { return Mor{core_->identity[a.index]}; }

std::span<const std::uint32_t> FinCategory::hom_indices(Obj a, Obj b) const {
  return flipped_ ? core_->hom(b.index, a.index) : core_->hom(a.index, b.index);
}

std::vector<Mor> FinCategory::hom(Obj a, Obj b) const {
  std::vector<Mor> out;
  for (auto m : hom_indices(a, b)) out.push_back(Mor{m});
  return out;
}

std::uint32_t FinCategory::hom_position(Mor f) const { return core_->hom_position[f.index]; }

std::optional<Mor> FinCategory::compose(Mor g, Mor f) const {
  auto r = flipped_ ? core_->compose(f.index, g.index) : core_->compose(g.index, f.index);
  if (!r) return std::nullopt;
  return Mor{*r};
}

void FinCategory::for_each_table_entry(const std::function<void(Mor, Mor, Mor)>& fn) const {
  for (const auto& [g, f, h] : core_->entries) {
    if (flipped_)
      fn(Mor{f}, Mor{g}, Mor{h});
    else
      fn(Mor{g}, Mor{f}, Mor{h});
  }
}

bool FinCategory::carrier_form() const { return core_->carrier; }

int FinCategory::carrier_size(Obj a) const { return core_->carriers.at(a.index); }

std::uint32_t FinCategory::function_code(Mor f) const { return core_->code.at(f.index); }

std::vector<int> FinCategory::underlying_function(Mor f) const {
  const auto& c = *core_;
  std::uint32_t d = c.dom[f.index];
  return decode_function(c.code.at(f.index), c.carriers[d], c.carriers[c.cod[f.index]]);
}

std::optional<Mor> FinCategory::find_by_code(Obj a, Obj b, std::uint32_t code) const {
  if (!core_->carrier) return std::nullopt;
  auto r = flipped_ ? core_->find_code(b.index, a.index, code) : core_->find_code(a.index, b.index, code);
  if (!r) return std::nullopt;
  return Mor{*r};
}

FinCategory FinCategory::opposite() const { return FinCategory(opposite_name(name_), core_, !flipped_); }

std::uint64_t FinCategory::composable_pair_count() const {
  std::size_t n = object_count();
  std::uint64_t total = 0;
  for (std::uint32_t b = 0; b < n; ++b) {
    std::uint64_t in = 0, out = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      in += hom_size(Obj{x}, Obj{b});
      out += hom_size(Obj{b}, Obj{x});
    }
    total += in * out;
  }
  return total;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (a.name() != b.name() || a.object_count() != b.object_count() ||
      a.morphism_count() != b.morphism_count())
    return false;
  std::size_t n = a.object_count();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (a.object_name(Obj{i}) != b.object_name(Obj{i})) return false;
    if (a.identity(Obj{i}) != b.identity(Obj{i})) return false;
  }
  for (std::uint32_t m = 0; m < a.morphism_count(); ++m) {
    Mor f{m};
    if (a.morphism_name(f) != b.morphism_name(f) || a.dom(f) != b.dom(f) || a.cod(f) != b.cod(f))
      return false;
  }
  for (std::uint32_t m = 0; m < a.morphism_count(); ++m) {
    Mor f{m};
    for (std::uint32_t c = 0; c < n; ++c)
      for (auto g : a.hom_indices(a.cod(f), Obj{c}))
        if (a.compose(Mor{g}, f) != b.compose(Mor{g}, f)) return false;
  }
  auto stray = [](const FinCategory& cat) {
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> s;
    cat.for_each_table_entry([&](Mor g, Mor f, Mor h) {
      if (cat.cod(f) != cat.dom(g)) s.emplace(g.index, f.index, h.index);
    });
    return s;
  };
  return stray(a) == stray(b);
}

// ------------------------------------------------------------ CategoryBuilder

CategoryBuilder::CategoryBuilder(std::string name) : name_(std::move(name)) {}

CategoryBuilder& CategoryBuilder::add_object(std::string id) {
  objects_.push_back(std::move(id));
  return *this;
}

CategoryBuilder& CategoryBuilder::add_morphism(std::string id, std::string dom, std::string cod) {
  morphisms_.emplace_back(std::move(id), std::move(dom), std::move(cod));
  return *this;
}

CategoryBuilder& CategoryBuilder::set_identity(std::string object, std::string morphism) {
  identities_.emplace_back(std::move(object), std::move(morphism));
  return *this;
}

CategoryBuilder& CategoryBuilder::set_composite(std::string g, std::string f, std::string h) {
  composites_.emplace_back(std::move(g), std::move(f), std::move(h));
  return *this;
}

FinCategory CategoryBuilder::build() const {
  std::vector<std::string> problems;
  auto core = std::make_shared<detail::CategoryCore>();

  std::vector<std::string> objs = objects_;
  std::sort(objs.begin(), objs.end());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (objs[i].empty()) problems.push_back("empty object identifier");
    if (i > 0 && objs[i] == objs[i - 1]) problems.push_back("duplicate object '" + objs[i] + "'");
  }
  objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
  core->object_names = objs;
  for (std::uint32_t i = 0; i < objs.size(); ++i) core->object_lookup.emplace(objs[i], i);

  // Explicit identities, then auto identities for the rest.
  std::map<std::string, std::string> identity_of;
  for (const auto& [o, m] : identities_) {
    if (!core->object_lookup.count(o)) problems.push_back("identity for undeclared object '" + o + "'");
    if (!identity_of.emplace(o, m).second) problems.push_back("duplicate identity for '" + o + "'");
  }
  std::map<std::string, std::pair<std::string, std::string>> decl;
  for (const auto& [id, d, c] : morphisms_) {
    if (id.empty()) problems.push_back("empty morphism identifier");
    if (!decl.emplace(id, std::make_pair(d, c)).second) problems.push_back("duplicate morphism '" + id + "'");
    if (!core->object_lookup.count(d)) problems.push_back("morphism '" + id + "' has undeclared domain '" + d + "'");
    if (!core->object_lookup.count(c)) problems.push_back("morphism '" + id + "' has undeclared codomain '" + c + "'");
  }
  std::set<std::string> auto_ids;
  for (const auto& o : objs) {
    if (identity_of.count(o)) continue;
    std::string id = "id_" + o;
    if (!decl.count(id)) {
      decl.emplace(id, std::make_pair(o, o));
      auto_ids.insert(id);
    }
    identity_of.emplace(o, id);
  }

  for (const auto& [id, dc] : decl) {
    core->morphism_lookup.emplace(id, static_cast<std::uint32_t>(core->morphism_names.size()));
    core->morphism_names.push_back(id);
    auto d = core->object_lookup.find(dc.first);
    auto c = core->object_lookup.find(dc.second);
    core->dom.push_back(d == core->object_lookup.end() ? 0 : d->second);
    core->cod.push_back(c == core->object_lookup.end() ? 0 : c->second);
  }
  for (const auto& o : objs) {
    const auto& m = identity_of.at(o);
    auto it = core->morphism_lookup.find(m);
    if (it == core->morphism_lookup.end()) {
      problems.push_back("identity of '" + o + "' names undeclared morphism '" + m + "'");
      core->identity.push_back(0);
    } else {
      core->identity.push_back(it->second);
    }
  }

  auto lookup = [&](const std::string& id) -> std::optional<std::uint32_t> {
    auto it = core->morphism_lookup.find(id);
    if (it == core->morphism_lookup.end()) {
      problems.push_back("composite refers to undeclared morphism '" + id + "'");
      return std::nullopt;
    }
    return it->second;
  };
  for (const auto& [g, f, h] : composites_) {
    auto gi = lookup(g), fi = lookup(f), hi = lookup(h);
    if (!gi || !fi || !hi) continue;
    if (!core->table.emplace(key(*gi, *fi), *hi).second)
      problems.push_back("duplicate composite " + g + " . " + f);
  }

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "category " << name_ << ":";
    for (const auto& p : problems) msg << "\n  " << p;
    throw StructuralError(msg.str());
  }

  for (const auto& id : auto_ids) {
    std::uint32_t i = core->morphism_lookup.at(id);
    std::uint32_t o = core->dom[i];
    for (std::uint32_t m = 0; m < core->dom.size(); ++m) {
      if (core->cod[m] == o) core->table.emplace(key(i, m), m);
      if (core->dom[m] == o) core->table.emplace(key(m, i), m);
    }
  }
  for (const auto& [k, h] : core->table)
    core->entries.emplace_back(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), h);
  std::sort(core->entries.begin(), core->entries.end());
  core->build_hom_index();
  return FinCategory(name_, std::move(core), false);
}

FinCategory make_carrier_category(std::string name, std::vector<std::string> object_names,
                                  std::vector<int> carriers,
                                  std::vector<std::vector<std::uint32_t>> functions) {
  auto core = std::make_shared<detail::CategoryCore>();
  std::size_t n = object_names.size();
  if (carriers.size() != n || functions.size() != n * n)
    throw StructuralError("carrier category " + name + ": inconsistent sizes");
  if (!std::is_sorted(object_names.begin(), object_names.end()))
    throw StructuralError("carrier category " + name + ": object names must be sorted");
  for (int c : carriers)
    if (c < 0 || c > 8) throw BoundExceeded("carrier size must lie in 0..8");
  core->carrier = true;
  core->object_names = std::move(object_names);
  core->carriers = std::move(carriers);
  for (std::uint32_t i = 0; i < n; ++i)
    if (!core->object_lookup.emplace(core->object_names[i], i).second)
      throw StructuralError("carrier category " + name + ": duplicate object");
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto& codes = functions[std::size_t{a} * n + b];
      if (!std::is_sorted(codes.begin(), codes.end()) ||
          std::adjacent_find(codes.begin(), codes.end()) != codes.end())
        throw StructuralError("carrier category " + name + ": hom codes must be strictly increasing");
      int w = core->carriers[a];
      int m = core->carriers[b];
      for (auto code : codes) {
        if (code >= function_count(w, m)) throw StructuralError("carrier category " + name + ": code out of range");
        auto images = decode_function(code, w, m);
        std::uint32_t p = 0;
        for (int i = 0; i < w; ++i) p |= static_cast<std::uint32_t>(images[i]) << (4 * i);
        core->dom.push_back(a);
        core->cod.push_back(b);
        core->code.push_back(code);
        core->packed.push_back(p);
      }
    }
  }
  core->build_hom_index();
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<int> id(core->carriers[a]);
    for (int i = 0; i < core->carriers[a]; ++i) id[i] = i;
    auto m = core->find_code(a, a, encode_function(id, core->carriers[a]));
    if (!m) throw StructuralError("carrier category " + name + ": object " + core->object_names[a] + " lacks its identity");
    core->identity.push_back(*m);
  }
  return FinCategory(std::move(name), std::move(core), false);
}

// -------------------------------------------------------------------- Functor

Functor::Functor(std::string name, std::string source, std::string target, std::vector<Obj> objects,
                 std::vector<Mor> morphisms)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      objects_(std::make_shared<const std::vector<Obj>>(std::move(objects))),
      morphisms_(std::make_shared<const std::vector<Mor>>(std::move(morphisms))) {}

Functor Functor::identity(const FinCategory& cat, std::string name) {
  std::vector<Obj> objs(cat.object_count());
  std::vector<Mor> mors(cat.morphism_count());
  for (std::uint32_t i = 0; i < objs.size(); ++i) objs[i] = Obj{i};
  for (std::uint32_t i = 0; i < mors.size(); ++i) mors[i] = Mor{i};
  return Functor(std::move(name), cat.name(), cat.name(), std::move(objs), std::move(mors));
}

Functor Functor::opposite(const FinCategory& source_op, const FinCategory& target_op) const {
  Functor f = *this;
  f.name_ = opposite_name(name_);
  f.source_ = source_op.name();
  f.target_ = target_op.name();
  return f;
}

bool operator==(const Functor& a, const Functor& b) {
  auto same = [](const auto& x, const auto& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return a.name_ == b.name_ && a.source_ == b.source_ && a.target_ == b.target_ &&
         same(a.objects_, b.objects_) && same(a.morphisms_, b.morphisms_);
}

// ------------------------------------------------------------------ validation

namespace {

// Keeps the lexicographically least witness (by index tuple) per law.
class WitnessCollector {
 public:
  void offer(std::string_view l, std::vector<std::uint32_t> tuple, std::vector<std::string> names) {
    auto it = best_.find(std::string(l));
    if (it == best_.end() || tuple < it->second.first)
      best_[std::string(l)] = {std::move(tuple), std::move(names)};
  }
  bool has(std::string_view l) const { return best_.count(std::string(l)) > 0; }
  void emit(ValidationReport& report, std::initializer_list<std::string_view> order) const {
    for (auto l : order) {
      auto it = best_.find(std::string(l));
      if (it != best_.end()) report.violations.push_back({std::string(l), it->second.second});
    }
  }

 private:
  std::map<std::string, std::pair<std::vector<std::uint32_t>, std::vector<std::string>>> best_;
};

constexpr std::uint64_t kExhaustiveClosureLimit = 20'000'000;
constexpr std::uint64_t kClosureSamples = 1'000'000;

std::vector<std::vector<Mor>> outgoing(const FinCategory& cat) {
  std::vector<std::vector<Mor>> out(cat.object_count());
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) out[cat.dom(Mor{m}).index].push_back(Mor{m});
  return out;
}

}  // namespace

ValidationReport validate_category(const FinCategory& cat) {
  ValidationReport report;
  WitnessCollector w;
  const std::size_t n = cat.object_count();
  auto mname = [&](Mor m) { return cat.morphism_name(m); };

  cat.for_each_table_entry([&](Mor g, Mor f, Mor h) {
    if (cat.cod(f) != cat.dom(g)) {
      w.offer(law::kUndefinedComposite, {g.index, f.index}, {mname(g), mname(f)});
    } else if (cat.dom(h) != cat.dom(f) || cat.cod(h) != cat.cod(g)) {
      w.offer(law::kCompositeEndpoints, {g.index, f.index}, {mname(g), mname(f), mname(h)});
    }
  });

  for (std::uint32_t a = 0; a < n; ++a) {
    Mor id = cat.identity(Obj{a});
    if (cat.dom(id) != Obj{a} || cat.cod(id) != Obj{a})
      w.offer(law::kIdentityEndpoints, {a}, {cat.object_name(Obj{a}), mname(id)});
  }

  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    Mor f{m};
    auto left = cat.compose(cat.identity(cat.cod(f)), f);
    auto right = cat.compose(f, cat.identity(cat.dom(f)));
    if (left && *left != f) w.offer(law::kLeftIdentity, {m}, {mname(f)});
    if (right && *right != f) w.offer(law::kRightIdentity, {m}, {mname(f)});
  }

  const std::uint64_t pairs = cat.composable_pair_count();
  if (!cat.carrier_form() || pairs <= kExhaustiveClosureLimit) {
    auto out = cat.carrier_form() ? std::vector<std::vector<Mor>>{} : outgoing(cat);
    for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
      Mor f{m};
      Obj b = cat.cod(f);
      auto visit = [&](Mor g) {
        auto gf = cat.compose(g, f);
        if (!gf) {
          w.offer(law::kMissingComposite, {g.index, f.index}, {mname(g), mname(f)});
          return;
        }
        if (cat.carrier_form()) return;
        for (Mor h : out[cat.cod(g).index]) {
          auto hg = cat.compose(h, g);
          if (!hg) continue;
          auto lhs = cat.compose(h, *gf);
          auto rhs = cat.compose(*hg, f);
          if (lhs && rhs && *lhs != *rhs)
            w.offer(law::kAssociativity, {h.index, g.index, f.index}, {mname(h), mname(g), mname(f)});
        }
      };
      if (cat.carrier_form()) {
        for (std::uint32_t c = 0; c < n; ++c)
          for (auto g : cat.hom_indices(b, Obj{c})) visit(Mor{g});
      } else {
        for (Mor g : out[b.index]) visit(g);
      }
    }
  } else {
    // Too many pairs to enumerate: sample composable pairs with a fixed seed.
    std::vector<std::vector<std::uint64_t>> prefix(n);
    for (std::uint32_t b = 0; b < n; ++b) {
      prefix[b].assign(n + 1, 0);
      for (std::uint32_t c = 0; c < n; ++c) prefix[b][c + 1] = prefix[b][c] + cat.hom_size(Obj{b}, Obj{c});
    }
    std::mt19937_64 rng(0x5eedc0de);
    for (std::uint64_t s = 0; s < kClosureSamples; ++s) {
      Mor f{static_cast<std::uint32_t>(rng() % cat.morphism_count())};
      const auto& pre = prefix[cat.cod(f).index];
      if (pre.back() == 0) continue;
      std::uint64_t r = rng() % pre.back();
      auto c = static_cast<std::uint32_t>(std::upper_bound(pre.begin(), pre.end(), r) - pre.begin() - 1);
      Mor g{cat.hom_indices(cat.cod(f), Obj{c})[r - pre[c]]};
      if (!cat.compose(g, f)) w.offer(law::kMissingComposite, {g.index, f.index}, {mname(g), mname(f)});
    }
    report.notes.push_back("closure sampled: " + std::to_string(kClosureSamples) + " of " +
                           std::to_string(pairs) + " composable pairs");
  }
  if (cat.carrier_form())
    report.notes.push_back("carrier form: associativity holds by function composition");

  w.emit(report, {law::kUndefinedComposite, law::kCompositeEndpoints, law::kIdentityEndpoints,
                  law::kMissingComposite, law::kLeftIdentity, law::kRightIdentity, law::kAssociativity});
  return report;
}

ValidationReport validate_functor(const Functor& F, const FinCategory& src, const FinCategory& tgt) {
  if (F.source() != src.name() || F.target() != tgt.name())
    throw InvalidFunctor("functor " + F.name() + " : " + F.source() + " -> " + F.target() +
                         " does not match categories " + src.name() + " -> " + tgt.name());
  if (F.object_count() != src.object_count() || F.morphism_count() != src.morphism_count())
    throw InvalidFunctor("functor " + F.name() + " is not total on " + src.name());
  for (std::uint32_t a = 0; a < src.object_count(); ++a)
    if (F(Obj{a}).index >= tgt.object_count()) throw InvalidFunctor("object image out of range");
  for (std::uint32_t m = 0; m < src.morphism_count(); ++m)
    if (F(Mor{m}).index >= tgt.morphism_count()) throw InvalidFunctor("morphism image out of range");

  ValidationReport report;
  WitnessCollector w;
  for (std::uint32_t m = 0; m < src.morphism_count(); ++m) {
    Mor f{m};
    Mor Ff = F(f);
    if (tgt.dom(Ff) != F(src.dom(f)) || tgt.cod(Ff) != F(src.cod(f)))
      w.offer(law::kFunctorEndpoints, {m}, {src.morphism_name(f), tgt.morphism_name(Ff)});
  }
  for (std::uint32_t a = 0; a < src.object_count(); ++a) {
    if (F(src.identity(Obj{a})) != tgt.identity(F(Obj{a})))
      w.offer(law::kFunctorIdentity, {a}, {src.object_name(Obj{a})});
  }

  // Between carrier-form categories, a map that keeps carriers and function
  // codes preserves composition because both sides compose functions.
  bool code_preserving = src.carrier_form() && tgt.carrier_form() &&
                         src.is_opposite_view() == tgt.is_opposite_view() &&
                         !w.has(law::kFunctorEndpoints);
  if (code_preserving) {
    for (std::uint32_t a = 0; a < src.object_count() && code_preserving; ++a)
      code_preserving = src.carrier_size(Obj{a}) == tgt.carrier_size(F(Obj{a}));
    for (std::uint32_t m = 0; m < src.morphism_count() && code_preserving; ++m)
      code_preserving = src.function_code(Mor{m}) == tgt.function_code(F(Mor{m}));
  }
  if (code_preserving) {
    report.notes.push_back("composition preserved: carriers and function codes are kept");
  } else {
    auto out = outgoing(src);
    for (std::uint32_t m = 0; m < src.morphism_count(); ++m) {
      Mor f{m};
      for (Mor g : out[src.cod(f).index]) {
        auto gf = src.compose(g, f);
        if (!gf) continue;
        auto image = tgt.compose(F(g), F(f));
        if (!image || *image != F(*gf))
          w.offer(law::kFunctorComposition, {g.index, f.index},
                  {src.morphism_name(g), src.morphism_name(f)});
      }
    }
  }
  w.emit(report, {law::kFunctorEndpoints, law::kFunctorIdentity, law::kFunctorComposition});
  return report;
}

FaithfulnessResult is_faithful(const Functor& F, const FinCategory& src) {
  FaithfulnessResult result;
  const std::size_t n = src.object_count();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> images;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      auto h = src.hom_indices(Obj{a}, Obj{b});
      if (h.size() < 2) continue;
      images.clear();
      for (auto m : h) images.emplace_back(F(Mor{m}).index, m);
      std::sort(images.begin(), images.end());
      for (std::size_t i = 1; i < images.size(); ++i) {
        if (images[i].first != images[i - 1].first) continue;
        std::pair<Mor, Mor> pair{Mor{images[i - 1].second}, Mor{images[i].second}};
        if (!result.witness || pair < *result.witness) result.witness = pair;
        result.faithful = false;
      }
    }
  }
  return result;
}

std::vector<Mor> find_isomorphisms(const FinCategory& cat, Obj a, Obj b) {
  std::vector<Mor> out;
  Mor ida = cat.identity(a);
  Mor idb = cat.identity(b);
  for (auto f : cat.hom_indices(a, b)) {
    for (auto g : cat.hom_indices(b, a)) {
      if (cat.compose(Mor{g}, Mor{f}) == ida && cat.compose(Mor{f}, Mor{g}) == idb) {
        out.push_back(Mor{f});
        break;
      }
    }
  }
  return out;
}

}  // namespace structcat
