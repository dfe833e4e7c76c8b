#include "structcat/dsl.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace structcat {

std::string ParseError::format() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

std::string failure_message(const std::string& source, const std::vector<ParseError>& errors) {
  std::string msg = source + ": " + std::to_string(errors.size()) + " error(s)";
  for (const auto& e : errors) msg += "\n" + source + ":" + e.format();
  return msg;
}

}  // namespace

ParseFailure::ParseFailure(std::string source, std::vector<ParseError> errors)
    : Error(failure_message(source, errors)), source_(std::move(source)), errors_(std::move(errors)) {}

namespace {

// ------------------------------------------------------------------ lexing

struct Token {
  std::string_view text;
  std::size_t column = 0;
  bool word = false;
};

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '\'';
}

struct Line {
  std::size_t number = 0;
  std::size_t end_column = 1;  // one past the last token
  std::vector<Token> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view raw = text.substr(start, stop - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      Token t;
      t.column = i + 1;
      if (word_char(c)) {
        std::size_t j = i;
        while (j < raw.size() && word_char(raw[j])) ++j;
        t.text = raw.substr(i, j - i);
        t.word = true;
        i = j;
      } else if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        t.text = raw.substr(i, 2);
        i += 2;
      } else {
        // ':', '=', '.' and anything unexpected are single-byte tokens
        t.text = raw.substr(i, 1);
        ++i;
      }
      line.tokens.push_back(t);
      line.end_column = i + 1;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (stop == text.size()) break;
    start = stop + 1;
  }
  return lines;
}

// Pattern letters: 'W' an identifier, anything else a literal token.
// Keywords are matched by the caller.
std::optional<ParseError> match(const Line& line, std::initializer_list<std::string_view> pattern,
                                std::string_view what) {
  std::size_t k = 0;
  for (auto expected : pattern) {
    if (k >= line.tokens.size())
      return ParseError{line.number, line.end_column, "incomplete " + std::string(what) + " declaration", ""};
    const Token& t = line.tokens[k];
    bool ok = expected == "W" ? t.word : t.text == expected;
    if (!ok) {
      std::string want = expected == "W" ? "an identifier" : "'" + std::string(expected) + "'";
      return ParseError{line.number, t.column,
                        "expected " + want + " in " + std::string(what) + " declaration, found '" +
                            std::string(t.text) + "'",
                        std::string(t.text)};
    }
    ++k;
  }
  if (k < line.tokens.size()) {
    const Token& t = line.tokens[k];
    return ParseError{line.number, t.column, "unexpected '" + std::string(t.text) + "' after " + std::string(what) + " declaration",
                      std::string(t.text)};
  }
  return std::nullopt;
}

// One error per line at most; later reports for the same line are dropped.
class ErrorSink {
 public:
  bool report(ParseError e) {
    if (!lines_.insert(e.line).second) return false;
    errors_.push_back(std::move(e));
    return true;
  }
  bool failed(std::size_t line) const { return lines_.count(line) > 0; }
  std::vector<ParseError> take() {
    std::stable_sort(errors_.begin(), errors_.end(),
                     [](const ParseError& a, const ParseError& b) { return a.line < b.line; });
    return std::move(errors_);
  }

 private:
  std::unordered_set<std::size_t> lines_;
  std::vector<ParseError> errors_;
};

ParseError at(const Line& line, std::size_t k, std::string message) {
  const Token& t = line.tokens[k];
  return ParseError{line.number, t.column, std::move(message), std::string(t.text)};
}

// Header / body / end framing shared by both file kinds. Returns the body
// lines; header is set when a well-formed header was seen.
struct Framed {
  const Line* header = nullptr;
  std::vector<const Line*> body;
};

Framed frame(const std::vector<Line>& lines, std::string_view keyword, ErrorSink& errors) {
  Framed out;
  enum { before, inside, after } phase = before;
  bool saw_header_line = false;
  for (const Line& line : lines) {
    std::string_view head = line.tokens[0].text;
    if (head == keyword) {
      if (saw_header_line) {
        errors.report(at(line, 0, "duplicate '" + std::string(keyword) + "' header"));
        continue;
      }
      saw_header_line = true;
      phase = inside;
      if (keyword == "category") {
        if (auto e = match(line, {keyword, "W"}, keyword)) errors.report(*e);
        else out.header = &line;
      } else {
        if (auto e = match(line, {keyword, "W", ":", "W", "->", "W"}, keyword)) errors.report(*e);
        else out.header = &line;
      }
      continue;
    }
    if (head == "end") {
      if (phase != inside) {
        errors.report(at(line, 0, "'end' without an open '" + std::string(keyword) + "' block"));
        continue;
      }
      if (auto e = match(line, {"end"}, "end")) errors.report(*e);
      phase = after;
      continue;
    }
    if (phase == before) {
      errors.report(at(line, 0, "expected '" + std::string(keyword) + "' header before declarations"));
      continue;
    }
    if (phase == after) {
      errors.report(at(line, 0, "declaration after 'end'"));
      continue;
    }
    out.body.push_back(&line);
  }
  if (!saw_header_line) {
    errors.report(ParseError{1, 1, "missing '" + std::string(keyword) + "' header", ""});
  } else if (phase == inside) {
    const Line& last = lines.back();
    errors.report(ParseError{last.number, last.end_column, "missing 'end'", ""});
  }
  return out;
}

struct Located {
  std::string_view id;
  const Line* line;
  std::size_t token;
};

std::uint64_t pair_key(std::uint32_t g, std::uint32_t f) { return (std::uint64_t{g} << 32) | f; }

}  // namespace

// --------------------------------------------------------------- categories

CategoryParse parse_category(std::string_view text) {
  CategoryParse result;
  ErrorSink errors;
  auto lines = lex(text);
  Framed framed = frame(lines, "category", errors);

  struct MorphismDecl {
    std::string_view id, dom, cod;
    const Line* line;
  };
  struct CompositeDecl {
    std::string_view g, f, h;
    const Line* line;
  };
  std::vector<Located> objects;
  std::vector<MorphismDecl> morphisms;
  std::vector<std::pair<Located, Located>> identities;
  std::vector<CompositeDecl> composites;

  for (const Line* line : framed.body) {
    std::string_view head = line->tokens[0].text;
    if (head == "object") {
      if (auto e = match(*line, {"object", "W"}, "object")) errors.report(*e);
      else objects.push_back({line->tokens[1].text, line, 1});
    } else if (head == "morphism") {
      if (auto e = match(*line, {"morphism", "W", ":", "W", "->", "W"}, "morphism")) errors.report(*e);
      else morphisms.push_back({line->tokens[1].text, line->tokens[3].text, line->tokens[5].text, line});
    } else if (head == "identity") {
      if (auto e = match(*line, {"identity", "W", "=", "W"}, "identity")) errors.report(*e);
      else identities.push_back({{line->tokens[1].text, line, 1}, {line->tokens[3].text, line, 3}});
    } else if (head == "compose") {
      if (auto e = match(*line, {"compose", "W", ".", "W", "=", "W"}, "compose")) errors.report(*e);
      else composites.push_back({line->tokens[1].text, line->tokens[3].text, line->tokens[5].text, line});
    } else {
      errors.report(at(*line, 0, "unknown declaration '" + std::string(head) + "'"));
    }
  }

  // Objects.
  std::unordered_map<std::string_view, std::size_t> object_index;
  std::vector<std::string_view> object_ids;
  for (const auto& o : objects) {
    if (object_index.count(o.id)) {
      errors.report(at(*o.line, o.token, "duplicate object '" + std::string(o.id) + "'"));
      continue;
    }
    object_index.emplace(o.id, object_ids.size());
    object_ids.push_back(o.id);
  }

  // Explicit identities.
  std::unordered_map<std::string_view, std::string_view> identity_of;
  for (const auto& [o, m] : identities) {
    if (!object_index.count(o.id)) {
      errors.report(at(*o.line, o.token, "undeclared object '" + std::string(o.id) + "'"));
      continue;
    }
    if (!identity_of.emplace(o.id, m.id).second)
      errors.report(at(*o.line, o.token, "duplicate identity for '" + std::string(o.id) + "'"));
  }

  // Morphisms, explicit then auto identities.
  std::unordered_map<std::string_view, std::uint32_t> morphism_index;
  std::vector<std::string> auto_names;  // stable storage for id_<obj>
  auto_names.reserve(object_ids.size());
  struct Entry {
    std::string_view id, dom, cod;
    bool automatic = false;  // created by the builder, not passed to it
  };
  std::vector<Entry> entries;
  for (const auto& m : morphisms) {
    if (morphism_index.count(m.id)) {
      errors.report(at(*m.line, 1, "duplicate morphism '" + std::string(m.id) + "'"));
      continue;
    }
    morphism_index.emplace(m.id, static_cast<std::uint32_t>(entries.size()));
    entries.push_back({m.id, m.dom, m.cod, false});
    if (!object_index.count(m.dom))
      errors.report(at(*m.line, 3, "undeclared object '" + std::string(m.dom) + "'"));
    else if (!object_index.count(m.cod))
      errors.report(at(*m.line, 5, "undeclared object '" + std::string(m.cod) + "'"));
  }
  std::vector<std::pair<std::string_view, std::string_view>> identity_list;  // (object, morphism)
  for (auto o : object_ids) {
    auto it = identity_of.find(o);
    if (it != identity_of.end()) {
      identity_list.emplace_back(o, it->second);
      continue;
    }
    auto_names.push_back("id_" + std::string(o));
    std::string_view id = auto_names.back();
    if (!morphism_index.count(id)) {
      morphism_index.emplace(id, static_cast<std::uint32_t>(entries.size()));
      entries.push_back({id, o, o, true});
    }
  }
  for (const auto& [o, m] : identities) {
    if (errors.failed(o.line->number)) continue;
    if (!morphism_index.count(m.id))
      errors.report(at(*m.line, m.token, "undeclared morphism '" + std::string(m.id) + "'"));
  }

  // Composites.
  std::unordered_set<std::uint64_t> given;
  for (const auto& c : composites) {
    const std::size_t positions[] = {1, 3, 5};
    const std::string_view ids[] = {c.g, c.f, c.h};
    bool resolved = true;
    for (int k = 0; k < 3 && resolved; ++k)
      if (!morphism_index.count(ids[k])) {
        errors.report(at(*c.line, positions[k], "undeclared morphism '" + std::string(ids[k]) + "'"));
        resolved = false;
      }
    if (!resolved) continue;
    if (!given.insert(pair_key(morphism_index.at(c.g), morphism_index.at(c.f))).second)
      errors.report(at(*c.line, 1, "duplicate composite " + std::string(c.g) + " . " + std::string(c.f)));
  }

  result.errors = errors.take();
  if (!result.ok() || !framed.header) return result;

  CategoryBuilder builder(std::string(framed.header->tokens[1].text));
  for (auto o : object_ids) builder.add_object(std::string(o));
  for (const auto& e : entries)
    if (!e.automatic) builder.add_morphism(std::string(e.id), std::string(e.dom), std::string(e.cod));
  for (const auto& [o, m] : identity_list) builder.set_identity(std::string(o), std::string(m));
  for (const auto& c : composites) builder.set_composite(std::string(c.g), std::string(c.f), std::string(c.h));

  result.category = builder.build();
  return result;
}

std::string serialize_category(const FinCategory& cat) {
  if (cat.composable_pair_count() > kMaxSerializedPairs)
    throw BoundExceeded("category " + cat.name() + " has " + std::to_string(cat.composable_pair_count()) +
                        " composable pairs; text form is limited to " + std::to_string(kMaxSerializedPairs));
  std::vector<std::string> objects, morphisms, identities, composites;
  // The parser recreates an undeclared id_<obj> together with its
  // composites, so exactly those entries stay implicit.
  auto auto_identity = [&](Mor e) {
    Obj o = cat.dom(e);
    return cat.cod(e) == o && cat.identity(o) == e && cat.morphism_name(e) == "id_" + cat.object_name(o);
  };
  for (std::uint32_t a = 0; a < cat.object_count(); ++a) {
    const std::string& o = cat.object_name(Obj{a});
    objects.push_back("object " + o);
    std::string id = cat.morphism_name(cat.identity(Obj{a}));
    if (id != "id_" + o) identities.push_back("identity " + o + " = " + id);
  }
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    Mor f{m};
    Obj d = cat.dom(f), c = cat.cod(f);
    std::string id = cat.morphism_name(f);
    if (auto_identity(f)) continue;
    morphisms.push_back("morphism " + id + " : " + cat.object_name(d) + " -> " + cat.object_name(c));
  }
  auto implicit = [&](Mor g, Mor f, Mor h) {
    return (g == cat.identity(cat.cod(f)) && h == f && auto_identity(g)) ||
           (f == cat.identity(cat.dom(g)) && h == g && auto_identity(f));
  };
  auto emit = [&](Mor g, Mor f, Mor h) {
    if (implicit(g, f, h)) return;
    composites.push_back("compose " + cat.morphism_name(g) + " . " + cat.morphism_name(f) + " = " +
                         cat.morphism_name(h));
  };
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    Mor f{m};
    for (std::uint32_t c = 0; c < cat.object_count(); ++c)
      for (auto g : cat.hom_indices(cat.cod(f), Obj{c}))
        if (auto h = cat.compose(Mor{g}, f)) emit(Mor{g}, f, *h);
  }
  cat.for_each_table_entry([&](Mor g, Mor f, Mor h) {
    if (cat.cod(f) != cat.dom(g)) emit(g, f, h);
  });

  std::string out = "category " + cat.name() + "\n";
  for (auto* group : {&objects, &morphisms, &identities, &composites}) {
    std::sort(group->begin(), group->end());
    for (const auto& line : *group) {
      out += line;
      out += '\n';
    }
  }
  out += "end\n";
  return out;
}

FinCategory load_category(std::string_view text, const std::string& source) {
  auto parsed = parse_category(text);
  if (!parsed.ok()) throw ParseFailure(source, std::move(parsed.errors));
  return std::move(*parsed.category);
}

// ----------------------------------------------------------------- functors

FunctorParse parse_functor(std::string_view text) {
  FunctorParse result;
  ErrorSink errors;
  auto lines = lex(text);
  Framed framed = frame(lines, "functor", errors);

  FunctorData data;
  std::unordered_set<std::string> seen_objects, seen_morphisms;
  for (const Line* line : framed.body) {
    std::string_view head = line->tokens[0].text;
    bool object_line = head == "onobject";
    if (!object_line && head != "onmorphism") {
      errors.report(at(*line, 0, "unknown declaration '" + std::string(head) + "'"));
      continue;
    }
    if (auto e = match(*line, {head, "W", "=", "W"}, head)) {
      errors.report(*e);
      continue;
    }
    std::string from(line->tokens[1].text);
    auto& seen = object_line ? seen_objects : seen_morphisms;
    if (!seen.insert(from).second) {
      errors.report(at(*line, 1, "duplicate " + std::string(head) + " entry for '" + from + "'"));
      continue;
    }
    (object_line ? data.objects : data.morphisms)
        .push_back({from, std::string(line->tokens[3].text), line->number, line->tokens[1].column});
  }
  result.errors = errors.take();
  if (!result.ok() || !framed.header) return result;
  data.name = std::string(framed.header->tokens[1].text);
  data.source = std::string(framed.header->tokens[3].text);
  data.target = std::string(framed.header->tokens[5].text);
  result.functor = std::move(data);
  return result;
}

Functor bind_functor(const FunctorData& data, const FinCategory& src, const FinCategory& tgt) {
  if (data.source != src.name())
    throw UnboundCategory("functor " + data.name + ": source category '" + data.source +
                          "' is not bound (got '" + src.name() + "')");
  if (data.target != tgt.name())
    throw UnboundCategory("functor " + data.name + ": target category '" + data.target +
                          "' is not bound (got '" + tgt.name() + "')");
  auto where = [&](const MappingLine& m) {
    return "functor " + data.name + ": line " + std::to_string(m.line) + ": ";
  };
  std::vector<std::optional<Obj>> objects(src.object_count());
  for (const auto& m : data.objects) {
    auto a = src.find_object(m.from);
    if (!a) throw UnknownIdentifier(where(m) + "no object '" + m.from + "' in " + src.name());
    auto b = tgt.find_object(m.to);
    if (!b) throw UnknownIdentifier(where(m) + "no object '" + m.to + "' in " + tgt.name());
    objects[a->index] = *b;
  }
  std::vector<std::optional<Mor>> morphisms(src.morphism_count());
  for (const auto& m : data.morphisms) {
    auto f = src.find_morphism(m.from);
    if (!f) throw UnknownIdentifier(where(m) + "no morphism '" + m.from + "' in " + src.name());
    auto g = tgt.find_morphism(m.to);
    if (!g) throw UnknownIdentifier(where(m) + "no morphism '" + m.to + "' in " + tgt.name());
    morphisms[f->index] = *g;
  }
  std::vector<Obj> object_map;
  for (std::uint32_t a = 0; a < objects.size(); ++a) {
    if (!objects[a])
      throw TotalityError("functor " + data.name + ": no onobject entry for object '" +
                          src.object_name(Obj{a}) + "'");
    object_map.push_back(*objects[a]);
  }
  std::vector<Mor> morphism_map;
  for (std::uint32_t f = 0; f < morphisms.size(); ++f) {
    if (!morphisms[f])
      throw TotalityError("functor " + data.name + ": no onmorphism entry for morphism '" +
                          src.morphism_name(Mor{f}) + "'");
    morphism_map.push_back(*morphisms[f]);
  }
  return Functor(data.name, data.source, data.target, std::move(object_map), std::move(morphism_map));
}

Functor load_functor(std::string_view text, const FinCategory& src, const FinCategory& tgt,
                     const std::string& source) {
  auto parsed = parse_functor(text);
  if (!parsed.ok()) throw ParseFailure(source, std::move(parsed.errors));
  return bind_functor(*parsed.functor, src, tgt);
}

std::string serialize_functor(const Functor& F, const FinCategory& src, const FinCategory& tgt) {
  if (F.source() != src.name() || F.target() != tgt.name())
    throw InvalidFunctor("functor " + F.name() + " is not a functor " + src.name() + " -> " + tgt.name());
  std::vector<std::string> objects, morphisms;
  for (std::uint32_t a = 0; a < src.object_count(); ++a)
    objects.push_back("onobject " + src.object_name(Obj{a}) + " = " + tgt.object_name(F(Obj{a})));
  for (std::uint32_t f = 0; f < src.morphism_count(); ++f)
    morphisms.push_back("onmorphism " + src.morphism_name(Mor{f}) + " = " + tgt.morphism_name(F(Mor{f})));
  std::sort(objects.begin(), objects.end());
  std::sort(morphisms.begin(), morphisms.end());
  std::string out = "functor " + F.name() + " : " + F.source() + " -> " + F.target() + "\n";
  for (auto* group : {&objects, &morphisms})
    for (const auto& line : *group) {
      out += line;
      out += '\n';
    }
  out += "end\n";
  return out;
}

// ------------------------------------------------------------------ bundles

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("cannot write " + path.string());
}

ConcreteCategory load_bundle(const std::filesystem::path& dir) {
  auto c_path = dir / "C.cat", x_path = dir / "X.cat", u_path = dir / "U.fun";
  FinCategory C = load_category(read_file(c_path), c_path.string());
  FinCategory X = load_category(read_file(x_path), x_path.string());
  Functor U = load_functor(read_file(u_path), C, X, u_path.string());
  return ConcreteCategory(std::move(C), std::move(X), std::move(U));
}

void write_bundle(const std::filesystem::path& dir, const ConcreteCategory& cc) {
  // serialize first so an oversized bundle leaves nothing behind
  std::string c = serialize_category(cc.C());
  std::string x = serialize_category(cc.X());
  std::string u = serialize_functor(cc.U(), cc.C(), cc.X());
  std::filesystem::create_directories(dir);
  write_file(dir / "C.cat", c);
  write_file(dir / "X.cat", x);
  write_file(dir / "U.fun", u);
}

}  // namespace structcat
