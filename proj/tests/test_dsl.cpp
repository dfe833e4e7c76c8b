#include <doctest.h>

#include "structcat/dsl.hpp"
#include "structcat/instances.hpp"
#include "structcat/random_category.hpp"
#include "support.hpp"

using namespace structcat;

namespace {

const std::filesystem::path kSourceDir = STRUCTCAT_SOURCE_DIR;

// Table-form validation is cubic in the morphism count, so the largest
// instances only compare for equality.
void check_round_trip(const FinCategory& cat, bool validate = true) {
  std::string text = serialize_category(cat);
  FinCategory back = load_category(text);
  CHECK(back == cat);
  CHECK(serialize_category(back) == text);
  if (validate) CHECK(validate_category(back).valid() == validate_category(cat).valid());
}

}  // namespace

TEST_CASE("the terminal category") {
  auto parse = parse_category("category One\nobject A\nend\n");
  REQUIRE(parse.ok());
  const FinCategory& one = *parse.category;
  CHECK(one.name() == "One");
  CHECK(one.object_count() == 1);
  CHECK(one.morphism_count() == 1);
  CHECK(one.morphism_name(one.identity(one.object("A"))) == "id_A");
  CHECK(validate_category(one).valid());
  CHECK(one == support::terminal());
  CHECK(serialize_category(one) == "category One\nobject A\nend\n");
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
  auto parse = parse_category("# a comment\r\ncategory One   # trailing\r\n\r\nobject A\r\nend\r\n");
  REQUIRE(parse.ok());
  CHECK(*parse.category == support::terminal());
}

TEST_CASE("an undeclared object gives one error naming it") {
  auto parse = parse_category("category T\nobject A\nmorphism f : A -> B\nend\n");
  CHECK_FALSE(parse.category);
  REQUIRE(parse.errors.size() == 1);
  CHECK(parse.errors[0].line == 3);
  CHECK(parse.errors[0].column == 19);
  CHECK(parse.errors[0].token == "B");
  CHECK(parse.errors[0].message.find("'B'") != std::string::npos);
  try {
    load_category("category T\nobject A\nmorphism f : A -> B\nend\n", "t.cat");
    FAIL("expected ParseFailure");
  } catch (const ParseFailure& e) {
    CHECK(e.source() == "t.cat");
    CHECK(std::string(e.what()).find("t.cat:3:19") != std::string::npos);
  }
}

TEST_CASE("each malformed line is reported once, in order") {
  const std::vector<std::string> bad = {
      "object",
      "morphism f A -> A",
      "foo bar",
      "compose f . f",
      "identity A",
      "morphism g : A -> A extra",
      "object A B",
  };
  std::mt19937_64 rng(11);
  for (std::size_t k = 0; k <= bad.size(); ++k) {
    CAPTURE(k);
    std::string text = "category T\nobject A\nmorphism f : A -> A\n";
    std::vector<std::size_t> expected_lines;
    std::size_t line = 4;
    for (std::size_t i = 0; i < k; ++i) {
      text += bad[i] + "\n";
      expected_lines.push_back(line++);
      // interleave good lines
      if (uniform_below(rng, 2)) {
        text += "object G" + std::to_string(i) + "\n";
        ++line;
      }
    }
    text += "compose f . f = f\nend\n";
    auto parse = parse_category(text);
    REQUIRE(parse.errors.size() == k);
    for (std::size_t i = 0; i < k; ++i) CHECK(parse.errors[i].line == expected_lines[i]);
    CHECK(parse.category.has_value() == (k == 0));
  }
}

TEST_CASE("framing and resolution errors") {
  auto errors = [](std::string_view text) { return parse_category(text).errors; };
  CHECK(errors("object A\nend\n").size() >= 1);
  CHECK(errors("category T\nobject A\n").back().message == "missing 'end'");
  CHECK(errors("category T\nobject A\nobject A\nend\n").size() == 1);
  CHECK(errors("category T\nobject A\nidentity B = f\nend\n").size() == 1);
  CHECK(errors("category T\nobject A\nmorphism f : A -> A\nmorphism f : A -> A\nend\n").size() == 1);
  CHECK(errors("category T\nobject A\nmorphism f : A -> A\ncompose f . f = f\ncompose f . f = f\nend\n").size() == 1);
  CHECK(errors("category T\nobject A\nend\nobject B\n").size() == 1);
  CHECK(errors("").front().line == 1);
}

TEST_CASE("the parser leaves the category laws to validation") {
  std::string text = read_file(kSourceDir / "tests/fixtures/not_associative.cat");
  FinCategory broken = load_category(text);
  auto r = validate_category(broken);
  REQUIRE(r.find(law::kAssociativity));
  CHECK(r.find(law::kAssociativity)->witness == std::vector<std::string>{"e", "e", "f"});

  // an explicit identity gets no composites filled in
  FinCategory missing = load_category(
      "category M\nobject A\nmorphism e : A -> A\nidentity A = e\nend\n");
  REQUIRE(validate_category(missing).find(law::kMissingComposite));
  CHECK(validate_category(missing).find(law::kMissingComposite)->witness == std::vector<std::string>{"e", "e"});
  check_round_trip(missing);
}

TEST_CASE("serialization round-trips") {
  for (int n = 0; n <= 4; ++n) check_round_trip(build_set_fin(n));
  check_round_trip(build_top_fin({0, 1, 2}).concrete.C());
  check_round_trip(build_preord_fin({0, 1, 2}).concrete.C());
  check_round_trip(build_preord_fin({0, 1, 2, 3}).concrete.C(), false);
  check_round_trip(build_top_fin({1, 2}).concrete.C().opposite());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    check_round_trip(random_concrete_category(seed, {}).C());
  }
  check_round_trip(load_category(read_file(kSourceDir / "tests/fixtures/not_associative.cat")));
  CHECK_THROWS_AS(serialize_category(build_set_fin(5)), BoundExceeded);
}

TEST_CASE("functors: parse, bind and round-trip") {
  TopFin t = build_top_fin({0, 1, 2});
  const auto& cc = t.concrete;
  std::string text = serialize_functor(cc.U(), cc.C(), cc.X());
  Functor back = load_functor(text, cc.C(), cc.X());
  CHECK(back == cc.U());
  CHECK(serialize_functor(back, cc.C(), cc.X()) == text);

  FinCategory one = support::terminal();
  auto parse = parse_functor("functor F : One -> One\nonobject A = A\nend\n");
  REQUIRE(parse.ok());
  CHECK_THROWS_AS(bind_functor(*parse.functor, one, one), TotalityError);
  try {
    bind_functor(*parse.functor, one, one);
  } catch (const TotalityError& e) {
    CHECK(std::string(e.what()) == "functor F: no onmorphism entry for morphism 'id_A'");
  }
  CHECK_THROWS_AS(load_functor("functor F : Two -> One\nonobject A = A\nonmorphism id_A = id_A\nend\n", one, one),
                  UnboundCategory);
  CHECK_THROWS_AS(load_functor("functor F : One -> One\nonobject A = Z\nonmorphism id_A = id_A\nend\n", one, one),
                  UnknownIdentifier);
  CHECK(load_functor("functor F : One -> One\nonobject A = A\nonmorphism id_A = id_A\nend\n", one, one) ==
        Functor::identity(one, "F"));
  CHECK_FALSE(parse_functor("functor F One -> One\nend\n").ok());
}

TEST_CASE("bundles round-trip through a directory") {
  support::TempDir dir("dsl");
  TopFin t = build_top_fin({1, 2});
  write_bundle(dir.path(), t.concrete);
  ConcreteCategory back = load_bundle(dir.path());
  CHECK(back.C() == t.concrete.C());
  CHECK(back.X() == t.concrete.X());
  CHECK(back.U() == t.concrete.U());
}

TEST_CASE("the Top_fin(2) golden bundle is stable") {
  const auto golden = kSourceDir / "tests/golden/top_2";
  TopFin t = build_top_fin({2});
  CHECK(serialize_category(t.concrete.C()) == read_file(golden / "C.cat"));
  CHECK(serialize_category(t.concrete.X()) == read_file(golden / "X.cat"));
  CHECK(serialize_functor(t.concrete.U(), t.concrete.C(), t.concrete.X()) == read_file(golden / "U.fun"));
  ConcreteCategory loaded = load_bundle(golden);
  CHECK(loaded.C() == t.concrete.C());
  CHECK(loaded.U() == t.concrete.U());
}
