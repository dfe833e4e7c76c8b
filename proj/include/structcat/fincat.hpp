#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace structcat {

// Handles into one FinCategory. Index order coincides with the
// lexicographic order of the textual identifiers, so iterating by index is
// the deterministic enumeration order used everywhere.
struct Obj {
  std::uint32_t index = 0;
  friend auto operator<=>(Obj, Obj) = default;
};

struct Mor {
  std::uint32_t index = 0;
  friend auto operator<=>(Mor, Mor) = default;
};

struct Violation {
  std::string law;
  std::vector<std::string> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool valid() const { return violations.empty(); }
  const Violation* find(std::string_view law) const;
};

namespace law {
inline constexpr std::string_view kMissingComposite = "MissingComposite";
inline constexpr std::string_view kUndefinedComposite = "UndefinedComposite";
inline constexpr std::string_view kCompositeEndpoints = "CompositeEndpoints";
inline constexpr std::string_view kIdentityEndpoints = "IdentityEndpoints";
inline constexpr std::string_view kLeftIdentity = "LeftIdentity";
inline constexpr std::string_view kRightIdentity = "RightIdentity";
inline constexpr std::string_view kAssociativity = "Associativity";
inline constexpr std::string_view kFunctorEndpoints = "FunctorEndpoints";
inline constexpr std::string_view kFunctorIdentity = "FunctorIdentity";
inline constexpr std::string_view kFunctorComposition = "FunctorComposition";
}  // namespace law

namespace detail {
struct CategoryCore;
}

// A finite category given by a composition table. Two storage forms share
// this interface:
//  - table form: every composite is an explicit entry (DSL input, random
//    categories);
//  - carrier form: every object has a finite carrier {0..n-1}, every
//    morphism is a distinct function between carriers, and composites are
//    the morphisms carrying the composed function (generated instances).
// Instances are immutable; copies share storage.
class FinCategory {
 public:
  FinCategory();

  const std::string& name() const { return name_; }
  std::size_t object_count() const;
  std::size_t morphism_count() const;

  const std::string& object_name(Obj a) const;
  std::string morphism_name(Mor f) const;
  std::optional<Obj> find_object(std::string_view id) const;
  std::optional<Mor> find_morphism(std::string_view id) const;
  Obj object(std::string_view id) const;    // throws UnknownIdentifier
  Mor morphism(std::string_view id) const;  // throws UnknownIdentifier

  Obj dom(Mor f) const;
  Obj cod(Mor f) const;
  Mor identity(Obj a) const;
  std::span<const std::uint32_t> hom_indices(Obj a, Obj b) const;
  std::vector<Mor> hom(Obj a, Obj b) const;
  std::size_t hom_size(Obj a, Obj b) const { return hom_indices(a, b).size(); }
  // Position of f inside hom(dom f, cod f).
  std::uint32_t hom_position(Mor f) const;

  // g . f, if the table defines it. Pairs with cod(f) != dom(g) may carry a
  // (law-violating) table entry; validate_category reports those.
  std::optional<Mor> compose(Mor g, Mor f) const;

  // Explicit table entries (g, f, g.f). Carrier form has none beyond the
  // composable pairs, so it reports nothing here.
  void for_each_table_entry(const std::function<void(Mor, Mor, Mor)>& fn) const;

  bool carrier_form() const;
  int carrier_size(Obj a) const;                 // carrier form only
  std::vector<int> underlying_function(Mor f) const;  // carrier form only
  std::uint32_t function_code(Mor f) const;      // carrier form only
  std::optional<Mor> find_by_code(Obj a, Obj b, std::uint32_t code) const;

  bool is_opposite_view() const { return flipped_; }
  // Same identifiers, dom/cod swapped, composition transposed.
  FinCategory opposite() const;

  std::uint64_t composable_pair_count() const;

  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  friend class CategoryBuilder;
  friend FinCategory make_carrier_category(std::string, std::vector<std::string>,
                                           std::vector<int>,
                                           std::vector<std::vector<std::uint32_t>>);

  FinCategory(std::string name, std::shared_ptr<const detail::CategoryCore> core,
              bool flipped);

  std::string name_;
  std::shared_ptr<const detail::CategoryCore> core_;
  bool flipped_ = false;
};

// Assembles a table-form category. build() rejects undeclared identifiers
// and duplicates with StructuralError; it does not check category laws.
// Objects without an explicit identity get a morphism id_<obj> whose
// composites with every adjacent morphism are filled in automatically.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name);

  CategoryBuilder& add_object(std::string id);
  CategoryBuilder& add_morphism(std::string id, std::string dom, std::string cod);
  CategoryBuilder& set_identity(std::string object, std::string morphism);
  CategoryBuilder& set_composite(std::string g, std::string f, std::string h);

  FinCategory build() const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::tuple<std::string, std::string, std::string>> morphisms_;
  std::vector<std::pair<std::string, std::string>> identities_;
  std::vector<std::tuple<std::string, std::string, std::string>> composites_;
};

// Carrier-form constructor. object_names must be sorted and the
// morphism-naming scheme m_<dom>_<cod>_<digits> must sort consistently with
// (dom, cod, code); the instance builders guarantee both. functions[a*n+b]
// lists the admitted function codes from carrier(a) to carrier(b).
FinCategory make_carrier_category(std::string name,
                                  std::vector<std::string> object_names,
                                  std::vector<int> carriers,
                                  std::vector<std::vector<std::uint32_t>> functions);

// Function code helpers: digits most significant first, base = |codomain|.
std::uint32_t encode_function(std::span<const int> images, int codomain_size);
std::vector<int> decode_function(std::uint32_t code, int domain_size,
                                 int codomain_size);
std::uint32_t function_count(int domain_size, int codomain_size);

class Functor {
 public:
  Functor() = default;
  Functor(std::string name, std::string source, std::string target,
          std::vector<Obj> objects, std::vector<Mor> morphisms);

  static Functor identity(const FinCategory& cat, std::string name = "Id");

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  const std::string& target() const { return target_; }
  Obj operator()(Obj a) const { return (*objects_)[a.index]; }
  Mor operator()(Mor f) const { return (*morphisms_)[f.index]; }
  std::size_t object_count() const { return objects_ ? objects_->size() : 0; }
  std::size_t morphism_count() const { return morphisms_ ? morphisms_->size() : 0; }

  // Same maps, read between the opposite categories.
  Functor opposite(const FinCategory& source_op, const FinCategory& target_op) const;

  friend bool operator==(const Functor& a, const Functor& b);

 private:
  std::string name_, source_, target_;
  std::shared_ptr<const std::vector<Obj>> objects_;
  std::shared_ptr<const std::vector<Mor>> morphisms_;
};

// Name of the opposite: toggles a trailing "_op".
std::string opposite_name(const std::string& name);

ValidationReport validate_category(const FinCategory& cat);

// Throws InvalidFunctor when F's source/target names do not match.
ValidationReport validate_functor(const Functor& F, const FinCategory& src,
                                  const FinCategory& tgt);

struct FaithfulnessResult {
  bool faithful = true;
  std::optional<std::pair<Mor, Mor>> witness;
};

// Brute-force scan of every hom-set of src for two morphisms with the same
// image.
FaithfulnessResult is_faithful(const Functor& F, const FinCategory& src);

std::vector<Mor> find_isomorphisms(const FinCategory& cat, Obj a, Obj b);

inline FinCategory opposite(const FinCategory& cat) { return cat.opposite(); }

}  // namespace structcat
