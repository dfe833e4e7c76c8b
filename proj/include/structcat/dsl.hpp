#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structcat/concrete.hpp"
#include "structcat/error.hpp"

namespace structcat {

// Line and column are 1-based; column counts bytes.
struct ParseError {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
  std::string token;

  std::string format() const;  // "<line>:<column>: <message>"
  friend bool operator==(const ParseError&, const ParseError&) = default;
};

class ParseFailure : public Error {
 public:
  ParseFailure(std::string source, std::vector<ParseError> errors);
  const std::string& source() const noexcept { return source_; }
  const std::vector<ParseError>& errors() const noexcept { return errors_; }

 private:
  std::string source_;
  std::vector<ParseError> errors_;
};

// The functor text names a category other than the one it is bound to.
class UnboundCategory : public Error {
 public:
  using Error::Error;
};

// Some object or morphism of the source has no image.
class TotalityError : public Error {
 public:
  using Error::Error;
};

struct CategoryParse {
  std::optional<FinCategory> category;
  std::vector<ParseError> errors;  // in line order
  bool ok() const { return errors.empty(); }
};

// Structural checks only (declarations, references, duplicates). The
// category laws are left to validate_category.
CategoryParse parse_category(std::string_view text);

struct MappingLine {
  std::string from, to;
  std::size_t line = 0, column = 0;
};

struct FunctorData {
  std::string name, source, target;
  std::vector<MappingLine> objects;
  std::vector<MappingLine> morphisms;
};

struct FunctorParse {
  std::optional<FunctorData> functor;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

FunctorParse parse_functor(std::string_view text);

// Resolves identifiers against src and tgt. Throws UnboundCategory when the
// category names differ, UnknownIdentifier for unresolved names and
// TotalityError naming the first unmapped object or morphism. Functor laws
// are left to validate_functor.
Functor bind_functor(const FunctorData& data, const FinCategory& src, const FinCategory& tgt);

// Throwing wrappers; `source` labels the errors.
FinCategory load_category(std::string_view text, const std::string& source = "<input>");
Functor load_functor(std::string_view text, const FinCategory& src, const FinCategory& tgt,
                     const std::string& source = "<input>");

// Largest composable-pair count serialize_category accepts; tables beyond
// this are too large to be useful as text.
inline constexpr std::uint64_t kMaxSerializedPairs = std::uint64_t{1} << 22;

// Canonical text: groups in the order category, object, morphism,
// identity, compose, end, lines sorted within each group, LF endings.
// Identities named id_<obj> and the composites fixed by the identity laws
// are left implicit, matching what the parser fills in. Throws
// BoundExceeded above kMaxSerializedPairs.
std::string serialize_category(const FinCategory& cat);
std::string serialize_functor(const Functor& F, const FinCategory& src, const FinCategory& tgt);

// A bundle directory holds C.cat, X.cat and U.fun.
ConcreteCategory load_bundle(const std::filesystem::path& dir);
void write_bundle(const std::filesystem::path& dir, const ConcreteCategory& cc);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace structcat
