#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "doublecat/dfib.hpp"

namespace dc {

enum class ParseErrorKind { Syntax, UnresolvedId, Validation, Schema };
const char* to_string(ParseErrorKind k);

struct ParseError : std::runtime_error {
  ParseErrorKind kind;
  ParseError(ParseErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kFormatVersion = 1;

// One loaded document; exactly the fields matching `kind` are set.
// kind: category | doublecat | presheaf | functor | dfib | transformation.
struct Document {
  std::string kind;
  int version = kFormatVersion;
  CatRef category;
  DblRef doublecat;
  PshRef presheaf;
  DFunRef functor;                             // functor and dfib
  std::optional<DiscreteDoubleFibration> dfib;  // dfib only
  HTransRef transformation;
};

// Every payload is validated on load; failures throw ParseError.
Document parse_document(std::string_view text);
Document load_document(const std::string& path);

std::string serialize(const FinCat& c);
std::string serialize(const DoubleCat& d);
std::string serialize(const LaxDoublePresheaf& x);
std::string serialize(const DoubleFunctor& f, bool as_dfib = false);
std::string serialize(const HorizontalTransf& t);

void write_file(const std::string& path, const std::string& text);

}  // namespace dc
