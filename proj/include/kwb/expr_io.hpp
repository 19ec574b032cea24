#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kwb/polynomial.hpp"

namespace kwb {

/// Parses an integer-coefficient or rational expression over `variables`.
///
/// Grammar (implicit multiplication is rejected):
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' INT)?
///   primary := INT | INT '/' INT | IDENT | '(' expr ')'
/// Rational literals carry no embedded whitespace.
/// Throws ParseError carrying the 1-based line and column of the offence.
Polynomial parse_polynomial(std::string_view text, const VarList& variables);
Polynomial parse_polynomial(std::string_view text, std::shared_ptr<const VarList> variables);

/// Terms in ascending total degree, lexicographically descending within a
/// degree; coefficients as "p" or "p/q", factors joined by '*'.
std::string print_polynomial(const Polynomial& p);

/// Human-authored polynomial map:
///
///   # comment
///   name: optional metadata
///   vars: x1 x2 x3
///   F1 = <expr>
///   F2 = <expr>
///
/// Metadata keys are `name`, `source` and `notes`.
struct MapFile {
  VarList variables;
  std::vector<std::string> components;
  std::vector<std::pair<std::string, std::string>> metadata;

  PolyMap to_map() const;
  static MapFile from_map(const PolyMap& f);
};

MapFile parse_map_file(std::string_view text);
std::string write_map_file(const MapFile& file);

/// Equation system file: same header as a map file, then one expression per
/// line, each read as `<expr> = 0`.
struct SystemFile {
  VarList variables;
  std::vector<Polynomial> equations;
  std::vector<std::pair<std::string, std::string>> metadata;
};

SystemFile parse_system_file(std::string_view text);
std::string write_system_file(const SystemFile& file);

std::string read_text_file(const std::string& path);

}  // namespace kwb
