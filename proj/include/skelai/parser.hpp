#pragma once

// Concrete syntax: `.sk` semantics files and `.prg` object-program terms.

#include <functional>
#include <set>
#include <string>
#include <string_view>

#include "skelai/concrete.hpp"
#include "skelai/semantics.hpp"

namespace skel {

/// Parses declarations only; no type checking. Throws ParseError /
/// RedeclarationError.
SkeletalSemantics parse_skel(std::string_view text, const std::string& file = "<input>");

/// parse_skel, then installs the program types and type-checks.
SkeletalSemantics load_semantics(std::string_view text, std::set<std::string> program_types,
                                 const std::string& file = "<input>");

using LiteralReader = std::function<Value(const std::string& type, const Literal& literal)>;

/// Parses a ground constructor term of the expected type, e.g.
/// `Seq(Assign("x", Const 0), Skip)`. Throws ParseError / TypeError.
Value parse_program_term(std::string_view text, const SkeletalSemantics& sem, const LiteralReader& read_literal,
                         const TypeExpr& expected, const std::string& file = "<program>");

/// Parses a type expression such as `(store, stmt) -> store`.
TypeExpr parse_type(std::string_view text);

}  // namespace skel
