#pragma once

#include <functional>
#include <string>

#include "skelai/semantics.hpp"
#include "skelai/value.hpp"

namespace skel {

std::string print_pattern(const Pattern& p);
std::string print_term(const Term& t);
std::string print_skeleton(const Skeleton& s, int indent = 0);

/// Re-parsable text of a whole semantics (sugar is not reintroduced).
std::string print_semantics(const SkeletalSemantics& sem);

/// Renders an object program as a `.prg` term; `literal` prints base values.
std::string print_program(const Value& v, const std::function<std::string(const BaseV&)>& literal);

}  // namespace skel
