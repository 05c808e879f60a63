#pragma once

// The While language: bundled semantics, concrete instantiation, interval
// analysis and its AI-state.

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "skelai/abstract.hpp"
#include "skelai/concrete.hpp"
#include "skelai/whilelang/domains.hpp"

namespace skel::whilelang {

/// Text of the bundled `while.sk`.
std::string_view while_source();

/// The bundled semantics, parsed and checked once, with program types {stmt, expr}.
const SkeletalSemantics& while_semantics();

Value read_literal(const std::string& type, const Literal& literal);
/// Inverse of read_literal, for printing `.prg` files.
std::string write_literal(const BaseV& v);

/// Parses a `.prg` statement against the given semantics.
Value parse_stmt(std::string_view text, const SkeletalSemantics& sem = while_semantics());
std::string print_stmt(const Value& v);

ConcreteInstantiation concrete_instantiation();

enum class Pos { In, Out };

struct WhileAIState {
  std::map<std::pair<ProgramPoint, Pos>, AbsValue> entries;

  friend bool operator<(const WhileAIState& a, const WhileAIState& b) { return a.entries < b.entries; }
};
std::string render(const WhileAIState& a);
std::string render(Pos p);

AIState make_state(WhileAIState a);
const WhileAIState& state_of(const AIState& a);
bool state_leq(const AIState& a, const AIState& b);
AIState state_join(const AIState& a, const AIState& b);

std::map<std::string, AbstractFunction> abstract_meanings();
/// AI-state lattice plus the eval_stmt update hooks (eval_expr hooks are identity).
AIStateSpec state_spec();
AbstractInstantiation abstract_instantiation();

/// Initial arguments `(s, t)` for `eval_stmt` on the whole program.
Value initial_concrete_args(const Value& program, bool ppt = true);
AbsValue initial_abstract_args(AbsStore store = {});

}  // namespace skel::whilelang
