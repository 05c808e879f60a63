#pragma once

// Big-step collecting semantics of Skel, with optional program points.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "skelai/semantics.hpp"
#include "skelai/value.hpp"

namespace skel {

/// A literal token of an object program: a quoted string or an integer.
struct Literal {
  enum class Kind { String, Integer } kind;
  std::string text;
};

using ConcreteFunction = std::function<ValueSet(std::span<const Value>)>;

struct ConcreteInstantiation {
  std::map<std::string, ConcreteFunction> functions;
  std::map<std::string, ValueSet> constants;
  /// Builds a base value of the named type from a program literal. Throws
  /// TypeError when the literal does not fit the type.
  std::function<Value(const std::string& type, const Literal& literal)> read_literal;
};

/// `prg@pp`. Throws InvalidPath.
Value subterm_at(const Value& program, const ProgramPoint& pp);

/// Reveals the constructor at `prg@pp` and replaces each program-typed
/// component by the child program point. Returns the constructor name and
/// its (rebuilt) argument.
std::pair<std::string, Value> unfold(const SkeletalSemantics& sem, const Value& program, const ProgramPoint& pp);

/// Replaces every program point in `v` by the subterm it denotes.
Value resolve_program_points(const Value& program, const Value& v);

/// Dynamic membership check `v ∈ V(type)` (program points count for program
/// types when a program is supplied).
bool inhabits(const SkeletalSemantics& sem, const Value& v, const TypeExpr& type,
              const Value* program = nullptr);

class ConcreteInterpreter {
 public:
  /// With a program, runs in program-point mode.
  ConcreteInterpreter(const SkeletalSemantics& sem, const ConcreteInstantiation& inst,
                      std::optional<Value> program = std::nullopt);

  bool ppt_mode() const { return program_.has_value(); }

  ValueSet eval_term(const Env& env, const Term& t) const;
  ValueSet eval_skeleton(const Env& env, const Skeleton& s, std::size_t fuel) const;
  ValueSet apply(const Value& head, std::span<const Value> args, std::size_t fuel) const;
  std::optional<Env> match(Env env, const Pattern& p, const Value& v) const;

  /// Applies the named declaration to the given arguments (the skeleton `f a1 … an`).
  ValueSet call(const std::string& function, std::span<const Value> args, std::size_t fuel) const;

 private:
  ValueSet name_value(const std::string& name) const;

  const SkeletalSemantics& sem_;
  const ConcreteInstantiation& inst_;
  std::optional<Value> program_;
  std::map<const Term*, std::shared_ptr<const TypingEnv>> gammas_;
};

}  // namespace skel
