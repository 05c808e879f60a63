#pragma once

// Drivers shared by the CLI and the test suites: concrete runs, analyses
// and the soundness check of one program.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include "skelai/abstract.hpp"
#include "skelai/concrete.hpp"

namespace skel {

/// Runs `fn` on a thread with a large stack; deep object programs recurse deeply.
void run_with_large_stack(const std::function<void()>& fn, std::size_t stack_bytes = std::size_t{512} << 20);

template <class F>
auto on_large_stack(F&& fn) {
  std::optional<decltype(fn())> out;
  run_with_large_stack([&] { out.emplace(fn()); });
  return std::move(*out);
}

struct ProgramSetup {
  const SkeletalSemantics& sem;
  std::string entry = "eval_stmt";
};

/// The program type an entry `(store, τ) -> …` analyses.
TypeExpr program_type(const SkeletalSemantics& sem, const std::string& entry);

/// `entry (σ0, t)` with t the whole program (plain) or ε (ppt). Program-point
/// results are resolved back to subterms.
ValueSet run_program(const ProgramSetup& setup, const ConcreteInstantiation& inst, const Value& program,
                     const Value& initial_store, std::size_t fuel, bool ppt = true);

struct Analysis {
  AbsValue result;
  AIState state;
  std::uint64_t steps;
};

Analysis analyze_program(const ProgramSetup& setup, const AbstractInstantiation& inst, const Value& program,
                         const AbsValue& initial_store,
                         std::uint64_t budget = AbstractInterpreter::kDefaultStepBudget);

struct SoundnessVerdict {
  bool sound = true;
  ValueSet concrete;
  Analysis abstract;
  std::optional<Value> counterexample;
};

SoundnessVerdict check_soundness(const ProgramSetup& setup, const ConcreteInstantiation& cinst,
                                 const AbstractInstantiation& ainst, const Value& program,
                                 const Value& initial_store, const AbsValue& initial_abstract_store,
                                 std::size_t fuel);

}  // namespace skel
