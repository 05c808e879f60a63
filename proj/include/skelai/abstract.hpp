#pragma once

// Abstract interpretation of Skel skeletons: AI-state threading, callstack
// loop cutting around specified calls, update hooks and abstract matching.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skelai/lattice.hpp"

namespace skel {

using AbstractFunction = std::function<std::pair<AbsValue, AIState>(const AIState&, std::span<const AbsValue>)>;

struct AIStateSpec {
  using InHook = std::function<std::pair<AIState, std::vector<AbsValue>>(const AIState&, std::span<const AbsValue>)>;
  using OutHook =
      std::function<std::pair<AIState, AbsValue>(const AIState&, std::span<const AbsValue>, const AbsValue&)>;

  AIState initial;
  std::function<bool(const AIState&, const AIState&)> leq;
  std::function<AIState(const AIState&, const AIState&)> join;
  // Missing entries behave as identity.
  std::map<std::string, InHook> update_in;
  std::map<std::string, OutHook> update_out;
};

struct AbstractInstantiation {
  BaseDomains domains;
  std::map<std::string, AbstractFunction> functions;
  std::map<std::string, AbsValue> constants;
  AIStateSpec state;
};

struct Frame {
  std::string function;
  AIState state;
  std::vector<AbsValue> args;
};
using CallStack = std::vector<Frame>;

struct TraceEvent {
  enum class Kind { Enter, Exit, LoopCut } kind;
  std::string function;
  const std::vector<AbsValue>& args;
  const AIState& state;
  std::size_t depth;
};

struct AbsResult {
  AbsValue value;
  AIState state;
};

class AbstractInterpreter {
 public:
  static constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

  AbstractInterpreter(const SkeletalSemantics& sem, const AbstractInstantiation& inst,
                      std::optional<Value> program = std::nullopt, std::size_t tuple_cap = Lattice::kDefaultTupleCap);

  const Lattice& lattice() const { return lattice_; }
  void set_step_budget(std::uint64_t budget) { budget_ = budget; }
  std::uint64_t steps() const { return steps_; }
  void set_trace(std::function<void(const TraceEvent&)> trace) { trace_ = std::move(trace); }

  AbsValue eval_term(const AbsEnv& env, const Term& t) const;
  AbsResult eval_skeleton(CallStack& stack, const AIState& state, const AbsEnv& env, const Skeleton& s);
  AbsResult apply(CallStack& stack, const AIState& state, const AbsValue& head, std::span<const AbsValue> args);
  std::vector<AbsEnv> match(const std::vector<AbsEnv>& envs, const Pattern& p, const AbsValue& v) const;

  /// `entry a1 … an` from the empty callstack and the initial AI-state.
  AbsResult analyze(const std::string& entry, std::span<const AbsValue> args);

 private:
  AbsValue name_value(const std::string& name) const;
  AbsResult apply_closure(CallStack& stack, const AIState& state, const AbsClosure& c, std::span<const AbsValue> args);
  AbsResult call_named(CallStack& stack, const AIState& state, const NamedAC& f, std::span<const AbsValue> saturated);
  std::vector<AbsEnv> match_unfold(const std::vector<AbsEnv>& envs, const Pattern::Constr& p,
                                   const ProgramPoint& pp) const;
  void tick();
  AIState join_states(const AIState& a, const AIState& b) const;

  const SkeletalSemantics& sem_;
  const AbstractInstantiation& inst_;
  std::optional<Value> program_;
  Lattice lattice_;
  std::map<const Term*, std::shared_ptr<const TypingEnv>> gammas_;
  std::vector<ProgramPoint> all_points_;
  std::uint64_t budget_ = kDefaultStepBudget;
  std::uint64_t steps_ = 0;
  std::function<void(const TraceEvent&)> trace_;
};

}  // namespace skel
