#include "skelai/abstract.hpp"

#include <algorithm>

#include "skelai/concrete.hpp"
#include "skelai/overloaded.hpp"

namespace skel {

namespace {

void collect_points(const SkeletalSemantics& sem, const Value& v, ProgramPoint pp, std::vector<ProgramPoint>& out) {
  const auto* c = get_if<ConstrV>(v);
  if (!c) return;
  out.push_back(pp);
  const TypeExpr& arg = sem.constructor(c->name).constructor->arg;
  std::vector<TypeExpr> types = arg.is_tuple() ? arg.components() : std::vector<TypeExpr>{arg};
  std::vector<Value> parts;
  if (const auto* t = get_if<TupleV>(c->arg); t && arg.is_tuple())
    parts = t->items;
  else
    parts = {c->arg};
  for (std::size_t j = 0; j < types.size() && j < parts.size(); ++j)
    if (sem.is_program_type(types[j])) collect_points(sem, parts[j], pp.child(static_cast<std::uint32_t>(j)), out);
}

void dedupe(std::vector<AbsEnv>& envs) {
  std::sort(envs.begin(), envs.end(), [](const AbsEnv& a, const AbsEnv& b) { return compare(a, b) < 0; });
  envs.erase(std::unique(envs.begin(), envs.end(), [](const AbsEnv& a, const AbsEnv& b) { return compare(a, b) == 0; }),
             envs.end());
}

bool any_bot(std::span<const AbsValue> values) {
  return std::any_of(values.begin(), values.end(), [](const AbsValue& v) { return v.is_bot(); });
}

bool same_frame(const Frame& f, const std::string& name, const AIState& state, const std::vector<AbsValue>& args) {
  if (f.function != name || f.args.size() != args.size()) return false;
  if ((f.state == nullptr) != (state == nullptr)) return false;
  if (state && f.state->compare(*state) != 0) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (compare(f.args[i], args[i]) != 0) return false;
  return true;
}

}  // namespace

AbstractInterpreter::AbstractInterpreter(const SkeletalSemantics& sem, const AbstractInstantiation& inst,
                                         std::optional<Value> program, std::size_t tuple_cap)
    : sem_(sem), inst_(inst), program_(std::move(program)), lattice_(sem, inst.domains, tuple_cap) {
  for (auto& entry : funs(sem)) gammas_[entry.lambda.get()] = std::make_shared<const TypingEnv>(std::move(entry.env));
  if (program_) collect_points(sem, *program_, ProgramPoint{}, all_points_);
}

void AbstractInterpreter::tick() {
  if (++steps_ > budget_)
    fail(ErrorKind::StepBudgetExceeded, "analysis exceeded " + std::to_string(budget_) + " steps");
}

AIState AbstractInterpreter::join_states(const AIState& a, const AIState& b) const {
  if (a == b) return a;
  return inst_.state.join ? inst_.state.join(a, b) : a;
}

AbsValue AbstractInterpreter::name_value(const std::string& name) const {
  const TermDecl* decl = sem_.find_term(name);
  if (!decl) fail(ErrorKind::UnboundVariable, "unbound variable " + name);
  unsigned n = arity(decl->type);
  if (n > 0) return lattice_.fun_set({AbsClosure{NamedAC{name, n, {}}}});
  if (decl->specified()) return eval_term({}, *decl->body);
  auto it = inst_.constants.find(name);
  if (it == inst_.constants.end()) fail(ErrorKind::MissingInstantiation, "no abstract meaning for constant " + name);
  return lattice_.normalize(it->second);
}

AbsValue AbstractInterpreter::eval_term(const AbsEnv& env, const Term& t) const {
  return std::visit(overloaded{
                        [&](const Term::Var& x) {
                          if (auto it = env.find(x.name); it != env.end()) return it->second;
                          return name_value(x.name);
                        },
                        [&](const Term::Constr& x) { return AbsValue::constr(x.name, eval_term(env, *x.arg)); },
                        [&](const Term::Tuple& x) {
                          AbsTuple items;
                          for (const auto& item : x.items) items.push_back(eval_term(env, *item));
                          return lattice_.tuple_set({std::move(items)});
                        },
                        [&](const Term::Lambda&) {
                          auto it = gammas_.find(&t);
                          auto gamma = it != gammas_.end() ? it->second : std::make_shared<const TypingEnv>();
                          AbsEnv captured;
                          for (const auto& [name, value] : env)
                            if (it == gammas_.end() || gamma->count(name)) captured.emplace(name, value);
                          TermPtr self(std::shared_ptr<const Term>{}, &t);
                          return lattice_.fun_set({AbsClosure{AnonAC{gamma, self, std::move(captured)}}});
                        },
                    },
                    t.node);
}

AbsResult AbstractInterpreter::eval_skeleton(CallStack& stack, const AIState& state, const AbsEnv& env,
                                             const Skeleton& s) {
  tick();
  return std::visit(
      overloaded{
          [&](const Skeleton::Ret& x) { return AbsResult{eval_term(env, *x.term), state}; },
          [&](const Skeleton::App& x) {
            AbsValue head = eval_term(env, *x.head);
            std::vector<AbsValue> args;
            for (const auto& a : x.args) args.push_back(eval_term(env, *a));
            return apply(stack, state, head, args);
          },
          [&](const Skeleton::Let& x) {
            auto bound = eval_skeleton(stack, state, env, *x.bound);
            AbsResult out{lattice_.bot(), bound.state};
            if (bound.value.is_bot()) return out;
            for (const auto& e : match({env}, *x.pattern, bound.value)) {
              auto r = eval_skeleton(stack, bound.state, e, *x.body);
              out.value = lattice_.join(out.value, r.value);
              out.state = join_states(out.state, r.state);
            }
            return out;
          },
          [&](const Skeleton::Branch& x) {
            AbsResult out{lattice_.bot(), state};
            for (const auto& b : x.branches) {
              auto r = eval_skeleton(stack, state, env, *b);
              out.value = lattice_.join(out.value, r.value);
              out.state = join_states(out.state, r.state);
            }
            return out;
          },
          [&](const Skeleton::Match& x) {
            AbsValue scrutinee = eval_term(env, *x.scrutinee);
            AbsResult out{lattice_.bot(), state};
            if (scrutinee.is_bot()) return out;
            for (const auto& arm : x.arms) {
              for (const auto& e : match({env}, *arm.pattern, scrutinee)) {
                auto r = eval_skeleton(stack, state, e, *arm.body);
                out.value = lattice_.join(out.value, r.value);
                out.state = join_states(out.state, r.state);
              }
            }
            return out;
          },
      },
      s.node);
}

AbsResult AbstractInterpreter::apply(CallStack& stack, const AIState& state, const AbsValue& head,
                                     std::span<const AbsValue> args) {
  tick();
  if (args.empty()) return {head, state};
  if (head.is_bot() || any_bot(args)) return {lattice_.bot(), state};
  if (head.is_top()) fail(ErrorKind::TopFunctionApplied, "applying an unknown function (top of an arrow type)");
  const auto* set = get_if<FunSetA>(head);
  if (!set) fail(ErrorKind::NotAFunction, "cannot apply " + head.to_string());
  AbsResult out{lattice_.bot(), state};
  for (const auto& c : set->closures) {
    auto r = apply_closure(stack, state, c, args);
    out.value = lattice_.join(out.value, r.value);
    out.state = join_states(out.state, r.state);
  }
  return out;
}

AbsResult AbstractInterpreter::apply_closure(CallStack& stack, const AIState& state, const AbsClosure& c,
                                             std::span<const AbsValue> args) {
  auto continue_with = [&](const AbsResult& partial, std::span<const AbsValue> rest) {
    if (rest.empty() || partial.value.is_bot()) return partial;
    if (!get_if<FunSetA>(partial.value) && !partial.value.is_top())
      fail(ErrorKind::ArityViolation, "surplus argument applied to " + partial.value.to_string());
    return apply(stack, partial.state, partial.value, rest);
  };

  if (const auto* named = std::get_if<NamedAC>(&c.v)) {
    std::vector<AbsValue> all = named->collected;
    all.insert(all.end(), args.begin(), args.end());
    if (all.size() < named->arity) {
      return {lattice_.fun_set({AbsClosure{NamedAC{named->function, named->arity, std::move(all)}}}), state};
    }
    std::span<const AbsValue> saturated(all.data(), named->arity);
    std::span<const AbsValue> rest(all.data() + named->arity, all.size() - named->arity);
    return continue_with(call_named(stack, state, *named, saturated), rest);
  }

  const auto& anon = std::get<AnonAC>(c.v);
  const auto& fn = anon.fn();
  AbsResult out{lattice_.bot(), state};
  for (const auto& e : match({anon.env}, *fn.param, args.front())) {
    auto r = continue_with(eval_skeleton(stack, state, e, *fn.body), args.subspan(1));
    out.value = lattice_.join(out.value, r.value);
    out.state = join_states(out.state, r.state);
  }
  return out;
}

AbsResult AbstractInterpreter::call_named(CallStack& stack, const AIState& state, const NamedAC& f,
                                          std::span<const AbsValue> saturated) {
  const TermDecl* decl = sem_.find_term(f.function);
  if (!decl) fail(ErrorKind::UnboundVariable, "unknown function " + f.function);

  if (!decl->specified()) {
    auto it = inst_.functions.find(f.function);
    if (it == inst_.functions.end())
      fail(ErrorKind::MissingInstantiation, "no abstract meaning for function " + f.function);
    auto [value, next] = it->second(state, saturated);
    return {lattice_.normalize(value), next};
  }

  // SPEC
  AIState a1 = state;
  std::vector<AbsValue> args(saturated.begin(), saturated.end());
  if (auto hook = inst_.state.update_in.find(f.function); hook != inst_.state.update_in.end()) {
    auto [s, updated] = hook->second(state, args);
    a1 = std::move(s);
    args = std::move(updated);
    for (auto& a : args) a = lattice_.normalize(a);
  }
  for (const auto& frame : stack) {
    if (same_frame(frame, f.function, a1, args)) {
      if (trace_) trace_({TraceEvent::Kind::LoopCut, f.function, args, a1, stack.size()});
      return {lattice_.bot(), a1};  // SPEC-LOOP
    }
  }
  if (trace_) trace_({TraceEvent::Kind::Enter, f.function, args, a1, stack.size()});
  stack.push_back({f.function, a1, args});
  AbsResult r{lattice_.bot(), a1};
  try {
    AbsValue body = eval_term({}, *decl->body);
    r = apply(stack, a1, body, args);
  } catch (...) {
    stack.pop_back();
    throw;
  }
  stack.pop_back();
  if (auto hook = inst_.state.update_out.find(f.function); hook != inst_.state.update_out.end()) {
    auto [s, value] = hook->second(r.state, args, r.value);
    r = {lattice_.normalize(value), std::move(s)};
  }
  if (trace_) trace_({TraceEvent::Kind::Exit, f.function, args, r.state, stack.size()});
  return r;
}

std::vector<AbsEnv> AbstractInterpreter::match_unfold(const std::vector<AbsEnv>& envs, const Pattern::Constr& p,
                                                      const ProgramPoint& pp) const {
  if (!program_) fail(ErrorKind::TypeMismatch, "program point outside program-point mode");
  auto [name, arg] = unfold(sem_, *program_, pp);
  if (name != p.name) return {};
  return match(envs, *p.inner, lattice_.lift(arg));
}

std::vector<AbsEnv> AbstractInterpreter::match(const std::vector<AbsEnv>& envs, const Pattern& p,
                                               const AbsValue& v) const {
  if (v.is_bot() || envs.empty()) return {};
  std::vector<AbsEnv> out = std::visit(
      overloaded{
          [&](const Pattern::Wild&) { return envs; },
          [&](const Pattern::Var& x) {
            std::vector<AbsEnv> r = envs;
            for (auto& e : r) e.insert_or_assign(x.name, v);
            return r;
          },
          [&](const Pattern::Constr& x) -> std::vector<AbsEnv> {
            if (const auto* c = get_if<ConstrA>(v)) {
              if (c->name != x.name) return {};
              return match(envs, *x.inner, c->arg);
            }
            if (const auto* pts = get_if<PPSetA>(v)) {
              std::vector<AbsEnv> r;
              for (const auto& pp : pts->points) {
                auto part = match_unfold(envs, x, pp);
                r.insert(r.end(), part.begin(), part.end());
              }
              return r;
            }
            if (const auto* top = get_if<TopA>(v)) {
              auto info = sem_.constructor(x.name);
              if (!top->type.is_base() || top->type.name() != info.owner->name)
                fail(ErrorKind::TypeMismatch, "constructor pattern " + x.name + " against " + top->type.to_string(),
                     p.span);
              auto r = match(envs, *x.inner, lattice_.top(info.constructor->arg));
              if (program_ && sem_.is_program_type(top->type)) {
                for (const auto& pp : all_points_) {
                  auto part = match_unfold(envs, x, pp);
                  r.insert(r.end(), part.begin(), part.end());
                }
              }
              return r;
            }
            fail(ErrorKind::TypeMismatch, "constructor pattern " + x.name + " against " + v.to_string(), p.span);
          },
          [&](const Pattern::Tuple& x) -> std::vector<AbsEnv> {
            auto match_items = [&](const AbsTuple& items) {
              if (items.size() != x.items.size())
                fail(ErrorKind::TypeMismatch, "tuple pattern against " + v.to_string(), p.span);
              std::vector<AbsEnv> current = envs;
              for (std::size_t i = 0; i < items.size() && !current.empty(); ++i)
                current = match(current, *x.items[i], items[i]);
              return current;
            };
            if (const auto* set = get_if<TupleSetA>(v)) {
              std::vector<AbsEnv> r;
              for (const auto& t : set->tuples) {
                auto part = match_items(t);
                r.insert(r.end(), part.begin(), part.end());
              }
              return r;
            }
            if (const auto* top = get_if<TopA>(v); top && top->type.is_tuple()) {
              AbsTuple items;
              for (const auto& c : top->type.components()) items.push_back(lattice_.top(c));
              return match_items(items);
            }
            fail(ErrorKind::TypeMismatch, "tuple pattern against " + v.to_string(), p.span);
          },
      },
      p.node);
  dedupe(out);
  return out;
}

AbsResult AbstractInterpreter::analyze(const std::string& entry, std::span<const AbsValue> args) {
  steps_ = 0;
  CallStack stack;
  AbsValue head = name_value(entry);
  std::vector<AbsValue> normalized;
  for (const auto& a : args) normalized.push_back(lattice_.normalize(a));
  return apply(stack, inst_.state.initial, head, normalized);
}

}  // namespace skel
