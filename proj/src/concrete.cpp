#include "skelai/concrete.hpp"

#include "skelai/overloaded.hpp"

namespace skel {

namespace {

std::vector<Value> components(const Value& arg) {
  if (const auto* t = get_if<TupleV>(arg)) return t->items;
  return {arg};
}

std::vector<TypeExpr> component_types(const TypeExpr& arg) {
  if (arg.is_tuple()) return arg.components();
  return {arg};
}

// Cartesian product of per-position choices; calls `emit` once per combination.
void for_each_combination(const std::vector<ValueSet>& choices, const std::function<void(std::vector<Value>&)>& emit) {
  std::vector<Value> current;
  current.reserve(choices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      emit(current);
      return;
    }
    for (const auto& v : choices[i]) {
      current.push_back(v);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

}  // namespace

Value subterm_at(const Value& program, const ProgramPoint& pp) {
  Value current = program;
  for (std::size_t depth = 0; depth < pp.path.size(); ++depth) {
    const auto* c = get_if<ConstrV>(current);
    if (!c) fail(ErrorKind::InvalidPath, "path " + pp.to_string() + " enters a non-constructor value");
    auto parts = components(c->arg);
    auto index = pp.path[depth];
    if (index >= parts.size())
      fail(ErrorKind::InvalidPath, "index " + std::to_string(index) + " out of range in path " + pp.to_string());
    current = parts[index];
  }
  return current;
}

std::pair<std::string, Value> unfold(const SkeletalSemantics& sem, const Value& program, const ProgramPoint& pp) {
  Value node = subterm_at(program, pp);
  const auto* c = get_if<ConstrV>(node);
  if (!c) fail(ErrorKind::InvalidPath, "program point " + pp.to_string() + " is not a constructor node");
  const TypeExpr& arg_type = sem.constructor(c->name).constructor->arg;
  auto types = component_types(arg_type);
  auto values = components(c->arg);
  if (types.size() != values.size())
    fail(ErrorKind::TypeMismatch, "constructor " + c->name + " has malformed argument " + c->arg.to_string());
  std::vector<Value> rebuilt;
  for (std::size_t j = 0; j < values.size(); ++j) {
    rebuilt.push_back(sem.is_program_type(types[j]) ? Value::point(pp.child(static_cast<std::uint32_t>(j)))
                                                    : values[j]);
  }
  if (arg_type.is_tuple()) return {c->name, Value::tuple(std::move(rebuilt))};
  return {c->name, rebuilt.front()};
}

Value resolve_program_points(const Value& program, const Value& v) {
  return std::visit(overloaded{
                        [&](const TupleV& x) {
                          std::vector<Value> items;
                          for (const auto& item : x.items) items.push_back(resolve_program_points(program, item));
                          return Value::tuple(std::move(items));
                        },
                        [&](const ConstrV& x) { return Value::constr(x.name, resolve_program_points(program, x.arg)); },
                        [&](const NamedClosureV& x) {
                          std::vector<Value> args;
                          for (const auto& a : x.collected) args.push_back(resolve_program_points(program, a));
                          return Value::named_closure(x.function, x.arity, std::move(args));
                        },
                        [&](const AnonClosureV& x) {
                          Env env;
                          for (const auto& [k, val] : x.env) env.emplace(k, resolve_program_points(program, val));
                          return Value::anon_closure(x.gamma, x.lambda, std::move(env));
                        },
                        [&](const BaseV&) { return v; },
                        [&](const PPointV& x) { return subterm_at(program, x.pp); },
                    },
                    v.node().v);
}

bool inhabits(const SkeletalSemantics& sem, const Value& v, const TypeExpr& type, const Value* program) {
  if (type.is_arrow()) {
    return get_if<NamedClosureV>(v) != nullptr || get_if<AnonClosureV>(v) != nullptr;
  }
  if (type.is_tuple()) {
    const auto* t = get_if<TupleV>(v);
    if (!t || t->items.size() != type.components().size()) return false;
    for (std::size_t i = 0; i < t->items.size(); ++i)
      if (!inhabits(sem, t->items[i], type.components()[i], program)) return false;
    return true;
  }
  const TypeDecl* decl = sem.find_type(type.name());
  if (!decl) return false;
  if (!decl->specified()) {
    const auto* b = get_if<BaseV>(v);
    return b && b->type == type.name();
  }
  if (const auto* p = get_if<PPointV>(v)) {
    if (!program || !sem.is_program_type(type)) return false;
    try {
      return inhabits(sem, subterm_at(*program, p->pp), type, program);
    } catch (const SkelError&) {
      return false;
    }
  }
  const auto* c = get_if<ConstrV>(v);
  if (!c) return false;
  auto info = sem.find_constructor(c->name);
  return info && info->owner == decl && inhabits(sem, c->arg, info->constructor->arg, program);
}

ConcreteInterpreter::ConcreteInterpreter(const SkeletalSemantics& sem, const ConcreteInstantiation& inst,
                                         std::optional<Value> program)
    : sem_(sem), inst_(inst), program_(std::move(program)) {
  for (auto& entry : funs(sem)) {
    gammas_[entry.lambda.get()] = std::make_shared<const TypingEnv>(std::move(entry.env));
  }
}

ValueSet ConcreteInterpreter::name_value(const std::string& name) const {
  const TermDecl* decl = sem_.find_term(name);
  if (!decl) fail(ErrorKind::UnboundVariable, "unbound variable " + name);
  unsigned n = arity(decl->type);
  if (n > 0) return {Value::named_closure(name, n)};
  if (decl->specified()) return eval_term({}, *decl->body);
  auto it = inst_.constants.find(name);
  if (it == inst_.constants.end()) fail(ErrorKind::MissingInstantiation, "no meaning for constant " + name);
  return it->second;
}

ValueSet ConcreteInterpreter::eval_term(const Env& env, const Term& t) const {
  return std::visit(
      overloaded{
          [&](const Term::Var& x) -> ValueSet {
            if (auto it = env.find(x.name); it != env.end()) return {it->second};
            return name_value(x.name);
          },
          [&](const Term::Constr& x) {
            ValueSet out;
            for (const auto& v : eval_term(env, *x.arg)) out.insert(Value::constr(x.name, v));
            return out;
          },
          [&](const Term::Tuple& x) {
            std::vector<ValueSet> choices;
            for (const auto& item : x.items) choices.push_back(eval_term(env, *item));
            ValueSet out;
            for_each_combination(choices, [&](std::vector<Value>& items) { out.insert(Value::tuple(items)); });
            return out;
          },
          [&](const Term::Lambda&) -> ValueSet {
            auto it = gammas_.find(&t);
            auto gamma = it != gammas_.end() ? it->second : std::make_shared<const TypingEnv>();
            Env captured;
            for (const auto& [name, value] : env) {
              if (it == gammas_.end() || gamma->count(name)) captured.emplace(name, value);
            }
            // `t` is owned by the semantics; alias it without taking ownership.
            TermPtr self(std::shared_ptr<const Term>{}, &t);
            return {Value::anon_closure(gamma, self, std::move(captured))};
          },
      },
      t.node);
}

ValueSet ConcreteInterpreter::eval_skeleton(const Env& env, const Skeleton& s, std::size_t fuel) const {
  if (fuel == 0) fail(ErrorKind::FuelExhausted, "evaluation ran out of fuel", s.span);
  const std::size_t inner = fuel - 1;
  return std::visit(
      overloaded{
          [&](const Skeleton::Ret& x) { return eval_term(env, *x.term); },
          [&](const Skeleton::App& x) {
            std::vector<ValueSet> choices;
            choices.push_back(eval_term(env, *x.head));
            for (const auto& arg : x.args) choices.push_back(eval_term(env, *arg));
            ValueSet out;
            for_each_combination(choices, [&](std::vector<Value>& picked) {
              auto results = apply(picked.front(), std::span<const Value>(picked).subspan(1), inner);
              out.insert(results.begin(), results.end());
            });
            return out;
          },
          [&](const Skeleton::Let& x) {
            ValueSet out;
            for (const auto& v : eval_skeleton(env, *x.bound, inner)) {
              auto extended = match(env, *x.pattern, v);
              if (!extended) continue;
              auto results = eval_skeleton(*extended, *x.body, inner);
              out.insert(results.begin(), results.end());
            }
            return out;
          },
          [&](const Skeleton::Branch& x) {
            ValueSet out;
            for (const auto& b : x.branches) {
              auto results = eval_skeleton(env, *b, inner);
              out.insert(results.begin(), results.end());
            }
            return out;
          },
          [&](const Skeleton::Match& x) {
            ValueSet out;
            for (const auto& v : eval_term(env, *x.scrutinee)) {
              for (const auto& arm : x.arms) {
                auto extended = match(env, *arm.pattern, v);
                if (!extended) continue;
                auto results = eval_skeleton(*extended, *arm.body, inner);
                out.insert(results.begin(), results.end());
                break;
              }
            }
            return out;
          },
      },
      s.node);
}

ValueSet ConcreteInterpreter::apply(const Value& head, std::span<const Value> args, std::size_t fuel) const {
  if (args.empty()) return {head};

  auto continue_with = [&](const ValueSet& partial, std::span<const Value> rest) {
    if (rest.empty()) return partial;
    ValueSet out;
    for (const auto& r : partial) {
      if (!get_if<NamedClosureV>(r) && !get_if<AnonClosureV>(r))
        fail(ErrorKind::ArityViolation, "surplus argument applied to " + r.to_string());
      auto results = apply(r, rest, fuel);
      out.insert(results.begin(), results.end());
    }
    return out;
  };

  if (const auto* named = get_if<NamedClosureV>(head)) {
    std::vector<Value> all = named->collected;
    all.insert(all.end(), args.begin(), args.end());
    if (all.size() < named->arity) return {Value::named_closure(named->function, named->arity, std::move(all))};
    std::span<const Value> saturated(all.data(), named->arity);
    std::span<const Value> rest(all.data() + named->arity, all.size() - named->arity);

    const TermDecl* decl = sem_.find_term(named->function);
    if (!decl) fail(ErrorKind::UnboundVariable, "unknown function " + named->function);
    ValueSet results;
    if (decl->specified()) {
      for (const auto& fn : eval_term({}, *decl->body)) {
        auto r = apply(fn, saturated, fuel);
        results.insert(r.begin(), r.end());
      }
    } else {
      auto it = inst_.functions.find(named->function);
      if (it == inst_.functions.end())
        fail(ErrorKind::MissingInstantiation, "no meaning for function " + named->function);
      results = it->second(saturated);
      TypeExpr codomain = strip_arrows(decl->type, named->arity);
      for (const auto& r : results) {
        if (!inhabits(sem_, r, codomain, program_ ? &*program_ : nullptr))
          fail(ErrorKind::TypeMismatch,
               named->function + " returned " + r.to_string() + " outside " + codomain.to_string());
      }
    }
    return continue_with(results, rest);
  }

  if (const auto* anon = get_if<AnonClosureV>(head)) {
    const auto& fn = anon->fn();
    auto env = match(anon->env, *fn.param, args.front());
    if (!env) return {};
    return continue_with(eval_skeleton(*env, *fn.body, fuel), args.subspan(1));
  }

  fail(ErrorKind::NotAFunction, "cannot apply " + head.to_string());
}

std::optional<Env> ConcreteInterpreter::match(Env env, const Pattern& p, const Value& v) const {
  return std::visit(
      overloaded{
          [&](const Pattern::Var& x) -> std::optional<Env> {
            env.insert_or_assign(x.name, v);
            return env;
          },
          [&](const Pattern::Wild&) -> std::optional<Env> { return env; },
          [&](const Pattern::Constr& x) -> std::optional<Env> {
            if (const auto* c = get_if<ConstrV>(v)) {
              if (c->name != x.name) return std::nullopt;
              return match(std::move(env), *x.inner, c->arg);
            }
            if (const auto* pp = get_if<PPointV>(v)) {
              if (!program_) fail(ErrorKind::TypeMismatch, "program point outside program-point mode");
              auto [name, arg] = unfold(sem_, *program_, pp->pp);
              if (name != x.name) return std::nullopt;
              return match(std::move(env), *x.inner, arg);
            }
            fail(ErrorKind::TypeMismatch, "constructor pattern " + x.name + " against " + v.to_string(), p.span);
          },
          [&](const Pattern::Tuple& x) -> std::optional<Env> {
            const auto* t = get_if<TupleV>(v);
            if (!t || t->items.size() != x.items.size())
              fail(ErrorKind::TypeMismatch, "tuple pattern against " + v.to_string(), p.span);
            std::optional<Env> current = std::move(env);
            for (std::size_t i = 0; i < x.items.size() && current; ++i)
              current = match(std::move(*current), *x.items[i], t->items[i]);
            return current;
          },
      },
      p.node);
}

ValueSet ConcreteInterpreter::call(const std::string& function, std::span<const Value> args, std::size_t fuel) const {
  if (fuel == 0) fail(ErrorKind::FuelExhausted, "evaluation ran out of fuel");
  ValueSet out;
  for (const auto& head : name_value(function)) {
    auto r = apply(head, args, fuel - 1);
    out.insert(r.begin(), r.end());
  }
  return out;
}

}  // namespace skel
