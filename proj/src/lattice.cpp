#include "skelai/lattice.hpp"

#include <algorithm>

#include "skelai/overloaded.hpp"

namespace skel {

Lattice::Lattice(const SkeletalSemantics& sem, BaseDomains domains, std::size_t tuple_cap)
    : sem_(sem), domains_(std::move(domains)), tuple_cap_(tuple_cap) {}

const BaseDomain& Lattice::domain(const std::string& type) const {
  auto it = domains_.find(type);
  if (it == domains_.end()) fail(ErrorKind::MissingInstantiation, "no abstract domain for type " + type);
  return *it->second;
}

TypeExpr Lattice::owner_type(const std::string& constructor) const {
  return TypeExpr::base(sem_.constructor(constructor).owner->name);
}

AbsValue Lattice::top(const TypeExpr& type) const {
  if (type.is_tuple()) {
    AbsTuple parts;
    for (const auto& c : type.components()) parts.push_back(top(c));
    return AbsValue::tuple(std::move(parts));
  }
  return AbsValue::top(type);
}

AbsValue Lattice::base(const std::string& type, DatumPtr payload) const {
  if (!payload || domain(type).is_top(*payload)) return AbsValue::top(TypeExpr::base(type));
  return AbsValue::base(type, std::move(payload));
}

std::vector<AbsTuple> Lattice::antichain(std::vector<AbsTuple> tuples) const {
  std::vector<bool> dropped(tuples.size(), false);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (std::size_t j = 0; j < tuples.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      if (leq_tuple(tuples[i], tuples[j]) && (j < i || !leq_tuple(tuples[j], tuples[i]))) dropped[i] = true;
    }
  }
  std::vector<AbsTuple> out;
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (!dropped[i]) out.push_back(std::move(tuples[i]));
  return out;
}

AbsValue Lattice::tuple_set(std::vector<AbsTuple> tuples) const {
  AbsValue raw = AbsValue::tuple_set(std::move(tuples));
  const auto* set = get_if<TupleSetA>(raw);
  if (!set) return raw;
  auto kept = antichain(set->tuples);
  if (kept.size() > tuple_cap_) {
    AbsTuple merged = kept.front();
    for (std::size_t i = 1; i < kept.size(); ++i)
      for (std::size_t k = 0; k < merged.size(); ++k) merged[k] = join(merged[k], kept[i][k]);
    kept = {std::move(merged)};
  }
  return AbsValue::tuple_set(std::move(kept));
}

AbsValue Lattice::fun_set(std::vector<AbsClosure> closures) const {
  AbsValue raw = AbsValue::fun_set(std::move(closures));
  const auto* set = get_if<FunSetA>(raw);
  if (!set) return raw;
  const auto& items = set->closures;
  std::vector<AbsClosure> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < items.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = leq_closure(items[i], items[j]) && (j < i || !leq_closure(items[j], items[i]));
    }
    if (!dominated) kept.push_back(items[i]);
  }
  return AbsValue::fun_set(std::move(kept));
}

AbsValue Lattice::normalize(const AbsValue& v) const {
  return std::visit(overloaded{
                        [&](const BotA&) { return v; },
                        [&](const TopA& x) { return top(x.type); },
                        [&](const ConstrA& x) { return AbsValue::constr(x.name, normalize(x.arg)); },
                        [&](const TupleSetA& x) {
                          std::vector<AbsTuple> tuples;
                          for (const auto& t : x.tuples) {
                            AbsTuple n;
                            for (const auto& item : t) n.push_back(normalize(item));
                            tuples.push_back(std::move(n));
                          }
                          return tuple_set(std::move(tuples));
                        },
                        [&](const FunSetA& x) {
                          std::vector<AbsClosure> closures;
                          for (const auto& c : x.closures) {
                            if (const auto* named = std::get_if<NamedAC>(&c.v)) {
                              NamedAC n{named->function, named->arity, {}};
                              for (const auto& a : named->collected) n.collected.push_back(normalize(a));
                              closures.push_back({n});
                            } else {
                              const auto& anon = std::get<AnonAC>(c.v);
                              AnonAC n{anon.gamma, anon.lambda, {}};
                              for (const auto& [k, val] : anon.env) n.env.emplace(k, normalize(val));
                              closures.push_back({n});
                            }
                          }
                          return fun_set(std::move(closures));
                        },
                        [&](const BaseA& x) { return base(x.type, x.payload); },
                        [&](const PPSetA&) { return v; },
                    },
                    v.node().v);
}

bool Lattice::leq_tuple(const AbsTuple& a, const AbsTuple& b) const {
  if (a.size() != b.size()) fail(ErrorKind::TypeMismatch, "tuples of different widths");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!leq(a[i], b[i])) return false;
  return true;
}

bool Lattice::leq_closure(const AbsClosure& a, const AbsClosure& b) const {
  if (const auto* x = std::get_if<NamedAC>(&a.v)) {
    const auto* y = std::get_if<NamedAC>(&b.v);
    if (!y || x->function != y->function || x->arity != y->arity || x->collected.size() != y->collected.size())
      return false;
    for (std::size_t i = 0; i < x->collected.size(); ++i)
      if (!leq(x->collected[i], y->collected[i])) return false;
    return true;
  }
  const auto& x = std::get<AnonAC>(a.v);
  const auto* y = std::get_if<AnonAC>(&b.v);
  return y && x.fn().id == y->fn().id && leq(x.env, y->env);
}

bool Lattice::leq(const AbsValue& a, const AbsValue& b) const {
  if (a.is_bot() || b.is_top()) return true;
  if (a.is_top() || b.is_bot()) return false;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (const auto* x = std::get_if<ConstrA>(&va)) {
    if (const auto* y = std::get_if<ConstrA>(&vb)) return x->name == y->name && leq(x->arg, y->arg);
    if (std::holds_alternative<PPSetA>(vb)) return false;
  } else if (const auto* x = std::get_if<TupleSetA>(&va)) {
    if (const auto* y = std::get_if<TupleSetA>(&vb)) {
      return std::all_of(x->tuples.begin(), x->tuples.end(), [&](const AbsTuple& t) {
        return std::any_of(y->tuples.begin(), y->tuples.end(), [&](const AbsTuple& u) { return leq_tuple(t, u); });
      });
    }
  } else if (const auto* x = std::get_if<FunSetA>(&va)) {
    if (const auto* y = std::get_if<FunSetA>(&vb)) {
      return std::all_of(x->closures.begin(), x->closures.end(), [&](const AbsClosure& c) {
        return std::any_of(y->closures.begin(), y->closures.end(),
                           [&](const AbsClosure& d) { return leq_closure(c, d); });
      });
    }
  } else if (const auto* x = std::get_if<BaseA>(&va)) {
    if (const auto* y = std::get_if<BaseA>(&vb)) {
      if (x->type != y->type) fail(ErrorKind::TypeMismatch, "comparing " + x->type + " with " + y->type);
      return domain(x->type).leq(*x->payload, *y->payload);
    }
  } else if (const auto* x = std::get_if<PPSetA>(&va)) {
    if (const auto* y = std::get_if<PPSetA>(&vb))
      return std::includes(y->points.begin(), y->points.end(), x->points.begin(), x->points.end());
    if (std::holds_alternative<ConstrA>(vb)) return false;
  }
  fail(ErrorKind::TypeMismatch, "comparing " + a.to_string() + " with " + b.to_string());
}

AbsValue Lattice::join(const AbsValue& a, const AbsValue& b) const {
  if (a.is_bot() || b.is_top()) return b;
  if (b.is_bot() || a.is_top()) return a;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (const auto* x = std::get_if<ConstrA>(&va)) {
    if (const auto* y = std::get_if<ConstrA>(&vb)) {
      if (x->name == y->name) return AbsValue::constr(x->name, join(x->arg, y->arg));
      return AbsValue::top(owner_type(x->name));
    }
    if (std::holds_alternative<PPSetA>(vb)) return AbsValue::top(owner_type(x->name));
  } else if (const auto* x = std::get_if<TupleSetA>(&va)) {
    if (const auto* y = std::get_if<TupleSetA>(&vb)) {
      std::vector<AbsTuple> all = x->tuples;
      all.insert(all.end(), y->tuples.begin(), y->tuples.end());
      return tuple_set(std::move(all));
    }
  } else if (const auto* x = std::get_if<FunSetA>(&va)) {
    if (const auto* y = std::get_if<FunSetA>(&vb)) {
      std::vector<AbsClosure> all = x->closures;
      all.insert(all.end(), y->closures.begin(), y->closures.end());
      return fun_set(std::move(all));
    }
  } else if (const auto* x = std::get_if<BaseA>(&va)) {
    if (const auto* y = std::get_if<BaseA>(&vb)) {
      if (x->type != y->type) fail(ErrorKind::TypeMismatch, "joining " + x->type + " with " + y->type);
      return base(x->type, domain(x->type).join(*x->payload, *y->payload));
    }
  } else if (const auto* x = std::get_if<PPSetA>(&va)) {
    if (const auto* y = std::get_if<PPSetA>(&vb)) {
      std::vector<ProgramPoint> all = x->points;
      all.insert(all.end(), y->points.begin(), y->points.end());
      return AbsValue::points(std::move(all));
    }
    if (const auto* y = std::get_if<ConstrA>(&vb)) return AbsValue::top(owner_type(y->name));
  }
  fail(ErrorKind::TypeMismatch, "joining " + a.to_string() + " with " + b.to_string());
}

AbsValue Lattice::widen(const AbsValue& a, const AbsValue& b) const {
  const auto* x = get_if<BaseA>(a);
  const auto* y = get_if<BaseA>(b);
  if (x && y) {
    if (x->type != y->type) fail(ErrorKind::TypeMismatch, "widening " + x->type + " with " + y->type);
    return base(x->type, domain(x->type).widen(*x->payload, *y->payload));
  }
  return join(a, b);
}

bool Lattice::leq(const AbsEnv& a, const AbsEnv& b) const {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !leq(ia->second, ib->second)) return false;
  }
  return true;
}

AbsEnv Lattice::join(const AbsEnv& a, const AbsEnv& b) const {
  AbsEnv out = a;
  for (const auto& [name, value] : b) {
    auto it = out.find(name);
    if (it == out.end())
      out.emplace(name, value);
    else
      it->second = join(it->second, value);
  }
  return out;
}

bool Lattice::gamma_contains(const AIState& state, const AbsValue& a, const Value& v) const {
  if (a.is_bot()) return false;
  if (a.is_top()) return true;
  const auto& va = a.node().v;
  const auto& cv = v.node().v;
  if (const auto* x = std::get_if<ConstrA>(&va)) {
    if (const auto* c = std::get_if<ConstrV>(&cv)) return c->name == x->name && gamma_contains(state, x->arg, c->arg);
    if (std::holds_alternative<PPointV>(cv)) return false;
  } else if (const auto* x = std::get_if<TupleSetA>(&va)) {
    if (const auto* t = std::get_if<TupleV>(&cv)) {
      return std::any_of(x->tuples.begin(), x->tuples.end(), [&](const AbsTuple& u) {
        if (u.size() != t->items.size()) fail(ErrorKind::TypeMismatch, "tuple width mismatch in concretisation");
        for (std::size_t i = 0; i < u.size(); ++i)
          if (!gamma_contains(state, u[i], t->items[i])) return false;
        return true;
      });
    }
  } else if (const auto* x = std::get_if<FunSetA>(&va)) {
    if (const auto* n = std::get_if<NamedClosureV>(&cv)) {
      return std::any_of(x->closures.begin(), x->closures.end(), [&](const AbsClosure& c) {
        const auto* m = std::get_if<NamedAC>(&c.v);
        if (!m || m->function != n->function || m->arity != n->arity || m->collected.size() != n->collected.size())
          return false;
        for (std::size_t i = 0; i < m->collected.size(); ++i)
          if (!gamma_contains(state, m->collected[i], n->collected[i])) return false;
        return true;
      });
    }
    if (const auto* f = std::get_if<AnonClosureV>(&cv)) {
      return std::any_of(x->closures.begin(), x->closures.end(), [&](const AbsClosure& c) {
        const auto* m = std::get_if<AnonAC>(&c.v);
        return m && m->fn().id == f->fn().id && gamma_contains(state, m->env, f->env);
      });
    }
  } else if (const auto* x = std::get_if<BaseA>(&va)) {
    if (const auto* b = std::get_if<BaseV>(&cv)) {
      if (b->type != x->type) fail(ErrorKind::TypeMismatch, "concretising " + x->type + " against " + b->type);
      return domain(x->type).gamma_contains(state, *x->payload, *b->payload);
    }
  } else if (const auto* x = std::get_if<PPSetA>(&va)) {
    if (const auto* p = std::get_if<PPointV>(&cv)) return std::binary_search(x->points.begin(), x->points.end(), p->pp);
    if (std::holds_alternative<ConstrV>(cv)) return false;
  }
  fail(ErrorKind::TypeMismatch, "concretising " + a.to_string() + " against " + v.to_string());
}

bool Lattice::gamma_contains(const AIState& state, const AbsEnv& a, const Env& e) const {
  if (a.size() != e.size()) return false;
  auto ie = e.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ie) {
    if (ia->first != ie->first || !gamma_contains(state, ia->second, ie->second)) return false;
  }
  return true;
}

AbsValue Lattice::lift(const Value& v) const {
  return std::visit(overloaded{
                        [&](const TupleV& x) {
                          AbsTuple items;
                          for (const auto& item : x.items) items.push_back(lift(item));
                          return tuple_set({std::move(items)});
                        },
                        [&](const ConstrV& x) { return AbsValue::constr(x.name, lift(x.arg)); },
                        [&](const NamedClosureV& x) {
                          NamedAC n{x.function, x.arity, {}};
                          for (const auto& a : x.collected) n.collected.push_back(lift(a));
                          return fun_set({AbsClosure{n}});
                        },
                        [&](const AnonClosureV& x) {
                          return fun_set({AbsClosure{AnonAC{x.gamma, x.lambda, lift(x.env)}}});
                        },
                        [&](const BaseV& x) { return base(x.type, domain(x.type).inject(*x.payload)); },
                        [&](const PPointV& x) { return AbsValue::points({x.pp}); },
                    },
                    v.node().v);
}

AbsEnv Lattice::lift(const Env& env) const {
  AbsEnv out;
  for (const auto& [name, value] : env) out.emplace(name, lift(value));
  return out;
}

}  // namespace skel
