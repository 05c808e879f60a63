#include "skelai/whilelang/while.hpp"

#include "skelai/parser.hpp"
#include "skelai/printer.hpp"
#include "skelai/while_sk.hpp"

namespace skel::whilelang {

namespace {

std::vector<Value> parts(const Value& v) {
  if (const auto* t = get_if<TupleV>(v)) return t->items;
  return {v};
}

const BigInt& int_of(const Value& v) {
  const auto* b = get_if<BaseV>(v);
  if (!b) fail(ErrorKind::TypeMismatch, "expected an integer, got " + v.to_string());
  return unbox<Int>(*b->payload).n;
}

const std::string& ident_of(const Value& v) {
  const auto* b = get_if<BaseV>(v);
  if (!b) fail(ErrorKind::TypeMismatch, "expected an identifier, got " + v.to_string());
  return unbox<Ident>(*b->payload).name;
}

const Store& store_of(const Value& v) {
  const auto* b = get_if<BaseV>(v);
  if (!b) fail(ErrorKind::TypeMismatch, "expected a store, got " + v.to_string());
  return unbox<Store>(*b->payload);
}

void expect_args(std::span<const Value> args, std::size_t width, const char* name) {
  if (args.size() != 1 || parts(args[0]).size() != width)
    fail(ErrorKind::ArityViolation, std::string("bad arguments to ") + name);
}

// ---- abstract helpers

/// nullopt stands for the top of a flat lattice.
std::optional<std::string> flat_ident(const AbsValue& v) {
  if (v.is_top()) return std::nullopt;
  const auto* b = get_if<BaseA>(v);
  if (!b || b->type != "ident") fail(ErrorKind::TypeMismatch, "expected an abstract identifier, got " + v.to_string());
  return unbox<Exactly<Ident>>(*b->payload).value.name;
}

std::optional<BigInt> flat_lit(const AbsValue& v) {
  if (v.is_top()) return std::nullopt;
  const auto* b = get_if<BaseA>(v);
  if (!b || b->type != "lit") fail(ErrorKind::TypeMismatch, "expected an abstract literal, got " + v.to_string());
  return unbox<Exactly<Int>>(*b->payload).value.n;
}

AbsValue join_result(const AbsValue& a, const AbsValue& b) {
  if (a.is_bot()) return b;
  if (b.is_bot() || a.is_top()) return a;
  if (b.is_top()) return b;
  if (const auto* x = get_if<BaseA>(a)) {
    if (x->type == "int") return abs_int(join(*as_interval(a), *as_interval(b)));
    if (x->type == "store") return store_join(a, b);
  }
  return a;  // unit
}

/// Applies `f` to every tuple an abstract argument may stand for and joins the results.
template <class F>
AbsValue over_tuples(std::span<const AbsValue> args, std::size_t width, const char* name, F f) {
  if (args.size() != 1) fail(ErrorKind::ArityViolation, std::string("bad arguments to ") + name);
  const AbsValue& arg = args[0];
  if (arg.is_bot()) return AbsValue::bot();
  if (width == 1) return f(AbsTuple{arg});
  const auto* set = get_if<TupleSetA>(arg);
  if (!set) fail(ErrorKind::TypeMismatch, std::string("expected a tuple argument to ") + name);
  AbsValue out = AbsValue::bot();
  for (const auto& t : set->tuples) {
    if (t.size() != width) fail(ErrorKind::ArityViolation, std::string("bad arguments to ") + name);
    out = join_result(out, f(t));
  }
  return out;
}

AbstractFunction pure(const char* name, std::size_t width, std::function<AbsValue(const AbsTuple&)> f) {
  return [=](const AIState& a, std::span<const AbsValue> args) {
    return std::pair<AbsValue, AIState>{over_tuples(args, width, name, f), a};
  };
}

const TypeExpr& store_type() {
  static const TypeExpr t = TypeExpr::base("store");
  return t;
}

// Splits a hook argument `(store, pp-set)`; one pair per tuple of the set.
std::vector<std::pair<AbsValue, std::vector<ProgramPoint>>> hook_pairs(std::span<const AbsValue> args) {
  if (args.size() != 1) fail(ErrorKind::HookShapeMismatch, "expected one (store, stmt) argument");
  const auto* set = get_if<TupleSetA>(args[0]);
  if (!set) fail(ErrorKind::HookShapeMismatch, "expected a (store, stmt) tuple, got " + args[0].to_string());
  std::vector<std::pair<AbsValue, std::vector<ProgramPoint>>> out;
  for (const auto& t : set->tuples) {
    const PPSetA* pts = t.size() == 2 ? get_if<PPSetA>(t[1]) : nullptr;
    if (!pts) fail(ErrorKind::HookShapeMismatch, "expected a (store, program point) tuple, got " + args[0].to_string());
    out.emplace_back(t[0], pts->points);
  }
  return out;
}

}  // namespace

std::string_view while_source() { return detail::kWhileSource; }

const SkeletalSemantics& while_semantics() {
  static const SkeletalSemantics sem = load_semantics(while_source(), {"stmt", "expr"}, "while.sk");
  return sem;
}

Value read_literal(const std::string& type, const Literal& literal) {
  if (type == "ident") {
    if (literal.kind != Literal::Kind::String) fail(ErrorKind::Type, "identifier expected, found " + literal.text);
    return ident_value(literal.text);
  }
  if (type == "lit" || type == "int") {
    if (literal.kind != Literal::Kind::Integer)
      fail(ErrorKind::Type, "integer literal expected, found \"" + literal.text + "\"");
    return type == "lit" ? lit_value(BigInt(literal.text)) : int_value(BigInt(literal.text));
  }
  fail(ErrorKind::Type, "no literal syntax for type " + type);
}

std::string write_literal(const BaseV& v) {
  if (v.type == "ident") return "\"" + unbox<Ident>(*v.payload).name + "\"";
  if (v.type == "lit" || v.type == "int") return unbox<Int>(*v.payload).n.str();
  fail(ErrorKind::Type, "no literal syntax for type " + v.type);
}

Value parse_stmt(std::string_view text, const SkeletalSemantics& sem) {
  return parse_program_term(text, sem, read_literal, TypeExpr::base("stmt"));
}

std::string print_stmt(const Value& v) { return print_program(v, write_literal); }

ConcreteInstantiation concrete_instantiation() {
  ConcreteInstantiation inst;
  inst.read_literal = read_literal;
  inst.functions["litToInt"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 1, "litToInt");
    return {int_value(int_of(a[0]))};
  };
  inst.functions["add"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 2, "add");
    auto p = parts(a[0]);
    return {int_value(int_of(p[0]) + int_of(p[1]))};
  };
  inst.functions["lt"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 2, "lt");
    auto p = parts(a[0]);
    return {int_value(int_of(p[0]) < int_of(p[1]) ? 1 : 0)};
  };
  inst.functions["rand"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 2, "rand");
    auto p = parts(a[0]);
    ValueSet out;
    for (BigInt n = int_of(p[0]); n <= int_of(p[1]); ++n) out.insert(int_value(n));
    return out;
  };
  inst.functions["isZero"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 1, "isZero");
    if (int_of(a[0]) == 0) return {Value::unit()};
    return {};
  };
  inst.functions["isNotZero"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 1, "isNotZero");
    if (int_of(a[0]) != 0) return {Value::unit()};
    return {};
  };
  inst.functions["read"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 2, "read");
    auto p = parts(a[0]);
    const auto& vars = store_of(p[1]).vars;
    auto it = vars.find(ident_of(p[0]));
    if (it == vars.end()) return {};
    return {int_value(it->second)};
  };
  inst.functions["write"] = [](std::span<const Value> a) -> ValueSet {
    expect_args(a, 3, "write");
    auto p = parts(a[0]);
    Store s = store_of(p[1]);
    s.vars.insert_or_assign(ident_of(p[0]), int_of(p[2]));
    return {store_value(std::move(s))};
  };
  return inst;
}

std::string render(Pos p) { return p == Pos::In ? "in" : "out"; }

std::string render(const WhileAIState& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, store] : a.entries) {
    if (!first) out += ", ";
    first = false;
    out += "(" + key.first.to_string() + ", " + render(key.second) + ") ↦ " + store.to_string();
  }
  return out + "}";
}

AIState make_state(WhileAIState a) { return box(std::move(a)); }
const WhileAIState& state_of(const AIState& a) { return unbox<WhileAIState>(*a); }

bool state_leq(const AIState& a, const AIState& b) {
  const auto& eb = state_of(b).entries;
  for (const auto& [key, store] : state_of(a).entries) {
    auto it = eb.find(key);
    if (it == eb.end() || !store_leq(store, it->second)) return false;
  }
  return true;
}

AIState state_join(const AIState& a, const AIState& b) {
  WhileAIState out = state_of(a);
  for (const auto& [key, store] : state_of(b).entries) {
    auto [it, fresh] = out.entries.emplace(key, store);
    if (!fresh) it->second = store_join(it->second, store);
  }
  return make_state(std::move(out));
}

std::map<std::string, AbstractFunction> abstract_meanings() {
  std::map<std::string, AbstractFunction> m;
  m["litToInt"] = pure("litToInt", 1, [](const AbsTuple& t) {
    auto n = flat_lit(t[0]);
    return n ? abs_int(Interval::point(*n)) : AbsValue::top(TypeExpr::base("int"));
  });
  m["add"] = pure("add", 2, [](const AbsTuple& t) {
    auto a = *as_interval(t[0]);
    auto b = *as_interval(t[1]);
    return abs_int({a.lo + b.lo, a.hi + b.hi});
  });
  m["lt"] = pure("lt", 2, [](const AbsTuple& t) {
    auto a = *as_interval(t[0]);
    auto b = *as_interval(t[1]);
    if (a.hi < b.lo) return abs_int(Interval::point(1));
    if (b.hi <= a.lo) return abs_int(Interval::point(0));
    return abs_int(Interval::of(0, 1));
  });
  m["rand"] = pure("rand", 2, [](const AbsTuple& t) {
    auto a = flat_lit(t[0]);
    auto b = flat_lit(t[1]);
    if (!a || !b) return AbsValue::top(TypeExpr::base("int"));
    if (*b < *a) return AbsValue::bot();
    return abs_int(Interval::of(*a, *b));
  });
  m["isZero"] = pure("isZero", 1, [](const AbsTuple& t) {
    return as_interval(t[0])->contains(0) ? AbsValue::unit() : AbsValue::bot();
  });
  m["isNotZero"] = pure("isNotZero", 1, [](const AbsTuple& t) {
    return *as_interval(t[0]) == Interval::point(0) ? AbsValue::bot() : AbsValue::unit();
  });
  m["read"] = pure("read", 2, [](const AbsTuple& t) {
    if (t[1].is_top()) return AbsValue::top(TypeExpr::base("int"));
    const auto& vars = unbox<AbsStore>(*get_if<BaseA>(t[1])->payload).vars;
    auto x = flat_ident(t[0]);
    if (!x) {
      AbsValue out = AbsValue::bot();
      for (const auto& [k, i] : vars) out = join_result(out, abs_int(i));
      return out;
    }
    auto it = vars.find(*x);
    return it == vars.end() ? AbsValue::bot() : abs_int(it->second);
  });
  m["write"] = pure("write", 3, [](const AbsTuple& t) {
    auto x = flat_ident(t[0]);
    if (!x || t[1].is_top()) return AbsValue::top(store_type());
    AbsStore s = unbox<AbsStore>(*get_if<BaseA>(t[1])->payload);
    s.vars.insert_or_assign(*x, *as_interval(t[2]));
    return abs_store(std::move(s));
  });
  return m;
}

AIStateSpec state_spec() {
  AIStateSpec spec;
  spec.initial = make_state({});
  spec.leq = state_leq;
  spec.join = state_join;
  spec.update_in["eval_stmt"] = [](const AIState& a, std::span<const AbsValue> args) {
    WhileAIState next = state_of(a);
    std::vector<AbsTuple> tuples;
    for (auto& [store, points] : hook_pairs(args)) {
      AbsValue widened = AbsValue::bot();
      for (const auto& pp : points) {
        auto key = std::make_pair(pp, Pos::In);
        auto it = next.entries.find(key);
        AbsValue s = it == next.entries.end() ? store : store_widen(it->second, store);
        next.entries.insert_or_assign(key, s);
        widened = store_join(widened, s);
      }
      tuples.push_back({widened, AbsValue::points(points)});
    }
    return std::pair<AIState, std::vector<AbsValue>>{make_state(std::move(next)), {AbsValue::tuple_set(tuples)}};
  };
  spec.update_out["eval_stmt"] = [](const AIState& a, std::span<const AbsValue> args, const AbsValue& result) {
    WhileAIState next = state_of(a);
    AbsValue out = AbsValue::bot();
    for (auto& [store, points] : hook_pairs(args)) {
      for (const auto& pp : points) {
        auto key = std::make_pair(pp, Pos::Out);
        auto it = next.entries.find(key);
        AbsValue s = it == next.entries.end() ? result : store_join(it->second, result);
        if (s.is_bot()) continue;
        next.entries.insert_or_assign(key, s);
        out = store_join(out, s);
      }
    }
    return std::pair<AIState, AbsValue>{make_state(std::move(next)), out};
  };
  return spec;
}

AbstractInstantiation abstract_instantiation() {
  AbstractInstantiation inst;
  inst.domains = while_domains();
  inst.functions = abstract_meanings();
  inst.state = state_spec();
  return inst;
}

Value initial_concrete_args(const Value& program, bool ppt) {
  return Value::tuple({store_value({}), ppt ? Value::point({}) : program});
}

AbsValue initial_abstract_args(AbsStore store) {
  return AbsValue::tuple({abs_store(std::move(store)), AbsValue::points({ProgramPoint{}})});
}

}  // namespace skel::whilelang
