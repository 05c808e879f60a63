#include "support.hpp"

#include <fstream>
#include <sstream>

#ifndef SKELAI_SOURCE_DIR
#define SKELAI_SOURCE_DIR "."
#endif

namespace skeltest {

std::string source_path(const std::string& relative) { return std::string(SKELAI_SOURCE_DIR) + "/" + relative; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Value load_prg(const std::string& relative) { return parse_stmt(slurp(source_path(relative))); }

std::vector<Interval> all_intervals(int lo, int hi) {
  std::vector<Bound> los{Bound::neg_inf()}, his;
  for (int n = lo; n <= hi; ++n) {
    los.push_back(Bound::finite(n));
    his.push_back(Bound::finite(n));
  }
  his.push_back(Bound::pos_inf());
  std::vector<Interval> out;
  for (const auto& a : los)
    for (const auto& b : his)
      if (a <= b) out.push_back({a, b});
  return out;
}

Interval random_interval(Rng& r, int lo, int hi) {
  int a = r.pick(lo, hi), b = r.pick(lo, hi);
  if (a > b) std::swap(a, b);
  Interval i = Interval::of(a, b);
  if (r.coin(15)) i.lo = Bound::neg_inf();
  if (r.coin(15)) i.hi = Bound::pos_inf();
  return i;
}

AbsValue random_abs_int(Rng& r) {
  int k = r.pick(0, 19);
  if (k == 0) return AbsValue::bot();
  if (k == 1) return AbsValue::top(TypeExpr::base("int"));
  return abs_int(random_interval(r));
}

AbsValue random_abs_ident(Rng& r) {
  int k = r.pick(0, 5);
  if (k == 0) return AbsValue::bot();
  if (k == 1) return AbsValue::top(TypeExpr::base("ident"));
  return abs_ident(r.choose(std::vector<std::string>{"x", "y", "z", "w"}));
}

AbsValue random_abs_lit(Rng& r) {
  int k = r.pick(0, 7);
  if (k == 0) return AbsValue::bot();
  if (k == 1) return AbsValue::top(TypeExpr::base("lit"));
  return abs_lit(r.pick(-3, 3));
}

AbsValue random_abs_store(Rng& r, const std::vector<std::string>& vars) {
  int k = r.pick(0, 19);
  if (k == 0) return AbsValue::bot();
  if (k == 1) return AbsValue::top(TypeExpr::base("store"));
  AbsStore s;
  for (const auto& v : vars)
    if (r.coin(60)) s.vars[v] = random_interval(r);
  return abs_store(std::move(s));
}

AbsValue random_abs_expr(Rng& r, int depth) {
  int k = depth <= 0 ? r.pick(0, 3) : r.pick(0, 6);
  switch (k) {
    case 0: return AbsValue::top(TypeExpr::base("expr"));
    case 1: {
      AbsValue l = random_abs_lit(r);
      return l.is_bot() ? AbsValue::constr("Const", abs_lit(0)) : AbsValue::constr("Const", l);
    }
    case 2: {
      AbsValue x = random_abs_ident(r);
      return x.is_bot() ? AbsValue::constr("Var", abs_ident("x")) : AbsValue::constr("Var", x);
    }
    case 3: return AbsValue::constr("Rand", AbsValue::tuple({abs_lit(r.pick(-3, 0)), abs_lit(r.pick(0, 3))}));
    case 4:
    case 5: return AbsValue::constr("Plus", AbsValue::tuple({random_abs_expr(r, depth - 1), random_abs_expr(r, depth - 1)}));
    default: return AbsValue::constr("Leq", AbsValue::tuple({random_abs_expr(r, depth - 1), random_abs_expr(r, depth - 1)}));
  }
}

WhileAIState random_ai_state(Rng& r, const std::vector<ProgramPoint>& points) {
  WhileAIState a;
  for (const auto& pp : points)
    for (Pos p : {Pos::In, Pos::Out})
      if (r.coin(40)) {
        AbsValue s = random_abs_store(r, {"x", "y"});
        if (!s.is_bot()) a.entries.insert_or_assign({pp, p}, s);
      }
  return a;
}

Value random_store(Rng& r) {
  Store s;
  for (const char* v : {"x", "y", "z"})
    if (r.coin(50)) s.vars[v] = r.pick(-6, 6);
  return store_value(std::move(s));
}

// ---- closures

namespace {

constexpr const char* kClosureSource = R"(type int
val add : (int, int) -> int
val neg : int -> int
val shift : int -> int -> int = \n : int -> \m : int -> add (n, m)
)";

}  // namespace

ClosureFixture::ClosureFixture() : sem_(load_semantics(kClosureSource, {})) {
  for (const auto& f : funs(sem_)) {
    if (f.env.count("n")) {
      gamma = std::make_shared<const TypingEnv>(f.env);
      lambda = f.lambda;
    }
  }
  if (!lambda) throw std::runtime_error("closure fixture has no inner lambda");
}

TypeExpr ClosureFixture::type() const { return TypeExpr::arrow(TypeExpr::base("int"), TypeExpr::base("int")); }

AbsClosure ClosureFixture::anon(const AbsValue& n) const { return AbsClosure{AnonAC{gamma, lambda, {{"n", n}}}}; }

AbsValue ClosureFixture::random_abs(Rng& r) const {
  int k = r.pick(0, 12);
  if (k == 0) return AbsValue::bot();
  if (k == 1) return AbsValue::top(type());
  std::vector<AbsClosure> cs;
  int n = r.pick(1, 3);
  for (int i = 0; i < n; ++i) {
    if (r.coin(25)) {
      cs.push_back(AbsClosure{NamedAC{"neg", 1, {}}});
    } else {
      AbsValue iv = random_abs_int(r);
      cs.push_back(anon(iv.is_bot() ? abs_int(Interval::point(0)) : iv));
    }
  }
  return AbsValue::fun_set(std::move(cs));
}

Value ClosureFixture::random_value(Rng& r) const {
  if (r.coin(25)) return Value::named_closure("neg", 1);
  return Value::anon_closure(gamma, lambda, {{"n", int_value(r.pick(-6, 6))}});
}

// ---- sampling

namespace {

BigInt pick_in(Rng& r, const Interval& i) {
  BigInt lo = i.lo.is_finite() ? i.lo.n : (i.hi.is_finite() ? i.hi.n - 4 : BigInt(-6));
  BigInt hi = i.hi.is_finite() ? i.hi.n : lo + 8;
  BigInt span = hi - lo;
  if (span > 40) span = 40;
  return lo + r.pick(0, static_cast<int>(span));
}

}  // namespace

Value Sampler::random_of(Rng& r, const TypeExpr& type, int depth) const {
  if (type.is_tuple()) {
    std::vector<Value> items;
    for (const auto& c : type.components()) items.push_back(random_of(r, c, depth));
    return Value::tuple(std::move(items));
  }
  if (type.is_arrow()) {
    if (!fx_) throw std::runtime_error("no closure fixture for " + type.to_string());
    return fx_->random_value(r);
  }
  const std::string& n = type.name();
  if (n == "int") return int_value(r.pick(-6, 6));
  if (n == "lit") return lit_value(r.pick(-6, 6));
  if (n == "ident") return ident_value(r.choose(std::vector<std::string>{"x", "y", "z", "w"}));
  if (n == "store") return random_store(r);
  const TypeDecl* decl = sem_.find_type(n);
  if (!decl || !decl->specified()) throw std::runtime_error("cannot sample " + n);
  const auto& vs = *decl->variants;
  // Prefer leaves when the depth budget runs out.
  std::vector<const Constructor*> pool;
  for (const auto& c : vs) {
    bool recursive = c.arg.to_string().find(n) != std::string::npos;
    if (depth > 0 || !recursive) pool.push_back(&c);
  }
  const Constructor* c = r.choose(pool);
  return Value::constr(c->name, random_of(r, c->arg, depth - 1));
}

std::optional<Value> Sampler::member_of(Rng& r, const AbsValue& a, const TypeExpr& type) const {
  if (a.is_bot()) return std::nullopt;
  if (a.is_top()) return random_of(r, type);
  if (const auto* b = get_if<BaseA>(a)) {
    const Datum& d = *b->payload;
    if (b->type == "int") return int_value(pick_in(r, unbox<Interval>(d)));
    if (b->type == "lit") return lit_value(unbox<Exactly<Int>>(d).value.n);
    if (b->type == "ident") return ident_value(unbox<Exactly<Ident>>(d).value.name);
    if (b->type == "store") {
      Store s;
      for (const auto& [k, i] : unbox<AbsStore>(d).vars)
        if (r.coin(80)) s.vars[k] = pick_in(r, i);
      return store_value(std::move(s));
    }
    throw std::runtime_error("cannot sample " + b->type);
  }
  if (const auto* c = get_if<ConstrA>(a)) {
    auto arg = member_of(r, c->arg, sem_.constructor(c->name).constructor->arg);
    if (!arg) return std::nullopt;
    return Value::constr(c->name, *arg);
  }
  if (const auto* t = get_if<TupleSetA>(a)) {
    const AbsTuple& u = r.choose(t->tuples);
    std::vector<Value> items;
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto v = member_of(r, u[i], type.components()[i]);
      if (!v) return std::nullopt;
      items.push_back(*v);
    }
    return Value::tuple(std::move(items));
  }
  if (const auto* f = get_if<FunSetA>(a)) {
    const AbsClosure& c = r.choose(f->closures);
    if (const auto* named = std::get_if<NamedAC>(&c.v)) return Value::named_closure(named->function, named->arity);
    const auto& anon = std::get<AnonAC>(c.v);
    Env env;
    for (const auto& [k, v] : anon.env) {
      auto w = member_of(r, v, anon.gamma->at(k));
      if (!w) return std::nullopt;
      env.emplace(k, *w);
    }
    return Value::anon_closure(anon.gamma, anon.lambda, std::move(env));
  }
  return std::nullopt;
}

}  // namespace skeltest
