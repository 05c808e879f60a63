#include "skelai/whilelang/domains.hpp"

namespace skel::whilelang {

std::string render(const Ident& x) { return x.name; }
std::string render(const Int& x) { return x.n.str(); }

std::string render(const Store& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s.vars) {
    if (!first) out += ", ";
    first = false;
    out += k + " ↦ " + v.str();
  }
  return out + "}";
}

Value ident_value(const std::string& name) { return Value::base("ident", box(Ident{name})); }
Value lit_value(BigInt n) { return Value::base("lit", box(Int{std::move(n)})); }
Value int_value(BigInt n) { return Value::base("int", box(Int{std::move(n)})); }
Value store_value(Store s) { return Value::base("store", box(std::move(s))); }

bool operator<(const Bound& a, const Bound& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.is_finite() && a.n < b.n;
}

std::string render(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::NegInf: return "-inf";
    case Bound::Kind::PosInf: return "+inf";
    case Bound::Kind::Finite: break;
  }
  return b.n.str();
}

Bound operator+(const Bound& a, const Bound& b) {
  // -inf + +inf never arises: lower bounds are summed with lower bounds.
  if (!a.is_finite()) return a;
  if (!b.is_finite()) return b;
  return Bound::finite(a.n + b.n);
}

bool Interval::contains(const BigInt& n) const {
  Bound x = Bound::finite(n);
  return lo <= x && x <= hi;
}

std::string render(const Interval& i) { return "[" + render(i.lo) + "," + render(i.hi) + "]"; }

Interval join(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval widen(const Interval& a, const Interval& b) {
  return {a.lo <= b.lo ? a.lo : Bound::neg_inf(), b.hi <= a.hi ? a.hi : Bound::pos_inf()};
}

std::string render(const AbsStore& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s.vars) {
    if (!first) out += ", ";
    first = false;
    out += k + " ↦ " + render(v);
  }
  return out + "}";
}

bool leq(const AbsStore& a, const AbsStore& b) {
  for (const auto& [k, v] : a.vars) {
    auto it = b.vars.find(k);
    if (it == b.vars.end() || !(v <= it->second)) return false;
  }
  return true;
}

AbsStore join(const AbsStore& a, const AbsStore& b) {
  AbsStore out = a;
  for (const auto& [k, v] : b.vars) {
    auto [it, fresh] = out.vars.emplace(k, v);
    if (!fresh) it->second = join(it->second, v);
  }
  return out;
}

AbsStore widen(const AbsStore& a, const AbsStore& b) {
  AbsStore out = a;
  for (const auto& [k, v] : b.vars) {
    auto [it, fresh] = out.vars.emplace(k, v);
    if (!fresh) it->second = widen(it->second, v);
  }
  return out;
}

bool contains(const AbsStore& a, const Store& s) {
  for (const auto& [k, n] : s.vars) {
    auto it = a.vars.find(k);
    if (it == a.vars.end() || !it->second.contains(n)) return false;
  }
  return true;
}

AbsValue abs_ident(const std::string& name) { return AbsValue::base("ident", box(Exactly<Ident>{Ident{name}})); }
AbsValue abs_lit(BigInt n) { return AbsValue::base("lit", box(Exactly<Int>{Int{std::move(n)}})); }
AbsValue abs_int(const Interval& i) {
  if (i.is_top()) return AbsValue::top(TypeExpr::base("int"));
  return AbsValue::base("int", box(i));
}
AbsValue abs_store(AbsStore s) { return AbsValue::base("store", box(std::move(s))); }

std::optional<Interval> as_interval(const AbsValue& v) {
  if (v.is_bot()) return std::nullopt;
  if (v.is_top()) return Interval::top();
  const auto* b = get_if<BaseA>(v);
  if (!b || b->type != "int") fail(ErrorKind::TypeMismatch, "expected an interval, got " + v.to_string());
  return unbox<Interval>(*b->payload);
}

namespace {

const AbsStore& store_payload(const AbsValue& v) {
  const auto* b = get_if<BaseA>(v);
  if (!b || b->type != "store") fail(ErrorKind::TypeMismatch, "expected an abstract store, got " + v.to_string());
  return unbox<AbsStore>(*b->payload);
}

template <class T>
class FlatDomain final : public BaseDomain {
 public:
  bool is_top(const Datum&) const override { return false; }
  bool leq(const Datum& a, const Datum& b) const override { return a.compare(b) == 0; }
  DatumPtr join(const Datum& a, const Datum& b) const override {
    if (a.compare(b) == 0) return box(unbox<Exactly<T>>(a));
    return nullptr;
  }
  bool gamma_contains(const AIState&, const Datum& abstract, const Datum& concrete) const override {
    return unbox<Exactly<T>>(abstract).value == unbox<T>(concrete);
  }
  DatumPtr inject(const Datum& concrete) const override { return box(Exactly<T>{unbox<T>(concrete)}); }
};

class IntervalDomain final : public BaseDomain {
 public:
  bool is_top(const Datum& a) const override { return unbox<Interval>(a).is_top(); }
  bool leq(const Datum& a, const Datum& b) const override { return unbox<Interval>(a) <= unbox<Interval>(b); }
  DatumPtr join(const Datum& a, const Datum& b) const override {
    return box(whilelang::join(unbox<Interval>(a), unbox<Interval>(b)));
  }
  DatumPtr widen(const Datum& a, const Datum& b) const override {
    return box(whilelang::widen(unbox<Interval>(a), unbox<Interval>(b)));
  }
  bool gamma_contains(const AIState&, const Datum& abstract, const Datum& concrete) const override {
    return unbox<Interval>(abstract).contains(unbox<Int>(concrete).n);
  }
  DatumPtr inject(const Datum& concrete) const override { return box(Interval::point(unbox<Int>(concrete).n)); }
};

class StoreDomain final : public BaseDomain {
 public:
  bool is_top(const Datum&) const override { return false; }
  bool leq(const Datum& a, const Datum& b) const override {
    return whilelang::leq(unbox<AbsStore>(a), unbox<AbsStore>(b));
  }
  DatumPtr join(const Datum& a, const Datum& b) const override {
    return box(whilelang::join(unbox<AbsStore>(a), unbox<AbsStore>(b)));
  }
  DatumPtr widen(const Datum& a, const Datum& b) const override {
    return box(whilelang::widen(unbox<AbsStore>(a), unbox<AbsStore>(b)));
  }
  bool gamma_contains(const AIState&, const Datum& abstract, const Datum& concrete) const override {
    return contains(unbox<AbsStore>(abstract), unbox<Store>(concrete));
  }
  DatumPtr inject(const Datum& concrete) const override {
    AbsStore out;
    for (const auto& [k, n] : unbox<Store>(concrete).vars) out.vars.emplace(k, Interval::point(n));
    return box(std::move(out));
  }
};

}  // namespace

bool store_leq(const AbsValue& a, const AbsValue& b) {
  if (a.is_bot() || b.is_top()) return true;
  if (a.is_top() || b.is_bot()) return false;
  return leq(store_payload(a), store_payload(b));
}

AbsValue store_join(const AbsValue& a, const AbsValue& b) {
  if (a.is_bot() || b.is_top()) return b;
  if (b.is_bot() || a.is_top()) return a;
  return abs_store(join(store_payload(a), store_payload(b)));
}

AbsValue store_widen(const AbsValue& a, const AbsValue& b) {
  if (a.is_bot() || b.is_top()) return b;
  if (b.is_bot() || a.is_top()) return a;
  return abs_store(widen(store_payload(a), store_payload(b)));
}

BaseDomains while_domains() {
  return {
      {"ident", std::make_shared<FlatDomain<Ident>>()},
      {"lit", std::make_shared<FlatDomain<Int>>()},
      {"int", std::make_shared<IntervalDomain>()},
      {"store", std::make_shared<StoreDomain>()},
  };
}

}  // namespace skel::whilelang
