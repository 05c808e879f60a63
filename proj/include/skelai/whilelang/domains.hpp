#pragma once

// Payloads and base domains of the While instantiation.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "skelai/abs_value.hpp"
#include "skelai/lattice.hpp"

namespace skel::whilelang {

using BigInt = boost::multiprecision::cpp_int;

// ---- concrete payloads

struct Ident {
  std::string name;
  friend bool operator<(const Ident& a, const Ident& b) { return a.name < b.name; }
  friend bool operator==(const Ident& a, const Ident& b) = default;
};
std::string render(const Ident& x);

/// Payload of both `lit` and `int`.
struct Int {
  BigInt n;
  friend bool operator<(const Int& a, const Int& b) { return a.n < b.n; }
  friend bool operator==(const Int& a, const Int& b) = default;
};
std::string render(const Int& x);

struct Store {
  std::map<std::string, BigInt> vars;
  friend bool operator<(const Store& a, const Store& b) { return a.vars < b.vars; }
  friend bool operator==(const Store& a, const Store& b) = default;
};
std::string render(const Store& s);

Value ident_value(const std::string& name);
Value lit_value(BigInt n);
Value int_value(BigInt n);
Value store_value(Store s);

// ---- abstract payloads

/// A non-bottom, non-top element of a flat lattice.
template <class T>
struct Exactly {
  T value;
  friend bool operator<(const Exactly& a, const Exactly& b) { return a.value < b.value; }
  friend bool operator==(const Exactly& a, const Exactly& b) = default;
};
template <class T>
std::string render(const Exactly<T>& x) {
  return render(x.value);
}

struct Bound {
  enum class Kind { NegInf, Finite, PosInf } kind = Kind::Finite;
  BigInt n;

  static Bound neg_inf() { return {Kind::NegInf, 0}; }
  static Bound pos_inf() { return {Kind::PosInf, 0}; }
  static Bound finite(BigInt v) { return {Kind::Finite, std::move(v)}; }
  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator<(const Bound& a, const Bound& b);
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator==(const Bound& a, const Bound& b) { return !(a < b) && !(b < a); }
};
std::string render(const Bound& b);
Bound operator+(const Bound& a, const Bound& b);

/// Closed interval, never empty.
struct Interval {
  Bound lo, hi;

  static Interval of(BigInt a, BigInt b) { return {Bound::finite(std::move(a)), Bound::finite(std::move(b))}; }
  static Interval point(const BigInt& n) { return of(n, n); }
  static Interval top() { return {Bound::neg_inf(), Bound::pos_inf()}; }

  bool is_top() const { return lo.kind == Bound::Kind::NegInf && hi.kind == Bound::Kind::PosInf; }
  bool contains(const BigInt& n) const;
  bool operator<=(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }

  friend bool operator<(const Interval& a, const Interval& b) {
    if (a.lo < b.lo) return true;
    if (b.lo < a.lo) return false;
    return a.hi < b.hi;
  }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};
std::string render(const Interval& i);

Interval join(const Interval& a, const Interval& b);
/// Keeps each bound of `a` that dominates the matching bound of `b`, else jumps to infinity.
Interval widen(const Interval& a, const Interval& b);

struct AbsStore {
  std::map<std::string, Interval> vars;
  friend bool operator<(const AbsStore& a, const AbsStore& b) { return a.vars < b.vars; }
  friend bool operator==(const AbsStore& a, const AbsStore& b) = default;
};
std::string render(const AbsStore& s);

bool leq(const AbsStore& a, const AbsStore& b);
AbsStore join(const AbsStore& a, const AbsStore& b);
AbsStore widen(const AbsStore& a, const AbsStore& b);
/// A concrete store is described when its domain is covered and each value fits.
bool contains(const AbsStore& a, const Store& s);

// ---- abstract values of the While base types

AbsValue abs_ident(const std::string& name);
AbsValue abs_lit(BigInt n);
AbsValue abs_int(const Interval& i);
AbsValue abs_store(AbsStore s);

/// nullopt for bottom; top of `int` becomes [-inf,+inf].
std::optional<Interval> as_interval(const AbsValue& v);

/// Lattice operations on abstract stores including bottom (BotA) and top (TopA).
bool store_leq(const AbsValue& a, const AbsValue& b);
AbsValue store_join(const AbsValue& a, const AbsValue& b);
AbsValue store_widen(const AbsValue& a, const AbsValue& b);

BaseDomains while_domains();

}  // namespace skel::whilelang
