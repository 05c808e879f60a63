#pragma once

// Abstract values over every Skel type.
//
// There is a single bottom element shared by all types: the empty tuple
// set, the empty function set, the empty program-point set and a
// constructor applied to bottom all collapse to it. Top carries its type.

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "skelai/ast.hpp"
#include "skelai/datum.hpp"
#include "skelai/program_point.hpp"

namespace skel {

struct AbsNode;
struct AbsClosure;

class AbsValue {
 public:
  static AbsValue bot();
  static AbsValue top(TypeExpr type);
  static AbsValue constr(std::string name, AbsValue arg);
  /// Tuples containing a bottom component are dropped; duplicates removed.
  static AbsValue tuple_set(std::vector<std::vector<AbsValue>> tuples);
  static AbsValue tuple(std::vector<AbsValue> items) { return tuple_set({std::move(items)}); }
  static AbsValue unit() { return tuple({}); }
  static AbsValue fun_set(std::vector<AbsClosure> closures);
  static AbsValue base(std::string type, DatumPtr payload);
  static AbsValue points(std::vector<ProgramPoint> pps);

  bool is_bot() const;
  bool is_top() const;

  const AbsNode& node() const { return *node_; }

  std::string to_string() const;

  friend int compare(const AbsValue& a, const AbsValue& b);
  friend bool operator==(const AbsValue& a, const AbsValue& b) { return compare(a, b) == 0; }
  friend bool operator<(const AbsValue& a, const AbsValue& b) { return compare(a, b) < 0; }

 private:
  explicit AbsValue(std::shared_ptr<const AbsNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const AbsNode> node_;
};

using AbsEnv = std::map<std::string, AbsValue>;
using AbsTuple = std::vector<AbsValue>;

struct NamedAC {
  std::string function;
  unsigned arity;
  std::vector<AbsValue> collected;
};

struct AnonAC {
  std::shared_ptr<const TypingEnv> gamma;
  TermPtr lambda;
  AbsEnv env;

  const Term::Lambda& fn() const { return std::get<Term::Lambda>(lambda->node); }
};

struct AbsClosure {
  std::variant<NamedAC, AnonAC> v;
};

int compare(const AbsClosure& a, const AbsClosure& b);
inline bool operator<(const AbsClosure& a, const AbsClosure& b) { return compare(a, b) < 0; }
int compare(const AbsEnv& a, const AbsEnv& b);
int compare(const AbsTuple& a, const AbsTuple& b);

struct BotA {};
struct TopA {
  TypeExpr type;
};
struct ConstrA {
  std::string name;
  AbsValue arg;
};
struct TupleSetA {
  std::vector<AbsTuple> tuples;  // sorted, unique, non-empty
};
struct FunSetA {
  std::vector<AbsClosure> closures;  // sorted, unique, non-empty
};
struct BaseA {
  std::string type;
  DatumPtr payload;
};
struct PPSetA {
  std::vector<ProgramPoint> points;  // sorted, unique, non-empty
};

struct AbsNode {
  std::variant<BotA, TopA, ConstrA, TupleSetA, FunSetA, BaseA, PPSetA> v;
};

template <class T>
const T* get_if(const AbsValue& value) {
  return std::get_if<T>(&value.node().v);
}

std::string to_string(const AbsEnv& env);

}  // namespace skel
