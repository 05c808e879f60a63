#pragma once

// Concrete semantic values and environments.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "skelai/ast.hpp"
#include "skelai/datum.hpp"
#include "skelai/program_point.hpp"

namespace skel {

struct ValueNode;

class Value {
 public:
  static Value tuple(std::vector<Value> items);
  static Value unit() { return tuple({}); }
  static Value constr(std::string name, Value arg);
  static Value named_closure(std::string function, unsigned arity, std::vector<Value> collected = {});
  static Value anon_closure(std::shared_ptr<const TypingEnv> gamma, TermPtr lambda, std::map<std::string, Value> env);
  static Value base(std::string type, DatumPtr payload);
  static Value point(ProgramPoint pp);

  const ValueNode& node() const { return *node_; }

  std::string to_string() const;

  friend int compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

 private:
  explicit Value(std::shared_ptr<const ValueNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ValueNode> node_;
};

using Env = std::map<std::string, Value>;
using ValueSet = std::set<Value>;

struct TupleV {
  std::vector<Value> items;
};
struct ConstrV {
  std::string name;
  Value arg;
};
/// A declared function `(f, n)` together with the arguments collected so far.
struct NamedClosureV {
  std::string function;
  unsigned arity;
  std::vector<Value> collected;
};
struct AnonClosureV {
  std::shared_ptr<const TypingEnv> gamma;
  TermPtr lambda;
  Env env;

  const Term::Lambda& fn() const { return std::get<Term::Lambda>(lambda->node); }
};
struct BaseV {
  std::string type;
  DatumPtr payload;
};
struct PPointV {
  ProgramPoint pp;
};

struct ValueNode {
  std::variant<TupleV, ConstrV, NamedClosureV, AnonClosureV, BaseV, PPointV> v;
};

template <class T>
const T* get_if(const Value& value) {
  return std::get_if<T>(&value.node().v);
}

int compare(const Env& a, const Env& b);
std::string to_string(const Env& env);
std::string to_string(const ValueSet& values);

}  // namespace skel
