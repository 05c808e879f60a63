#pragma once

// Abstract syntax of Skel: types, patterns, terms and skeletons.
//
// All nodes are immutable and shared. Structural equality ignores source
// spans and lambda identities.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "skelai/error.hpp"

namespace skel {

class TypeExpr {
 public:
  static TypeExpr base(std::string name);
  static TypeExpr arrow(TypeExpr domain, TypeExpr codomain);
  static TypeExpr tuple(std::vector<TypeExpr> components);
  static TypeExpr unit() { return tuple({}); }

  bool is_base() const;
  bool is_arrow() const;
  bool is_tuple() const;
  bool is_unit() const { return is_tuple() && components().empty(); }

  const std::string& name() const;
  const TypeExpr& domain() const;
  const TypeExpr& codomain() const;
  const std::vector<TypeExpr>& components() const;

  std::string to_string() const;

  friend int compare(const TypeExpr& a, const TypeExpr& b);
  friend bool operator==(const TypeExpr& a, const TypeExpr& b) { return compare(a, b) == 0; }
  friend bool operator<(const TypeExpr& a, const TypeExpr& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit TypeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Number of leading arrows before a non-arrow codomain.
unsigned arity(const TypeExpr& type);

/// The codomain reached after stripping `count` arrows.
TypeExpr strip_arrows(const TypeExpr& type, unsigned count);

using TypingEnv = std::map<std::string, TypeExpr>;

class Pattern {
 public:
  struct Var {
    std::string name;
  };
  struct Wild {};
  struct Constr {
    std::string name;
    std::shared_ptr<const Pattern> inner;
  };
  struct Tuple {
    std::vector<std::shared_ptr<const Pattern>> items;
  };
  using Node = std::variant<Var, Wild, Constr, Tuple>;

  Node node;
  SourceSpan span;
};
using PatternPtr = std::shared_ptr<const Pattern>;

struct Skeleton;
using SkeletonPtr = std::shared_ptr<const Skeleton>;

struct Term {
  struct Var {
    std::string name;
  };
  struct Constr {
    std::string name;
    std::shared_ptr<const Term> arg;
  };
  struct Tuple {
    std::vector<std::shared_ptr<const Term>> items;
  };
  struct Lambda {
    PatternPtr param;
    TypeExpr param_type;
    SkeletonPtr body;
    // Unique per constructed node; orders anonymous closures deterministically.
    std::uint64_t id;
  };
  using Node = std::variant<Var, Constr, Tuple, Lambda>;

  Node node;
  SourceSpan span;
};
using TermPtr = std::shared_ptr<const Term>;

struct Skeleton {
  struct Ret {
    TermPtr term;
  };
  struct App {
    TermPtr head;
    std::vector<TermPtr> args;
  };
  struct Let {
    PatternPtr pattern;
    SkeletonPtr bound;
    SkeletonPtr body;
  };
  struct Branch {
    std::vector<SkeletonPtr> branches;
  };
  struct MatchArm {
    PatternPtr pattern;
    SkeletonPtr body;
  };
  struct Match {
    TermPtr scrutinee;
    std::vector<MatchArm> arms;
  };
  using Node = std::variant<Ret, App, Let, Branch, Match>;

  Node node;
  SourceSpan span;
};

// Smart constructors. Spans default to empty.
namespace build {
PatternPtr pvar(std::string name, SourceSpan span = {});
PatternPtr pwild(SourceSpan span = {});
PatternPtr pconstr(std::string name, PatternPtr inner, SourceSpan span = {});
PatternPtr ptuple(std::vector<PatternPtr> items, SourceSpan span = {});

TermPtr var(std::string name, SourceSpan span = {});
TermPtr constr(std::string name, TermPtr arg, SourceSpan span = {});
TermPtr tuple(std::vector<TermPtr> items, SourceSpan span = {});
TermPtr lambda(PatternPtr param, TypeExpr type, SkeletonPtr body, SourceSpan span = {});

SkeletonPtr ret(TermPtr term, SourceSpan span = {});
SkeletonPtr app(TermPtr head, std::vector<TermPtr> args, SourceSpan span = {});
SkeletonPtr let(PatternPtr pattern, SkeletonPtr bound, SkeletonPtr body, SourceSpan span = {});
SkeletonPtr branch(std::vector<SkeletonPtr> branches, SourceSpan span = {});
SkeletonPtr match(TermPtr scrutinee, std::vector<Skeleton::MatchArm> arms, SourceSpan span = {});
}  // namespace build

bool equal(const Pattern& a, const Pattern& b);
bool equal(const Term& a, const Term& b);
bool equal(const Skeleton& a, const Skeleton& b);

/// Variables bound by a pattern, left to right (duplicates preserved).
std::vector<std::string> bound_variables(const Pattern& p);

}  // namespace skel
