#pragma once

// Declarations, the SkeletalSemantics container, and static checks.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skelai/ast.hpp"

namespace skel {

struct Constructor {
  std::string name;
  TypeExpr arg;
};

struct TypeDecl {
  std::string name;
  // Empty optional: unspecified (`type b`).
  std::optional<std::vector<Constructor>> variants;
  SourceSpan span;

  bool specified() const { return variants.has_value(); }
};

struct TermDecl {
  std::string name;
  TypeExpr type;
  // Null: unspecified (`val x : t`).
  TermPtr body;
  SourceSpan span;

  bool specified() const { return body != nullptr; }
};

struct ConstructorInfo {
  const TypeDecl* owner;
  const Constructor* constructor;
};

class SkeletalSemantics {
 public:
  void add_type(TypeDecl decl);
  void add_term(TermDecl decl);
  void set_program_types(std::set<std::string> names) { program_types_ = std::move(names); }

  const TypeDecl* find_type(const std::string& name) const;
  const TermDecl* find_term(const std::string& name) const;
  std::optional<ConstructorInfo> find_constructor(const std::string& name) const;
  /// Throws UnboundName for unknown constructors.
  ConstructorInfo constructor(const std::string& name) const;

  const std::vector<TypeDecl>& types() const { return types_; }
  const std::vector<TermDecl>& terms() const { return terms_; }
  const std::set<std::string>& program_types() const { return program_types_; }
  bool is_program_type(const TypeExpr& type) const;

  /// Type-checks every declaration. Throws SkelError on the first problem.
  void check() const;

 private:
  // Declarations keep source order for printing.
  std::vector<TypeDecl> types_;
  std::vector<TermDecl> terms_;
  std::map<std::string, std::size_t> type_index_;
  std::map<std::string, std::size_t> term_index_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> constructor_index_;
  std::set<std::string> program_types_;
};

/// Extends a typing environment by matching a pattern against a type
/// (Γ + p ← τ). Throws TypeError when the shapes disagree.
TypingEnv extend(const SkeletalSemantics& sem, TypingEnv env, const Pattern& p, const TypeExpr& type);

TypeExpr typecheck_term(const SkeletalSemantics& sem, const TypingEnv& env, const Term& t);
TypeExpr typecheck_skeleton(const SkeletalSemantics& sem, const TypingEnv& env, const Skeleton& s);

struct FunEntry {
  TypingEnv env;
  TermPtr lambda;
};

/// Every abstraction in the semantics with the typing environment of its
/// enclosing scope, in declaration order.
std::vector<FunEntry> funs(const SkeletalSemantics& sem);

}  // namespace skel
