#include "skelai/semantics.hpp"

#include "skelai/overloaded.hpp"

namespace skel {

void SkeletalSemantics::add_type(TypeDecl decl) {
  if (type_index_.count(decl.name)) fail(ErrorKind::Redeclaration, "type " + decl.name + " declared twice", decl.span);
  std::size_t index = types_.size();
  if (decl.variants) {
    for (std::size_t i = 0; i < decl.variants->size(); ++i) {
      const auto& c = (*decl.variants)[i];
      if (constructor_index_.count(c.name))
        fail(ErrorKind::Redeclaration, "constructor " + c.name + " declared twice", decl.span);
      constructor_index_[c.name] = {index, i};
    }
  }
  type_index_[decl.name] = index;
  types_.push_back(std::move(decl));
}

void SkeletalSemantics::add_term(TermDecl decl) {
  if (term_index_.count(decl.name)) fail(ErrorKind::Redeclaration, "term " + decl.name + " declared twice", decl.span);
  term_index_[decl.name] = terms_.size();
  terms_.push_back(std::move(decl));
}

const TypeDecl* SkeletalSemantics::find_type(const std::string& name) const {
  auto it = type_index_.find(name);
  return it == type_index_.end() ? nullptr : &types_[it->second];
}

const TermDecl* SkeletalSemantics::find_term(const std::string& name) const {
  auto it = term_index_.find(name);
  return it == term_index_.end() ? nullptr : &terms_[it->second];
}

std::optional<ConstructorInfo> SkeletalSemantics::find_constructor(const std::string& name) const {
  auto it = constructor_index_.find(name);
  if (it == constructor_index_.end()) return std::nullopt;
  const TypeDecl& owner = types_[it->second.first];
  return ConstructorInfo{&owner, &(*owner.variants)[it->second.second]};
}

ConstructorInfo SkeletalSemantics::constructor(const std::string& name) const {
  auto info = find_constructor(name);
  if (!info) fail(ErrorKind::UnboundName, "unknown constructor " + name);
  return *info;
}

bool SkeletalSemantics::is_program_type(const TypeExpr& type) const {
  return type.is_base() && program_types_.count(type.name()) > 0;
}

namespace {

class Checker {
 public:
  Checker(const SkeletalSemantics& sem, std::vector<FunEntry>* funs) : sem_(sem), funs_(funs) {}

  void well_formed(const TypeExpr& type, const SourceSpan& span) const {
    if (type.is_base()) {
      if (!sem_.find_type(type.name())) fail(ErrorKind::UnboundName, "unknown type " + type.name(), span);
    } else if (type.is_arrow()) {
      well_formed(type.domain(), span);
      well_formed(type.codomain(), span);
    } else {
      for (const auto& c : type.components()) well_formed(c, span);
    }
  }

  TypingEnv extend(TypingEnv env, const Pattern& p, const TypeExpr& type) const {
    std::set<std::string> seen;
    for (const auto& name : bound_variables(p)) {
      if (!seen.insert(name).second) fail(ErrorKind::Type, "variable " + name + " bound twice in pattern", p.span);
    }
    extend_into(env, p, type);
    return env;
  }

  TypeExpr term(const TypingEnv& env, const Term& t) const {
    return std::visit(
        overloaded{
            [&](const Term::Var& x) -> TypeExpr {
              if (auto it = env.find(x.name); it != env.end()) return it->second;
              if (const TermDecl* decl = sem_.find_term(x.name)) return decl->type;
              fail(ErrorKind::UnboundName, "unbound name " + x.name, t.span);
            },
            [&](const Term::Constr& x) -> TypeExpr {
              auto info = sem_.find_constructor(x.name);
              if (!info) fail(ErrorKind::UnboundName, "unknown constructor " + x.name, t.span);
              TypeExpr actual = term(env, *x.arg);
              if (actual != info->constructor->arg)
                fail(ErrorKind::Type,
                     "constructor " + x.name + " expects " + info->constructor->arg.to_string() + ", got " +
                         actual.to_string(),
                     t.span);
              return TypeExpr::base(info->owner->name);
            },
            [&](const Term::Tuple& x) -> TypeExpr {
              std::vector<TypeExpr> parts;
              for (const auto& item : x.items) parts.push_back(term(env, *item));
              return TypeExpr::tuple(std::move(parts));
            },
            [&](const Term::Lambda& x) -> TypeExpr {
              well_formed(x.param_type, t.span);
              if (funs_) funs_->push_back(FunEntry{env, nullptr});
              std::size_t slot = funs_ ? funs_->size() - 1 : 0;
              TypeExpr body = skeleton(extend(env, *x.param, x.param_type), *x.body);
              if (funs_) (*funs_)[slot].lambda = lambda_ptr(t);
              return TypeExpr::arrow(x.param_type, body);
            },
        },
        t.node);
  }

  TypeExpr skeleton(const TypingEnv& env, const Skeleton& s) const {
    return std::visit(
        overloaded{
            [&](const Skeleton::Ret& x) { return term(env, *x.term); },
            [&](const Skeleton::App& x) {
              TypeExpr head = term(env, *x.head);
              for (const auto& arg : x.args) {
                if (!head.is_arrow())
                  fail(ErrorKind::Type, "applying a value of non-function type " + head.to_string(), s.span);
                TypeExpr actual = term(env, *arg);
                if (actual != head.domain())
                  fail(ErrorKind::Type,
                       "argument of type " + actual.to_string() + " where " + head.domain().to_string() +
                           " is expected",
                       arg->span);
                head = head.codomain();
              }
              return head;
            },
            [&](const Skeleton::Let& x) {
              TypeExpr bound = skeleton(env, *x.bound);
              return skeleton(extend(env, *x.pattern, bound), *x.body);
            },
            [&](const Skeleton::Branch& x) {
              if (x.branches.empty()) fail(ErrorKind::Type, "empty branch", s.span);
              TypeExpr first = skeleton(env, *x.branches.front());
              for (std::size_t i = 1; i < x.branches.size(); ++i) {
                TypeExpr other = skeleton(env, *x.branches[i]);
                if (other != first)
                  fail(ErrorKind::Type, "branches disagree: " + first.to_string() + " vs " + other.to_string(),
                       x.branches[i]->span);
              }
              return first;
            },
            [&](const Skeleton::Match& x) {
              if (x.arms.empty()) fail(ErrorKind::Type, "match without arms", s.span);
              TypeExpr scrutinee = term(env, *x.scrutinee);
              std::optional<TypeExpr> result;
              for (const auto& arm : x.arms) {
                TypeExpr body = skeleton(extend(env, *arm.pattern, scrutinee), *arm.body);
                if (result && *result != body)
                  fail(ErrorKind::Type, "match arms disagree: " + result->to_string() + " vs " + body.to_string(),
                       arm.body->span);
                result = body;
              }
              return *result;
            },
        },
        s.node);
  }

  // The checker walks nodes by reference; funs needs the owning pointers.
  TermPtr lambda_ptr(const Term& t) const {
    auto it = owners_.find(&t);
    return it == owners_.end() ? nullptr : it->second;
  }

 public:
  void index_owners(const TermPtr& t) {
    owners_[t.get()] = t;
    std::visit(overloaded{
                   [&](const Term::Var&) {},
                   [&](const Term::Constr& x) { index_owners(x.arg); },
                   [&](const Term::Tuple& x) {
                     for (const auto& item : x.items) index_owners(item);
                   },
                   [&](const Term::Lambda& x) { index_owners(*x.body); },
               },
               t->node);
  }

  void index_owners(const Skeleton& s) {
    std::visit(overloaded{
                   [&](const Skeleton::Ret& x) { index_owners(x.term); },
                   [&](const Skeleton::App& x) {
                     index_owners(x.head);
                     for (const auto& arg : x.args) index_owners(arg);
                   },
                   [&](const Skeleton::Let& x) {
                     index_owners(*x.bound);
                     index_owners(*x.body);
                   },
                   [&](const Skeleton::Branch& x) {
                     for (const auto& b : x.branches) index_owners(*b);
                   },
                   [&](const Skeleton::Match& x) {
                     index_owners(x.scrutinee);
                     for (const auto& arm : x.arms) index_owners(*arm.body);
                   },
               },
               s.node);
  }

 private:
  void extend_into(TypingEnv& env, const Pattern& p, const TypeExpr& type) const {
    std::visit(overloaded{
                   [&](const Pattern::Var& x) { env.insert_or_assign(x.name, type); },
                   [&](const Pattern::Wild&) {},
                   [&](const Pattern::Constr& x) {
                     auto info = sem_.find_constructor(x.name);
                     if (!info) fail(ErrorKind::UnboundName, "unknown constructor " + x.name, p.span);
                     if (!type.is_base() || type.name() != info->owner->name)
                       fail(ErrorKind::Type,
                            "constructor " + x.name + " of type " + info->owner->name + " matched against " +
                                type.to_string(),
                            p.span);
                     extend_into(env, *x.inner, info->constructor->arg);
                   },
                   [&](const Pattern::Tuple& x) {
                     if (!type.is_tuple() || type.components().size() != x.items.size())
                       fail(ErrorKind::Type,
                            "tuple pattern of width " + std::to_string(x.items.size()) + " matched against " +
                                type.to_string(),
                            p.span);
                     for (std::size_t i = 0; i < x.items.size(); ++i)
                       extend_into(env, *x.items[i], type.components()[i]);
                   },
               },
               p.node);
  }

  const SkeletalSemantics& sem_;
  std::vector<FunEntry>* funs_;
  std::map<const Term*, TermPtr> owners_;
};

}  // namespace

void SkeletalSemantics::check() const {
  Checker checker(*this, nullptr);
  for (const auto& decl : types_) {
    if (!decl.variants) continue;
    for (const auto& c : *decl.variants) checker.well_formed(c.arg, decl.span);
  }
  for (const auto& name : program_types_) {
    const TypeDecl* decl = find_type(name);
    if (!decl || !decl->specified()) fail(ErrorKind::Type, "program type " + name + " is not a declared ADT");
  }
  for (const auto& decl : terms_) {
    checker.well_formed(decl.type, decl.span);
    if (!decl.body) continue;
    TypeExpr actual = checker.term({}, *decl.body);
    if (actual != decl.type)
      fail(ErrorKind::Type,
           "term " + decl.name + " declared as " + decl.type.to_string() + " but has type " + actual.to_string(),
           decl.span);
  }
}

TypingEnv extend(const SkeletalSemantics& sem, TypingEnv env, const Pattern& p, const TypeExpr& type) {
  return Checker(sem, nullptr).extend(std::move(env), p, type);
}

TypeExpr typecheck_term(const SkeletalSemantics& sem, const TypingEnv& env, const Term& t) {
  return Checker(sem, nullptr).term(env, t);
}

TypeExpr typecheck_skeleton(const SkeletalSemantics& sem, const TypingEnv& env, const Skeleton& s) {
  return Checker(sem, nullptr).skeleton(env, s);
}

std::vector<FunEntry> funs(const SkeletalSemantics& sem) {
  std::vector<FunEntry> out;
  Checker checker(sem, &out);
  for (const auto& decl : sem.terms()) {
    if (!decl.body) continue;
    checker.index_owners(decl.body);
    checker.term({}, *decl.body);
  }
  return out;
}

}  // namespace skel
