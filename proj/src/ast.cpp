#include "skelai/ast.hpp"

#include <atomic>

#include "skelai/overloaded.hpp"

namespace skel {

struct TypeExpr::Node {
  enum class Kind { Base, Arrow, Tuple } kind;
  std::string name;
  std::vector<TypeExpr> children;
};

TypeExpr TypeExpr::base(std::string name) {
  return TypeExpr(std::make_shared<const Node>(Node{Node::Kind::Base, std::move(name), {}}));
}

TypeExpr TypeExpr::arrow(TypeExpr domain, TypeExpr codomain) {
  return TypeExpr(std::make_shared<const Node>(
      Node{Node::Kind::Arrow, {}, {std::move(domain), std::move(codomain)}}));
}

TypeExpr TypeExpr::tuple(std::vector<TypeExpr> components) {
  return TypeExpr(std::make_shared<const Node>(Node{Node::Kind::Tuple, {}, std::move(components)}));
}

bool TypeExpr::is_base() const { return node_->kind == Node::Kind::Base; }
bool TypeExpr::is_arrow() const { return node_->kind == Node::Kind::Arrow; }
bool TypeExpr::is_tuple() const { return node_->kind == Node::Kind::Tuple; }

const std::string& TypeExpr::name() const { return node_->name; }
const TypeExpr& TypeExpr::domain() const { return node_->children.at(0); }
const TypeExpr& TypeExpr::codomain() const { return node_->children.at(1); }
const std::vector<TypeExpr>& TypeExpr::components() const { return node_->children; }

std::string TypeExpr::to_string() const {
  switch (node_->kind) {
    case Node::Kind::Base:
      return node_->name;
    case Node::Kind::Arrow: {
      std::string lhs = domain().to_string();
      if (domain().is_arrow()) lhs = "(" + lhs + ")";
      return lhs + " -> " + codomain().to_string();
    }
    case Node::Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) out += ", ";
        out += node_->children[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

int compare(const TypeExpr& a, const TypeExpr& b) {
  if (a.node_ == b.node_) return 0;
  if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind ? -1 : 1;
  if (int c = a.node_->name.compare(b.node_->name)) return c < 0 ? -1 : 1;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
    if (int c = compare(ca[i], cb[i])) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

unsigned arity(const TypeExpr& type) {
  unsigned n = 0;
  const TypeExpr* t = &type;
  while (t->is_arrow()) {
    ++n;
    t = &t->codomain();
  }
  return n;
}

TypeExpr strip_arrows(const TypeExpr& type, unsigned count) {
  TypeExpr t = type;
  for (unsigned i = 0; i < count; ++i) {
    if (!t.is_arrow()) fail(ErrorKind::ArityViolation, "type " + type.to_string() + " has fewer than " +
                                                           std::to_string(count) + " arrows");
    t = t.codomain();
  }
  return t;
}

namespace build {

PatternPtr pvar(std::string name, SourceSpan span) {
  return std::make_shared<const Pattern>(Pattern{Pattern::Var{std::move(name)}, std::move(span)});
}
PatternPtr pwild(SourceSpan span) { return std::make_shared<const Pattern>(Pattern{Pattern::Wild{}, std::move(span)}); }
PatternPtr pconstr(std::string name, PatternPtr inner, SourceSpan span) {
  return std::make_shared<const Pattern>(
      Pattern{Pattern::Constr{std::move(name), std::move(inner)}, std::move(span)});
}
PatternPtr ptuple(std::vector<PatternPtr> items, SourceSpan span) {
  return std::make_shared<const Pattern>(Pattern{Pattern::Tuple{std::move(items)}, std::move(span)});
}

TermPtr var(std::string name, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Var{std::move(name)}, std::move(span)});
}
TermPtr constr(std::string name, TermPtr arg, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Constr{std::move(name), std::move(arg)}, std::move(span)});
}
TermPtr tuple(std::vector<TermPtr> items, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Tuple{std::move(items)}, std::move(span)});
}
TermPtr lambda(PatternPtr param, TypeExpr type, SkeletonPtr body, SourceSpan span) {
  static std::atomic<std::uint64_t> next_id{1};
  return std::make_shared<const Term>(
      Term{Term::Lambda{std::move(param), std::move(type), std::move(body), next_id++}, std::move(span)});
}

SkeletonPtr ret(TermPtr term, SourceSpan span) {
  return std::make_shared<const Skeleton>(Skeleton{Skeleton::Ret{std::move(term)}, std::move(span)});
}
SkeletonPtr app(TermPtr head, std::vector<TermPtr> args, SourceSpan span) {
  return std::make_shared<const Skeleton>(
      Skeleton{Skeleton::App{std::move(head), std::move(args)}, std::move(span)});
}
SkeletonPtr let(PatternPtr pattern, SkeletonPtr bound, SkeletonPtr body, SourceSpan span) {
  return std::make_shared<const Skeleton>(
      Skeleton{Skeleton::Let{std::move(pattern), std::move(bound), std::move(body)}, std::move(span)});
}
SkeletonPtr branch(std::vector<SkeletonPtr> branches, SourceSpan span) {
  return std::make_shared<const Skeleton>(Skeleton{Skeleton::Branch{std::move(branches)}, std::move(span)});
}
SkeletonPtr match(TermPtr scrutinee, std::vector<Skeleton::MatchArm> arms, SourceSpan span) {
  return std::make_shared<const Skeleton>(
      Skeleton{Skeleton::Match{std::move(scrutinee), std::move(arms)}, std::move(span)});
}

}  // namespace build

bool equal(const Pattern& a, const Pattern& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Pattern::Var& x) { return x.name == std::get<Pattern::Var>(b.node).name; },
          [&](const Pattern::Wild&) { return true; },
          [&](const Pattern::Constr& x) {
            const auto& y = std::get<Pattern::Constr>(b.node);
            return x.name == y.name && equal(*x.inner, *y.inner);
          },
          [&](const Pattern::Tuple& x) {
            const auto& y = std::get<Pattern::Tuple>(b.node);
            if (x.items.size() != y.items.size()) return false;
            for (std::size_t i = 0; i < x.items.size(); ++i)
              if (!equal(*x.items[i], *y.items[i])) return false;
            return true;
          },
      },
      a.node);
}

bool equal(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Term::Var& x) { return x.name == std::get<Term::Var>(b.node).name; },
          [&](const Term::Constr& x) {
            const auto& y = std::get<Term::Constr>(b.node);
            return x.name == y.name && equal(*x.arg, *y.arg);
          },
          [&](const Term::Tuple& x) {
            const auto& y = std::get<Term::Tuple>(b.node);
            if (x.items.size() != y.items.size()) return false;
            for (std::size_t i = 0; i < x.items.size(); ++i)
              if (!equal(*x.items[i], *y.items[i])) return false;
            return true;
          },
          [&](const Term::Lambda& x) {
            const auto& y = std::get<Term::Lambda>(b.node);
            return x.param_type == y.param_type && equal(*x.param, *y.param) && equal(*x.body, *y.body);
          },
      },
      a.node);
}

bool equal(const Skeleton& a, const Skeleton& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Skeleton::Ret& x) { return equal(*x.term, *std::get<Skeleton::Ret>(b.node).term); },
          [&](const Skeleton::App& x) {
            const auto& y = std::get<Skeleton::App>(b.node);
            if (!equal(*x.head, *y.head) || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
              if (!equal(*x.args[i], *y.args[i])) return false;
            return true;
          },
          [&](const Skeleton::Let& x) {
            const auto& y = std::get<Skeleton::Let>(b.node);
            return equal(*x.pattern, *y.pattern) && equal(*x.bound, *y.bound) && equal(*x.body, *y.body);
          },
          [&](const Skeleton::Branch& x) {
            const auto& y = std::get<Skeleton::Branch>(b.node);
            if (x.branches.size() != y.branches.size()) return false;
            for (std::size_t i = 0; i < x.branches.size(); ++i)
              if (!equal(*x.branches[i], *y.branches[i])) return false;
            return true;
          },
          [&](const Skeleton::Match& x) {
            const auto& y = std::get<Skeleton::Match>(b.node);
            if (!equal(*x.scrutinee, *y.scrutinee) || x.arms.size() != y.arms.size()) return false;
            for (std::size_t i = 0; i < x.arms.size(); ++i)
              if (!equal(*x.arms[i].pattern, *y.arms[i].pattern) || !equal(*x.arms[i].body, *y.arms[i].body))
                return false;
            return true;
          },
      },
      a.node);
}

static void collect_bound(const Pattern& p, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const Pattern::Var& x) { out.push_back(x.name); },
                 [&](const Pattern::Wild&) {},
                 [&](const Pattern::Constr& x) { collect_bound(*x.inner, out); },
                 [&](const Pattern::Tuple& x) {
                   for (const auto& item : x.items) collect_bound(*item, out);
                 },
             },
             p.node);
}

std::vector<std::string> bound_variables(const Pattern& p) {
  std::vector<std::string> out;
  collect_bound(p, out);
  return out;
}

}  // namespace skel
