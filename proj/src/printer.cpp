#include "skelai/printer.hpp"

#include "skelai/overloaded.hpp"

namespace skel {

namespace {

std::string type_atom(const TypeExpr& t) {
  if (t.is_arrow()) return "(" + t.to_string() + ")";
  return t.to_string();
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

bool is_unit_term(const Term& t) {
  const auto* tuple = std::get_if<Term::Tuple>(&t.node);
  return tuple && tuple->items.empty();
}

bool is_unit_pattern(const Pattern& p) {
  const auto* tuple = std::get_if<Pattern::Tuple>(&p.node);
  return tuple && tuple->items.empty();
}

std::string pattern_atom(const Pattern& p) {
  if (const auto* c = std::get_if<Pattern::Constr>(&p.node); c && !is_unit_pattern(*c->inner))
    return "(" + print_pattern(p) + ")";
  return print_pattern(p);
}

std::string term_atom(const Term& t) {
  if (std::holds_alternative<Term::Lambda>(t.node)) return "(" + print_term(t) + ")";
  if (const auto* c = std::get_if<Term::Constr>(&t.node); c && !is_unit_term(*c->arg))
    return "(" + print_term(t) + ")";
  return print_term(t);
}

}  // namespace

std::string print_pattern(const Pattern& p) {
  return std::visit(overloaded{
                        [](const Pattern::Var& x) { return x.name; },
                        [](const Pattern::Wild&) { return std::string("_"); },
                        [](const Pattern::Constr& x) {
                          if (is_unit_pattern(*x.inner)) return x.name;
                          return x.name + " " + pattern_atom(*x.inner);
                        },
                        [](const Pattern::Tuple& x) {
                          std::string out = "(";
                          for (std::size_t i = 0; i < x.items.size(); ++i) {
                            if (i) out += ", ";
                            out += print_pattern(*x.items[i]);
                          }
                          return out + ")";
                        },
                    },
                    p.node);
}

std::string print_term(const Term& t) {
  return std::visit(overloaded{
                        [](const Term::Var& x) { return x.name; },
                        [](const Term::Constr& x) {
                          if (is_unit_term(*x.arg)) return x.name;
                          return x.name + " " + term_atom(*x.arg);
                        },
                        [](const Term::Tuple& x) {
                          std::string out = "(";
                          for (std::size_t i = 0; i < x.items.size(); ++i) {
                            if (i) out += ", ";
                            out += print_term(*x.items[i]);
                          }
                          return out + ")";
                        },
                        [](const Term::Lambda& x) {
                          return "λ " + pattern_atom(*x.param) + " : " + type_atom(x.param_type) + " ->\n" +
                                 pad(1) + print_skeleton(*x.body, 1);
                        },
                    },
                    t.node);
}

std::string print_skeleton(const Skeleton& s, int indent) {
  const std::string nl = "\n" + pad(indent);
  return std::visit(
      overloaded{
          [&](const Skeleton::Ret& x) { return print_term(*x.term); },
          [&](const Skeleton::App& x) {
            std::string out = term_atom(*x.head);
            for (const auto& a : x.args) out += " " + term_atom(*a);
            return out;
          },
          [&](const Skeleton::Let& x) {
            return "let " + print_pattern(*x.pattern) + " = " + print_skeleton(*x.bound, indent + 1) + " in" + nl +
                   print_skeleton(*x.body, indent);
          },
          [&](const Skeleton::Branch& x) {
            std::string out = "branch";
            for (std::size_t i = 0; i < x.branches.size(); ++i) {
              if (i) out += nl + "or";
              out += nl + pad(1) + print_skeleton(*x.branches[i], indent + 1);
            }
            return out + nl + "end";
          },
          [&](const Skeleton::Match& x) {
            std::string out = "match " + print_term(*x.scrutinee) + " with";
            for (const auto& arm : x.arms)
              out += nl + "| " + print_pattern(*arm.pattern) + " ->" + nl + pad(1) +
                     print_skeleton(*arm.body, indent + 1);
            return out + nl + "end";
          },
      },
      s.node);
}

std::string print_semantics(const SkeletalSemantics& sem) {
  std::string out;
  for (const auto& t : sem.types()) {
    out += "type " + t.name;
    if (t.variants) {
      out += " =";
      for (const auto& c : *t.variants) {
        out += "\n| " + c.name;
        if (!c.arg.is_unit()) out += " " + type_atom(c.arg);
      }
    }
    out += "\n\n";
  }
  for (const auto& t : sem.terms()) {
    out += "val " + t.name + " : " + t.type.to_string();
    if (t.body) out += " =\n  " + print_term(*t.body);
    out += "\n\n";
  }
  return out;
}

std::string print_program(const Value& v, const std::function<std::string(const BaseV&)>& literal) {
  return std::visit(overloaded{
                        [&](const TupleV& x) {
                          std::string out = "(";
                          for (std::size_t i = 0; i < x.items.size(); ++i) {
                            if (i) out += ", ";
                            out += print_program(x.items[i], literal);
                          }
                          return out + ")";
                        },
                        [&](const ConstrV& x) {
                          if (const auto* t = get_if<TupleV>(x.arg)) {
                            if (t->items.empty()) return x.name;
                            return x.name + print_program(x.arg, literal);
                          }
                          std::string inner = print_program(x.arg, literal);
                          if (const auto* c = get_if<ConstrV>(x.arg)) {
                            const auto* t = get_if<TupleV>(c->arg);
                            if (!t || !t->items.empty()) inner = "(" + inner + ")";
                          }
                          return x.name + " " + inner;
                        },
                        [&](const BaseV& x) { return literal(x); },
                        [&](const auto&) -> std::string {
                          fail(ErrorKind::TypeMismatch, "not a program value: " + v.to_string());
                        },
                    },
                    v.node().v);
}

}  // namespace skel
