#include "skelai/value.hpp"

#include <sstream>

#include "skelai/overloaded.hpp"

namespace skel {

std::string ProgramPoint::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  return out + "]";
}

Value Value::tuple(std::vector<Value> items) {
  return Value(std::make_shared<const ValueNode>(ValueNode{TupleV{std::move(items)}}));
}
Value Value::constr(std::string name, Value arg) {
  return Value(std::make_shared<const ValueNode>(ValueNode{ConstrV{std::move(name), std::move(arg)}}));
}
Value Value::named_closure(std::string function, unsigned arity, std::vector<Value> collected) {
  return Value(
      std::make_shared<const ValueNode>(ValueNode{NamedClosureV{std::move(function), arity, std::move(collected)}}));
}
Value Value::anon_closure(std::shared_ptr<const TypingEnv> gamma, TermPtr lambda, Env env) {
  return Value(std::make_shared<const ValueNode>(
      ValueNode{AnonClosureV{std::move(gamma), std::move(lambda), std::move(env)}}));
}
Value Value::base(std::string type, DatumPtr payload) {
  return Value(std::make_shared<const ValueNode>(ValueNode{BaseV{std::move(type), std::move(payload)}}));
}
Value Value::point(ProgramPoint pp) {
  return Value(std::make_shared<const ValueNode>(ValueNode{PPointV{std::move(pp)}}));
}

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_values(const std::vector<Value>& a, const std::vector<Value>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = compare(a[i], b[i])) return c;
  return cmp3(a.size(), b.size());
}

}  // namespace

int compare(const Env& a, const Env& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (int c = ia->first.compare(ib->first)) return c < 0 ? -1 : 1;
    if (int c = compare(ia->second, ib->second)) return c;
  }
  return cmp3(a.size(), b.size());
}

int compare(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return 0;
  const auto& va = a.node_->v;
  const auto& vb = b.node_->v;
  if (va.index() != vb.index()) return cmp3(va.index(), vb.index());
  return std::visit(
      overloaded{
          [&](const TupleV& x) { return compare_values(x.items, std::get<TupleV>(vb).items); },
          [&](const ConstrV& x) {
            const auto& y = std::get<ConstrV>(vb);
            if (int c = x.name.compare(y.name)) return c < 0 ? -1 : 1;
            return compare(x.arg, y.arg);
          },
          [&](const NamedClosureV& x) {
            const auto& y = std::get<NamedClosureV>(vb);
            if (int c = x.function.compare(y.function)) return c < 0 ? -1 : 1;
            if (int c = cmp3(x.arity, y.arity)) return c;
            return compare_values(x.collected, y.collected);
          },
          [&](const AnonClosureV& x) {
            const auto& y = std::get<AnonClosureV>(vb);
            if (int c = cmp3(x.fn().id, y.fn().id)) return c;
            return compare(x.env, y.env);
          },
          [&](const BaseV& x) {
            const auto& y = std::get<BaseV>(vb);
            if (int c = x.type.compare(y.type)) return c < 0 ? -1 : 1;
            return x.payload->compare(*y.payload);
          },
          [&](const PPointV& x) { return cmp3(x.pp, std::get<PPointV>(vb).pp); },
      },
      va);
}

std::string to_string(const Env& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : env) {
    if (!first) out += ", ";
    first = false;
    out += name + " = " + value.to_string();
  }
  return out + "}";
}

std::string Value::to_string() const {
  return std::visit(overloaded{
                        [](const TupleV& x) {
                          std::string out = "(";
                          for (std::size_t i = 0; i < x.items.size(); ++i) {
                            if (i) out += ", ";
                            out += x.items[i].to_string();
                          }
                          return out + ")";
                        },
                        [](const ConstrV& x) {
                          if (const auto* t = get_if<TupleV>(x.arg)) {
                            if (t->items.empty()) return x.name;
                            return x.name + x.arg.to_string();
                          }
                          std::string inner = x.arg.to_string();
                          if (const auto* c = get_if<ConstrV>(x.arg)) {
                            const auto* ct = get_if<TupleV>(c->arg);
                            if (!ct || !ct->items.empty()) inner = "(" + inner + ")";
                          }
                          return x.name + " " + inner;
                        },
                        [](const NamedClosureV& x) {
                          std::string out = "<" + x.function + "/" + std::to_string(x.arity);
                          for (const auto& arg : x.collected) out += " " + arg.to_string();
                          return out + ">";
                        },
                        [](const AnonClosureV& x) {
                          return "<lambda#" + std::to_string(x.fn().id) + " " + skel::to_string(x.env) + ">";
                        },
                        [](const BaseV& x) { return x.payload->render(); },
                        [](const PPointV& x) { return "@" + x.pp.to_string(); },
                    },
                    node_->v);
}

std::string to_string(const ValueSet& values) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ", ";
    first = false;
    out += v.to_string();
  }
  return out + "}";
}

}  // namespace skel
