#include "skelai/abs_value.hpp"

#include <algorithm>

#include "skelai/overloaded.hpp"

namespace skel {

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int cmp_str(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

template <class T>
void sort_unique(std::vector<T>& items) {
  std::sort(items.begin(), items.end(), [](const T& a, const T& b) { return compare(a, b) < 0; });
  items.erase(std::unique(items.begin(), items.end(), [](const T& a, const T& b) { return compare(a, b) == 0; }),
              items.end());
}

}  // namespace

AbsValue AbsValue::bot() {
  static const auto node = std::make_shared<const AbsNode>(AbsNode{BotA{}});
  return AbsValue(node);
}

AbsValue AbsValue::top(TypeExpr type) {
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{TopA{std::move(type)}}));
}

AbsValue AbsValue::constr(std::string name, AbsValue arg) {
  if (arg.is_bot()) return bot();
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{ConstrA{std::move(name), std::move(arg)}}));
}

AbsValue AbsValue::tuple_set(std::vector<AbsTuple> tuples) {
  std::erase_if(tuples, [](const AbsTuple& t) {
    return std::any_of(t.begin(), t.end(), [](const AbsValue& v) { return v.is_bot(); });
  });
  if (tuples.empty()) return bot();
  sort_unique(tuples);
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{TupleSetA{std::move(tuples)}}));
}

AbsValue AbsValue::fun_set(std::vector<AbsClosure> closures) {
  if (closures.empty()) return bot();
  sort_unique(closures);
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{FunSetA{std::move(closures)}}));
}

AbsValue AbsValue::base(std::string type, DatumPtr payload) {
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{BaseA{std::move(type), std::move(payload)}}));
}

AbsValue AbsValue::points(std::vector<ProgramPoint> pps) {
  if (pps.empty()) return bot();
  std::sort(pps.begin(), pps.end());
  pps.erase(std::unique(pps.begin(), pps.end()), pps.end());
  return AbsValue(std::make_shared<const AbsNode>(AbsNode{PPSetA{std::move(pps)}}));
}

bool AbsValue::is_bot() const { return std::holds_alternative<BotA>(node_->v); }
bool AbsValue::is_top() const { return std::holds_alternative<TopA>(node_->v); }

int compare(const AbsTuple& a, const AbsTuple& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = compare(a[i], b[i])) return c;
  return cmp3(a.size(), b.size());
}

int compare(const AbsEnv& a, const AbsEnv& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (int c = cmp_str(ia->first, ib->first)) return c;
    if (int c = compare(ia->second, ib->second)) return c;
  }
  return cmp3(a.size(), b.size());
}

int compare(const AbsClosure& a, const AbsClosure& b) {
  if (a.v.index() != b.v.index()) return cmp3(a.v.index(), b.v.index());
  if (const auto* x = std::get_if<NamedAC>(&a.v)) {
    const auto& y = std::get<NamedAC>(b.v);
    if (int c = cmp_str(x->function, y.function)) return c;
    if (int c = cmp3(x->arity, y.arity)) return c;
    return compare(x->collected, y.collected);
  }
  const auto& x = std::get<AnonAC>(a.v);
  const auto& y = std::get<AnonAC>(b.v);
  if (int c = cmp3(x.fn().id, y.fn().id)) return c;
  return compare(x.env, y.env);
}

int compare(const AbsValue& a, const AbsValue& b) {
  if (a.node_ == b.node_) return 0;
  const auto& va = a.node_->v;
  const auto& vb = b.node_->v;
  if (va.index() != vb.index()) return cmp3(va.index(), vb.index());
  return std::visit(overloaded{
                        [&](const BotA&) { return 0; },
                        [&](const TopA& x) { return compare(x.type, std::get<TopA>(vb).type); },
                        [&](const ConstrA& x) {
                          const auto& y = std::get<ConstrA>(vb);
                          if (int c = cmp_str(x.name, y.name)) return c;
                          return compare(x.arg, y.arg);
                        },
                        [&](const TupleSetA& x) {
                          const auto& y = std::get<TupleSetA>(vb);
                          for (std::size_t i = 0; i < x.tuples.size() && i < y.tuples.size(); ++i)
                            if (int c = compare(x.tuples[i], y.tuples[i])) return c;
                          return cmp3(x.tuples.size(), y.tuples.size());
                        },
                        [&](const FunSetA& x) {
                          const auto& y = std::get<FunSetA>(vb);
                          for (std::size_t i = 0; i < x.closures.size() && i < y.closures.size(); ++i)
                            if (int c = compare(x.closures[i], y.closures[i])) return c;
                          return cmp3(x.closures.size(), y.closures.size());
                        },
                        [&](const BaseA& x) {
                          const auto& y = std::get<BaseA>(vb);
                          if (int c = cmp_str(x.type, y.type)) return c;
                          return x.payload->compare(*y.payload);
                        },
                        [&](const PPSetA& x) { return cmp3(x.points, std::get<PPSetA>(vb).points); },
                    },
                    va);
}

std::string to_string(const AbsEnv& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : env) {
    if (!first) out += ", ";
    first = false;
    out += name + " = " + value.to_string();
  }
  return out + "}";
}

static std::string tuple_to_string(const AbsTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += t[i].to_string();
  }
  return out + ")";
}

std::string AbsValue::to_string() const {
  return std::visit(
      overloaded{
          [](const BotA&) { return std::string("bot"); },
          [](const TopA&) { return std::string("top"); },
          [](const ConstrA& x) {
            std::string inner = x.arg.to_string();
            if (const auto* t = get_if<TupleSetA>(x.arg); t && t->tuples.size() == 1) {
              if (t->tuples.front().empty()) return x.name;
              return x.name + tuple_to_string(t->tuples.front());
            }
            return x.name + " " + inner;
          },
          [](const TupleSetA& x) {
            if (x.tuples.size() == 1) return tuple_to_string(x.tuples.front());
            std::string out = "{";
            for (std::size_t i = 0; i < x.tuples.size(); ++i) {
              if (i) out += ", ";
              out += tuple_to_string(x.tuples[i]);
            }
            return out + "}";
          },
          [](const FunSetA& x) {
            std::string out = "{";
            for (std::size_t i = 0; i < x.closures.size(); ++i) {
              if (i) out += ", ";
              if (const auto* n = std::get_if<NamedAC>(&x.closures[i].v)) {
                out += "<" + n->function + "/" + std::to_string(n->arity);
                for (const auto& a : n->collected) out += " " + a.to_string();
                out += ">";
              } else {
                const auto& a = std::get<AnonAC>(x.closures[i].v);
                out += "<lambda#" + std::to_string(a.fn().id) + " " + skel::to_string(a.env) + ">";
              }
            }
            return out + "}";
          },
          [](const BaseA& x) { return x.payload->render(); },
          [](const PPSetA& x) {
            std::string out = "{";
            for (std::size_t i = 0; i < x.points.size(); ++i) {
              if (i) out += ", ";
              out += "@" + x.points[i].to_string();
            }
            return out + "}";
          },
      },
      node_->v);
}

}  // namespace skel
