#include "skelai/whilelang/report.hpp"

#include <map>

namespace skel::whilelang {

using nlohmann::ordered_json;

std::vector<PointReport> program_points(const AIState& state) {
  std::map<ProgramPoint, PointReport> by_pp;
  for (const auto& [key, store] : state_of(state).entries) {
    auto& r = by_pp[key.first];
    r.pp = key.first;
    (key.second == Pos::In ? r.in : r.out) = store;
  }
  std::vector<PointReport> out;
  for (auto& [pp, r] : by_pp) out.push_back(std::move(r));
  return out;
}

namespace {

ordered_json bound_json(const Bound& b) {
  if (!b.is_finite()) return render(b);
  if (b.n >= std::numeric_limits<std::int64_t>::min() && b.n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(b.n);
  return b.n.str();
}

}  // namespace

ordered_json store_json(const AbsValue& store) {
  if (store.is_bot()) return "bot";
  if (store.is_top()) return "top";
  const auto& s = unbox<AbsStore>(*get_if<BaseA>(store)->payload);
  ordered_json out = ordered_json::object();
  for (const auto& [k, i] : s.vars) out[k] = ordered_json::array({bound_json(i.lo), bound_json(i.hi)});
  return out;
}

ordered_json report_json(const Analysis& a) {
  ordered_json out;
  out["result"] = store_json(a.result);
  ordered_json points = ordered_json::array();
  for (const auto& r : program_points(a.state)) {
    ordered_json p;
    p["pp"] = r.pp.path;
    p["in"] = r.in ? store_json(*r.in) : ordered_json(nullptr);
    p["out"] = r.out ? store_json(*r.out) : ordered_json(nullptr);
    points.push_back(std::move(p));
  }
  out["program_points"] = std::move(points);
  return out;
}

std::string report_text(const Analysis& a) {
  std::string out = "result: " + a.result.to_string() + "\n";
  for (const auto& r : program_points(a.state)) {
    out += r.pp.to_string() + "\n";
    out += "  in:  " + (r.in ? r.in->to_string() : std::string("-")) + "\n";
    out += "  out: " + (r.out ? r.out->to_string() : std::string("-")) + "\n";
  }
  out += "steps: " + std::to_string(a.steps) + "\n";
  return out;
}

std::string render_results(const ValueSet& results) { return to_string(results); }

namespace {

class Generator {
 public:
  Generator(std::mt19937_64& rng, const GenOptions& o) : rng_(rng), o_(o) {}

  Value program() {
    // Every data variable starts defined so reads are meaningful.
    Value init = assign(o_.vars.front(), literal_expr());
    for (std::size_t i = 1; i < o_.vars.size(); ++i) init = seq(init, assign(o_.vars[i], literal_expr()));
    return seq(init, stmt(o_.max_depth - 1));
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  static Value c(const std::string& name, std::vector<Value> args) {
    if (args.empty()) return Value::constr(name, Value::unit());
    if (args.size() == 1) return Value::constr(name, args.front());
    return Value::constr(name, Value::tuple(std::move(args)));
  }
  static Value seq(Value a, Value b) { return c("Seq", {std::move(a), std::move(b)}); }
  static Value assign(const std::string& x, Value e) { return c("Assign", {ident_value(x), std::move(e)}); }
  static Value konst(int n) { return c("Const", {lit_value(n)}); }
  static Value var(const std::string& x) { return c("Var", {ident_value(x)}); }

  std::string readable() {
    int n = static_cast<int>(o_.vars.size() + counters_.size());
    int k = pick(0, n - 1);
    if (k < static_cast<int>(o_.vars.size())) return o_.vars[k];
    return counters_[k - o_.vars.size()];
  }

  Value rand() {
    int lo = pick(-3, 3);
    return c("Rand", {lit_value(lo), lit_value(lo + pick(0, o_.max_rand_width))});
  }

  Value literal_expr() { return pick(0, 1) ? konst(pick(-3, 5)) : rand(); }

  Value expr(int depth) {
    int choice = depth <= 1 ? pick(0, 2) : pick(0, 5);
    switch (choice) {
      case 0: return konst(pick(-3, 5));
      case 1: return var(readable());
      case 2: return rand();
      case 3:
      case 4: return c("Plus", {expr(depth - 1), expr(depth - 1)});
      default: return c("Leq", {expr(depth - 1), expr(depth - 1)});
    }
  }

  Value stmt(int depth) {
    int choice = depth <= 1 ? pick(0, 1) : pick(0, 5);
    switch (choice) {
      case 0: return c("Skip", {});
      case 1: return assign(o_.vars[pick(0, static_cast<int>(o_.vars.size()) - 1)], expr(2));
      case 2:
      case 3: return seq(stmt(depth - 1), stmt(depth - 1));
      case 4: return c("If", {expr(2), stmt(depth - 1), stmt(depth - 1)});
      default: {
        std::string i = "i" + std::to_string(next_counter_++);
        Value bound = konst(pick(0, o_.max_loop_bound));
        counters_.push_back(i);
        Value body = seq(stmt(depth - 2 > 0 ? depth - 2 : 1), assign(i, c("Plus", {var(i), konst(1)})));
        counters_.pop_back();
        return seq(assign(i, konst(0)), c("While", {c("Leq", {var(i), bound}), body}));
      }
    }
  }

  std::mt19937_64& rng_;
  const GenOptions& o_;
  std::vector<std::string> counters_;
  int next_counter_ = 0;
};

}  // namespace

Value generate_program(std::mt19937_64& rng, const GenOptions& options) { return Generator(rng, options).program(); }

}  // namespace skel::whilelang
