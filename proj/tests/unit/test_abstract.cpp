#include <doctest.h>

#include <json.hpp>

#include "support.hpp"

using namespace skeltest;

namespace {

Interval iv(long a, long b) { return Interval::of(a, b); }
Interval from(long a) { return {Bound::finite(a), Bound::pos_inf()}; }

AbsValue meaning(const char* f, const AbsValue& arg) {
  static const auto m = abstract_meanings();
  return m.at(f)(make_state({}), std::span<const AbsValue>(&arg, 1)).first;
}

AbsValue pair(AbsValue a, AbsValue b) { return AbsValue::tuple({std::move(a), std::move(b)}); }

const char* kMini = R"(type int
type lit
val add : (int, int) -> int
val isZero : int -> ()
val both (x : int) : int = branch x or add (x, x) end
val guard (i : int) : int = let () = isZero i in i
val first (p : (int, int)) : int = let (a, _) = p in a
val loop (x : int) : int = loop x
)";

}  // namespace

TEST_CASE("interval meanings") {
  CHECK(meaning("litToInt", abs_lit(5)) == abs_int(iv(5, 5)));
  CHECK(meaning("add", pair(abs_int(iv(1, 2)), abs_int(iv(3, 4)))) == abs_int(iv(4, 6)));
  CHECK(meaning("lt", pair(abs_int(iv(0, 1)), abs_int(iv(2, 3)))) == abs_int(iv(1, 1)));
  CHECK(meaning("lt", pair(abs_int(iv(0, 5)), abs_int(iv(3, 4)))) == abs_int(iv(0, 1)));
  CHECK(meaning("lt", pair(abs_int(iv(4, 6)), abs_int(iv(1, 4)))) == abs_int(iv(0, 0)));
  CHECK(meaning("isNotZero", abs_int(iv(0, 0))).is_bot());
  CHECK(meaning("isNotZero", abs_int(iv(0, 3))) == AbsValue::unit());
  CHECK(meaning("isZero", abs_int(iv(1, 5))).is_bot());
  CHECK(meaning("rand", pair(abs_lit(3), abs_lit(1))).is_bot());
  CHECK(meaning("rand", pair(abs_lit(1), abs_lit(3))) == abs_int(iv(1, 3)));
  CHECK(meaning("rand", pair(AbsValue::top(TypeExpr::base("lit")), abs_lit(3))).is_top());
  AbsValue s = abs_store({{{"x", iv(1, 2)}, {"y", iv(7, 9)}}});
  CHECK(meaning("read", pair(abs_ident("x"), s)) == abs_int(iv(1, 2)));
  CHECK(meaning("read", pair(abs_ident("z"), s)).is_bot());
  CHECK(meaning("read", pair(AbsValue::top(TypeExpr::base("ident")), s)) == abs_int(iv(1, 9)));
  CHECK(meaning("write", AbsValue::tuple({abs_ident("x"), s, abs_int(iv(0, 0))})) ==
        abs_store({{{"x", iv(0, 0)}, {"y", iv(7, 9)}}}));
  CHECK(meaning("write", AbsValue::tuple({AbsValue::top(TypeExpr::base("ident")), s, abs_int(iv(0, 0))})).is_top());
}

TEST_CASE("meanings agree with the reference oracle") {
  auto d = nlohmann::json::parse(slurp(source_path("tests/golden/derived.json")));
  for (const auto& ex : d["ilt"]) {
    auto a = ex["a"].get<std::vector<long>>(), b = ex["b"].get<std::vector<long>>();
    auto want = ex["result"].get<std::vector<long>>();
    CHECK(meaning("lt", pair(abs_int(iv(a[0], a[1])), abs_int(iv(b[0], b[1])))) == abs_int(iv(want[0], want[1])));
  }
  for (const auto& ex : d["iisNotZero"]) {
    auto i = ex["i"].get<std::vector<long>>();
    CHECK(!meaning("isNotZero", abs_int(iv(i[0], i[1]))).is_bot() == ex["defined"].get<bool>());
  }
  for (const auto& ex : d["iisZero"]) {
    auto i = ex["i"].get<std::vector<long>>();
    CHECK(!meaning("isZero", abs_int(iv(i[0], i[1]))).is_bot() == ex["defined"].get<bool>());
  }
}

TEST_CASE("update hooks record, widen and join") {
  auto spec = state_spec();
  ProgramPoint pp{{1}};
  auto in = [&](const AIState& A, const AbsStore& s) {
    AbsValue arg = AbsValue::tuple({abs_store(s), AbsValue::points({pp})});
    return spec.update_in.at("eval_stmt")(A, std::span<const AbsValue>(&arg, 1));
  };
  auto [A1, args1] = in(make_state({}), AbsStore{{{"x", iv(0, 0)}}});
  CHECK(state_of(A1).entries.at({pp, Pos::In}) == abs_store({{{"x", iv(0, 0)}}}));
  CHECK(args1[0] == AbsValue::tuple({abs_store({{{"x", iv(0, 0)}}}), AbsValue::points({pp})}));
  auto [A2, args2] = in(A1, AbsStore{{{"x", iv(0, 1)}}});
  CHECK(state_of(A2).entries.at({pp, Pos::In}) == abs_store({{{"x", from(0)}}}));

  WhileAIState rec;
  rec.entries.insert_or_assign({pp, Pos::Out}, abs_store({{{"x", iv(3, 3)}}}));
  AbsValue arg = AbsValue::tuple({abs_store({}), AbsValue::points({pp})});
  auto [A3, out] = spec.update_out.at("eval_stmt")(make_state(rec), std::span<const AbsValue>(&arg, 1),
                                                   abs_store({{{"x", iv(0, 0)}}}));
  CHECK(out == abs_store({{{"x", iv(0, 3)}}}));
  CHECK(state_of(A3).entries.at({pp, Pos::Out}) == out);

  AbsValue wrong = AbsValue::tuple({abs_store({})});
  try {
    spec.update_in.at("eval_stmt")(make_state({}), std::span<const AbsValue>(&wrong, 1));
    FAIL("expected HookShapeMismatch");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::HookShapeMismatch);
  }
}

TEST_CASE("abstract terms and skeletons") {
  auto sem = load_semantics(kMini, {});
  auto inst = abstract_instantiation();
  AbstractInterpreter ai(sem, inst);
  CHECK(ai.eval_term({}, *build::var("add")) == AbsValue::fun_set({AbsClosure{NamedAC{"add", 1, {}}}}));
  AbsEnv env{{"a", abs_int(iv(1, 1))}, {"b", abs_int(iv(2, 2))}};
  CHECK(ai.eval_term(env, *build::tuple({build::var("a"), build::var("b")})) ==
        AbsValue::tuple({abs_int(iv(1, 1)), abs_int(iv(2, 2))}));

  AbsValue x = abs_int(iv(1, 3));
  CHECK(ai.analyze("both", std::span<const AbsValue>(&x, 1)).value == abs_int(iv(1, 6)));
  AbsValue nz = abs_int(iv(1, 5));
  CHECK(ai.analyze("guard", std::span<const AbsValue>(&nz, 1)).value.is_bot());
  AbsValue two = ai.lattice().tuple_set({{abs_int(iv(1, 1)), abs_int(iv(2, 2))}, {abs_int(iv(5, 5)), abs_int(iv(6, 6))}});
  CHECK(ai.analyze("first", std::span<const AbsValue>(&two, 1)).value == abs_int(iv(1, 5)));
}

TEST_CASE("recursive frames are cut") {
  auto sem = load_semantics(kMini, {});
  auto inst = abstract_instantiation();
  AbstractInterpreter ai(sem, inst);
  std::size_t cuts = 0;
  ai.set_trace([&](const TraceEvent& e) { cuts += e.kind == TraceEvent::Kind::LoopCut; });
  AbsValue x = abs_int(iv(0, 0));
  CHECK(ai.analyze("loop", std::span<const AbsValue>(&x, 1)).value.is_bot());
  CHECK(cuts == 1);
}

TEST_CASE("bottom arguments short-circuit") {
  auto sem = load_semantics(kMini, {});
  auto inst = abstract_instantiation();
  AbstractInterpreter ai(sem, inst);
  AbsValue b = AbsValue::bot();
  auto r = ai.analyze("both", std::span<const AbsValue>(&b, 1));
  CHECK(r.value.is_bot());
}

TEST_CASE("applying top of a function type is reported") {
  auto s2 = load_semantics("type int\nval k : int\nval call (f : int -> int) : int = f k\n", {});
  auto inst = abstract_instantiation();
  inst.constants.insert_or_assign("k", abs_int(iv(1, 1)));
  AbstractInterpreter ai(s2, inst);
  AbsValue top = AbsValue::top(parse_type("int -> int"));
  try {
    ai.analyze("call", std::span<const AbsValue>(&top, 1));
    FAIL("expected TopFunctionApplied");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::TopFunctionApplied);
  }
}

TEST_CASE("abstract matching") {
  Value prg = load_prg("tests/corpus/counter_loop.prg");
  auto inst = abstract_instantiation();
  AbstractInterpreter ai(while_semantics(), inst, prg);
  auto envs = ai.match({{}}, *build::ptuple({build::pvar("a"), build::pvar("b")}),
                       ai.lattice().tuple_set({{abs_int(iv(1, 1)), abs_int(iv(2, 2))}, {abs_int(iv(5, 5)), abs_int(iv(6, 6))}}));
  CHECK(envs.size() == 2);
  CHECK(ai.match({{}}, *build::pvar("a"), AbsValue::bot()).empty());
  auto w = ai.match({{}}, *build::pconstr("While", build::ptuple({build::pvar("c"), build::pvar("t")})),
                    AbsValue::points({{{1}}}));
  REQUIRE(w.size() == 1);
  CHECK(w[0].at("c") == AbsValue::points({{{1, 0}}}));
  CHECK(w[0].at("t") == AbsValue::points({{{1, 1}}}));
  CHECK(subterm_at(prg, {{1, 0}}) == parse_program_term(R"(Leq(Var "x", Const 3))", while_semantics(), read_literal,
                                                        TypeExpr::base("expr")));
}

TEST_CASE("analysis of the While examples") {
  ProgramSetup setup{while_semantics()};
  auto inst = abstract_instantiation();
  Analysis t2 = analyze_program(setup, inst, load_prg("tests/corpus/counter_loop.prg"), abs_store({}));
  CHECK(t2.result == abs_store({{{"x", from(0)}}}));
  Analysis skip = analyze_program(setup, inst, parse_stmt("Skip"), abs_store({{{"y", iv(1, 2)}}}));
  CHECK(skip.result == abs_store({{{"y", iv(1, 2)}}}));
  CHECK(state_of(skip.state).entries.at({ProgramPoint{}, Pos::In}) == abs_store({{{"y", iv(1, 2)}}}));
  CHECK(state_of(skip.state).entries.at({ProgramPoint{}, Pos::Out}) == abs_store({{{"y", iv(1, 2)}}}));
  Analysis loop = analyze_program(setup, inst, load_prg("tests/programs/loop_forever.prg"), abs_store({}));
  auto golden = nlohmann::ordered_json::parse(slurp(source_path("tests/golden/loop_forever_analysis.json")));
  CHECK(report_json(loop) == golden);
}

TEST_CASE("step budget is enforced") {
  ProgramSetup setup{while_semantics()};
  auto inst = abstract_instantiation();
  try {
    analyze_program(setup, inst, load_prg("tests/corpus/counter_loop.prg"), abs_store({}), 20);
    FAIL("expected StepBudgetExceeded");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::StepBudgetExceeded);
  }
}

TEST_CASE("the final AI-state covers every intermediate one") {
  auto inst = abstract_instantiation();
  Value prg = load_prg("tests/corpus/counter_loop.prg");
  AbstractInterpreter ai(while_semantics(), inst, prg);
  std::vector<AIState> seen;
  ai.set_trace([&](const TraceEvent& e) { seen.push_back(e.state); });
  AbsValue arg = initial_abstract_args();
  AIState final = ai.analyze("eval_stmt", std::span<const AbsValue>(&arg, 1)).state;
  CHECK(!seen.empty());
  for (const auto& s : seen) CHECK(state_leq(s, final));
}
