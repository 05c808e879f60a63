#include <doctest.h>

#include "support.hpp"

using namespace skeltest;

namespace {

TypeExpr ty(const char* s) { return parse_type(s); }

const Value& running_program() {
  static const Value prg = parse_stmt(R"(Seq(Assign("x", Const 0), Assign("y", Const 1)))");
  return prg;
}

}  // namespace

TEST_CASE("arity counts leading arrows") {
  CHECK(arity(ty("(store, stmt) -> store")) == 1);
  CHECK(arity(ty("int")) == 0);
  CHECK(arity(ty("int -> int -> int")) == 2);
  CHECK(strip_arrows(ty("int -> lit -> store"), 1) == ty("lit -> store"));
}

TEST_CASE("type expressions compare structurally") {
  CHECK(ty("(int, int) -> int") == TypeExpr::arrow(TypeExpr::tuple({TypeExpr::base("int"), TypeExpr::base("int")}),
                                                   TypeExpr::base("int")));
  CHECK(ty("()").is_unit());
  CHECK_FALSE(ty("int") == ty("lit"));
}

TEST_CASE("subterm_at follows child indices") {
  const Value& prg = running_program();
  CHECK(subterm_at(prg, {}) == prg);
  CHECK(subterm_at(prg, {{0, 1}}) == parse_program_term("Const 0", while_semantics(), read_literal, ty("expr")));
  CHECK(subterm_at(prg, {{1}}) == parse_stmt(R"(Assign("y", Const 1))"));
  try {
    subterm_at(prg, {{5}});
    FAIL("expected InvalidPath");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::InvalidPath);
  }
  CHECK_THROWS_AS(subterm_at(prg, {{0, 0, 0}}), SkelError);
}

TEST_CASE("unfold reveals one constructor") {
  const Value& prg = running_program();
  auto [name, arg] = unfold(while_semantics(), prg, {});
  CHECK(name == "Seq");
  CHECK(arg == Value::tuple({Value::point({{0}}), Value::point({{1}})}));
  auto [n2, a2] = unfold(while_semantics(), prg, {{0}});
  CHECK(n2 == "Assign");
  CHECK(a2 == Value::tuple({ident_value("x"), Value::point({{0, 1}})}));
}

TEST_CASE("resolve_program_points substitutes subterms") {
  const Value& prg = running_program();
  Value v = Value::tuple({store_value({}), Value::point({{1}})});
  CHECK(resolve_program_points(prg, v) == Value::tuple({store_value({}), subterm_at(prg, {{1}})}));
}

TEST_CASE("program points order and render") {
  ProgramPoint root;
  CHECK(root.is_root());
  CHECK(root.to_string() == "[]");
  CHECK(root.child(0).child(1).to_string() == "[0,1]");
  CHECK(root < root.child(0));
}

TEST_CASE("value sets are ordered and deduplicated") {
  ValueSet s{int_value(2), int_value(1), int_value(2)};
  CHECK(s.size() == 2);
  CHECK(to_string(s) == "{1, 2}");
  CHECK(Value::unit() == Value::tuple({}));
}

TEST_CASE("errors carry kind and span") {
  SkelError e(ErrorKind::Parse, "bad token", SourceSpan{"f.sk", 2, 3, 2, 4});
  CHECK(e.kind() == ErrorKind::Parse);
  CHECK(e.message() == "bad token");
  CHECK(std::string(e.what()).find("f.sk") != std::string::npos);
}

TEST_CASE("funs collects every abstraction") {
  auto fs = funs(while_semantics());
  CHECK(fs.size() == 2);
  auto nested = load_semantics(R"(type int
val add : (int, int) -> int
val f : int -> int -> int = \a : int -> let g = \b : int -> add (a, b) in g
)",
                               {});
  auto ns = funs(nested);
  REQUIRE(ns.size() == 2);
  CHECK(ns[1].env.count("a") == 1);
  CHECK(funs(load_semantics("type int\nval c : int\n", {})).empty());
}

TEST_CASE("pattern extension matches shapes") {
  const auto& sem = while_semantics();
  auto env = extend(sem, {}, *build::ptuple({build::pvar("s"), build::pvar("e")}), ty("(store, expr)"));
  CHECK(env.at("s") == ty("store"));
  CHECK(env.at("e") == ty("expr"));
  CHECK_THROWS_AS(extend(sem, {}, *build::ptuple({build::pvar("s")}), ty("(store, expr)")), SkelError);
  CHECK_THROWS_AS(extend(sem, {}, *build::pconstr("Skip", build::pwild()), ty("expr")), SkelError);
}

TEST_CASE("match arm with a constructor of another type is rejected") {
  const char* src = R"(type int
type e = | A int
type f = | B int
val g (x : e) : int = match x with | B n -> n end
)";
  try {
    load_semantics(src, {});
    FAIL("expected a type error");
  } catch (const SkelError& err) {
    CHECK(err.kind() == ErrorKind::Type);
  }
}
