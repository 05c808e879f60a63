#include <doctest.h>

#include "support.hpp"

using namespace skeltest;

TEST_CASE("bundled semantics declares 6 types and 10 terms") {
  auto sem = parse_skel(while_source());
  CHECK(sem.types().size() == 6);
  CHECK(sem.terms().size() == 10);
  int unspecified = 0;
  for (const auto& t : sem.terms()) unspecified += !t.specified();
  CHECK(unspecified == 8);
  CHECK(sem.find_term("eval_stmt")->type == parse_type("(store, stmt) -> store"));
}

TEST_CASE("empty input gives an empty semantics") {
  auto sem = parse_skel("");
  CHECK(sem.types().empty());
  CHECK(sem.terms().empty());
  CHECK(parse_skel("(* only (* nested *) comments *)").terms().empty());
}

TEST_CASE("parameter sugar desugars to a lambda") {
  auto a = parse_skel("type int\nval f (x : int) : int = x\n");
  auto b = parse_skel("type int\nval f : int -> int = \\x : int -> x\n");
  const TermDecl& fa = a.terms()[0];
  const TermDecl& fb = b.terms()[0];
  CHECK(fa.type == fb.type);
  CHECK(equal(*fa.body, *fb.body));
  auto c = parse_skel("type int\nval f : int → int = λ x : int → x\n");
  CHECK(equal(*fa.body, *c.terms()[0].body));
}

TEST_CASE("printing and reparsing preserves the AST") {
  auto sem = parse_skel(while_source());
  std::string printed = print_semantics(sem);
  auto back = parse_skel(printed);
  REQUIRE(back.terms().size() == sem.terms().size());
  for (std::size_t i = 0; i < sem.terms().size(); ++i) {
    CHECK(sem.terms()[i].name == back.terms()[i].name);
    CHECK(sem.terms()[i].type == back.terms()[i].type);
    if (sem.terms()[i].specified()) CHECK(equal(*sem.terms()[i].body, *back.terms()[i].body));
  }
  CHECK(print_semantics(back) == printed);
}

TEST_CASE("nested lambdas, lets, branches and tuples round trip") {
  const char* src = R"(type int
type t = | A int | B (int, int)
val add : (int, int) -> int
val h : t -> int -> int = \v : t -> \k : int ->
  match v with
  | A n -> branch add (n, k) or let (p, _) = (n, n) in p end
  | B (a, b) -> let f = \z : int -> add (z, a) in f b
  end
)";
  auto sem = load_semantics(src, {});
  auto back = load_semantics(print_semantics(sem), {});
  CHECK(equal(*sem.terms()[1].body, *back.terms()[1].body));
  CHECK(funs(sem).size() == 3);
}

TEST_CASE("parse errors carry spans inside the input") {
  for (const char* bad : {"type", "val f : int = ", "type t = | A int\nval g : int -> int = \\x : int -> match x with end",
                          "val f : int -> = x", "type 3"}) {
    try {
      parse_skel(bad, "bad.sk");
      FAIL("accepted " << bad);
    } catch (const SkelError& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      REQUIRE(e.span().has_value());
      CHECK(e.span()->file == "bad.sk");
      CHECK(e.span()->start_line >= 1);
    }
  }
}

TEST_CASE("redeclarations are rejected") {
  try {
    parse_skel("type int\ntype int\n");
    FAIL("accepted duplicate type");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::Redeclaration);
  }
  CHECK_THROWS_AS(parse_skel("type int\nval a : int\nval a : int\n"), SkelError);
  CHECK_THROWS_AS(parse_skel("type int\ntype t = | A int\ntype u = | A int\n"), SkelError);
}

TEST_CASE("unbound names are reported by the checker") {
  try {
    load_semantics("type int\nval f (x : int) : int = g x\n", {});
    FAIL("accepted unbound g");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::UnboundName);
  }
}

TEST_CASE("program terms are parsed against the expected type") {
  const auto& sem = while_semantics();
  Value prg = parse_stmt(R"(Seq(Assign("x", Const 0), Assign("y", Const 1)))");
  CHECK(print_stmt(prg) == R"(Seq(Assign("x", Const 0), Assign("y", Const 1)))");
  Value skip = parse_stmt("Skip");
  CHECK(skip == Value::constr("Skip", Value::unit()));
  CHECK(parse_stmt("Skip()") == skip);
  CHECK(parse_stmt(R"(Assign("x", Const -4))") == parse_stmt(R"(Assign("x",Const(-4)))"));
  try {
    parse_program_term(R"(Const "x")", sem, read_literal, TypeExpr::base("expr"));
    FAIL("accepted a string literal for lit");
  } catch (const SkelError& e) {
    CHECK(e.kind() == ErrorKind::Type);
  }
  CHECK_THROWS_AS(parse_stmt("Const 1"), SkelError);
  CHECK_THROWS_AS(parse_stmt("Seq(Skip)"), SkelError);
  CHECK_THROWS_AS(parse_stmt("Skip Skip"), SkelError);
}

TEST_CASE("generated programs print and reparse identically") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Value prg = generate_program(rng);
    CHECK(parse_stmt(print_stmt(prg)) == prg);
  }
}
