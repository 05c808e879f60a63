#pragma once

// Random abstract values, concrete witnesses and file helpers shared by the
// unit tests and the acceptance runner.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skelai/abstract.hpp"
#include "skelai/harness.hpp"
#include "skelai/parser.hpp"
#include "skelai/printer.hpp"
#include "skelai/whilelang/report.hpp"
#include "skelai/whilelang/while.hpp"

namespace skeltest {

using namespace skel;
using namespace skel::whilelang;

std::string source_path(const std::string& relative);
std::string slurp(const std::string& path);
Value load_prg(const std::string& relative);

struct Rng {
  explicit Rng(std::uint64_t seed) : g(seed) {}
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
  bool coin(int percent = 50) { return pick(1, 100) <= percent; }
  template <class T>
  const T& choose(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
  }
  std::mt19937_64 g;
};

/// Every interval whose finite bounds lie in [lo, hi], plus the infinite caps.
std::vector<Interval> all_intervals(int lo, int hi);

Interval random_interval(Rng& r, int lo = -3, int hi = 3);
AbsValue random_abs_int(Rng& r);
AbsValue random_abs_ident(Rng& r);
AbsValue random_abs_lit(Rng& r);
AbsValue random_abs_store(Rng& r, const std::vector<std::string>& vars = {"x", "y", "z"});
AbsValue random_abs_expr(Rng& r, int depth = 2);
WhileAIState random_ai_state(Rng& r, const std::vector<ProgramPoint>& points);

/// A small semantics with a closure-producing function, for function-set tests.
struct ClosureFixture {
  ClosureFixture();
  const SkeletalSemantics& sem() const { return sem_; }
  AbsValue random_abs(Rng& r) const;
  Value random_value(Rng& r) const;
  AbsClosure anon(const AbsValue& n) const;
  TypeExpr type() const;

  SkeletalSemantics sem_;
  std::shared_ptr<const TypingEnv> gamma;
  TermPtr lambda;
};

/// Type-directed sampling of concrete values for the While types and the
/// closure fixture. `member_of` returns an element of γ(a) when one exists
/// in a small window, otherwise nullopt.
class Sampler {
 public:
  Sampler(const SkeletalSemantics& sem, const ClosureFixture* closures = nullptr) : sem_(sem), fx_(closures) {}

  Value random_of(Rng& r, const TypeExpr& type, int depth = 2) const;
  std::optional<Value> member_of(Rng& r, const AbsValue& a, const TypeExpr& type) const;

 private:
  const SkeletalSemantics& sem_;
  const ClosureFixture* fx_;
};

Value random_store(Rng& r);

}  // namespace skeltest
