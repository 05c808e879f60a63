#pragma once

// Order, join, widening and concretisation for abstract values of every
// type, lifted from instantiation-supplied base domains.

#include <cstddef>
#include <map>
#include <memory>
#include <string>

#include "skelai/abs_value.hpp"
#include "skelai/semantics.hpp"
#include "skelai/value.hpp"

namespace skel {

/// Analysis-specific global state; owned and interpreted by the instantiation.
using AIState = DatumPtr;

/// Lattice operations for one unspecified type. Payloads never represent
/// bottom; a null payload returned from join/widen/inject stands for top.
class BaseDomain {
 public:
  virtual ~BaseDomain() = default;

  /// Payloads equivalent to top are canonicalised to the type's top element.
  virtual bool is_top(const Datum& payload) const = 0;
  virtual bool leq(const Datum& a, const Datum& b) const = 0;
  virtual DatumPtr join(const Datum& a, const Datum& b) const = 0;
  virtual DatumPtr widen(const Datum& a, const Datum& b) const { return join(a, b); }
  virtual bool gamma_contains(const AIState& state, const Datum& abstract, const Datum& concrete) const = 0;
  /// Best abstraction of a single concrete payload (program constants).
  virtual DatumPtr inject(const Datum& concrete) const = 0;
};

using BaseDomains = std::map<std::string, std::shared_ptr<const BaseDomain>>;

class Lattice {
 public:
  static constexpr std::size_t kDefaultTupleCap = 64;

  Lattice(const SkeletalSemantics& sem, BaseDomains domains, std::size_t tuple_cap = kDefaultTupleCap);

  const SkeletalSemantics& semantics() const { return sem_; }
  const BaseDomain& domain(const std::string& type) const;

  AbsValue bot() const { return AbsValue::bot(); }
  AbsValue top(const TypeExpr& type) const;

  /// Normal-form constructors.
  AbsValue base(const std::string& type, DatumPtr payload) const;
  AbsValue tuple_set(std::vector<AbsTuple> tuples) const;
  AbsValue fun_set(std::vector<AbsClosure> closures) const;
  AbsValue normalize(const AbsValue& v) const;

  bool leq(const AbsValue& a, const AbsValue& b) const;
  AbsValue join(const AbsValue& a, const AbsValue& b) const;
  AbsValue widen(const AbsValue& a, const AbsValue& b) const;

  bool leq(const AbsEnv& a, const AbsEnv& b) const;
  AbsEnv join(const AbsEnv& a, const AbsEnv& b) const;

  bool gamma_contains(const AIState& state, const AbsValue& a, const Value& v) const;
  bool gamma_contains(const AIState& state, const AbsEnv& a, const Env& e) const;

  /// Injects a concrete value into the abstract world.
  AbsValue lift(const Value& v) const;
  AbsEnv lift(const Env& env) const;

 private:
  bool leq_tuple(const AbsTuple& a, const AbsTuple& b) const;
  bool leq_closure(const AbsClosure& a, const AbsClosure& b) const;
  std::vector<AbsTuple> antichain(std::vector<AbsTuple> tuples) const;
  TypeExpr owner_type(const std::string& constructor) const;

  const SkeletalSemantics& sem_;
  BaseDomains domains_;
  std::size_t tuple_cap_;
};

}  // namespace skel
