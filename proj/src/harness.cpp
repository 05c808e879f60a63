#include "skelai/harness.hpp"

#include <pthread.h>

namespace skel {

namespace {

struct ThreadJob {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* thread_main(void* raw) {
  auto* job = static_cast<ThreadJob*>(raw);
  try {
    (*job->fn)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_large_stack(const std::function<void()>& fn, std::size_t stack_bytes) {
  ThreadJob job{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, thread_main, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

TypeExpr program_type(const SkeletalSemantics& sem, const std::string& entry) {
  const TermDecl* decl = sem.find_term(entry);
  if (!decl || !decl->specified()) fail(ErrorKind::UnboundName, "entry " + entry + " is not a specified function");
  if (!decl->type.is_arrow()) fail(ErrorKind::Type, "entry " + entry + " is not a function");
  const TypeExpr& dom = decl->type.domain();
  if (!dom.is_tuple() || dom.components().size() != 2 || !sem.is_program_type(dom.components()[1]))
    fail(ErrorKind::Type, "entry " + entry + " must take a (state, program) pair");
  return dom.components()[1];
}

ValueSet run_program(const ProgramSetup& setup, const ConcreteInstantiation& inst, const Value& program,
                     const Value& initial_store, std::size_t fuel, bool ppt) {
  program_type(setup.sem, setup.entry);
  ConcreteInterpreter interp(setup.sem, inst, ppt ? std::optional<Value>(program) : std::nullopt);
  Value arg = Value::tuple({initial_store, ppt ? Value::point({}) : program});
  ValueSet raw = interp.call(setup.entry, std::span<const Value>(&arg, 1), fuel);
  if (!ppt) return raw;
  ValueSet out;
  for (const auto& v : raw) out.insert(resolve_program_points(program, v));
  return out;
}

Analysis analyze_program(const ProgramSetup& setup, const AbstractInstantiation& inst, const Value& program,
                         const AbsValue& initial_store, std::uint64_t budget) {
  program_type(setup.sem, setup.entry);
  AbstractInterpreter interp(setup.sem, inst, program);
  interp.set_step_budget(budget);
  AbsValue arg = AbsValue::tuple({initial_store, AbsValue::points({ProgramPoint{}})});
  auto r = interp.analyze(setup.entry, std::span<const AbsValue>(&arg, 1));
  return {r.value, r.state, interp.steps()};
}

SoundnessVerdict check_soundness(const ProgramSetup& setup, const ConcreteInstantiation& cinst,
                                 const AbstractInstantiation& ainst, const Value& program,
                                 const Value& initial_store, const AbsValue& initial_abstract_store,
                                 std::size_t fuel) {
  SoundnessVerdict v{true, run_program(setup, cinst, program, initial_store, fuel, true),
                     analyze_program(setup, ainst, program, initial_abstract_store), std::nullopt};
  Lattice lattice(setup.sem, ainst.domains);
  for (const auto& c : v.concrete) {
    if (!lattice.gamma_contains(v.abstract.state, v.abstract.result, c)) {
      v.sound = false;
      v.counterexample = c;
      break;
    }
  }
  return v;
}

}  // namespace skel
