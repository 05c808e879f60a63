// skelai: run, analyse and soundness-check object programs.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "skelai/harness.hpp"
#include "skelai/parser.hpp"
#include "skelai/whilelang/report.hpp"

namespace fs = std::filesystem;
using namespace skel;
using namespace skel::whilelang;

namespace {

enum Exit { kOk = 0, kUnsound = 1, kParse = 2, kFuel = 3, kAnalysis = 4, kRuntime = 5, kUsage = 64 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string skel, program, corpus, entry = "eval_stmt", format = "text", out;
  std::size_t fuel = 10000;
  std::uint64_t seed = 1, budget = AbstractInterpreter::kDefaultStepBudget;
  int count = 10, depth = 5;
};

SkeletalSemantics load(const Options& o) {
  if (o.skel.empty()) return while_semantics();
  return load_semantics(slurp(o.skel), {"stmt", "expr"}, o.skel);
}

Value load_program(const SkeletalSemantics& sem, const Options& o, const std::string& path) {
  return parse_program_term(slurp(path), sem, read_literal, program_type(sem, o.entry), path);
}

bool front_end_error(ErrorKind k) {
  return k == ErrorKind::Parse || k == ErrorKind::Type || k == ErrorKind::Redeclaration ||
         k == ErrorKind::UnboundName;
}

int cmd_run(const Options& o) {
  auto sem = load(o);
  Value prg = load_program(sem, o, o.program);
  auto inst = concrete_instantiation();
  auto results = on_large_stack([&] { return run_program({sem, o.entry}, inst, prg, store_value({}), o.fuel); });
  std::cout << render_results(results) << "\n";
  return kOk;
}

int cmd_analyze(const Options& o) {
  auto sem = load(o);
  Value prg = load_program(sem, o, o.program);
  auto inst = abstract_instantiation();
  auto a = on_large_stack(
      [&] { return analyze_program({sem, o.entry}, inst, prg, abs_store({}), o.budget); });
  if (o.format == "json")
    std::cout << report_json(a).dump(2) << "\n";
  else
    std::cout << report_text(a);
  return kOk;
}

int cmd_check(const Options& o) {
  auto sem = load(o);
  std::vector<fs::path> files;
  if (!o.program.empty()) files.push_back(o.program);
  if (!o.corpus.empty()) {
    for (const auto& e : fs::directory_iterator(o.corpus))
      if (e.path().extension() == ".prg") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  auto cinst = concrete_instantiation();
  auto ainst = abstract_instantiation();
  std::size_t passed = 0;
  for (const auto& f : files) {
    Value prg = load_program(sem, o, f.string());
    auto v = on_large_stack([&] {
      return check_soundness({sem, o.entry}, cinst, ainst, prg, store_value({}), abs_store({}), o.fuel);
    });
    if (!v.sound) {
      std::cout << "FAIL " << f.string() << "\n"
                << "  concrete result " << v.counterexample->to_string() << "\n"
                << "  not described by " << v.abstract.result.to_string() << "\n"
                << "  all concrete results: " << render_results(v.concrete) << "\n"
                << "  final AI-state: " << v.abstract.state->render() << "\n";
      return kUnsound;
    }
    ++passed;
    std::cout << "ok   " << f.string() << "  " << v.concrete.size() << " result(s) within "
              << v.abstract.result.to_string() << "\n";
  }
  std::cout << passed << "/" << files.size() << " programs sound\n";
  return kOk;
}

int cmd_gen(const Options& o) {
  std::mt19937_64 rng(o.seed);
  GenOptions g;
  g.max_depth = o.depth;
  if (!o.out.empty()) fs::create_directories(o.out);
  for (int i = 0; i < o.count; ++i) {
    std::string text = print_stmt(generate_program(rng, g));
    if (o.out.empty()) {
      std::cout << text << "\n";
    } else {
      std::ostringstream name;
      name << "gen_" << std::setw(4) << std::setfill('0') << i << ".prg";
      std::ofstream(fs::path(o.out) / name.str()) << text << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skel meta-interpreter and abstract interpreter"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--skel", o.skel, "Semantics file (default: bundled while.sk)");
    sub->add_option("--entry", o.entry, "Entry function")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Concrete collecting execution");
  common(run);
  run->add_option("--program", o.program, "Program term (.prg)")->required();
  run->add_option("--fuel", o.fuel, "Recursion depth bound")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Interval analysis");
  common(analyze);
  analyze->add_option("--program", o.program, "Program term (.prg)")->required();
  analyze->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  analyze->add_option("--budget", o.budget, "Step budget")->capture_default_str();

  auto* check = app.add_subcommand("check", "Check soundness over programs");
  common(check);
  check->add_option("--program", o.program, "Single program (.prg)");
  check->add_option("--corpus", o.corpus, "Directory of .prg files");
  check->add_option("--fuel", o.fuel, "Recursion depth bound")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate random While programs");
  gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  gen->add_option("--count", o.count, "Number of programs")->capture_default_str();
  gen->add_option("--depth", o.depth, "Maximum statement depth")->capture_default_str();
  gen->add_option("--out", o.out, "Output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*analyze) return cmd_analyze(o);
    if (*check) {
      if (o.program.empty() && o.corpus.empty()) {
        std::cerr << "check: give --program or --corpus\n";
        return kUsage;
      }
      return cmd_check(o);
    }
    if (*gen) return cmd_gen(o);
  } catch (const SkelError& e) {
    std::cerr << e.what() << "\n";
    if (front_end_error(e.kind())) return kParse;
    if (e.kind() == ErrorKind::FuelExhausted) return kFuel;
    if (e.kind() == ErrorKind::StepBudgetExceeded || e.kind() == ErrorKind::TopFunctionApplied) return kAnalysis;
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
