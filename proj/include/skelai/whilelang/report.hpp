#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "skelai/harness.hpp"
#include "skelai/whilelang/while.hpp"

namespace skel::whilelang {

struct PointReport {
  ProgramPoint pp;
  std::optional<AbsValue> in, out;
};

std::vector<PointReport> program_points(const AIState& state);

nlohmann::ordered_json store_json(const AbsValue& store);
nlohmann::ordered_json report_json(const Analysis& a);
std::string report_text(const Analysis& a);

std::string render_results(const ValueSet& results);

struct GenOptions {
  int max_depth = 5;
  int max_rand_width = 4;
  int max_loop_bound = 3;
  std::vector<std::string> vars = {"a", "b", "c"};
};

/// A random well-typed statement whose loops are bounded by fresh counters.
Value generate_program(std::mt19937_64& rng, const GenOptions& options = {});

}  // namespace skel::whilelang
