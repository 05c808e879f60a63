#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace skel {

/// A path of child indices into a program term; the empty path is the root.
struct ProgramPoint {
  std::vector<std::uint32_t> path;

  ProgramPoint child(std::uint32_t index) const {
    ProgramPoint out = *this;
    out.path.push_back(index);
    return out;
  }
  bool is_root() const { return path.empty(); }

  /// Renders as `[0,1]`; the root is `[]`.
  std::string to_string() const;

  friend auto operator<=>(const ProgramPoint&, const ProgramPoint&) = default;
  friend bool operator==(const ProgramPoint&, const ProgramPoint&) = default;
};

}  // namespace skel
