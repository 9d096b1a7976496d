#pragma once

#include <span>
#include <string>
#include <vector>

#include "cubelink/cube.hpp"

namespace cubelink {

using Path = std::vector<VertexId>;

struct TerminalPair {
  VertexId s = 0;
  VertexId t = 0;

  friend bool operator==(const TerminalPair&, const TerminalPair&) = default;
};

/// Labelled pairing Y of a terminal set X: k >= 1 pairs, 2k distinct terminals.
class Pairing {
 public:
  /// Throws PreconditionError on an empty list or repeated terminals.
  explicit Pairing(std::vector<TerminalPair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const TerminalPair& operator[](std::size_t i) const { return pairs_[i]; }
  std::span<const TerminalPair> pairs() const noexcept { return pairs_; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  /// The terminal set X in pair order (s_1, t_1, s_2, t_2, ...).
  std::vector<VertexId> terminals() const;
  bool is_terminal(VertexId v) const;

 private:
  std::vector<TerminalPair> pairs_;
};

/// One path per pair, path i running from s_i to t_i, plus the proof cases the
/// engine took at each recursion level (empty for oracle output).
struct Linkage {
  std::vector<Path> paths;
  std::vector<std::string> scenario_trace;
};

}  // namespace cubelink
