#include "cubelink/linkage.hpp"

#include <algorithm>

#include "cubelink/errors.hpp"

namespace cubelink {

Pairing::Pairing(std::vector<TerminalPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw PreconditionError("a pairing needs at least one pair");
  auto x = terminals();
  std::sort(x.begin(), x.end());
  if (std::adjacent_find(x.begin(), x.end()) != x.end()) {
    throw PreconditionError("pairing terminals must be pairwise distinct");
  }
}

std::vector<VertexId> Pairing::terminals() const {
  std::vector<VertexId> out;
  out.reserve(pairs_.size() * 2);
  for (const auto& p : pairs_) {
    out.push_back(p.s);
    out.push_back(p.t);
  }
  return out;
}

bool Pairing::is_terminal(VertexId v) const {
  return std::any_of(pairs_.begin(), pairs_.end(),
                     [v](const TerminalPair& p) { return p.s == v || p.t == v; });
}

}  // namespace cubelink
