#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "krcl/graph.hpp"

namespace krcl {

using CodeWords = std::vector<std::uint64_t>;

/// Result of a canonical search: `order[k]` is the vertex placed at canonical
/// position k, `position` is its inverse, and `code` the canonical code.
struct CanonicalLabelling {
  std::vector<int> order;
  std::vector<int> position;
  CodeWords code;
};

/// A vertex-coloured structure over an adjacency relation. The adjacency
/// drives partition refinement; `encode` must be a complete invariant of
/// the labelled structure under a given vertex -> position map, i.e. two
/// labellings produce equal words iff they yield the same labelled object.
struct CanonicalInput {
  int n = 0;
  std::span<const std::uint64_t> adjacency;
  std::vector<int> colors;  // initial cells, ordered by ascending colour
  std::function<CodeWords(std::span<const int> position)> encode;
};

/// Exact canonical labelling by equitable refinement and individualisation,
/// pruning only with automorphisms discovered during the search.
CanonicalLabelling canonical_labelling(const CanonicalInput& input);

CanonicalLabelling canonical_labelling(const Graph& g);

/// Byte string equal for isomorphic graphs and distinct otherwise.
std::string canonical_code(const Graph& g);
bool are_isomorphic(const Graph& a, const Graph& b);

/// Canonical labelling of the subgraph `h` (its own vertex set only) under
/// isomorphisms fixing every anchor; anchors are distinguished by their
/// position in `anchors`. Labelling indices refer to compacted vertices in
/// ascending host-label order.
CanonicalLabelling anchored_canonical_labelling(const Subgraph& h, std::span<const int> anchors);
std::string anchored_canonical_code(const Subgraph& h, std::span<const int> anchors);

std::string code_to_bytes(const CodeWords& words);

}  // namespace krcl
