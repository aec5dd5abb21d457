#include "krcl/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace krcl {

namespace {

using Cell = std::vector<int>;
using Partition = std::vector<Cell>;

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const CanonicalInput& in) : in_(in) {}

  CanonicalLabelling run() {
    Partition root;
    std::vector<int> vertices(static_cast<std::size_t>(in_.n));
    std::iota(vertices.begin(), vertices.end(), 0);
    std::stable_sort(vertices.begin(), vertices.end(),
                     [&](int a, int b) { return in_.colors[a] < in_.colors[b]; });
    for (int v : vertices) {
      if (root.empty() || in_.colors[root.back().front()] != in_.colors[v]) root.emplace_back();
      root.back().push_back(v);
    }
    std::vector<int> prefix;
    search(std::move(root), 0, 0, true, prefix);
    CanonicalLabelling out;
    out.position = best_position_;
    out.order.assign(static_cast<std::size_t>(in_.n), 0);
    for (int v = 0; v < in_.n; ++v) out.order[best_position_[v]] = v;
    out.code = best_code_;
    return out;
  }

 private:
  static constexpr int kNoJump = -1;

  void refine(Partition& p) const {
    for (;;) {
      std::vector<VertexSet> masks;
      masks.reserve(p.size());
      for (const Cell& c : p) {
        VertexSet m = 0;
        for (int v : c) m |= vertex_bit(v);
        masks.push_back(m);
      }
      Partition next;
      next.reserve(p.size());
      bool split = false;
      for (const Cell& c : p) {
        if (c.size() == 1) {
          next.push_back(c);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> keyed;
        keyed.reserve(c.size());
        for (int v : c) {
          std::vector<int> sig(masks.size());
          for (std::size_t k = 0; k < masks.size(); ++k) sig[k] = popcount(in_.adjacency[v] & masks[k]);
          keyed.emplace_back(std::move(sig), v);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t start = next.size();
        for (std::size_t k = 0; k < keyed.size(); ++k) {
          if (k == 0 || keyed[k].first != keyed[k - 1].first) next.emplace_back();
          next.back().push_back(keyed[k].second);
        }
        if (next.size() - start > 1) split = true;
      }
      p = std::move(next);
      if (!split) return;
    }
  }

  static bool discrete(const Partition& p) {
    return std::all_of(p.begin(), p.end(), [](const Cell& c) { return c.size() == 1; });
  }

  // Orbits of `cell` members under the discovered automorphisms that fix
  // every vertex of `prefix`.
  std::vector<int> orbit_roots(const std::vector<int>& prefix) const {
    std::vector<int> parent(static_cast<std::size_t>(in_.n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gen : generators_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) { return gen[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < in_.n; ++v) {
        const int a = find(v);
        const int b = find(gen[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < in_.n; ++v) parent[v] = find(v);
    return parent;
  }

  int leaf(const Partition& p, int divergence) {
    std::vector<int> position(static_cast<std::size_t>(in_.n));
    for (std::size_t k = 0; k < p.size(); ++k) position[p[k].front()] = static_cast<int>(k);
    CodeWords code;
    code.reserve(static_cast<std::size_t>(in_.n) + 8);
    code.push_back(static_cast<std::uint64_t>(in_.n));
    for (const Cell& c : p) code.push_back(static_cast<std::uint64_t>(in_.colors[c.front()]));
    CodeWords body = in_.encode(position);
    code.insert(code.end(), body.begin(), body.end());

    if (!have_first_) {
      have_first_ = true;
      first_code_ = code;
      first_position_ = position;
      best_code_ = std::move(code);
      best_position_ = std::move(position);
      return kNoJump;
    }
    auto automorphism = [&](const std::vector<int>& target_position) {
      std::vector<int> target_order(static_cast<std::size_t>(in_.n));
      for (int v = 0; v < in_.n; ++v) target_order[target_position[v]] = v;
      std::vector<int> gen(static_cast<std::size_t>(in_.n));
      for (int v = 0; v < in_.n; ++v) gen[v] = target_order[position[v]];
      generators_.push_back(std::move(gen));
    };
    if (code == first_code_) {
      automorphism(first_position_);
      return divergence;
    }
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_position_ = std::move(position);
    } else if (code == best_code_) {
      automorphism(best_position_);
    }
    return kNoJump;
  }

  int search(Partition p, int depth, int divergence, bool on_first, std::vector<int>& prefix) {
    refine(p);
    if (discrete(p)) return leaf(p, divergence);

    std::size_t target = 0;
    while (p[target].size() == 1) ++target;
    const Cell cell = p[target];

    std::vector<int> explored;
    for (std::size_t idx = 0; idx < cell.size(); ++idx) {
      const int w = cell[idx];
      if (!explored.empty()) {
        const auto roots = orbit_roots(prefix);
        const bool equivalent =
            std::any_of(explored.begin(), explored.end(), [&](int x) { return roots[x] == roots[w]; });
        if (equivalent) continue;
      }
      explored.push_back(w);

      Partition child;
      child.reserve(p.size() + 1);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k != target) {
          child.push_back(p[k]);
          continue;
        }
        child.push_back(Cell{w});
        Cell rest;
        for (int x : p[k]) {
          if (x != w) rest.push_back(x);
        }
        child.push_back(std::move(rest));
      }
      const bool child_first = on_first && idx == 0;
      prefix.push_back(w);
      const int jump = search(std::move(child), depth + 1, child_first ? depth + 1 : divergence, child_first, prefix);
      prefix.pop_back();
      if (jump != kNoJump && jump < depth) return jump;
    }
    return kNoJump;
  }

  const CanonicalInput& in_;
  bool have_first_ = false;
  CodeWords first_code_;
  std::vector<int> first_position_;
  CodeWords best_code_;
  std::vector<int> best_position_;
  std::vector<std::vector<int>> generators_;
};

CodeWords encode_rows(std::span<const std::uint64_t> rows, std::span<const int> position) {
  const std::size_t n = rows.size();
  CodeWords words(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t row = rows[v];
    std::uint64_t mapped = 0;
    while (row) {
      const int u = std::countr_zero(row);
      row &= row - 1;
      mapped |= vertex_bit(position[u]);
    }
    words[position[v]] = mapped;
  }
  return words;
}

}  // namespace

CanonicalLabelling canonical_labelling(const CanonicalInput& input) {
  if (input.n < 0 || input.n > kMaxVertices) throw ArgumentError("canonical search supports at most 64 vertices");
  if (static_cast<int>(input.colors.size()) != input.n || static_cast<int>(input.adjacency.size()) != input.n) {
    throw ArgumentError("canonical search input size mismatch");
  }
  if (input.n == 0) return CanonicalLabelling{{}, {}, input.encode(std::span<const int>{})};
  return CanonicalSearch(input).run();
}

CanonicalLabelling canonical_labelling(const Graph& g) {
  CanonicalInput in;
  in.n = g.order();
  in.adjacency = g.rows();
  in.colors.assign(static_cast<std::size_t>(g.order()), 0);
  in.encode = [&g](std::span<const int> position) { return encode_rows(g.rows(), position); };
  return canonical_labelling(in);
}

std::string code_to_bytes(const CodeWords& words) {
  std::string bytes;
  bytes.reserve(words.size() * 8);
  for (std::uint64_t w : words) {
    for (int shift = 56; shift >= 0; shift -= 8) bytes.push_back(static_cast<char>((w >> shift) & 0xFF));
  }
  return bytes;
}

std::string canonical_code(const Graph& g) {
  CodeWords code = canonical_labelling(g).code;
  if (g.order() == 0) code = {0};
  return code_to_bytes(code);
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_code(a) == canonical_code(b);
}

CanonicalLabelling anchored_canonical_labelling(const Subgraph& h, std::span<const int> anchors) {
  const Graph compact = h.compact();
  std::vector<int> index(static_cast<std::size_t>(h.host_order()), -1);
  int k = 0;
  for (int v = 0; v < h.host_order(); ++v) {
    if (h.has_vertex(v)) index[v] = k++;
  }
  const int anchor_count = static_cast<int>(anchors.size());
  std::vector<int> colors(static_cast<std::size_t>(k), anchor_count);
  for (int i = 0; i < anchor_count; ++i) {
    const int a = anchors[i];
    if (!h.has_vertex(a)) throw ArgumentError("anchor " + std::to_string(a) + " is not a vertex of the subgraph");
    if (colors[index[a]] != anchor_count) throw ArgumentError("anchor listed twice");
    colors[index[a]] = i;
  }
  CanonicalInput in;
  in.n = k;
  in.adjacency = compact.rows();
  in.colors = std::move(colors);
  in.encode = [&compact](std::span<const int> position) { return encode_rows(compact.rows(), position); };
  return canonical_labelling(in);
}

std::string anchored_canonical_code(const Subgraph& h, std::span<const int> anchors) {
  CodeWords code = anchored_canonical_labelling(h, anchors).code;
  code.push_back(static_cast<std::uint64_t>(anchors.size()));
  return code_to_bytes(code);
}

}  // namespace krcl
