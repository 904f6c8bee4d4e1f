#pragma once

#include <cstdint>
#include <climits>
#include <optional>
#include <span>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/rng.hpp"

namespace csf {

// Dense DAG over module ids, one bit per arc. n stays small (<= a few
// hundred), so adjacency-matrix storage makes arc edits O(1) and the packing
// passes a handful of microseconds.
class BitDag {
public:
  explicit BitDag(int n = 0) { reset(n); }

  void reset(int n) {
    n_ = n;
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  }

  int size() const { return n_; }

  bool has(int u, int v) const { return bits_[u * words_ + (v >> 6)] >> (v & 63) & 1; }
  void add(int u, int v) { bits_[u * words_ + (v >> 6)] |= 1ull << (v & 63); }
  void remove(int u, int v) { bits_[u * words_ + (v >> 6)] &= ~(1ull << (v & 63)); }

  std::span<const std::uint64_t> row(int u) const {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
  }

  template <typename F>
  void for_out(int u, F&& f) const {
    const std::uint64_t* r = bits_.data() + static_cast<std::size_t>(u) * words_;
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const int v = (w << 6) + __builtin_ctzll(bits);
        f(v);
        bits &= bits - 1;
      }
    }
  }

  int arc_count() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }

private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Arc {
  int from = -1;
  int to = -1;
};

// Horizontal + vertical constraint graphs plus the packed state refreshed by
// pack()/repack(). Dimensions are the effective (rotation-applied) ones,
// snapshotted at build time.
struct CgPair {
  int n = 0;
  std::vector<double> w, h; // effective dims
  BitDag hcg, vcg;

  // Packed lower-left coordinates and extents (valid after pack/repack).
  std::vector<double> llx, lly;
  double packed_w = 0.0;
  double packed_h = 0.0;
};

struct SlackSet {
  std::vector<double> sx, sy;
};

// Pair classification per the lower-left comparison rules (lexicographic x
// then y, ties by id). Every unordered pair receives at least one arc.
CgPair build_cg(const Placement& placement, const Netlist& netlist);

// Longest-path packing of both graphs into lower-left coordinates anchored at
// the origin. Validates acyclicity and pair-completeness. Throws on a cycle
// (naming an arc on it) or an unordered pair.
void repack(CgPair& cg);

// repack + conversion to center coordinates. Rotation flags are carried from
// the placement the CG was built against (dims are already effective).
Placement pack(CgPair& cg, const Placement& reference);

// Forward/backward longest-path slacks per node, using span = max(packed
// extent, outline extent) per axis.
SlackSet slacks(const CgPair& cg, double outline_w, double outline_h);

// Weight of a critical relationship (horizontal arc: vertical slack of the
// lower module minus the other's height; vertical arcs symmetric).
double critical_weight(const CgPair& cg, const SlackSet& s, Arc arc, bool horizontal);

// Arcs whose direction is redundant: the packed intervals on the orthogonal
// axis are disjoint and the pair stays ordered by the other graph.
std::vector<Arc> compressible_arcs(const CgPair& cg, bool horizontal);

// Removes redundant arcs one graph at a time and repacks until no
// compressible arc remains (or the extents already fit the given bounds).
// Pure compaction: extents never grow and the packing stays overlap-free.
void compact(CgPair& cg, double fit_w, double fit_h);

enum class IlgStatus { Fit, Stall, Budget };

// One-direction legalization pass: removes horizontal (resp. vertical) arcs
// until the packed extent fits, preferring compressible arcs and otherwise
// moving one of the k highest-weight critical relationships into the other
// graph, chosen by the selection distribution over candidates ordered by
// exact wirelength increment (ascending). max_moves bounds the number of arc
// edits (Budget is returned when it runs out).
IlgStatus ilg_x(double outline_w, double outline_h, CgPair& cg, const Netlist& netlist,
                int k, std::span<const double> pw, Rng& rng, int max_moves = INT_MAX);
IlgStatus ilg_y(double outline_w, double outline_h, CgPair& cg, const Netlist& netlist,
                int k, std::span<const double> pw, Rng& rng, int max_moves = INT_MAX);

struct CgLegalizeResult {
  bool legal = false;
  Placement placement;
  int individual = -1;
  int rounds_used = 0;
  bool stalled = false;          // some individual hit a stall
  bool budget_exhausted = false; // all individuals ran out of rounds
};

// Alternating ILG_x / ILG_y rounds per individual (first fit wins).
// k = 1 with a unit distribution is the greedy max-weight baseline.
CgLegalizeResult ila_cg(std::vector<Placement>& population, const Netlist& netlist,
                        const Outline& outline, int n_max, int k,
                        std::span<const double> pw, std::uint64_t seed);

CgLegalizeResult la_cg(std::vector<Placement>& population, const Netlist& netlist,
                       const Outline& outline, int n_max, std::uint64_t seed);

} // namespace csf
