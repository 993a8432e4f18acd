#ifndef SSPD_QUADTREE_HPP
#define SSPD_QUADTREE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sspd/pairs.hpp"
#include "sspd/points.hpp"

namespace sspd {

/// Lazily materialized regular cube tree. The root cube has side
/// 2^ceil(lg(max extent)) anchored at the coordinate-wise minimum; every child
/// halves the side. Cells are half-open except that points on the global upper
/// boundary are clamped into the last cell. A node holding a single point
/// still produces one child per level so that recursions can keep descending
/// at equal depths.
class LevelTree {
 public:
  struct Node {
    int depth = 0;
    std::vector<std::int64_t> cell;  // integer cell coordinates at this depth
    IndexSet points;
    // Fractional position of each point inside this cell, [0,1)^d per point,
    // stored flat. Maintained exactly: descending doubles the fraction and
    // subtracts the chosen bit, both exact in binary floating point.
    std::vector<double> fracs;
    bool all_a = false;  // every point carries side label A
    bool all_b = false;
    bool expanded = false;
    std::vector<std::unique_ptr<Node>> kids;
    std::size_t pairs_emitted = 0;
  };

  /// labels (optional): per point of pts, 1 = side A, 2 = side B, 0 = neither.
  LevelTree(const IndexSet& x, const PointSet& pts, const std::vector<std::uint8_t>* labels = nullptr);

  Node& root() { return *root_; }
  const Node& root() const { return *root_; }
  double root_side() const { return side_; }
  double cell_side(int depth) const;
  std::size_t dim() const { return dim_; }

  /// Materialize the children of n (single child when n holds one point).
  void expand(Node& n);

  /// Count nonempty cells at the given depth, materializing as needed.
  std::size_t occupied_cells(int depth);

  static constexpr int kDepthGuard = 1500;

 private:
  const PointSet* pts_;
  const std::vector<std::uint8_t>* labels_;
  std::size_t dim_;
  std::vector<double> anchor_;
  double side_ = 0.0;
  std::unique_ptr<Node> root_;
};

/// Output of the same-level pair recursion over a LevelTree.
struct BoundedWspd {
  PairDecomposition decomposition;
  std::vector<int> pair_depths;        // tree depth of both nodes of each pair
  std::size_t max_pairs_per_node = 0;  // max times one node was emitted
  int max_depth = 0;                   // deepest level touched
};

struct SameLevelOptions {
  /// Per-point side labels (1/2); nodes whose points all share a label get
  /// flagged, and with prune_single_side set, node pairs whose sides are both
  /// inside label A (or both inside label B) are discarded without descending.
  const std::vector<std::uint8_t>* labels = nullptr;
  bool prune_single_side = false;
};

/// (1/eps)-WSPD for point sets of bounded spread: the recursion pairs tree
/// nodes of equal depth and emits when diam(cell) <= eps * dist(cells).
/// Coverage of x (x) x is exactly-once. Requires duplicate-free x.
BoundedWspd wspd_bounded_spread(const IndexSet& x, const PointSet& pts, double eps);

/// Same recursion with pruning hooks; used by the randomized decomposition to
/// skip subtrees that can only produce pairs inside one side.
BoundedWspd same_level_wspd(const IndexSet& x, const PointSet& pts, double eps,
                            const SameLevelOptions& opt);

/// Compressed cube tree: chains of lone-child cells are contracted, leaves
/// carry single points (leaf cells are degenerate boxes at the point).
class CompressedQuadtree {
 public:
  struct Node {
    std::uint32_t id = 0;
    std::vector<double> lo;  // lower corner; equals the point for leaves
    double side = 0.0;       // 0 for leaves
    Index point = 0;         // valid for leaves only
    bool leaf = false;
    std::vector<std::unique_ptr<Node>> kids;
  };

  CompressedQuadtree(const IndexSet& x, const PointSet& pts);

  const Node& root() const { return *root_; }
  const PointSet& points() const { return *pts_; }
  std::size_t node_count() const { return node_count_; }

  /// Sorted indices of the points stored in the subtree of n.
  IndexSet collect(const Node& n) const;

  /// The child of n whose cell contains point i (build's assignment rule).
  const Node* child_containing(const Node& n, Index i) const;

 private:
  std::unique_ptr<Node> build(IndexSet subset, std::vector<double> lo, double side);

  const PointSet* pts_;
  std::uint32_t node_count_ = 0;
  std::unique_ptr<Node> root_;
};

/// (1/eps)-WSPD over a compressed quadtree: recursion on node pairs splitting
/// the node with the larger cell, emitting when
/// max(diam u, diam v) <= eps * dist(u, v). Coverage is exactly-once.
class GeneralWspd {
 public:
  GeneralWspd(const IndexSet& x, const PointSet& pts, double eps);

  const CompressedQuadtree& tree() const { return *tree_; }
  double eps() const { return eps_; }
  std::size_t pair_count() const { return node_pairs_.size(); }

  /// Materialize point-level pairs (subtree collections); kind = wspd.
  PairDecomposition decomposition() const;

  struct Located {
    std::size_t pair_index;
    bool first_contains_q;  // q lies in the left side of the materialized pair
  };

  /// Find the unique pair covering (q, r) by replaying the construction
  /// recursion along the path of q and r. O(tree depth).
  Located locate_pair(Index q, Index r) const;

 private:
  void make_pairs(const CompressedQuadtree::Node& u);
  void find_pairs(const CompressedQuadtree::Node& u, const CompressedQuadtree::Node& v);

  std::unique_ptr<CompressedQuadtree> tree_;
  double eps_;
  std::vector<std::pair<const CompressedQuadtree::Node*, const CompressedQuadtree::Node*>> node_pairs_;
  std::vector<std::pair<std::uint64_t, std::size_t>> pair_index_;  // sorted (id-key -> pair)
};

}  // namespace sspd

#endif
