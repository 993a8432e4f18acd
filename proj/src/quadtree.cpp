#include "sspd/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace sspd {

namespace {

// Smallest power of two >= extent (extent itself when it is a power of two),
// computed exactly from the binary representation.
double pow2_ceil(double extent) {
  if (!(extent > 0.0)) throw std::invalid_argument("pow2_ceil: extent must be positive");
  int e = 0;
  double f = std::frexp(extent, &e);  // extent = f * 2^e, f in [0.5, 1)
  return f == 0.5 ? std::ldexp(0.5, e) : std::ldexp(1.0, e);
}

std::vector<double> min_corner(const IndexSet& x, const PointSet& pts) {
  std::vector<double> lo(pts.dim(), std::numeric_limits<double>::infinity());
  for (Index i : x) {
    auto p = pts[i];
    for (std::size_t j = 0; j < pts.dim(); ++j) lo[j] = std::min(lo[j], p[j]);
  }
  return lo;
}

double max_extent(const IndexSet& x, const PointSet& pts, const std::vector<double>& lo) {
  double ext = 0.0;
  for (Index i : x) {
    auto p = pts[i];
    for (std::size_t j = 0; j < pts.dim(); ++j) ext = std::max(ext, p[j] - lo[j]);
  }
  return ext;
}

bool has_duplicate_points(const IndexSet& x, const PointSet& pts) {
  if (x.size() < 2) return false;
  IndexSet order = x;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    auto pa = pts[a], pb = pts[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    auto pa = pts[order[k - 1]], pb = pts[order[k]];
    if (std::equal(pa.begin(), pa.end(), pb.begin())) return true;
  }
  return false;
}

}  // namespace

LevelTree::LevelTree(const IndexSet& x, const PointSet& pts, const std::vector<std::uint8_t>* labels)
    : pts_(&pts), labels_(labels), dim_(pts.dim()) {
  if (x.empty()) throw std::invalid_argument("level tree: empty point set");
  anchor_ = min_corner(x, pts);
  double ext = max_extent(x, pts, anchor_);
  side_ = ext > 0.0 ? pow2_ceil(ext) : 1.0;

  root_ = std::make_unique<Node>();
  root_->depth = 0;
  root_->cell.assign(dim_, 0);
  root_->points = x;
  std::sort(root_->points.begin(), root_->points.end());
  root_->fracs.reserve(root_->points.size() * dim_);
  for (Index i : root_->points) {
    auto p = pts[i];
    for (std::size_t j = 0; j < dim_; ++j) {
      double t = (p[j] - anchor_[j]) / side_;  // division by a power of two is exact
      if (t >= 1.0) t = std::nextafter(1.0, 0.0);  // clamp the upper boundary into the last cell
      if (t < 0.0) t = 0.0;
      root_->fracs.push_back(t);
    }
  }
  if (labels_) {
    bool a = true, b = true;
    for (Index i : root_->points) {
      a = a && (*labels_)[i] == 1;
      b = b && (*labels_)[i] == 2;
    }
    root_->all_a = a;
    root_->all_b = b;
  }
}

double LevelTree::cell_side(int depth) const { return std::ldexp(side_, -depth); }

void LevelTree::expand(Node& n) {
  if (n.expanded) return;
  if (n.depth >= kDepthGuard)
    throw std::runtime_error("level tree: depth guard exceeded (duplicate or sub-ulp points)");
  n.expanded = true;

  const std::size_t slots = std::size_t{1} << dim_;
  std::vector<std::unique_ptr<Node>> buckets(slots);
  for (std::size_t k = 0; k < n.points.size(); ++k) {
    std::size_t slot = 0;
    for (std::size_t j = 0; j < dim_; ++j)
      if (n.fracs[k * dim_ + j] >= 0.5) slot |= std::size_t{1} << j;
    if (!buckets[slot]) {
      auto kid = std::make_unique<Node>();
      kid->depth = n.depth + 1;
      kid->cell.resize(dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        std::int64_t b = (slot >> j) & 1;
        kid->cell[j] = 2 * n.cell[j] + b;
      }
      buckets[slot] = std::move(kid);
    }
    Node& kid = *buckets[slot];
    kid.points.push_back(n.points[k]);
    for (std::size_t j = 0; j < dim_; ++j) {
      double f = 2.0 * n.fracs[k * dim_ + j];
      if ((slot >> j) & 1) f -= 1.0;  // exact: 2f and 1 share a binade
      kid.fracs.push_back(f);
    }
  }
  for (std::size_t slot = 0; slot < slots; ++slot) {
    if (!buckets[slot]) continue;
    Node& kid = *buckets[slot];
    if (labels_) {
      if (n.all_a || n.all_b) {
        kid.all_a = n.all_a;
        kid.all_b = n.all_b;
      } else {
        bool a = true, b = true;
        for (Index i : kid.points) {
          a = a && (*labels_)[i] == 1;
          b = b && (*labels_)[i] == 2;
        }
        kid.all_a = a;
        kid.all_b = b;
      }
    }
    n.kids.push_back(std::move(buckets[slot]));
  }
}

std::size_t LevelTree::occupied_cells(int depth) {
  std::size_t count = 0;
  std::vector<Node*> stack{root_.get()};
  while (!stack.empty()) {
    Node* n = stack.back();
    stack.pop_back();
    if (n->depth == depth) {
      ++count;
      continue;
    }
    expand(*n);
    for (auto& k : n->kids) stack.push_back(k.get());
  }
  return count;
}

namespace {

struct SameLevelCtx {
  LevelTree* tree;
  double eps_sq;
  bool prune;
  std::size_t dim;
  BoundedWspd* out;
};

// Squared distance between the closed cells of two equal-depth nodes.
double cell_dist_sq(const LevelTree::Node& u, const LevelTree::Node& v, double side, std::size_t dim) {
  double total = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    std::int64_t delta = std::llabs(u.cell[j] - v.cell[j]);
    if (delta > 1) {
      double gap = static_cast<double>(delta - 1) * side;
      total += gap * gap;
    }
  }
  return total;
}

void emit_pair(SameLevelCtx& ctx, LevelTree::Node& u, LevelTree::Node& v) {
  Pair pr;
  pr.left = u.points;
  pr.right = v.points;
  pr.tag = PairTag::plain;
  pr.canonicalize();
  ctx.out->decomposition.pairs.push_back(std::move(pr));
  ctx.out->pair_depths.push_back(u.depth);
  ++u.pairs_emitted;
  ++v.pairs_emitted;
  ctx.out->max_pairs_per_node = std::max({ctx.out->max_pairs_per_node, u.pairs_emitted, v.pairs_emitted});
}

void same_level_rec(SameLevelCtx& ctx, LevelTree::Node& u, LevelTree::Node& v) {
  ctx.out->max_depth = std::max(ctx.out->max_depth, u.depth);
  if (ctx.prune && ((u.all_a && v.all_a) || (u.all_b && v.all_b))) return;
  if (&u == &v) {
    if (u.points.size() <= 1) return;
    ctx.tree->expand(u);
    for (auto& k : u.kids) same_level_rec(ctx, *k, *k);
    for (std::size_t i = 0; i < u.kids.size(); ++i)
      for (std::size_t j = i + 1; j < u.kids.size(); ++j) same_level_rec(ctx, *u.kids[i], *u.kids[j]);
    return;
  }
  double side = ctx.tree->cell_side(u.depth);
  double diam_sq = static_cast<double>(ctx.dim) * side * side;
  if (diam_sq <= ctx.eps_sq * cell_dist_sq(u, v, side, ctx.dim)) {
    emit_pair(ctx, u, v);
    return;
  }
  ctx.tree->expand(u);
  ctx.tree->expand(v);
  for (auto& cu : u.kids)
    for (auto& cv : v.kids) same_level_rec(ctx, *cu, *cv);
}

}  // namespace

BoundedWspd same_level_wspd(const IndexSet& x, const PointSet& pts, double eps, const SameLevelOptions& opt) {
  if (!(eps > 0.0)) throw std::invalid_argument("same_level_wspd: eps must be positive");
  BoundedWspd out;
  out.decomposition.kind = DecompositionKind::wspd;
  out.decomposition.separation = 1.0 / eps;
  if (x.size() < 2) return out;
  if (has_duplicate_points(x, pts))
    throw std::invalid_argument("same_level_wspd: duplicate points (spread is unbounded)");

  LevelTree tree(x, pts, opt.labels);
  SameLevelCtx ctx{&tree, eps * eps, opt.prune_single_side, pts.dim(), &out};
  same_level_rec(ctx, tree.root(), tree.root());
  return out;
}

BoundedWspd wspd_bounded_spread(const IndexSet& x, const PointSet& pts, double eps) {
  return same_level_wspd(x, pts, eps, SameLevelOptions{});
}

// ---------------------------------------------------------------------------
// Compressed quadtree
// ---------------------------------------------------------------------------

CompressedQuadtree::CompressedQuadtree(const IndexSet& x, const PointSet& pts) : pts_(&pts) {
  if (x.empty()) throw std::invalid_argument("compressed quadtree: empty point set");
  if (has_duplicate_points(x, pts))
    throw std::invalid_argument("compressed quadtree: duplicate points");
  IndexSet subset = x;
  std::sort(subset.begin(), subset.end());
  std::vector<double> lo = min_corner(subset, pts);
  double ext = max_extent(subset, pts, lo);
  double side = ext > 0.0 ? pow2_ceil(ext) : 1.0;
  root_ = build(std::move(subset), std::move(lo), side);
}

std::unique_ptr<CompressedQuadtree::Node> CompressedQuadtree::build(IndexSet subset, std::vector<double> lo,
                                                                    double side) {
  const std::size_t dim = pts_->dim();
  auto node = std::make_unique<Node>();
  node->id = node_count_++;
  if (subset.size() == 1) {
    auto p = (*pts_)[subset[0]];
    node->lo.assign(p.begin(), p.end());
    node->side = 0.0;
    node->point = subset[0];
    node->leaf = true;
    return node;
  }

  std::vector<double> bb_lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> bb_hi(dim, -std::numeric_limits<double>::infinity());
  for (Index i : subset) {
    auto p = (*pts_)[i];
    for (std::size_t j = 0; j < dim; ++j) {
      bb_lo[j] = std::min(bb_lo[j], p[j]);
      bb_hi[j] = std::max(bb_hi[j], p[j]);
    }
  }

  // Contract lone-child chains: descend while the whole subset fits in one
  // child cell. Terminates because the cell side approaches the bounding-box
  // extent of a non-degenerate subset.
  for (;;) {
    bool one_child = true;
    std::size_t slot = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      double mid = lo[j] + side / 2.0;
      bool bit_lo = bb_lo[j] >= mid, bit_hi = bb_hi[j] >= mid;
      if (bit_lo != bit_hi) {
        one_child = false;
        break;
      }
      if (bit_lo) slot |= std::size_t{1} << j;
    }
    if (!one_child) break;
    double half = side / 2.0;
    if (!(half > 0.0)) throw std::runtime_error("compressed quadtree: cell side underflow");
    for (std::size_t j = 0; j < dim; ++j)
      if ((slot >> j) & 1) lo[j] += half;
    side = half;
  }

  node->lo = lo;
  node->side = side;

  const std::size_t slots = std::size_t{1} << dim;
  std::vector<IndexSet> buckets(slots);
  for (Index i : subset) {
    auto p = (*pts_)[i];
    std::size_t slot = 0;
    for (std::size_t j = 0; j < dim; ++j)
      if (p[j] >= lo[j] + side / 2.0) slot |= std::size_t{1} << j;
    buckets[slot].push_back(i);
  }
  for (std::size_t slot = 0; slot < slots; ++slot) {
    if (buckets[slot].empty()) continue;
    std::vector<double> kid_lo = lo;
    for (std::size_t j = 0; j < dim; ++j)
      if ((slot >> j) & 1) kid_lo[j] += side / 2.0;
    node->kids.push_back(build(std::move(buckets[slot]), std::move(kid_lo), side / 2.0));
  }
  return node;
}

IndexSet CompressedQuadtree::collect(const Node& n) const {
  IndexSet out;
  std::vector<const Node*> stack{&n};
  while (!stack.empty()) {
    const Node* cur = stack.back();
    stack.pop_back();
    if (cur->leaf) {
      out.push_back(cur->point);
      continue;
    }
    for (auto& k : cur->kids) stack.push_back(k.get());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const CompressedQuadtree::Node* CompressedQuadtree::child_containing(const Node& n, Index i) const {
  if (n.leaf) return nullptr;
  const std::size_t dim = pts_->dim();
  auto p = (*pts_)[i];
  std::vector<double> kid_lo(n.lo.begin(), n.lo.end());
  for (std::size_t j = 0; j < dim; ++j)
    if (p[j] >= n.lo[j] + n.side / 2.0) kid_lo[j] += n.side / 2.0;
  for (auto& k : n.kids) {
    if (k->leaf) {
      // Leaf boxes are degenerate; match by replaying the assignment of the
      // leaf's own point instead.
      auto q = (*pts_)[k->point];
      bool same = true;
      for (std::size_t j = 0; j < dim && same; ++j) {
        bool bp = p[j] >= n.lo[j] + n.side / 2.0;
        bool bq = q[j] >= n.lo[j] + n.side / 2.0;
        same = bp == bq;
      }
      if (same) return k.get();
    } else {
      // Interior child cells may have contracted; containment in the half-open
      // child half-cell is what the build used.
      bool inside = true;
      for (std::size_t j = 0; j < dim && inside; ++j) {
        bool bp = p[j] >= n.lo[j] + n.side / 2.0;
        double half_lo = n.lo[j] + (bp ? n.side / 2.0 : 0.0);
        inside = k->lo[j] >= half_lo && k->lo[j] < half_lo + n.side / 2.0;
      }
      if (inside) return k.get();
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// General WSPD on the compressed quadtree
// ---------------------------------------------------------------------------

namespace {

double box_diam_sq(const CompressedQuadtree::Node& n, std::size_t dim) {
  return static_cast<double>(dim) * n.side * n.side;
}

double box_dist_sq(const CompressedQuadtree::Node& u, const CompressedQuadtree::Node& v, std::size_t dim) {
  double total = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double gap = std::max({0.0, v.lo[j] - (u.lo[j] + u.side), u.lo[j] - (v.lo[j] + v.side)});
    total += gap * gap;
  }
  return total;
}

// True when the recursion splits u rather than v: the larger cell, ties by
// smaller node id. Leaves (side 0) are never split against an interior node.
bool splits_first(const CompressedQuadtree::Node& u, const CompressedQuadtree::Node& v) {
  if (u.side != v.side) return u.side > v.side;
  return u.id < v.id;
}

}  // namespace

GeneralWspd::GeneralWspd(const IndexSet& x, const PointSet& pts, double eps) : eps_(eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("wspd_general: eps must be positive");
  if (x.empty()) throw std::invalid_argument("wspd_general: empty point set");
  tree_ = std::make_unique<CompressedQuadtree>(x, pts);
  make_pairs(tree_->root());
  pair_index_.reserve(node_pairs_.size());
  for (std::size_t k = 0; k < node_pairs_.size(); ++k) {
    auto [a, b] = node_pairs_[k];
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(a->id, b->id)) << 32) |
                        static_cast<std::uint64_t>(std::max(a->id, b->id));
    pair_index_.emplace_back(key, k);
  }
  std::sort(pair_index_.begin(), pair_index_.end());
}

void GeneralWspd::make_pairs(const CompressedQuadtree::Node& u) {
  if (u.leaf) return;
  for (std::size_t i = 0; i < u.kids.size(); ++i)
    for (std::size_t j = i + 1; j < u.kids.size(); ++j) find_pairs(*u.kids[i], *u.kids[j]);
  for (auto& k : u.kids) make_pairs(*k);
}

void GeneralWspd::find_pairs(const CompressedQuadtree::Node& u, const CompressedQuadtree::Node& v) {
  const std::size_t dim = tree_->points().dim();
  double diam_sq = std::max(box_diam_sq(u, dim), box_diam_sq(v, dim));
  if (diam_sq <= eps_ * eps_ * box_dist_sq(u, v, dim)) {
    node_pairs_.emplace_back(&u, &v);
    return;
  }
  if (splits_first(u, v)) {
    for (auto& k : u.kids) find_pairs(*k, v);
  } else {
    for (auto& k : v.kids) find_pairs(u, *k);
  }
}

PairDecomposition GeneralWspd::decomposition() const {
  PairDecomposition out;
  out.kind = DecompositionKind::wspd;
  out.separation = 1.0 / eps_;
  out.pairs.reserve(node_pairs_.size());
  for (auto [a, b] : node_pairs_) {
    Pair pr;
    pr.left = tree_->collect(*a);
    pr.right = tree_->collect(*b);
    pr.tag = PairTag::plain;
    out.pairs.push_back(std::move(pr));
  }
  return out;
}

GeneralWspd::Located GeneralWspd::locate_pair(Index q, Index r) const {
  if (q == r) throw std::invalid_argument("locate_pair: q and r must differ");
  if (node_pairs_.empty()) throw std::runtime_error("locate_pair: decomposition is empty");
  const std::size_t dim = tree_->points().dim();

  const CompressedQuadtree::Node* cur = &tree_->root();
  const CompressedQuadtree::Node* u = nullptr;
  const CompressedQuadtree::Node* v = nullptr;
  for (;;) {
    if (cur->leaf) throw std::runtime_error("locate_pair: points share a leaf");
    const auto* kq = tree_->child_containing(*cur, q);
    const auto* kr = tree_->child_containing(*cur, r);
    if (!kq || !kr) throw std::runtime_error("locate_pair: point outside tree");
    if (kq != kr) {
      u = kq;
      v = kr;
      break;
    }
    cur = kq;
  }

  for (;;) {
    double diam_sq = std::max(box_diam_sq(*u, dim), box_diam_sq(*v, dim));
    if (diam_sq <= eps_ * eps_ * box_dist_sq(*u, *v, dim)) {
      std::uint64_t key = (static_cast<std::uint64_t>(std::min(u->id, v->id)) << 32) |
                          static_cast<std::uint64_t>(std::max(u->id, v->id));
      auto it = std::lower_bound(pair_index_.begin(), pair_index_.end(),
                                 std::make_pair(key, std::size_t{0}));
      if (it == pair_index_.end() || it->first != key)
        throw std::runtime_error("locate_pair: replay reached an unknown pair");
      std::size_t idx = it->second;
      return Located{idx, node_pairs_[idx].first == u};
    }
    if (splits_first(*u, *v)) {
      u = tree_->child_containing(*u, q);
      if (!u) throw std::runtime_error("locate_pair: lost q during replay");
    } else {
      v = tree_->child_containing(*v, r);
      if (!v) throw std::runtime_error("locate_pair: lost r during replay");
    }
  }
}

}  // namespace sspd
