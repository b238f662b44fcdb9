#pragma once

#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gerbes/config.hpp"
#include "gerbes/surface.hpp"

namespace gerbes {

class Cover;
using CoverPtr = std::shared_ptr<const Cover>;

// Finite cover of a surface. Each index carries a label tuple and a
// downward-closed support (a set of global simplex ids). Fibre products record
// the component index in each direct factor.
class Cover {
 public:
  // Atomic cover with labels {i}.
  static CoverPtr atomic(SurfacePtr base, std::vector<Bits> supports);
  // Atomic cover with explicit labels.
  static CoverPtr labelled(SurfacePtr base, std::vector<std::vector<int>> labels,
                           std::vector<Bits> supports);
  // Single index, empty label, full support.
  static CoverPtr point(SurfacePtr base);

  const SurfacePtr& base() const { return base_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<int>& label(int i) const { return labels_[i]; }
  const Bits& support(int i) const { return support_[i]; }
  bool valid(int i, int simplex) const { return support_[i].test(simplex); }
  std::vector<int> valid_at(int simplex) const;

  bool is_product() const { return !factors_.empty(); }
  const std::vector<CoverPtr>& factors() const { return factors_; }
  const std::vector<int>& comps(int i) const { return comps_[i]; }
  int comp(int i, int f) const { return comps_[i][f]; }
  // Index with the given component tuple, -1 if absent.
  int index_of(const std::vector<int>& comps) const;
  int index_of2(int a, int b) const { return find_flat(static_cast<std::size_t>(a) * stride_[0] + b); }

  // Every simplex covered by some index.
  bool surjective() const;

  friend CoverPtr fiber_product_pruned(const std::vector<CoverPtr>& covers,
                                       const std::function<bool(const std::vector<int>&, std::size_t)>& prefix_ok);

 private:
  SurfacePtr base_;
  std::vector<std::vector<int>> labels_;
  std::vector<Bits> support_;
  std::vector<CoverPtr> factors_;
  std::vector<std::vector<int>> comps_;
  std::vector<std::size_t> stride_;
  std::vector<int> lookup_;  // dense when small
  std::unordered_map<std::size_t, int> sparse_;
  bool dense_ = true;
  int find_flat(std::size_t f) const {
    if (dense_) return lookup_[f];
    auto it = sparse_.find(f);
    return it == sparse_.end() ? -1 : it->second;
  }
};

// Labels and supports agree (the flattened view of a cover).
bool same_cover(const Cover& a, const Cover& b);
inline bool same_cover(const CoverPtr& a, const CoverPtr& b) { return a == b || (a && b && same_cover(*a, *b)); }

// Downward closure of a set of simplices.
Bits downward_closure(const SimplicialSurface& s, const Bits& simplices);
Bits full_support(const SimplicialSurface& s);

// Tuples of indices with nonempty common support, lexicographic order.
CoverPtr fiber_product(const std::vector<CoverPtr>& covers);
// Same, keeping only tuples accepted by `keep`.
CoverPtr fiber_product(const std::vector<CoverPtr>& covers,
                       const std::function<bool(const std::vector<int>&)>& keep);
// Same, rejecting a prefix tuple[0..j] as soon as prefix_ok(tuple, j) fails.
CoverPtr fiber_product_pruned(const std::vector<CoverPtr>& covers,
                              const std::function<bool(const std::vector<int>&, std::size_t)>& prefix_ok);

// Pulls a cover back along a simplicial map. Atomic covers keep their index
// set; products are rebuilt from the pulled factors. old_index[i] is the index
// of the original cover that new index i came from.
struct PulledCover {
  CoverPtr cover;
  std::vector<int> old_index;
};
PulledCover pullback_cover(const CoverPtr& c, const SimplicialMap& f);

// A cover K with a map into a target cover (usually a fibre product P).
struct Refinement {
  CoverPtr cover;
  CoverPtr target;
  std::vector<int> map;
  int size() const { return cover->size(); }
  // Component l of the target index of k.
  int leg(int k, int l) const { return target->comp(map[k], l); }
};

Refinement identity_refinement(const CoverPtr& target);
// Support containment and surjectivity onto the target, per simplex.
Report validate_refinement(const Refinement& r);
// Pairs (k1,k2) with equal target image and overlapping support, mapped to the
// shared target. Components of the cover are (k1,k2).
Refinement common_refinement(const Refinement& r1, const Refinement& r2);

}  // namespace gerbes
