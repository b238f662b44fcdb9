#include "gerbes/site.hpp"

#include <map>

namespace gerbes {

CoverPtr Cover::atomic(SurfacePtr base, std::vector<Bits> supports) {
  std::vector<std::vector<int>> labels(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) labels[i] = {static_cast<int>(i)};
  return labelled(std::move(base), std::move(labels), std::move(supports));
}

CoverPtr Cover::labelled(SurfacePtr base, std::vector<std::vector<int>> labels,
                         std::vector<Bits> supports) {
  if (labels.size() != supports.size()) throw InvalidSurface("cover labels and supports differ in size");
  auto c = std::make_shared<Cover>();
  const int n = base->num_simplices();
  for (auto& s : supports) {
    if (s.size() != n) throw InvalidSurface("support has wrong simplex count");
    s = downward_closure(*base, s);
  }
  c->base_ = std::move(base);
  c->labels_ = std::move(labels);
  c->support_ = std::move(supports);
  return c;
}

CoverPtr Cover::point(SurfacePtr base) {
  Bits full = full_support(*base);
  return labelled(std::move(base), {{}}, {full});
}

std::vector<int> Cover::valid_at(int simplex) const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (support_[i].test(simplex)) r.push_back(i);
  return r;
}

int Cover::index_of(const std::vector<int>& comps) const {
  if (comps.size() != factors_.size()) return -1;
  std::size_t f = 0;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (comps[j] < 0 || comps[j] >= factors_[j]->size()) return -1;
    f += static_cast<std::size_t>(comps[j]) * stride_[j];
  }
  return find_flat(f);
}

bool Cover::surjective() const {
  const int n = base_->num_simplices();
  for (int s = 0; s < n; ++s) {
    bool ok = false;
    for (const auto& sup : support_)
      if (sup.test(s)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

bool same_cover(const Cover& a, const Cover& b) {
  if (!same_surface(a.base(), b.base()) || a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a.label(i) != b.label(i) || !(a.support(i) == b.support(i))) return false;
  return true;
}

Bits downward_closure(const SimplicialSurface& s, const Bits& simplices) {
  Bits r(s.num_simplices());
  for (int x = 0; x < s.num_simplices(); ++x)
    if (simplices.test(x))
      for (int y : s.closure(x)) r.set(y);
  return r;
}

Bits full_support(const SimplicialSurface& s) {
  Bits r(s.num_simplices());
  for (int x = 0; x < s.num_simplices(); ++x) r.set(x);
  return r;
}

CoverPtr fiber_product(const std::vector<CoverPtr>& covers) {
  return fiber_product(covers, [](const std::vector<int>&) { return true; });
}

CoverPtr fiber_product(const std::vector<CoverPtr>& covers,
                       const std::function<bool(const std::vector<int>&)>& keep) {
  const std::size_t last = covers.empty() ? 0 : covers.size() - 1;
  return fiber_product_pruned(covers, [&](const std::vector<int>& t, std::size_t j) { return j < last || keep(t); });
}

CoverPtr fiber_product_pruned(const std::vector<CoverPtr>& covers,
                              const std::function<bool(const std::vector<int>&, std::size_t)>& prefix_ok) {
  if (covers.empty()) throw SiteMismatch("fibre product of no covers");
  for (const auto& c : covers)
    if (!same_surface(c->base(), covers[0]->base())) throw SiteMismatch("covers over different bases");
  auto out = std::make_shared<Cover>();
  out->base_ = covers[0]->base();
  out->factors_ = covers;
  const std::size_t m = covers.size();
  out->stride_.assign(m, 1);
  for (std::size_t j = m - 1; j > 0; --j)
    out->stride_[j - 1] = out->stride_[j] * static_cast<std::size_t>(covers[j]->size());
  std::size_t total = out->stride_[0] * static_cast<std::size_t>(covers[0]->size());
  out->dense_ = total <= (std::size_t{1} << 20);
  if (out->dense_) out->lookup_.assign(total, -1);

  std::vector<int> tuple(m);
  std::vector<Bits> partial(m + 1);
  partial[0] = full_support(*out->base_);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == m) {
      std::vector<int> label;
      for (std::size_t f = 0; f < m; ++f) {
        const auto& l = covers[f]->label(tuple[f]);
        label.insert(label.end(), l.begin(), l.end());
      }
      std::size_t flat = 0;
      for (std::size_t f = 0; f < m; ++f) flat += static_cast<std::size_t>(tuple[f]) * out->stride_[f];
      if (out->dense_)
        out->lookup_[flat] = static_cast<int>(out->labels_.size());
      else
        out->sparse_.emplace(flat, static_cast<int>(out->labels_.size()));
      out->labels_.push_back(std::move(label));
      out->support_.push_back(partial[m]);
      out->comps_.push_back(tuple);
      return;
    }
    for (int i = 0; i < covers[j]->size(); ++i) {
      if (!partial[j].intersects(covers[j]->support(i))) continue;
      tuple[j] = i;
      if (!prefix_ok(tuple, j)) continue;
      partial[j + 1].assign_and(partial[j], covers[j]->support(i));
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

PulledCover pullback_cover(const CoverPtr& c, const SimplicialMap& f) {
  if (!same_surface(f.target(), c->base())) throw BaseMismatch("map does not land in the cover's base");
  const auto& src = f.source();
  PulledCover r;
  if (!c->is_product()) {
    std::vector<int> img(src->num_simplices());
    for (int s = 0; s < src->num_simplices(); ++s) img[s] = f.image_simplex(s);
    std::vector<Bits> sup;
    std::vector<std::vector<int>> labels;
    for (int i = 0; i < c->size(); ++i) {
      Bits b(src->num_simplices());
      for (int s = 0; s < src->num_simplices(); ++s)
        if (c->valid(i, img[s])) b.set(s);
      sup.push_back(std::move(b));
      labels.push_back(c->label(i));
      r.old_index.push_back(i);
    }
    r.cover = Cover::labelled(src, std::move(labels), std::move(sup));
    return r;
  }
  std::vector<PulledCover> parts;
  std::vector<CoverPtr> fc;
  for (const auto& fac : c->factors()) {
    parts.push_back(pullback_cover(fac, f));
    fc.push_back(parts.back().cover);
  }
  auto to_old = [&](const std::vector<int>& comps) {
    std::vector<int> o(comps.size());
    for (std::size_t j = 0; j < comps.size(); ++j) o[j] = parts[j].old_index[comps[j]];
    return o;
  };
  r.cover = fiber_product(fc, [&](const std::vector<int>& t) { return c->index_of(to_old(t)) >= 0; });
  for (int i = 0; i < r.cover->size(); ++i) r.old_index.push_back(c->index_of(to_old(r.cover->comps(i))));
  return r;
}

Refinement identity_refinement(const CoverPtr& target) {
  Refinement r;
  r.cover = target;
  r.target = target;
  r.map.resize(target->size());
  for (int i = 0; i < target->size(); ++i) r.map[i] = i;
  return r;
}

Report validate_refinement(const Refinement& r) {
  Report rep;
  if (!same_surface(r.cover->base(), r.target->base())) {
    rep.fail("refinement.base", "cover and target over different surfaces");
    return rep;
  }
  if (static_cast<int>(r.map.size()) != r.cover->size()) {
    rep.fail("refinement.map", "map size differs from index count");
    return rep;
  }
  for (int k = 0; k < r.cover->size(); ++k) {
    ++rep.checks;
    if (r.map[k] < 0 || r.map[k] >= r.target->size()) {
      rep.fail("refinement.map", "index " + std::to_string(k) + " maps out of range");
      continue;
    }
    if (!r.cover->support(k).subset_of(r.target->support(r.map[k])))
      rep.fail("refinement.support", "index " + std::to_string(k) + " exceeds its target support");
  }
  if (!rep.ok()) return rep;
  const int ns = r.cover->base()->num_simplices();
  for (int s = 0; s < ns; ++s) {
    std::vector<char> hit(r.target->size(), 0);
    for (int k = 0; k < r.cover->size(); ++k)
      if (r.cover->valid(k, s)) hit[r.map[k]] = 1;
    for (int p = 0; p < r.target->size(); ++p) {
      ++rep.checks;
      if (r.target->valid(p, s) && !hit[p])
        rep.fail("refinement.surjective",
                 "simplex " + std::to_string(s) + " target index " + std::to_string(p));
    }
  }
  return rep;
}

Refinement common_refinement(const Refinement& r1, const Refinement& r2) {
  if (!same_cover(r1.target, r2.target)) throw SiteMismatch("refinements of different targets");
  Refinement r;
  r.target = r1.target;
  r.cover = fiber_product({r1.cover, r2.cover},
                          [&](const std::vector<int>& t) { return r1.map[t[0]] == r2.map[t[1]]; });
  for (int w = 0; w < r.cover->size(); ++w) r.map.push_back(r1.map[r.cover->comp(w, 0)]);
  if (!validate_refinement(r).ok()) throw EmptyRefinement("common refinement is not surjective");
  return r;
}

}  // namespace gerbes
