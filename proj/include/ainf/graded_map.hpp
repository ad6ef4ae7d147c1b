#pragma once
// Degree-homogeneous linear maps between graded spaces, stored as one dense
// block per populated source degree.

#include "graded.hpp"
#include "linalg.hpp"

#include <map>

namespace ainf {

template <class K>
struct GradedMap {
  SpaceRef<K> src, tgt;
  int deg = 0;
  std::map<int, Mat<K>> blocks;  // source degree -> dim(tgt,k+deg) x dim(src,k)

  GradedMap() = default;
  GradedMap(SpaceRef<K> s, SpaceRef<K> t, int d) : src(s), tgt(t), deg(d) {}

  Mat<K>& block(int k) {
    auto it = blocks.find(k);
    if (it == blocks.end()) {
      it = blocks
               .emplace(k, Mat<K>::Zero(tgt->dim(k + deg), src->dim(k)))
               .first;
    }
    return it->second;
  }
  const Mat<K>* block_if(int k) const {
    auto it = blocks.find(k);
    return it == blocks.end() ? nullptr : &it->second;
  }

  void set_entry(int tgt_idx, int src_idx, const K& x) {
    int k = src->deg(src_idx);
    if (tgt->deg(tgt_idx) != k + deg)
      throw std::invalid_argument("GradedMap::set_entry: degree mismatch");
    block(k)(tgt->pos_in_deg(tgt_idx), src->pos_in_deg(src_idx)) = x;
  }

  // Image of basis element i as a sparse target element.
  Elem<K> column(int i) const {
    Elem<K> out;
    int k = src->deg(i);
    const Mat<K>* B = block_if(k);
    if (!B || B->rows() == 0) return out;
    int col = src->pos_in_deg(i);
    const std::vector<int>& rows = tgt->slice(k + deg);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (!is_zero((*B)(r, col))) out.c.emplace_back(rows[r], (*B)(r, col));
    }
    return out;
  }

  Elem<K> apply(const Elem<K>& x) const {
    Scratch<K> acc;
    acc.reset(tgt->dim());
    for (auto& [i, v] : x.c) acc.add(v, column(i));
    return acc.gather();
  }

  void apply_into(const Elem<K>& x, Scratch<K>& acc, const K& pre = K(1)) const {
    for (auto& [i, v] : x.c) acc.add(pre * v, column(i));
  }

  bool zero() const {
    for (auto& [k, B] : blocks) {
      (void)k;
      for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j)
          if (!is_zero(B(i, j))) return false;
    }
    return true;
  }

  static GradedMap identity(SpaceRef<K> V) {
    GradedMap out(V, V, 0);
    for (int i = 0; i < V->dim(); ++i)
      out.set_entry(i, i, K(1));
    return out;
  }
};

// f after g (degrees add).
template <class K>
GradedMap<K> compose(const GradedMap<K>& f, const GradedMap<K>& g) {
  GradedMap<K> out(g.src, f.tgt, f.deg + g.deg);
  for (auto& [k, Gb] : g.blocks) {
    const Mat<K>* Fb = f.block_if(k + g.deg);
    if (!Fb || Fb->rows() == 0 || Gb.rows() == 0) continue;
    out.block(k) = (*Fb) * Gb;
  }
  return out;
}

template <class K>
GradedMap<K> add(const GradedMap<K>& f, const GradedMap<K>& g) {
  GradedMap<K> out(f.src, f.tgt, f.deg);
  for (auto& [k, B] : f.blocks) out.block(k) = B;
  for (auto& [k, B] : g.blocks) {
    if (B.rows() == 0 && B.cols() == 0) continue;
    Mat<K>& O = out.block(k);
    if (O.rows() == 0 || O.cols() == 0)
      O = B;
    else
      O += B;
  }
  return out;
}

template <class K>
GradedMap<K> scale(const K& a, const GradedMap<K>& f) {
  GradedMap<K> out(f.src, f.tgt, f.deg);
  for (auto& [k, B] : f.blocks) out.block(k) = B * a;
  return out;
}

template <class K>
bool equal(const GradedMap<K>& f, const GradedMap<K>& g) {
  for (int i = 0; i < f.src->dim(); ++i)
    if (!(f.column(i) == g.column(i))) return false;
  return true;
}

}  // namespace ainf
