#pragma once
// Finite-dimensional graded vector spaces with named basis elements, sparse
// elements over them, and a stamped scratch accumulator for hot loops.

#include "scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

struct BasisElt {
  std::string name;
  int deg = 0;
};

template <class K>
class GradedSpace {
 public:
  std::vector<BasisElt> basis;

  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElt> b) : basis(std::move(b)) {
    for (int i = 0; i < dim(); ++i) {
      const BasisElt& e = basis[i];
      if (!by_name_.emplace(e.name, i).second)
        throw std::invalid_argument("duplicate basis name: " + e.name);
      pos_in_deg_.push_back(static_cast<int>(by_deg_[e.deg].size()));
      by_deg_[e.deg].push_back(i);
      lo_ = std::min(lo_, e.deg);
      hi_ = std::max(hi_, e.deg);
    }
    if (basis.empty()) lo_ = hi_ = 0;
  }

  int dim() const { return static_cast<int>(basis.size()); }
  int dim(int k) const {
    auto it = by_deg_.find(k);
    return it == by_deg_.end() ? 0 : static_cast<int>(it->second.size());
  }
  int deg(int i) const { return basis[i].deg; }
  const std::string& name(int i) const { return basis[i].name; }
  int min_deg() const { return lo_; }
  int max_deg() const { return hi_; }

  // Global indices of the degree-k slice, in basis order.
  const std::vector<int>& slice(int k) const {
    static const std::vector<int> empty;
    auto it = by_deg_.find(k);
    return it == by_deg_.end() ? empty : it->second;
  }
  // Position of basis element i inside its degree slice.
  int pos_in_deg(int i) const { return pos_in_deg_[i]; }

  int find(const std::string& nm) const {
    auto it = by_name_.find(nm);
    return it == by_name_.end() ? -1 : it->second;
  }

 private:
  std::map<std::string, int> by_name_;
  std::map<int, std::vector<int>> by_deg_;
  std::vector<int> pos_in_deg_;
  int lo_ = 0, hi_ = 0;
};

template <class K>
using SpaceRef = std::shared_ptr<const GradedSpace<K>>;

// Sparse element: (global index, coefficient) pairs, strictly ascending
// indices, no explicit zeros.
template <class K>
struct Elem {
  std::vector<std::pair<int, K>> c;

  bool zero() const { return c.empty(); }

  static Elem unit(int i, K v = K(1)) {
    Elem e;
    if (!is_zero(v)) e.c.emplace_back(i, std::move(v));
    return e;
  }

  K coeff(int i) const {
    auto it = std::lower_bound(
        c.begin(), c.end(), i,
        [](const std::pair<int, K>& a, int b) { return a.first < b; });
    return (it != c.end() && it->first == i) ? it->second : K(0);
  }

  friend bool operator==(const Elem& a, const Elem& b) { return a.c == b.c; }

  // Homogeneous degree, if any; disengaged for 0 or mixed-degree elements.
  std::optional<int> deg(const GradedSpace<K>& V) const {
    std::optional<int> d;
    for (auto& [i, x] : c) {
      (void)x;
      if (!d) {
        d = V.deg(i);
      } else if (*d != V.deg(i)) {
        return std::nullopt;
      }
    }
    return d;
  }

  std::string str(const GradedSpace<K>& V) const {
    if (c.empty()) return "0";
    std::string s;
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (t) s += " + ";
      s += ScalarOps<K>::str(c[t].second) + "*" + V.name(c[t].first);
    }
    return s;
  }
};

template <class K>
Elem<K> add(const Elem<K>& a, const Elem<K>& b) {
  Elem<K> out;
  out.c.reserve(a.c.size() + b.c.size());
  std::size_t i = 0, j = 0;
  while (i < a.c.size() || j < b.c.size()) {
    if (j == b.c.size() || (i < a.c.size() && a.c[i].first < b.c[j].first)) {
      out.c.push_back(a.c[i++]);
    } else if (i == a.c.size() || b.c[j].first < a.c[i].first) {
      out.c.push_back(b.c[j++]);
    } else {
      K s = a.c[i].second + b.c[j].second;
      if (!is_zero(s)) out.c.emplace_back(a.c[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
Elem<K> scale(const K& a, const Elem<K>& x) {
  Elem<K> out;
  if (is_zero(a)) return out;
  out.c.reserve(x.c.size());
  for (auto& [i, v] : x.c) {
    K s = a * v;
    if (!is_zero(s)) out.c.emplace_back(i, std::move(s));
  }
  return out;
}

template <class K>
Elem<K> sub(const Elem<K>& a, const Elem<K>& b) {
  return add(a, scale(K(-1), b));
}

// Epoch-stamped dense accumulator: add() is O(1), gather() touches only the
// indices written this epoch.  One instance is reused across an entire
// tabulation loop so no per-word allocation happens.
template <class K>
struct Scratch {
  std::vector<K> val;
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch = 0;
  std::vector<int> touched;

  void reset(int n) {
    if (static_cast<int>(val.size()) != n) {
      val.assign(n, K(0));
      stamp.assign(n, 0);
    }
    ++epoch;
    touched.clear();
  }

  void add(int i, const K& x) {
    if (stamp[i] != epoch) {
      stamp[i] = epoch;
      val[i] = x;
      touched.push_back(i);
    } else {
      val[i] += x;
    }
  }

  void add(const K& a, const Elem<K>& x) {
    for (auto& [i, v] : x.c) add(i, a * v);
  }

  Elem<K> gather() {
    std::sort(touched.begin(), touched.end());
    Elem<K> out;
    out.c.reserve(touched.size());
    for (int i : touched) {
      if (!is_zero(val[i])) out.c.emplace_back(i, val[i]);
    }
    return out;
  }
};

// Parity sign helper: (-1)^e for any integer e.
inline int sign_pm(long long e) { return (e % 2 == 0) ? 1 : -1; }

template <class K>
K signed_scalar(long long e) {
  return (e % 2 == 0) ? K(1) : K(-1);
}

}  // namespace ainf
