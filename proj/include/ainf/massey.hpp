#pragma once
// Higher products via defining systems.
//
// A defining system for classes x_1, ..., x_n packages cochains a_{u,v}
// (1 <= u <= v <= n, the corner (1, n) deliberately absent) whose diagonal
// entries represent the classes and whose interior entries satisfy
//
//   d a_{u,v} = sum_{r=u}^{v-1}  bar(a_{u,r}) * a_{r+1,v},
//
// where bar multiplies a homogeneous element by (-1)^{degree}.  Each valid
// system yields a cocycle
//
//   c(D) = sum_{r=1}^{n-1}  bar(a_{1,r}) * a_{r+1,n}
//
// and the n-fold product of the classes is the set of all [c(D)].  This
// header provides validation, the associated cocycle and class, the matrix
// curvature reformulation, construction of a defining system from a minimal
// model's structure maps, the triple product as an affine set with exact
// indeterminacy, shifts of a defining system, strictness tests, a
// finite-field enumeration oracle, and the membership check tying the
// model's n-ary operation to the product set.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dg_algebra.hpp"
#include "graded.hpp"
#include "linalg.hpp"
#include "minimal_model.hpp"
#include "multimap.hpp"
#include "report.hpp"
#include "transfer_data.hpp"

namespace ainf {

// ---------------------------------------------------------------------------
// Signs.

// bar(a) = (-1)^{|a|} a for homogeneous a; zero passes through.  Throws on
// elements of mixed degree, whose bar is not a scalar multiple.
template <class K>
Elem<K> sign_reversal(const GradedSpace<K>& V, const Elem<K>& a) {
  if (a.zero()) return a;
  std::optional<int> d = a.deg(V);
  if (!d)
    throw std::invalid_argument(
        "sign_reversal: element has mixed degree; bar is undefined");
  return (*d % 2 != 0) ? scale(K(-1), a) : a;
}

// The comparison sign between the n-ary structure map applied to classes and
// the class of the associated cocycle:
//
//   epsilon(x_1, ..., x_n) = (-1)^{ (n+2)(n+1)/2 + sum_{i=1}^n (n+i)|x_i| }.
//
// Takes the degree list; requires n >= 2.
inline int epsilon(std::span<const int> degrees) {
  const long long n = static_cast<long long>(degrees.size());
  if (n < 2) throw std::invalid_argument("epsilon: needs at least two inputs");
  long long e = (n + 2) * (n + 1) / 2;
  for (long long i = 1; i <= n; ++i) e += (n + i) * degrees[i - 1];
  return (e % 2 != 0) ? -1 : 1;
}

// Exponent of the sign attached to the (u, v) entry built from a structure
// map component: with l = v - u and degs = (|x_u|, ..., |x_v|),
//
//   s = l(l+1)/2 + sum_{i=0}^{l} (u + v + i) |x_{u+i}|.
inline long long bootstrap_exponent(int u, int v, std::span<const int> degs) {
  const int l = v - u;
  if (l < 0 || static_cast<int>(degs.size()) != l + 1)
    throw std::invalid_argument("bootstrap_exponent: degree list mismatch");
  long long s = static_cast<long long>(l) * (l + 1) / 2;
  for (int i = 0; i <= l; ++i)
    s += static_cast<long long>(u + v + i) * degs[i];
  return s;
}

// ---------------------------------------------------------------------------
// Defining systems.

template <class K>
struct DefiningSystem {
  std::vector<Elem<K>> x;                    // input classes, in H
  std::map<std::pair<int, int>, Elem<K>> a;  // entries, 1-based (u, v)

  int n() const { return static_cast<int>(x.size()); }

  // Entry (u, v); absent entries are the zero cochain.
  Elem<K> entry(int u, int v) const {
    auto it = a.find({u, v});
    return it == a.end() ? Elem<K>{} : it->second;
  }

  void set_entry(int u, int v, Elem<K> e) {
    if (u < 1 || v < u || v > n())
      throw std::invalid_argument("DefiningSystem::set_entry: index out of range");
    if (u == 1 && v == n())
      throw std::invalid_argument(
          "DefiningSystem::set_entry: the corner entry (1, n) is not part of a "
          "defining system");
    if (e.zero())
      a.erase({u, v});
    else
      a.insert_or_assign({u, v}, std::move(e));
  }
};

namespace detail {

// Degrees of a list of nonzero homogeneous classes; throws otherwise.
template <class K>
std::vector<int> class_degrees(const GradedSpace<K>& H,
                               std::span<const Elem<K>> xs) {
  std::vector<int> degs;
  degs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].zero())
      throw std::invalid_argument("input class " + std::to_string(i + 1) +
                                  " is zero; products need nonzero homogeneous "
                                  "classes");
    std::optional<int> d = xs[i].deg(H);
    if (!d)
      throw std::invalid_argument("input class " + std::to_string(i + 1) +
                                  " has mixed degree");
    degs.push_back(*d);
  }
  return degs;
}

// |a_{u,v}| = sum_{r=u}^{v} (|x_r| - 1) + 1, from the 0-based degree list.
inline int entry_degree(std::span<const int> degs, int u, int v) {
  int s = 1;
  for (int r = u; r <= v; ++r) s += degs[r - 1] - 1;
  return s;
}

// d a_{u,v} - sum_{r=u}^{v-1} bar(a_{u,r}) a_{r+1,v}; zero iff the defining
// condition at (u, v) holds.
template <class K>
Elem<K> defining_residual(const DGAlgebra<K>& alg, const DefiningSystem<K>& D,
                          int u, int v) {
  Elem<K> res = alg.d.apply(D.entry(u, v));
  for (int r = u; r < v; ++r) {
    Elem<K> term =
        alg.product(sign_reversal(*alg.V, D.entry(u, r)), D.entry(r + 1, v));
    res = sub(res, term);
  }
  return res;
}

// Coordinates of a homogeneous element inside one degree slice.
template <class K>
Vec<K> coords_in_degree(const GradedSpace<K>& V, int g, const Elem<K>& e) {
  Vec<K> out = Vec<K>::Zero(V.slice(g).size());
  for (const auto& [i, c] : e.c) {
    if (V.deg(i) != g)
      throw std::invalid_argument("coords_in_degree: support outside degree " +
                                  std::to_string(g));
    out[V.pos_in_deg(i)] = c;
  }
  return out;
}

template <class K>
Elem<K> elem_from_coords(const GradedSpace<K>& V, int g, const Vec<K>& c) {
  const auto& sl = V.slice(g);
  Elem<K> out;
  for (int j = 0; j < static_cast<int>(sl.size()); ++j)
    if (!is_zero(c[j])) out.c.emplace_back(sl[j], c[j]);
  return out;
}

// Matrix of the differential restricted to one degree: columns indexed by the
// degree-g slice, rows by the degree-(g+1) slice.
template <class K>
Mat<K> d_block(const DGAlgebra<K>& alg, int g) {
  const GradedSpace<K>& V = *alg.V;
  const auto& src = V.slice(g);
  Mat<K> M = Mat<K>::Zero(V.slice(g + 1).size(), src.size());
  for (int j = 0; j < static_cast<int>(src.size()); ++j) {
    Elem<K> col = alg.d.column(src[j]);
    for (const auto& [i, c] : col.c) M(V.pos_in_deg(i), j) = c;
  }
  return M;
}

// Particular solution of d(out) = rhs with out in degree g, or nullopt when
// rhs is not a coboundary.
template <class K>
std::optional<Elem<K>> solve_d(const DGAlgebra<K>& alg, int g,
                               const Elem<K>& rhs) {
  if (rhs.zero()) return Elem<K>{};
  LinearSolution<K> sol =
      solve_linear(d_block(alg, g), coords_in_degree(*alg.V, g + 1, rhs));
  if (!sol.consistent) return std::nullopt;
  return elem_from_coords(*alg.V, g, sol.particular);
}

// Basis of the degree-g cocycles.
template <class K>
std::vector<Elem<K>> d_kernel(const DGAlgebra<K>& alg, int g) {
  std::vector<Elem<K>> out;
  for (const Vec<K>& v : nullspace_basis(d_block(alg, g)))
    out.push_back(elem_from_coords(*alg.V, g, v));
  return out;
}

template <class K>
Elem<K> eval_at(const MultiMap<K>& m, std::span<const Elem<K>> args,
                Scratch<K>& acc) {
  std::vector<const Elem<K>*> ptrs(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) ptrs[i] = &args[i];
  return m.eval(std::span<const Elem<K>* const>(ptrs), acc);
}

// Row-reduce a list of same-degree elements to a deterministic basis of
// their span.
template <class K>
std::vector<Elem<K>> reduced_span(const GradedSpace<K>& H, int g,
                                  const std::vector<Elem<K>>& gens) {
  std::vector<const Elem<K>*> nz;
  for (const Elem<K>& e : gens)
    if (!e.zero()) nz.push_back(&e);
  std::vector<Elem<K>> out;
  if (nz.empty()) return out;
  Mat<K> M = Mat<K>::Zero(nz.size(), H.slice(g).size());
  for (int i = 0; i < static_cast<int>(nz.size()); ++i)
    M.row(i) = coords_in_degree(H, g, *nz[i]).transpose();
  Rref<K> E = rref(std::move(M));
  for (int r = 0; r < E.rank; ++r)
    out.push_back(elem_from_coords(H, g, Vec<K>(E.R.row(r).transpose())));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation.

// Checks, exactly and entry by entry, that D is a defining system for its
// input classes: inputs nonzero homogeneous; entries homogeneous of the
// prescribed degree; diagonal entries cocycles representing the inputs;
// every proper entry satisfying its defining condition; the corner absent.
template <class K>
Report validate_defining_system(const DGAlgebra<K>& alg,
                                const TransferData<K>& T,
                                const DefiningSystem<K>& D) {
  Report rep;
  const int n = D.n();
  ++rep.checks;
  if (n < 2) {
    rep.fail("inputs", "a defining system needs at least two classes");
    return rep;
  }
  std::vector<int> degs;
  try {
    degs = detail::class_degrees(*T.H, std::span<const Elem<K>>(D.x));
  } catch (const std::invalid_argument& e) {
    rep.fail("inputs", e.what());
    return rep;
  }

  for (const auto& [uv, e] : D.a) {
    ++rep.checks;
    const auto [u, v] = uv;
    if (u < 1 || v < u || v > n) {
      rep.fail("entry (" + std::to_string(u) + "," + std::to_string(v) + ")",
               "index out of range");
      continue;
    }
    if (u == 1 && v == n && !e.zero()) {
      rep.fail("entry (1," + std::to_string(n) + ")",
               "the corner entry must be absent");
      continue;
    }
    if (e.zero()) continue;
    std::optional<int> dg = e.deg(*alg.V);
    const int want = detail::entry_degree(degs, u, v);
    if (!dg || *dg != want)
      rep.fail("entry (" + std::to_string(u) + "," + std::to_string(v) + ")",
               "degree is not " + std::to_string(want));
  }

  for (int u = 1; u <= n; ++u) {
    Elem<K> auu = D.entry(u, u);
    ++rep.checks;
    Elem<K> dauu = alg.d.apply(auu);
    if (!dauu.zero()) {
      rep.fail("entry (" + std::to_string(u) + "," + std::to_string(u) + ")",
               "diagonal entry is not a cocycle");
      continue;
    }
    ++rep.checks;
    if (!(T.pi.apply(auu) == D.x[u - 1]))
      rep.fail("entry (" + std::to_string(u) + "," + std::to_string(u) + ")",
               "diagonal entry does not represent input class " +
                   std::to_string(u));
  }

  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (u == 1 && v == n) continue;
      ++rep.checks;
      Elem<K> res = detail::defining_residual(alg, D, u, v);
      if (!res.zero())
        rep.fail("entry (" + std::to_string(u) + "," + std::to_string(v) + ")",
                 "defining condition fails; residual " + res.str(*alg.V));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The associated cocycle and its class.

template <class K>
struct MasseyCocycle {
  Elem<K> cocycle;  // c(D), in the ambient algebra
  Elem<K> cls;      // its cohomology class
  int degree = 0;   // |x_1| + ... + |x_n| - n + 2
};

// c(D) = sum_{r=1}^{n-1} bar(a_{1,r}) a_{r+1,n}.  Throws when the result is
// not a cocycle, which happens exactly when D fails its defining conditions.
template <class K>
MasseyCocycle<K> c_of_D(const DGAlgebra<K>& alg, const TransferData<K>& T,
                        const DefiningSystem<K>& D) {
  const int n = D.n();
  if (n < 2)
    throw std::invalid_argument("c_of_D: needs at least two input classes");
  std::vector<int> degs =
      detail::class_degrees(*T.H, std::span<const Elem<K>>(D.x));
  MasseyCocycle<K> out;
  Elem<K> c;
  for (int r = 1; r <= n - 1; ++r)
    c = add(c, alg.product(sign_reversal(*alg.V, D.entry(1, r)),
                           D.entry(r + 1, n)));
  if (!alg.d.apply(c).zero())
    throw std::invalid_argument(
        "c_of_D: the associated cochain is not a cocycle; the defining "
        "conditions fail");
  out.cocycle = std::move(c);
  out.cls = T.pi.apply(out.cocycle);
  out.degree = 2 - n;
  for (int d : degs) out.degree += d;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix curvature.

// Package the entries into the strictly upper triangular (n+1) x (n+1)
// matrix DD with DD_{u, v+1} = a_{u,v} and form  -d DD + bar(DD) * DD.  Its
// interior entries are exactly minus the defining-condition residuals, and
// the corner (1, n+1) is c(D).
template <class K>
struct MatrixCurvature {
  int n = 0;
  // Nonzero entries of -d DD + bar(DD) DD away from the corner, 1-based.
  std::map<std::pair<int, int>, Elem<K>> interior;
  Elem<K> corner;           // entry (1, n+1)
  bool interior_ok = true;  // all non-corner entries vanish
};

template <class K>
MatrixCurvature<K> matrix_curvature(const DGAlgebra<K>& alg,
                                    const DefiningSystem<K>& D) {
  const int n = D.n();
  if (n < 2)
    throw std::invalid_argument(
        "matrix_curvature: needs at least two input classes");
  MatrixCurvature<K> out;
  out.n = n;
  auto dd = [&](int i, int j) -> Elem<K> {
    if (j - 1 < i) return Elem<K>{};
    if (i == 1 && j == n + 1) return Elem<K>{};
    return D.entry(i, j - 1);
  };
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      Elem<K> r = scale(K(-1), alg.d.apply(dd(i, j)));
      for (int k = i + 1; k <= j - 1; ++k)
        r = add(r, alg.product(sign_reversal(*alg.V, dd(i, k)), dd(k, j)));
      if (i == 1 && j == n + 1) {
        out.corner = std::move(r);
      } else if (!r.zero()) {
        out.interior_ok = false;
        out.interior.emplace(std::make_pair(i, j), std::move(r));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Defining systems from a minimal model.

// Build the canonical defining system for classes x_1, ..., x_n out of the
// connecting morphism's components: diagonal entries psi(x_u) and
//
//   a_{u,v} = (-1)^{bootstrap_exponent(u, v, ...)} psi_{v-u+1}(x_u, ..., x_v).
//
// Requires every structure-map value mu_k(x_u, ..., x_v), 2 <= k <= n-1, on a
// consecutive subinterval to vanish; throws naming the first violation.
template <class K>
DefiningSystem<K> bootstrap_defining_system(const CanonicalModel<K>& C,
                                            std::span<const Elem<K>> xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument(
        "bootstrap_defining_system: needs at least two classes");
  if (C.model.max_arity < n - 1 || C.connecting.max_arity < n - 1)
    throw std::invalid_argument(
        "bootstrap_defining_system: the model was built through arity " +
        std::to_string(C.model.max_arity) + "; arity " + std::to_string(n - 1) +
        " is needed");
  const GradedSpace<K>& H = *C.model.V;
  std::vector<int> degs = detail::class_degrees(H, xs);
  Scratch<K> acc;

  for (int k = 2; k <= n - 1; ++k) {
    const MultiMap<K>* op = C.model.op(k);
    if (!op) continue;
    for (int u = 1; u + k - 1 <= n; ++u) {
      const int v = u + k - 1;
      Elem<K> val = detail::eval_at(*op, xs.subspan(u - 1, k), acc);
      if (!val.zero())
        throw std::invalid_argument(
            "bootstrap_defining_system: hypothesis fails: the arity-" +
            std::to_string(k) + " operation is nonzero on (x_" +
            std::to_string(u) + ", ..., x_" + std::to_string(v) + ")");
    }
  }

  DefiningSystem<K> D;
  D.x.assign(xs.begin(), xs.end());
  for (int u = 1; u <= n; ++u) {
    for (int v = u; v <= n; ++v) {
      if (u == 1 && v == n) continue;
      const int l = v - u;
      const MultiMap<K>* psi = C.connecting.comp(l + 1);
      if (!psi) continue;
      Elem<K> val = detail::eval_at(*psi, xs.subspan(u - 1, l + 1), acc);
      if (val.zero()) continue;
      long long s = bootstrap_exponent(
          u, v, std::span<const int>(degs).subspan(u - 1, l + 1));
      D.set_entry(u, v, scale(signed_scalar<K>(s), val));
    }
  }
  return D;
}

// ---------------------------------------------------------------------------
// Affine class sets.

// The value of a higher product: an affine subset of one degree of H, given
// by a representative plus the span of the indeterminacy basis.  A
// disengaged representative encodes the empty set (the product undefined).
template <class K>
struct AffineClassSet {
  int degree = 0;
  std::optional<Elem<K>> representative;
  std::vector<Elem<K>> indeterminacy;

  bool empty() const { return !representative.has_value(); }
};

template <class K>
bool affine_contains(const GradedSpace<K>& H, const AffineClassSet<K>& S,
                     const Elem<K>& cls) {
  if (S.empty()) return false;
  if (!cls.zero()) {
    std::optional<int> d = cls.deg(H);
    if (!d || *d != S.degree) return false;
  }
  Elem<K> diff = sub(cls, *S.representative);
  if (diff.zero()) return true;
  if (S.indeterminacy.empty()) return false;
  const int rows = static_cast<int>(H.slice(S.degree).size());
  Mat<K> M = Mat<K>::Zero(rows, S.indeterminacy.size());
  for (int j = 0; j < static_cast<int>(S.indeterminacy.size()); ++j)
    M.col(j) = detail::coords_in_degree(H, S.degree, S.indeterminacy[j]);
  return solve_linear(M, detail::coords_in_degree(H, S.degree, diff))
      .consistent;
}

// All members over a finite coefficient field with p elements; throws when
// p^dim exceeds `limit`.  Meaningful only when the scalars form that field.
template <class K>
std::vector<Elem<K>> affine_enumerate(const GradedSpace<K>& H,
                                      const AffineClassSet<K>& S, long long p,
                                      long long limit = 1 << 20) {
  (void)H;  // kept for symmetry with affine_contains
  if (p < 2) throw std::invalid_argument("affine_enumerate: needs p >= 2");
  if (S.empty()) return {};
  const int m = static_cast<int>(S.indeterminacy.size());
  long long count = 1;
  for (int i = 0; i < m; ++i) {
    if (count > limit / p)
      throw std::invalid_argument("affine_enumerate: p^dim exceeds the limit");
    count *= p;
  }
  std::vector<Elem<K>> out;
  std::vector<long long> t(m, 0);
  for (long long s = 0; s < count; ++s) {
    Elem<K> e = *S.representative;
    for (int i = 0; i < m; ++i)
      if (t[i] != 0)
        e = add(e, scale(ScalarOps<K>::rebind(K(static_cast<int>(t[i])), p),
                         S.indeterminacy[i]));
    out.push_back(std::move(e));
    for (int i = 0; i < m; ++i) {
      if (++t[i] < p) break;
      t[i] = 0;
    }
  }
  return out;
}

// Equality of affine sets: same degree, same span, representatives differing
// by a span member.
template <class K>
bool affine_equals(const GradedSpace<K>& H, const AffineClassSet<K>& a,
                   const AffineClassSet<K>& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  if (a.degree != b.degree) return false;
  std::vector<Elem<K>> sa =
      detail::reduced_span(H, a.degree, a.indeterminacy);
  std::vector<Elem<K>> sb =
      detail::reduced_span(H, b.degree, b.indeterminacy);
  if (sa.size() != sb.size()) return false;
  AffineClassSet<K> za{a.degree, Elem<K>{}, sa};
  for (const Elem<K>& e : sb)
    if (!affine_contains(H, za, e)) return false;
  return affine_contains(H, za, sub(*a.representative, *b.representative));
}

// ---------------------------------------------------------------------------
// Triple products.

// The full triple product of classes x, y, z: empty when x*y or y*z is a
// nonzero class; otherwise an affine set whose indeterminacy is
// x * H^{|y|+|z|-1} + H^{|x|+|y|-1} * z.
template <class K>
AffineClassSet<K> triple_massey(const DGAlgebra<K>& alg,
                                const TransferData<K>& T, const Elem<K>& x,
                                const Elem<K>& y, const Elem<K>& z) {
  const GradedSpace<K>& H = *T.H;
  const std::vector<Elem<K>> xs = {x, y, z};
  std::vector<int> degs =
      detail::class_degrees(H, std::span<const Elem<K>>(xs));
  const int dx = degs[0], dy = degs[1], dz = degs[2];
  AffineClassSet<K> out;
  out.degree = dx + dy + dz - 1;

  MultiMap<K> mu2H = induced_product(alg, T);
  Scratch<K> acc;
  const std::array<const Elem<K>*, 2> pxy = {&x, &y};
  const std::array<const Elem<K>*, 2> pyz = {&y, &z};
  if (!mu2H.eval(std::span<const Elem<K>* const>(pxy), acc).zero() ||
      !mu2H.eval(std::span<const Elem<K>* const>(pyz), acc).zero())
    return out;  // undefined: no defining system exists

  const Elem<K> a11 = representative(T, x);
  const Elem<K> a22 = representative(T, y);
  const Elem<K> a33 = representative(T, z);
  std::optional<Elem<K>> a12 = detail::solve_d(
      alg, dx + dy - 1, alg.product(sign_reversal(*alg.V, a11), a22));
  std::optional<Elem<K>> a23 = detail::solve_d(
      alg, dy + dz - 1, alg.product(sign_reversal(*alg.V, a22), a33));
  if (!a12 || !a23)
    throw std::logic_error(
        "triple_massey: a vanishing product class had no cobounding cochain; "
        "the transfer data is inconsistent");

  Elem<K> c = add(alg.product(sign_reversal(*alg.V, a11), *a23),
                  alg.product(sign_reversal(*alg.V, *a12), a33));
  if (!alg.d.apply(c).zero())
    throw std::logic_error("triple_massey: associated cochain is not a cocycle");
  out.representative = T.pi.apply(c);

  std::vector<Elem<K>> gens;
  for (int h : H.slice(dy + dz - 1)) {
    Elem<K> hb = Elem<K>::unit(h, K(1));
    const std::array<const Elem<K>*, 2> args = {&x, &hb};
    gens.push_back(mu2H.eval(std::span<const Elem<K>* const>(args), acc));
  }
  for (int h : H.slice(dx + dy - 1)) {
    Elem<K> hb = Elem<K>::unit(h, K(1));
    const std::array<const Elem<K>*, 2> args = {&hb, &z};
    gens.push_back(mu2H.eval(std::span<const Elem<K>* const>(args), acc));
  }
  out.indeterminacy = detail::reduced_span(H, out.degree, gens);
  return out;
}

// ---------------------------------------------------------------------------
// Shifting a defining system.

// Shift the off-diagonal entries of a triple-product defining system by
// cocycles representing classes xi12 and xi23:
//
//   a_{1,2} += psi(bar(xi12)),   a_{2,3} += psi(xi23).
//
// The class of c(D) then moves by (-1)^{|x_1|} x_1 * xi23 + xi12 * x_3, which
// stays inside the indeterminacy subspace.
template <class K>
DefiningSystem<K> shift_defining_system(const DGAlgebra<K>& alg,
                                        const TransferData<K>& T,
                                        const DefiningSystem<K>& D,
                                        const Elem<K>& xi12,
                                        const Elem<K>& xi23) {
  (void)alg;  // the shift acts through the transfer data alone
  if (D.n() != 3)
    throw std::invalid_argument(
        "shift_defining_system: only triple-product systems can be shifted");
  const GradedSpace<K>& H = *T.H;
  std::vector<int> degs =
      detail::class_degrees(H, std::span<const Elem<K>>(D.x));
  auto check_deg = [&](const Elem<K>& xi, int want, const char* which) {
    if (xi.zero()) return;
    std::optional<int> d = xi.deg(H);
    if (!d || *d != want)
      throw std::invalid_argument(std::string("shift_defining_system: ") +
                                  which + " must be homogeneous of degree " +
                                  std::to_string(want));
  };
  check_deg(xi12, degs[0] + degs[1] - 1, "xi12");
  check_deg(xi23, degs[1] + degs[2] - 1, "xi23");

  DefiningSystem<K> out = D;
  out.set_entry(1, 2, add(D.entry(1, 2), T.psi.apply(sign_reversal(H, xi12))));
  out.set_entry(2, 3, add(D.entry(2, 3), T.psi.apply(xi23)));
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration oracle.

namespace detail {

// The non-diagonal entry positions of an n-input defining system, shortest
// spans first.
inline std::vector<std::pair<int, int>> oracle_entries(int n) {
  std::vector<std::pair<int, int>> out;
  for (int l = 1; l <= n - 2; ++l)
    for (int u = 1; u + l <= n; ++u)
      if (!(u == 1 && u + l == n)) out.emplace_back(u, u + l);
  return out;
}

template <class K>
Elem<K> oracle_class_key_elem(const std::vector<std::uint64_t>& key,
                              long long p) {
  Elem<K> e;
  for (std::size_t w = 0; w < key.size(); ++w)
    for (int b = 0; b < 64; ++b)
      if (key[w] >> b & 1)
        e.c.emplace_back(static_cast<int>(w * 64 + b),
                         ScalarOps<K>::rebind(K(1), p));
  return e;
}

}  // namespace detail

// Enumerate every defining system with diagonal entries psi(x_u) and collect
// the distinct classes [c(D)].  Over a finite coefficient field this is the
// exact product set (changing a diagonal representative is absorbed by a
// shift of the interior entries).  `bound` caps the number of free cochain
// coordinates; exceeding it throws, reporting the enumeration size p^m.
// Over the rationals only instances with no free coordinates are accepted.
// Returns the empty vector exactly when no defining system exists.
template <class K>
std::vector<Elem<K>> brute_force_massey(const DGAlgebra<K>& alg,
                                        const TransferData<K>& T,
                                        std::span<const Elem<K>> xs,
                                        long long bound = 24) {
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument(
        "brute_force_massey: needs at least two classes");
  const GradedSpace<K>& V = *alg.V;
  const GradedSpace<K>& H = *T.H;
  std::vector<int> degs = detail::class_degrees(H, xs);

  DefiningSystem<K> base;
  base.x.assign(xs.begin(), xs.end());
  for (int u = 1; u <= n; ++u)
    base.set_entry(u, u, representative(T, xs[u - 1]));

  if (n == 2) {
    Elem<K> c = alg.product(sign_reversal(V, base.entry(1, 1)),
                            base.entry(2, 2));
    return {cocycle_class(alg, T, c)};
  }

  const std::vector<std::pair<int, int>> entries = detail::oracle_entries(n);

  if (n <= 4) {
    // Every defining condition is linear in the interior entries (a product
    // of two interior entries needs a span of length >= 3, hence n >= 5), so
    // one joint linear solve describes all defining systems at once.
    std::map<std::pair<int, int>, int> col_off, row_off, ent_deg;
    int cols = 0, rows = 0;
    for (const auto& [u, v] : entries) {
      const int g = detail::entry_degree(std::span<const int>(degs), u, v);
      ent_deg[{u, v}] = g;
      col_off[{u, v}] = cols;
      cols += static_cast<int>(V.slice(g).size());
      row_off[{u, v}] = rows;
      rows += static_cast<int>(V.slice(g + 1).size());
    }
    Mat<K> M = Mat<K>::Zero(rows, cols);
    Vec<K> b = Vec<K>::Zero(rows);
    for (const auto& [u, v] : entries) {
      const int g = ent_deg[{u, v}];
      const int r0 = row_off[{u, v}];
      const auto add_block = [&](int col, const Elem<K>& val, int sgn) {
        for (const auto& [i, c] : val.c) {
          if (V.deg(i) != g + 1)
            throw std::logic_error("brute_force_massey: degree bookkeeping");
          M(r0 + V.pos_in_deg(i), col) += (sgn < 0 ? K(-1) * c : c);
        }
      };
      // d a_{u,v}
      for (int j = 0; j < static_cast<int>(V.slice(g).size()); ++j)
        add_block(col_off[{u, v}] + j, alg.d.column(V.slice(g)[j]), +1);
      // - sum_r bar(a_{u,r}) a_{r+1,v}
      for (int r = u; r < v; ++r) {
        const bool left_diag = (r == u), right_diag = (r + 1 == v);
        if (left_diag && right_diag) {
          Elem<K> c = alg.product(sign_reversal(V, base.entry(u, u)),
                                  base.entry(v, v));
          for (const auto& [i, cv] : c.c) b[r0 + V.pos_in_deg(i)] += cv;
        } else if (left_diag) {
          const Elem<K> lbar = sign_reversal(V, base.entry(u, u));
          const int gf = ent_deg[{r + 1, v}];
          for (int j = 0; j < static_cast<int>(V.slice(gf).size()); ++j)
            add_block(col_off[{r + 1, v}] + j,
                      alg.product(lbar, Elem<K>::unit(V.slice(gf)[j], K(1))),
                      -1);
        } else if (right_diag) {
          const int gf = ent_deg[{u, r}];
          const int sgn = (gf % 2 != 0) ? -1 : +1;  // bar on the free factor
          for (int j = 0; j < static_cast<int>(V.slice(gf).size()); ++j) {
            Elem<K> t = alg.product(Elem<K>::unit(V.slice(gf)[j], K(1)),
                                    base.entry(v, v));
            add_block(col_off[{u, r}] + j, sgn < 0 ? scale(K(-1), t) : t, -1);
          }
        } else {
          throw std::logic_error(
              "brute_force_massey: quadratic term in the linear path");
        }
      }
    }
    LinearSolution<K> sol = solve_linear(M, b);
    if (!sol.consistent) return {};  // no defining system: empty product set
    const int m = static_cast<int>(sol.nullspace.size());
    const long long p = alg.p;
    if (m > bound) {
      std::ostringstream os;
      os << "brute_force_massey: " << m
         << " free cochain coordinates exceed the bound " << bound
         << "; enumeration would need " << (p > 0 ? p : 0) << "^" << m
         << " defining systems";
      throw std::invalid_argument(os.str());
    }

    // Interior entries at coordinates t, and the class of c(D).
    auto entry_at = [&](const Vec<K>& coords, int u, int v) -> Elem<K> {
      if (u == v) return base.entry(u, u);
      if (u == 1 && v == n) return Elem<K>{};
      const int g = ent_deg[{u, v}];
      const int off = col_off[{u, v}];
      Elem<K> out;
      const auto& sl = V.slice(g);
      for (int j = 0; j < static_cast<int>(sl.size()); ++j)
        if (!is_zero(coords[off + j])) out.c.emplace_back(sl[j], coords[off + j]);
      return out;
    };
    auto cocycle_at = [&](const Vec<K>& coords) -> Elem<K> {
      Elem<K> c;
      for (int r = 1; r <= n - 1; ++r)
        c = add(c, alg.product(sign_reversal(V, entry_at(coords, 1, r)),
                               entry_at(coords, r + 1, n)));
      return c;
    };
    auto class_at = [&](const Vec<K>& coords) -> Elem<K> {
      Elem<K> c = cocycle_at(coords);
      if (!alg.d.apply(c).zero())
        throw std::logic_error(
            "brute_force_massey: enumerated cochain is not a cocycle");
      return T.pi.apply(c);
    };
    auto point = [&](std::span<const long long> t) -> Vec<K> {
      Vec<K> c = sol.particular;
      for (int i = 0; i < m; ++i) {
        if (t[i] == 0) continue;
        const K ti = ScalarOps<K>::rebind(K(static_cast<int>(t[i])), p);
        for (int r = 0; r < static_cast<int>(c.size()); ++r)
          c[r] = c[r] + ti * sol.nullspace[i][r];
      }
      return c;
    };

    if (p == 0) {
      if (m != 0)
        throw std::invalid_argument(
            "brute_force_massey: infinitely many defining systems over the "
            "rationals; a finite coefficient field is needed");
      return {class_at(sol.particular)};
    }

    if (p == 2 && m < 63) {
      // The class is a polynomial of degree <= 2 in the coordinates, so its
      // values at 0, e_i, and e_i + e_j determine it everywhere; a Gray-code
      // walk then visits all 2^m points with one coordinate flip each.
      const int nw = (H.dim() + 63) / 64;
      auto to_key = [&](const Elem<K>& cls) {
        std::vector<std::uint64_t> k(nw, 0);
        for (const auto& [i, c] : cls.c)
          if (!is_zero(c)) k[i / 64] |= std::uint64_t{1} << (i % 64);
        return k;
      };
      std::vector<long long> t(m, 0);
      const std::vector<std::uint64_t> q0 = to_key(class_at(point(t)));
      std::vector<std::vector<std::uint64_t>> lin(m);
      std::vector<std::vector<std::vector<std::uint64_t>>> quad(
          m, std::vector<std::vector<std::uint64_t>>(m));
      auto x0r = [&](std::vector<std::uint64_t> a,
                     const std::vector<std::uint64_t>& bb) {
        for (int w = 0; w < nw; ++w) a[w] ^= bb[w];
        return a;
      };
      for (int i = 0; i < m; ++i) {
        std::fill(t.begin(), t.end(), 0);
        t[i] = 1;
        lin[i] = x0r(to_key(class_at(point(t))), q0);
      }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          std::fill(t.begin(), t.end(), 0);
          t[i] = t[j] = 1;
          quad[i][j] = quad[j][i] = x0r(
              x0r(x0r(to_key(class_at(point(t))), q0), lin[i]), lin[j]);
        }
      std::set<std::vector<std::uint64_t>> seen;
      std::vector<std::uint64_t> cur = q0;
      std::vector<std::uint64_t> bits(m, 0);
      seen.insert(cur);
      const std::uint64_t total = std::uint64_t{1} << m;
      for (std::uint64_t s = 1; s < total; ++s) {
        int i = 0;
        while (!(s >> i & 1)) ++i;
        for (int w = 0; w < nw; ++w) cur[w] ^= lin[i][w];
        for (int j = 0; j < m; ++j)
          if (j != i && bits[j])
            for (int w = 0; w < nw; ++w) cur[w] ^= quad[i][j][w];
        bits[i] ^= 1;
        seen.insert(cur);
      }
      std::vector<Elem<K>> out;
      for (const auto& k : seen)
        out.push_back(detail::oracle_class_key_elem<K>(k, p));
      return out;
    }

    // Small odd primes: walk the full coordinate grid directly.
    std::map<std::string, Elem<K>> seen;
    std::vector<long long> t(m, 0);
    while (true) {
      Elem<K> cls = class_at(point(t));
      seen.emplace(cls.str(H), std::move(cls));
      int i = 0;
      while (i < m && ++t[i] == p) t[i++] = 0;
      if (i == m) break;
    }
    std::vector<Elem<K>> out;
    for (auto& [k, e] : seen) out.push_back(std::move(e));
    return out;
  }

  // Five or more inputs: some defining conditions are quadratic in the
  // interior entries, so solve entry by entry (shortest spans first) and
  // branch over each entry's cocycle freedom.
  long long free_coords = 0;
  std::map<int, std::vector<Elem<K>>> kernels;
  for (const auto& [u, v] : entries) {
    const int g = detail::entry_degree(std::span<const int>(degs), u, v);
    if (!kernels.count(g)) kernels[g] = detail::d_kernel(alg, g);
    free_coords += static_cast<long long>(kernels[g].size());
  }
  if (free_coords > bound) {
    std::ostringstream os;
    os << "brute_force_massey: " << free_coords
       << " free cochain coordinates exceed the bound " << bound
       << "; enumeration would need " << alg.p << "^" << free_coords
       << " defining systems";
    throw std::invalid_argument(os.str());
  }
  if (alg.p == 0 && free_coords != 0)
    throw std::invalid_argument(
        "brute_force_massey: infinitely many defining systems over the "
        "rationals; a finite coefficient field is needed");
  const long long p = std::max<long long>(alg.p, 1);

  std::map<std::string, Elem<K>> seen;
  DefiningSystem<K> D = base;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == entries.size()) {
      MasseyCocycle<K> mc = c_of_D(alg, T, D);
      seen.emplace(mc.cls.str(H), mc.cls);
      return;
    }
    const auto [u, v] = entries[idx];
    const int g = detail::entry_degree(std::span<const int>(degs), u, v);
    Elem<K> rhs;
    for (int r = u; r < v; ++r)
      rhs = add(rhs, alg.product(sign_reversal(V, D.entry(u, r)),
                                 D.entry(r + 1, v)));
    std::optional<Elem<K>> part = detail::solve_d(alg, g, rhs);
    if (!part) return;  // this branch admits no defining system
    const std::vector<Elem<K>>& ker = kernels[g];
    std::vector<long long> t(ker.size(), 0);
    while (true) {
      Elem<K> e = *part;
      for (std::size_t i = 0; i < ker.size(); ++i)
        if (t[i] != 0)
          e = add(e, scale(ScalarOps<K>::rebind(K(static_cast<int>(t[i])), p),
                           ker[i]));
      D.set_entry(u, v, std::move(e));
      self(self, idx + 1);
      std::size_t i = 0;
      while (i < t.size() && ++t[i] == p) t[i++] = 0;
      if (i == t.size()) break;
    }
    D.set_entry(u, v, Elem<K>{});
  };
  rec(rec, 0);
  std::vector<Elem<K>> out;
  for (auto& [k, e] : seen) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------------------
// Strictness.

struct StrictlyDefined {
  bool strict = false;
  bool decided = true;  // false: a long subinterval was not enumerable
  Report detail;
};

// A product is strictly defined when every proper consecutive subinterval
// product of length 2 <= k <= n-1 equals {0} as a set.  Length 2 uses the
// induced product, length 3 the exact triple product; longer subintervals
// fall back to the enumeration oracle, which needs a finite field.
template <class K>
StrictlyDefined is_strictly_defined(const DGAlgebra<K>& alg,
                                    const TransferData<K>& T,
                                    std::span<const Elem<K>> xs,
                                    long long bound = 24) {
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument(
        "is_strictly_defined: needs at least two classes");
  detail::class_degrees(*T.H, xs);
  StrictlyDefined out;
  out.strict = true;
  MultiMap<K> mu2H = induced_product(alg, T);
  Scratch<K> acc;
  auto name = [](int u, int v) {
    return "(x_" + std::to_string(u) + ", ..., x_" + std::to_string(v) + ")";
  };
  for (int k = 2; k <= n - 1; ++k) {
    for (int u = 1; u + k - 1 <= n; ++u) {
      const int v = u + k - 1;
      ++out.detail.checks;
      if (k == 2) {
        if (!detail::eval_at(mu2H, xs.subspan(u - 1, 2), acc).zero()) {
          out.strict = false;
          out.detail.fail(name(u, v), "product class is nonzero");
        }
      } else if (k == 3) {
        AffineClassSet<K> S =
            triple_massey(alg, T, xs[u - 1], xs[u], xs[u + 1]);
        if (S.empty() || !S.representative->zero() ||
            !S.indeterminacy.empty()) {
          out.strict = false;
          out.detail.fail(name(u, v), S.empty()
                                          ? "triple product is undefined"
                                          : "triple product is not {0}");
        }
      } else if (alg.p == 0) {
        out.decided = false;
        out.detail.fail(name(u, v),
                        "length-" + std::to_string(k) +
                            " subinterval products cannot be enumerated over "
                            "the rationals");
      } else {
        std::vector<Elem<K>> set =
            brute_force_massey(alg, T, xs.subspan(u - 1, k), bound);
        if (set.size() != 1 || !set.front().zero()) {
          out.strict = false;
          out.detail.fail(name(u, v), set.empty()
                                          ? "subinterval product is undefined"
                                          : "subinterval product is not {0}");
        }
      }
    }
  }
  if (!out.decided) out.strict = false;
  return out;
}

// ---------------------------------------------------------------------------
// Membership of the n-ary structure map in the product set.

// Given classes x_1, ..., x_n on which every shorter structure map vanishes
// for consecutive subintervals, the canonical model satisfies
//
//   psi(mu_n(x_1, ..., x_n)) = d psi_n(x_1, ..., x_n) + epsilon * c(D)
//
// for the defining system D built from the connecting morphism, hence
// epsilon * mu_n(x_1, ..., x_n) lies in the n-fold product set.  Checks the
// hypothesis, the bootstrap system, the exact cochain identity, the class
// identity, and (over a finite field, within the oracle bound) membership in
// the enumerated set.
template <class K>
Report massey_membership_theorem_check(const DGAlgebra<K>& alg,
                                       const TransferData<K>& T,
                                       std::span<const Elem<K>> xs, int N,
                                       long long oracle_bound = 24) {
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument(
        "massey_membership_theorem_check: needs at least two classes");
  if (N < n)
    throw std::invalid_argument(
        "massey_membership_theorem_check: the model must be built at least "
        "through arity " +
        std::to_string(n));
  Report rep;
  CanonicalModel<K> C = canonical_minimal_model(alg, T, N);
  const GradedSpace<K>& H = *T.H;
  std::vector<int> degs = detail::class_degrees(H, xs);
  Scratch<K> acc;

  bool hypothesis = true;
  for (int k = 2; k <= n - 1; ++k) {
    const MultiMap<K>* op = C.model.op(k);
    if (!op) continue;
    for (int u = 1; u + k - 1 <= n; ++u) {
      ++rep.checks;
      if (!detail::eval_at(*op, xs.subspan(u - 1, k), acc).zero()) {
        hypothesis = false;
        rep.fail("hypothesis",
                 "the arity-" + std::to_string(k) +
                     " operation is nonzero on (x_" + std::to_string(u) +
                     ", ..., x_" + std::to_string(u + k - 1) + ")");
      }
    }
  }
  if (!hypothesis) return rep;

  DefiningSystem<K> D = bootstrap_defining_system(C, xs);
  rep.absorb(validate_defining_system(alg, T, D));
  MasseyCocycle<K> mc = c_of_D(alg, T, D);
  const int eps = epsilon(std::span<const int>(degs));

  const MultiMap<K>* opn = C.model.op(n);
  Elem<K> mun = opn ? detail::eval_at(*opn, xs, acc) : Elem<K>{};
  const MultiMap<K>* psin = C.connecting.comp(n);
  Elem<K> psn = psin ? detail::eval_at(*psin, xs, acc) : Elem<K>{};

  ++rep.checks;
  Elem<K> lhs = T.psi.apply(mun);
  Elem<K> rhs = add(alg.d.apply(psn), scale(K(eps), mc.cocycle));
  if (!(lhs == rhs))
    rep.fail("cochain identity",
             "psi(mu_" + std::to_string(n) +
                 "(x)) - d psi_n(x) - epsilon c(D) = " +
                 sub(lhs, rhs).str(*alg.V));

  ++rep.checks;
  Elem<K> emun = scale(K(eps), mun);
  if (!(emun == mc.cls))
    rep.fail("class identity", "epsilon mu_" + std::to_string(n) +
                                   "(x) != [c(D)]; difference " +
                                   sub(emun, mc.cls).str(H));

  if (alg.p > 0) {
    ++rep.checks;
    std::vector<Elem<K>> set = brute_force_massey(alg, T, xs, oracle_bound);
    bool member = false;
    for (const Elem<K>& e : set)
      if (e == emun) {
        member = true;
        break;
      }
    if (!member)
      rep.fail("membership", "epsilon mu_" + std::to_string(n) +
                                 "(x) is not among the " +
                                 std::to_string(set.size()) +
                                 " enumerated classes");
  }
  return rep;
}

}  // namespace ainf
