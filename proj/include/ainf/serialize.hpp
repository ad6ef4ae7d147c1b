#pragma once
// Writing algebras and elements back out as JSON documents, and the exact
// equality used to confirm that parse -> serialize -> parse is the identity
// on the algebra (basis order included).

#include "dg_algebra.hpp"
#include "json_io.hpp"

#include <json.hpp>

#include <string>

namespace ainf {

// Coefficient rendering: rationals as exact strings, prime-field values as
// reduced integers.
inline nlohmann::json coeff_to_json(const Rational& x) {
  return ScalarOps<Rational>::str(x);
}
inline nlohmann::json coeff_to_json(const Fp& x) {
  return std::stoll(ScalarOps<Fp>::str(x));
}

template <class K>
nlohmann::json elem_to_json(const Elem<K>& e, const GradedSpace<K>& V) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [i, v] : e.c) out[V.name(i)] = coeff_to_json(v);
  return out;
}

template <class K>
nlohmann::json serialize_algebra(const DGAlgebra<K>& A) {
  const GradedSpace<K>& V = *A.V;
  nlohmann::json doc;
  doc["field"] = A.p ? ("Fp:" + std::to_string(A.p)) : std::string("Q");
  nlohmann::json basis = nlohmann::json::array();
  for (int i = 0; i < V.dim(); ++i)
    basis.push_back({{"name", V.name(i)}, {"degree", V.deg(i)}});
  doc["basis"] = std::move(basis);

  nlohmann::json diff = nlohmann::json::object();
  for (int i = 0; i < V.dim(); ++i) {
    Elem<K> col = A.d.column(i);
    if (!col.zero()) diff[V.name(i)] = elem_to_json(col, V);
  }
  doc["differential"] = std::move(diff);

  nlohmann::json prod = nlohmann::json::array();
  for (int i = 0; i < V.dim(); ++i) {
    for (int j = 0; j < V.dim(); ++j) {
      const int w[2] = {i, j};
      if (const Elem<K>* v = A.mul.word(std::span<const int>(w, 2))) {
        prod.push_back({{"left", V.name(i)},
                        {"right", V.name(j)},
                        {"value", elem_to_json(*v, V)}});
      }
    }
  }
  doc["product"] = std::move(prod);
  return doc;
}

// Exact structural equality: same ordered basis with degrees, same modulus,
// same differential columns, same product table (stored values are nonzero
// by construction, so presence must match too).
template <class K>
bool algebras_equal(const DGAlgebra<K>& A, const DGAlgebra<K>& B) {
  if (A.p != B.p) return false;
  const GradedSpace<K>& VA = *A.V;
  const GradedSpace<K>& VB = *B.V;
  if (VA.dim() != VB.dim()) return false;
  for (int i = 0; i < VA.dim(); ++i)
    if (VA.name(i) != VB.name(i) || VA.deg(i) != VB.deg(i)) return false;
  for (int i = 0; i < VA.dim(); ++i)
    if (!(A.d.column(i) == B.d.column(i))) return false;
  for (int i = 0; i < VA.dim(); ++i) {
    for (int j = 0; j < VA.dim(); ++j) {
      const int w[2] = {i, j};
      const Elem<K>* a = A.mul.word(std::span<const int>(w, 2));
      const Elem<K>* b = B.mul.word(std::span<const int>(w, 2));
      if ((a == nullptr) != (b == nullptr)) return false;
      if (a && !(*a == *b)) return false;
    }
  }
  return true;
}

}  // namespace ainf
