// Document-level half of the engine: serialization and the parse ->
// serialize -> parse round trip.  Field dispatch happens here once so the
// command half can stay templated on the scalar.

#include "ainf/engine.hpp"
#include "ainf/json_io.hpp"
#include "ainf/serialize.hpp"

namespace ainf::engine {

nlohmann::json serialize_document(const nlohmann::json& doc) {
  FieldTag f = parse_field(doc);
  if (f.p == 0) return serialize_algebra(build_algebra<Rational>(doc, 0));
  return serialize_algebra(build_algebra<Fp>(doc, f.p));
}

bool roundtrip_identical(const nlohmann::json& doc) {
  FieldTag f = parse_field(doc);
  if (f.p == 0) {
    DGAlgebra<Rational> A = build_algebra<Rational>(doc, 0);
    nlohmann::json out = serialize_algebra(A);
    DGAlgebra<Rational> B = build_algebra<Rational>(out, 0);
    return algebras_equal(A, B);
  }
  DGAlgebra<Fp> A = build_algebra<Fp>(doc, f.p);
  nlohmann::json out = serialize_algebra(A);
  DGAlgebra<Fp> B = build_algebra<Fp>(out, f.p);
  return algebras_equal(A, B);
}

}  // namespace ainf::engine
