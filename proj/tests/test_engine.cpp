// Engine/driver behavior: document round trips, command outcomes, exit
// statuses, and the shape of the machine-readable reports.

#include "test_util.hpp"

#include "ainf/engine.hpp"
#include "ainf/json_io.hpp"

#include <fstream>

using namespace ainf;
using nlohmann::json;

namespace {

std::string path_of(const std::string& name) { return g_data_dir + "/" + name; }

engine::Outcome go(const std::string& cmd, std::vector<std::string> classes,
                   const std::string& file, engine::Options opt = {}) {
  return engine::run(cmd, std::move(classes), path_of(file), opt);
}

}  // namespace

TEST_CASE("documents round-trip through serialization") {
  for (const char* name :
       {"e1.json", "degree0.json", "acyclic.json", "massey4.json"}) {
    CAPTURE(name);
    json doc = load_json_file(path_of(name));
    CHECK(engine::roundtrip_identical(doc));
    // Serialized documents are explicit-basis documents; they round-trip too.
    json expanded = engine::serialize_document(doc);
    CHECK(engine::roundtrip_identical(expanded));
  }
}

TEST_CASE("validate and cohomology commands") {
  engine::Outcome v = go("validate", {}, "e1.json");
  CHECK(v.status == 0);
  CHECK(v.report["dimension"] == 85);
  CHECK(v.report["unit"] == json{{"1", 1}});

  engine::Outcome c = go("cohomology", {}, "e1.json");
  CHECK(c.status == 0);
  CHECK(c.report["betti"]["0"] == 1);
  CHECK(c.report["betti"]["1"] == 2);
  CHECK(c.report["classes"][0]["label"] == "h0_0");

  engine::Outcome a = go("cohomology", {}, "acyclic.json");
  CHECK(a.status == 0);
  CHECK(a.report["betti"].empty());

  for (const char* name : {"degree0.json", "massey4.json", "acyclic.json"}) {
    CAPTURE(name);
    CHECK(go("validate", {}, name).status == 0);
  }
}

TEST_CASE("model command reports structure tables") {
  engine::Options opt;
  opt.max_arity = 3;
  engine::Outcome m = go("model", {}, "e1.json", opt);
  CHECK(m.status == 0);
  CHECK(m.report["operations"].contains("2"));
  CHECK(m.report["operations"].contains("3"));
  CHECK(!m.report["operations"]["3"].empty());  // the ternary entries exist

  engine::Outcome d0 = go("model", {}, "degree0.json", opt);
  CHECK(d0.status == 0);
  CHECK(d0.report["operations"]["3"].empty());  // degree 0 is formal
}

TEST_CASE("massey, oracle, curvature, and theorem-check commands") {
  engine::Outcome s = go("massey", {"h1_0", "h1_1", "h1_0"}, "e1.json");
  CHECK(s.status == 0);
  CHECK(s.report["defined"] == true);
  CHECK(s.report["quotient_nonzero"] == true);
  CHECK(s.report["indeterminacy"].size() == 1);
  CHECK(s.report["epsilon"] == -1);

  engine::Outcome u = go("massey", {"h1_0", "h1_0", "h1_1"}, "e1.json");
  CHECK(u.status == 1);
  CHECK(u.report["defined"] == false);
  CHECK(u.text.find("no defining system") != std::string::npos);

  engine::Outcome o = go("oracle", {"h1_0", "h1_1", "h1_0"}, "e1.json");
  CHECK(o.status == 0);
  CHECK(o.report["count"] == 2);
  CHECK(o.report["contains_zero"] == false);

  engine::Outcome q = go("curvature", {"h1_0", "h1_1", "h1_0"}, "e1.json");
  CHECK(q.status == 0);
  CHECK(q.report["interior_vanishes"] == true);
  CHECK(q.report["nonzero_interior"].empty());

  engine::Outcome t = go("theorem-check", {"h1_0", "h1_1", "h1_0"}, "e1.json");
  CHECK(t.status == 0);
  CHECK(t.report["no_defining_system"] == false);

  engine::Outcome tu = go("theorem-check", {"h1_0", "h1_0", "h1_1"},
                          "e1.json");
  CHECK(tu.status == 1);
  CHECK(tu.report["no_defining_system"] == true);
  CHECK(tu.text.find("no defining system") != std::string::npos);

  // [a][b] = [ab] is a coboundary (that vanishing is what makes the triple
  // product above defined), so the order-2 set is {0}.
  engine::Outcome p2 = go("massey", {"h1_0", "h1_1"}, "e1.json");
  CHECK(p2.status == 0);
  CHECK(p2.report["quotient_nonzero"] == false);
}

TEST_CASE("isotopy command connects varied models") {
  engine::Options opt;
  opt.seed_a = 1;
  opt.seed_b = 2;
  opt.max_arity = 4;
  engine::Outcome i = go("isotopy", {}, "e1.json", opt);
  CHECK(i.status == 0);
  CHECK(i.report["mu2_equal"] == true);
  CHECK(i.report["found"] == true);
  CHECK(i.report["tau2_cobounds_ternary_difference"] == true);

  engine::Outcome d0 = go("isotopy", {}, "degree0.json", opt);
  CHECK(d0.status == 0);
  CHECK(d0.report["found"] == true);
}

TEST_CASE("input errors exit with status 2") {
  CHECK(go("cohomology", {}, "missing.json").status == 2);
  CHECK(go("massey", {"nope", "nope"}, "e1.json").status == 2);
  CHECK(go("massey", {"nope", "nope"}, "e1.json")
            .report["error"]
            .get<std::string>()
            .find("unknown class name") != std::string::npos);
  CHECK(go("frobnicate", {}, "e1.json").status == 2);
  // enumeration bound exceeded is an input error, not an assertion failure
  engine::Options tight;
  tight.bound = 0;
  CHECK(go("oracle", {"h1_0", "h1_1", "h1_0"}, "e1.json", tight).status == 2);
}

AINF_TEST_MAIN
