// Command-line driver.  Usage:
//
//   ainf <command> [class labels...] <document.json> [flags]
//
// Commands: validate, cohomology, model, massey, oracle, isotopy, curvature,
// theorem-check.  Class labels are the deterministic cohomology labels
// printed by `cohomology` (h<degree>_<index>).  Exit status: 0 when every
// asserted identity passed, 1 on an assertion failure, 2 on input errors.

#include "ainf/engine.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Exact minimal-structure and product-set calculator for "
               "finite-dimensional differential graded algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json appear after the subcommand too

  bool as_json = false;
  app.add_flag("--json", as_json,
               "print the machine-readable JSON report instead of the "
               "summary");

  ainf::engine::Options opt;
  struct Cmd {
    CLI::App* sub = nullptr;
    std::vector<std::string> args;
  };
  std::map<std::string, Cmd> cmds;

  auto add_cmd = [&](const std::string& name, const std::string& desc,
                     bool wants_classes) {
    Cmd& c = cmds[name];
    c.sub = app.add_subcommand(name, desc);
    auto* positional =
        c.sub->add_option("args", c.args,
                          wants_classes ? "class labels, then the document"
                                        : "the document");
    positional->required();
    return c.sub;
  };

  add_cmd("validate", "check the algebra axioms of a document", false);
  add_cmd("cohomology", "per-degree dimensions and labeled classes", false);
  auto* model =
      add_cmd("model", "canonical minimal structure and connecting morphism",
              false);
  model->add_option("--max-arity", opt.max_arity,
                    "truncation arity (default 3)");
  add_cmd("massey", "product set via a canonical defining system", true);
  auto* oracle =
      add_cmd("oracle", "exhaustive product set over a finite field", true);
  oracle->add_option("--bound", opt.bound,
                     "free-coordinate bound for the enumeration (default 24)");
  auto* isotopy = add_cmd(
      "isotopy", "connect the models of two homotopy variations", false);
  isotopy->add_option("--seed-a", opt.seed_a, "first variation seed");
  isotopy->add_option("--seed-b", opt.seed_b, "second variation seed");
  isotopy->add_option("--max-arity", opt.max_arity,
                      "truncation arity (default 4)");
  add_cmd("curvature", "matrix curvature of the canonical defining system",
          true);
  auto* thm = add_cmd("theorem-check",
                      "membership of the sign-weighted operation", true);
  thm->add_option("--max-arity", opt.max_arity,
                  "model truncation (default: the number of classes)");
  thm->add_option("--bound", opt.bound,
                  "free-coordinate bound for the membership oracle");

  CLI11_PARSE(app, argc, argv);

  for (auto& [name, c] : cmds) {
    if (!c.sub->parsed()) continue;
    if (c.args.empty()) {
      std::cerr << "input error: missing document path\n";
      return 2;
    }
    std::string path = c.args.back();
    c.args.pop_back();
    ainf::engine::Outcome out = ainf::engine::run(name, c.args, path, opt);
    if (as_json)
      std::cout << out.report.dump(2) << "\n";
    else
      std::cout << out.text;
    return out.status;
  }
  std::cerr << "input error: no command\n";
  return 2;
}
