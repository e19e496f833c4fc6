// Command line front end: validate / classify / reconstruct / roundtrip on
// one instance file. Exit codes: 0 consistent, 1 I/O or schema, 2 axiom
// violation, 3 internal equivalence failure, 4 enumeration cap.
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stein/errors.hpp"
#include "stein/instance.hpp"

namespace {

struct Options {
  std::string path;
  std::string emit;
  long long cap = 0;
  bool json = false;
  bool oracle = false;
};

using Runner = stein::RunOutput (*)(const stein::Instance&, const stein::Caps&, bool);

int run(const Options& opt, Runner runner) {
  stein::Caps caps;
  if (opt.cap > 0) caps.budget = opt.cap;
  const stein::Instance inst = stein::load_instance(opt.path, caps);
  const stein::RunOutput out = runner(inst, caps, opt.oracle);
  if (!opt.emit.empty()) {
    std::ofstream ef(opt.emit);
    if (!ef) throw stein::SchemaError("cannot write " + opt.emit);
    ef << out.emitted.dump(2) << "\n";
  }
  if (opt.json)
    std::cout << out.data.dump(2) << "\n";
  else
    std::cout << out.text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded twisted Steinberg algebra toolkit"};
  app.require_subcommand(1);

  Options opt;
  Runner runner = nullptr;
  auto add = [&](const char* name, const char* desc, Runner r) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("file", opt.path, "instance file")->required();
    sub->add_flag("--json", opt.json, "machine-readable report");
    sub->add_flag("--oracle", opt.oracle, "run literal cross-checks");
    sub->add_option("--cap", opt.cap, "enumeration budget");
    sub->add_option("--emit", opt.emit, "write the resulting instance file");
    sub->callback([&runner, r] { runner = r; });
    return sub;
  };
  add("validate", "check every structural axiom of the instance", &stein::run_validate);
  add("classify", "classify the algebra pair of the instance", &stein::run_classify);
  add("reconstruct", "build the ultrafilter twist of the pair", &stein::run_reconstruct);
  add("roundtrip", "certify the recovery equivalence for a twist", &stein::run_roundtrip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return run(opt, runner);
  } catch (const stein::SchemaError& e) {
    std::cout << "MALFORMED: " << e.what() << "\n";
    return 1;
  } catch (const stein::AxiomViolation& e) {
    std::cout << "INVALID (" << e.axiom << "): " << e.what() << "\n";
    return 2;
  } catch (const stein::TheoremViolation& e) {
    std::cout << "THEOREM VIOLATION: " << e.what() << "\n";
    return 3;
  } catch (const stein::CapExceeded& e) {
    std::cout << "CAP EXCEEDED: " << e.what() << "\n";
    return 4;
  }
}
