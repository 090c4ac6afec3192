#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gshv/adjunctions.hpp"
#include "gshv/gen.hpp"
#include "gshv/selftest.hpp"

namespace {

using gshv::Instance;
using nlohmann::json;

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const std::string& path) {
  Instance inst = gshv::parse_instance_file(path);
  json out;
  out["valid"] = true;
  out["is_star"] = gshv::is_star(inst.ctx, inst.sheaf);
  out["digest"] = gshv::digest(gshv::emit_instance(inst));
  print(out);
  return 0;
}

int cmd_classify(const std::string& path) {
  Instance inst = gshv::parse_instance_file(path);
  auto report = gshv::classify(inst.ctx, inst.sheaf);
  print(gshv::report_json(inst, report));
  return 0;
}

int cmd_apply(const std::string& functor, const std::string& path) {
  Instance inst = gshv::parse_instance_file(path);
  gshv::GSheaf result;
  if (functor == "star") {
    result = gshv::star_part(inst.ctx, inst.sheaf);
  } else if (functor == "set") {
    result = gshv::set_part(inst.ctx, inst.sheaf).sheaf;
  } else if (functor == "et") {
    result = gshv::et_part(inst.ctx, inst.sheaf).sheaf;
  } else if (functor == "G") {
    result = gshv::quotient_sheaf(inst.sheaf).sheaf;
  } else if (functor == "fix") {
    result = gshv::fixed_subsheaf(inst.sheaf);
  } else if (functor == "const-star") {
    result = gshv::star_constant(inst.ctx, gshv::generic_stalk(inst.sheaf));
  } else if (functor == "smI") {
    result = gshv::smI_part(inst.ctx, inst.sheaf);
  } else {
    gshv::fail(gshv::Errc::SchemaError, "unknown functor " + functor);
  }
  Instance out{inst.ctx, result};
  json doc = gshv::emit_instance(out);
  json wrapper;
  wrapper["functor"] = functor;
  wrapper["digest"] = gshv::digest(doc);
  wrapper["instance"] = doc;
  print(wrapper);
  return 0;
}

int cmd_decompose(const std::string& path, const std::string& out_dir) {
  Instance inst = gshv::parse_instance_file(path);
  auto components = gshv::decompose(inst.sheaf);
  std::filesystem::create_directories(out_dir);
  json index;
  index["components"] = components.size();
  json files = json::array();
  for (std::size_t i = 0; i < components.size(); ++i) {
    std::string file = out_dir + "/component" + std::to_string(i) + ".json";
    std::ofstream os(file);
    os << gshv::emit_instance(Instance{inst.ctx, components[i]}).dump(2)
       << "\n";
    files.push_back(file);
  }
  index["files"] = files;
  const auto& eta = inst.sheaf.stalks[inst.ctx.site->generic()];
  json labels = json::array();
  for (const auto& orbit : gshv::pi0(inst.sheaf))
    labels.push_back(eta.labels[orbit.front()]);
  index["pi0"] = labels;
  print(index);
  return 0;
}

int cmd_espace(const std::string& path) {
  Instance inst = gshv::parse_instance_file(path);
  auto x = gshv::espace_etale(inst.sheaf);
  print(gshv::espace_json(inst, x));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sheaves of G-sets with inertia constraints on finite sites"};
  app.require_subcommand(1);

  std::string path, functor, out_dir = "components";
  std::uint64_t seed = 0;
  int cases = 100;
  gshv::GenBounds bounds;

  auto* validate = app.add_subcommand("validate", "validate an instance file");
  validate->add_option("file", path)->required();

  auto* classify = app.add_subcommand("classify", "classification report");
  classify->add_option("file", path)->required();

  auto* apply = app.add_subcommand("apply", "apply a functor");
  apply->add_option("--functor", functor, "star|set|et|G|fix|const-star|smI")
      ->required();
  apply->add_option("file", path)->required();

  auto* decompose =
      app.add_subcommand("decompose", "split into connected components");
  decompose->add_option("file", path)->required();
  decompose->add_option("--out-dir", out_dir);

  auto* espace = app.add_subcommand("espace", "espace etale of a plain sheaf");
  espace->add_option("file", path)->required();

  auto* gen = app.add_subcommand("gen", "deterministic random instance");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--points", bounds.max_points);
  gen->add_option("--group-order", bounds.max_group_order);
  gen->add_option("--max-stalk", bounds.max_stalk);

  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_option("--seed", seed)->required();
  selftest->add_option("--cases", cases);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (classify->parsed()) return cmd_classify(path);
    if (apply->parsed()) return cmd_apply(functor, path);
    if (decompose->parsed()) return cmd_decompose(path, out_dir);
    if (espace->parsed()) return cmd_espace(path);
    if (gen->parsed()) {
      std::cout << gshv::gen_instance_json(seed, bounds).dump(2) << "\n";
      return 0;
    }
    if (selftest->parsed()) {
      auto summary = gshv::run_selftest(seed, cases);
      std::cout << gshv::selftest_json(summary).dump(2) << "\n";
      if (summary.equivalence_violation()) return 2;
      return summary.all_ok() ? 0 : 1;
    }
  } catch (const gshv::ValidationError& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return e.code() == gshv::Errc::LadderDisagreement ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
