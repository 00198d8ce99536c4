// sqk: command-line front end. Every command prints one JSON report on stdout.
//
//   sqk validate <file.sqcat>
//   sqk close    <generators.sqcat> [--emit out.sqcat]
//   sqk k0       <file.sqcat>
//   sqk pi1      <file.sqcat> [--max-edges N] [--max-grids N]
//   sqk compare  <file.sqcat> [--max-edges N] [--max-grids N]
//   sqk example  finset|grid|vect <n> | point | toy [--emit out.sqcat]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqk/report.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squares categories: validation, closure, K_0 and pi_1 of the diagonal nerve"};
  app.require_subcommand(1);

  sqk::RunOptions opts;
  std::string input_path;
  std::string emit_path;
  std::vector<std::string> example_args;

  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-edges", opts.caps.max_edges, "Cap on nerve edges")->capture_default_str();
    sub->add_option("--max-grids", opts.caps.max_grids, "Cap on candidate 3x3 grids")->capture_default_str();
  };

  for (const char* name : {"validate", "k0", "pi1", "compare", "close"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", input_path, ".sqcat document")->required();
    if (std::string(name) == "pi1" || std::string(name) == "compare") add_caps(sub);
    if (std::string(name) == "close") sub->add_option("--emit", emit_path, "Write the generated category here");
  }
  CLI::App* example = app.add_subcommand("example", "Emit a gallery category");
  example->add_option("args", example_args, "finset|grid|vect <n>, point or toy")->required();
  example->add_option("--emit", emit_path, "Write the category here");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  if (!emit_path.empty()) opts.emit = emit_path;

  std::string input;
  if (command != "example" && !read_file(input_path, input)) {
    std::cerr << "sqk: cannot read '" << input_path << "'\n";
    return 1;
  }
  const sqk::Report report = sqk::run_command(command, input, example_args, opts);
  std::cout << report.dump();
  return report.exit_code();
}
