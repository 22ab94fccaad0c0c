#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "ifol/error.hpp"
#include "ifol/parser.hpp"
#include "ifol/report.hpp"

namespace {

constexpr int kLoadError = 2;

std::unique_ptr<ifol::Workspace> load_or_report(const std::string& path) {
  try {
    return ifol::load_workspace(path);
  } catch (const ifol::LoadFailure& e) {
    std::cerr << ifol::format_diagnostics(e) << '\n';
  } catch (const ifol::Error& e) {
    std::cerr << path << ": " << e.what() << '\n';
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intensional first-order logic workspaces: load, check and query"};
  app.require_subcommand(1);

  std::string path;
  unsigned threads = 1;
  std::uint64_t max_worlds = std::uint64_t{1} << 20;

  auto* run = app.add_subcommand("run", "Run every query in a workspace file and print the report");
  run->add_option("file", path, "Workspace file")->required();
  run->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  run->add_option("--max-worlds", max_worlds, "Refuse to enumerate more candidate worlds")->capture_default_str();

  auto* check = app.add_subcommand("check", "Load and sort-check a workspace file");
  check->add_option("file", path, "Workspace file")->required();

  auto* render = app.add_subcommand("render", "Print the workspace back in canonical form");
  render->add_option("file", path, "Workspace file")->required();

  CLI11_PARSE(app, argc, argv);

  auto ws = load_or_report(path);
  if (!ws) return kLoadError;

  if (*check) {
    std::cout << "LOADED " << ws->axioms.size() << " axioms, " << ws->queries.size() << " queries\n";
    return 0;
  }
  if (*render) {
    std::cout << ifol::render_workspace(*ws);
    return 0;
  }
  ifol::RunOptions options;
  options.threads = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  options.max_worlds = max_worlds;
  auto result = ifol::run_queries(*ws, options);
  std::cout << result.report;
  return result.exit_code;
}
