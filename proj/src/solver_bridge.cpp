#include "xdock/solver_bridge.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "xdock/errors.hpp"
#include "xdock/model_io.hpp"

namespace xdock {

namespace {

namespace fs = std::filesystem;

std::string quote(const std::string& text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

fs::path fresh_directory(const ExternalSolver& solver) {
  static std::atomic<int> counter{0};
  const fs::path base = solver.work_dir.empty() ? fs::temp_directory_path() : fs::path(solver.work_dir);
  const fs::path dir = base / ("xdock-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::optional<double> meta_number(const Listing& listing, const std::string& key) {
  const auto it = listing.meta.find(key);
  if (it == listing.meta.end()) return std::nullopt;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ParseError("solver listing: bad " + key + " '" + it->second + "'");
  }
}

}  // namespace

ExternalResult run_external(const ExternalSolver& solver, const LinearModel& model, double time_limit) {
  if (solver.command.empty()) throw ConfigurationError("no external solver command configured");
  const fs::path dir = fresh_directory(solver);
  NameMap names;
  write_text_file((dir / "model.mps").string(), export_mps(model, &names));
  std::string command = solver.command + " --model " + quote((dir / "model.mps").string()) + " --out " +
                        quote((dir / "solution.txt").string()) + " --time-limit " + format_number(time_limit);
  if (model.start()) {
    std::string start;
    const auto& values = *model.start();
    for (int c = 0; c < model.num_variables(); ++c) {
      char mangled[16];
      std::snprintf(mangled, sizeof mangled, "C%07d", c + 1);
      start += (names.empty() ? model.variables()[static_cast<std::size_t>(c)].name : std::string(mangled)) + " " +
               format_number(values[static_cast<std::size_t>(c)]) + "\n";
    }
    write_text_file((dir / "start.txt").string(), start);
    command += " --start " + quote((dir / "start.txt").string());
  }
  command += " > " + quote((dir / "solver.log").string()) + " 2>&1";
  const int rc = std::system(command.c_str());
  if (rc != 0 || !fs::exists(dir / "solution.txt")) {
    if (!solver.keep_files) fs::remove_all(dir);
    throw ConfigurationError("external solver failed (exit status " + std::to_string(rc) + "): " + solver.command);
  }
  const Listing listing = parse_listing(read_text_file((dir / "solution.txt").string()));
  ExternalResult out;
  const auto status = listing.meta.find("status");
  out.status = status == listing.meta.end() ? "error" : status->second;
  for (const auto& [name, value] : listing.values) out.values[names.column(name)] = value;
  out.objective = meta_number(listing, "objective");
  out.bound = meta_number(listing, "bound");
  if (!solver.keep_files) fs::remove_all(dir);
  return out;
}

std::optional<ExternalSolver> solver_from_environment() {
  const char* command = std::getenv("XDOCK_SOLVER");
  if (!command || !*command) return std::nullopt;
  return ExternalSolver{command, "", false};
}

}  // namespace xdock
