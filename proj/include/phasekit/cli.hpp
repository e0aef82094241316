#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasekit/error.hpp"
#include "phasekit/io.hpp"

namespace phasekit::cli {

using io::json;

enum class Command { state, wigner, evolve, tomogram, reconstruct, spin_search, histories, decay };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

struct Violation {
    std::string field;    // JSON pointer into the scenario
    std::string message;
};

/// Replaces string-valued blocks (grid, state, hamiltonian, evolution, tomogram,
/// spin, histories, decay) by the JSON documents they name, relative to `base`.
/// reconstruct.tomogram stays a path but is made absolute.
void resolve_references(json& scenario, const std::filesystem::path& base);

/// Reads a scenario file and resolves its references against its directory.
json load_scenario(const std::filesystem::path& path);

/// Every schema violation in a resolved scenario; empty when valid. No numerics run.
std::vector<Violation> validate(const json& scenario);

struct Outputs {
    std::filesystem::path dir;
    io::Format format = io::Format::csv;
};

/// Runs a validated scenario and writes its artifacts atomically. Returns the summary.
json execute(const json& scenario, const Outputs& out);

/// Exit code for a module error: 1 for input validation, 2 for numerical failure.
int exit_code_for(Errc code);

/// Entry point for the command-line tool.
int run(int argc, const char* const* argv);

} // namespace phasekit::cli
