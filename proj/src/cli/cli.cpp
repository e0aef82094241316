#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "phasekit/cli.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config, state, grid, hamiltonian, out, format;
    unsigned threads = 0;
    std::optional<double> hbar;
    // evolve
    std::optional<double> dt;
    std::optional<long long> steps, hbar_power;
    std::string generator;
    // tomogram / reconstruct
    std::optional<long long> angles, nu_points;
    std::optional<double> nu_half_width;
    std::string tomogram, target;
    // spin-search
    std::optional<double> resolution, max_angle;
    std::string sector;
    // histories / decay
    std::string histories, model;
};

void print_error(std::string_view code, const std::string& message, int exit_code,
                 const json& extra = json::object()) {
    json rec = {{"error", code}, {"message", message}, {"exit_code", exit_code}};
    rec.update(extra);
    std::cerr << rec.dump() << '\n';
}

json violations_json(const std::vector<Violation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back({{"field", v.field}, {"message", v.message}});
    return a;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    char buf[64];
    if (j.is_number_float()) {
        std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
        out.emplace_back(prefix, buf);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else if (!j.is_array() || j.size() <= 3) {
        out.emplace_back(prefix, j.dump());
    }
}

/// Stable "key value" lines; long arrays are left to the artifacts.
void print_summary(const json& summary) {
    std::vector<std::pair<std::string, std::string>> lines;
    flatten(summary, "", lines);
    for (const auto& [k, v] : lines) std::printf("%-36s %s\n", k.c_str(), v.c_str());
    std::fflush(stdout);
}

json& block(json& s, const char* key) {
    if (!s.contains(key) || !s[key].is_object()) s[key] = json::object();
    return s[key];
}

json scenario_from(const Flags& f, Command cmd) {
    json s = f.config.empty() ? json::object() : load_scenario(f.config);
    s["command"] = std::string(command_name(cmd));
    json refs = json::object();
    auto ref = [&](const char* key, const std::string& path) {
        if (!path.empty()) refs[key] = path;
    };
    ref("state", f.state);
    ref("grid", f.grid);
    ref("hamiltonian", f.hamiltonian);
    ref("histories", f.histories);
    ref("decay", f.model);
    resolve_references(refs, fs::current_path());
    s.update(refs);
    if (f.hbar) s["hbar"] = *f.hbar;
    if (f.dt) block(s, "evolution")["dt"] = *f.dt;
    if (f.steps) block(s, "evolution")["n_steps"] = *f.steps;
    if (f.hbar_power) block(s, "evolution")["max_hbar_power"] = *f.hbar_power;
    if (!f.generator.empty()) block(s, "evolution")["generator"] = f.generator;
    if (f.angles) block(s, "tomogram")["n_angles"] = *f.angles;
    if (f.nu_points) block(s, "tomogram")["nu_points"] = *f.nu_points;
    if (f.nu_half_width) block(s, "tomogram")["nu_half_width"] = *f.nu_half_width;
    if (!f.tomogram.empty()) block(s, "reconstruct")["tomogram"] = fs::absolute(f.tomogram).lexically_normal().string();
    if (!f.target.empty()) block(s, "reconstruct")["target"] = f.target;
    if (f.resolution) block(s, "spin")["resolution"] = *f.resolution;
    if (f.max_angle) block(s, "spin")["max_angle"] = *f.max_angle;
    if (!f.sector.empty()) block(s, "spin")["sector"] = f.sector;
    return s;
}

int run_scenario(const json& s, const Flags& f) {
    const auto problems = validate(s);
    if (!problems.empty()) {
        print_error(name(Errc::schema_violation), problems.front().field + ": " + problems.front().message, 1,
                    {{"violations", violations_json(problems)}});
        return 1;
    }
    Outputs out;
    const json o = s.value("output", json::object());
    out.dir = !f.out.empty() ? fs::path(f.out) : fs::path(o.value("dir", std::string("out")));
    out.format = io::parse_format(!f.format.empty() ? f.format : o.value("format", std::string("csv")));
    set_thread_count(f.threads);
    print_summary(execute(s, out));
    return 0;
}

void common_flags(CLI::App* sub, Flags& f, bool inputs) {
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--format", f.format, "artifact format")->check(CLI::IsMember({"csv", "json", "binary"}));
    sub->add_option("--threads", f.threads, "worker cap (0 = machine parallelism)")->envname("PHASEKIT_THREADS");
    if (!inputs) return;
    sub->add_option("--config", f.config, "base scenario file");
    sub->add_option("--state", f.state, "state block file");
    sub->add_option("--grid", f.grid, "grid block file");
    sub->add_option("--hamiltonian", f.hamiltonian, "hamiltonian block file");
    sub->add_option("--hbar", f.hbar, "reduced Planck constant");
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"phase-space quantum mechanics toolkit", "phasekit"};
    app.require_subcommand(1);
    Flags f;
    std::vector<std::pair<Command, CLI::App*>> subs;
    auto command = [&](Command c, const std::string& help) {
        auto* sub = app.add_subcommand(std::string(command_name(c)), help);
        common_flags(sub, f, true);
        subs.emplace_back(c, sub);
        return sub;
    };
    command(Command::state, "sample a state and its densities");
    command(Command::wigner, "Wigner function of a state");
    auto* evolve = command(Command::evolve, "phase-space time evolution");
    evolve->add_option("--dt", f.dt);
    evolve->add_option("--steps", f.steps);
    evolve->add_option("--generator", f.generator)->check(CLI::IsMember({"moyal", "liouville"}));
    evolve->add_option("--hbar-power", f.hbar_power);
    auto* tomo = command(Command::tomogram, "quadrature tomogram of a state");
    auto* recon = command(Command::reconstruct, "Wigner function from a tomogram");
    for (auto* sub : {tomo, recon}) {
        sub->add_option("--angles", f.angles);
        sub->add_option("--nu-points", f.nu_points);
        sub->add_option("--nu-half-width", f.nu_half_width);
    }
    recon->add_option("--tomogram", f.tomogram, "tomogram dataset written by the tomogram command");
    recon->add_option("--target", f.target)->check(CLI::IsMember({"state_grid", "default"}));
    auto* spin = command(Command::spin_search, "triangle-inequality violation scan");
    spin->add_option("--resolution", f.resolution, "scan step in degrees");
    spin->add_option("--sector", f.sector)->check(CLI::IsMember({"agreement", "disagreement"}));
    spin->add_option("--max-angle", f.max_angle, "scan bound in degrees");
    command(Command::histories, "decoherence matrix of a branch set")
        ->add_option("--histories", f.histories, "histories block file");
    command(Command::decay, "survival amplitude of a discretized decay model")
        ->add_option("--model", f.model, "decay block file");

    std::string file;
    auto* val = app.add_subcommand("validate", "check a scenario without running numerics");
    val->add_option("scenario", file)->required();
    auto* runner = app.add_subcommand("run", "execute a scenario file");
    runner->add_option("scenario", file)->required();
    common_flags(runner, f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error(name(Errc::invalid_argument), e.what(), 1);
        return 1;
    }

    try {
        if (val->parsed()) {
            const auto problems = validate(load_scenario(file));
            std::cout << json{{"scenario", file}, {"valid", problems.empty()}, {"violations", violations_json(problems)}}
                             .dump(2)
                      << '\n';
            return problems.empty() ? 0 : 1;
        }
        if (runner->parsed()) return run_scenario(load_scenario(file), f);
        for (const auto& [c, sub] : subs)
            if (sub->parsed()) return run_scenario(scenario_from(f, c), f);
    } catch (const Error& e) {
        const int code = exit_code_for(e.code());
        print_error(e.code_name(), e.what(), code);
        return code;
    } catch (const json::exception& e) {
        print_error(name(Errc::schema_violation), e.what(), 1);
        return 1;
    } catch (const std::exception& e) {
        print_error(name(Errc::io_failure), e.what(), 2);
        return 2;
    }
    return 1;
}

} // namespace phasekit::cli
