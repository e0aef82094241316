#include <cmath>

#include "phasekit/cli.hpp"

namespace phasekit::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kBlocks[] = {"grid", "state", "hamiltonian", "evolution", "tomogram",
                                   "reconstruct", "spin", "histories", "decay", "output"};

struct CommandName {
    Command c;
    std::string_view name;
};

constexpr CommandName kCommands[] = {
    {Command::state, "state"},         {Command::wigner, "wigner"},
    {Command::evolve, "evolve"},       {Command::tomogram, "tomogram"},
    {Command::reconstruct, "reconstruct"}, {Command::spin_search, "spin-search"},
    {Command::histories, "histories"}, {Command::decay, "decay"},
};

// Accumulates violations keyed by JSON pointer.
class Checker {
public:
    std::vector<Violation> list;

    void add(const std::string& field, std::string message) { list.push_back({field, std::move(message)}); }

    const json* get(const json& obj, const char* key, const std::string& ptr, bool required) {
        if (obj.is_object() && obj.contains(key)) return &obj.at(key);
        if (required) add(ptr + "/" + key, "required field is missing");
        return nullptr;
    }

    bool object(const json& j, const std::string& ptr) {
        if (j.is_object()) return true;
        add(ptr, "must be an object");
        return false;
    }

    /// Number; `ok` is the constraint and `what` its description.
    template <class Pred>
    std::optional<double> number(const json& obj, const char* key, const std::string& ptr, bool required,
                                 Pred ok, const char* what) {
        const json* v = get(obj, key, ptr, required);
        if (!v) return std::nullopt;
        if (!v->is_number() || !std::isfinite(v->get<double>())) {
            add(ptr + "/" + key, "must be a finite number");
            return std::nullopt;
        }
        const double x = v->get<double>();
        if (!ok(x)) {
            add(ptr + "/" + key, what);
            return std::nullopt;
        }
        return x;
    }

    std::optional<double> number(const json& obj, const char* key, const std::string& ptr, bool required) {
        return number(obj, key, ptr, required, [](double) { return true; }, "");
    }

    template <class Pred>
    std::optional<long long> integer(const json& obj, const char* key, const std::string& ptr, bool required,
                                     Pred ok, const char* what) {
        const json* v = get(obj, key, ptr, required);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) {
            add(ptr + "/" + key, "must be an integer");
            return std::nullopt;
        }
        const long long x = v->get<long long>();
        if (!ok(x)) {
            add(ptr + "/" + key, what);
            return std::nullopt;
        }
        return x;
    }

    std::optional<std::string> choice(const json& obj, const char* key, const std::string& ptr, bool required,
                                      std::initializer_list<const char*> allowed) {
        const json* v = get(obj, key, ptr, required);
        if (!v) return std::nullopt;
        std::string msg = "must be one of";
        for (const char* a : allowed) msg += std::string(" ") + a;
        if (!v->is_string()) {
            add(ptr + "/" + key, msg);
            return std::nullopt;
        }
        const auto s = v->get<std::string>();
        for (const char* a : allowed)
            if (s == a) return s;
        add(ptr + "/" + key, msg);
        return std::nullopt;
    }

    /// Complex scalar written as a number or [re, im].
    bool complex(const json& v, const std::string& ptr) {
        if (v.is_number()) return true;
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return true;
        add(ptr, "must be a number or a [re, im] pair");
        return false;
    }

    /// Array of `n` numbers (n = 0 accepts any length).
    bool vector(const json& v, const std::string& ptr, std::size_t n) {
        if (!v.is_array() || (n && v.size() != n)) {
            add(ptr, n ? "must be an array of " + std::to_string(n) + " numbers" : "must be an array of numbers");
            return false;
        }
        for (const auto& x : v)
            if (!x.is_number()) {
                add(ptr, "must contain only numbers");
                return false;
            }
        return true;
    }

    /// Complex d x d matrix as nested rows.
    bool matrix(const json& v, const std::string& ptr, std::size_t d) {
        if (!v.is_array() || v.size() != d) {
            add(ptr, "must be a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
            return false;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!v[i].is_array() || v[i].size() != d) {
                add(ptr + "/" + std::to_string(i), "row must have " + std::to_string(d) + " entries");
                return false;
            }
            for (std::size_t j = 0; j < d; ++j)
                if (!complex(v[i][j], ptr + "/" + std::to_string(i) + "/" + std::to_string(j))) return false;
        }
        return true;
    }
};

bool power_of_two(long long n) { return n >= 8 && (n & (n - 1)) == 0; }

void check_grid(Checker& c, const json& g, const std::string& ptr) {
    if (!c.object(g, ptr)) return;
    const auto lo = c.number(g, "q_min", ptr, true);
    const auto hi = c.number(g, "q_max", ptr, true);
    c.integer(g, "n_points", ptr, true, power_of_two, "n_points must be a power of two >= 8");
    if (lo && hi && !(*lo < *hi)) c.add(ptr + "/q_max", "q_max must exceed q_min");
}

void check_state(Checker& c, const json& s, const std::string& ptr, bool allow_mixture) {
    if (!c.object(s, ptr)) return;
    const auto kind = c.choice(s, "kind", ptr, true, {"gaussian", "oscillator", "superposition", "mixture"});
    if (!kind) return;
    auto positive = [](double x) { return x > 0.0; };
    if (*kind == "gaussian") {
        c.number(s, "q0", ptr, false);
        c.number(s, "p0", ptr, false);
        c.number(s, "sigma", ptr, true, positive, "sigma must be positive");
    } else if (*kind == "oscillator") {
        c.integer(s, "level", ptr, false, [](long long n) { return n >= 0 && n <= 200; },
                  "level must be an integer in [0, 200]");
        c.number(s, "q0", ptr, false);
        c.number(s, "p0", ptr, false);
        c.number(s, "mass", ptr, false, positive, "mass must be positive");
        c.number(s, "omega", ptr, false, positive, "omega must be positive");
    } else if (*kind == "superposition") {
        const json* terms = c.get(s, "terms", ptr, true);
        if (!terms) return;
        if (!terms->is_array() || terms->empty()) {
            c.add(ptr + "/terms", "must be a non-empty array");
            return;
        }
        for (std::size_t i = 0; i < terms->size(); ++i) {
            const std::string tp = ptr + "/terms/" + std::to_string(i);
            const json& t = (*terms)[i];
            if (!c.object(t, tp)) continue;
            if (const json* co = c.get(t, "coefficient", tp, true)) c.complex(*co, tp + "/coefficient");
            if (const json* st = c.get(t, "state", tp, true)) check_state(c, *st, tp + "/state", false);
        }
    } else {
        if (!allow_mixture) {
            c.add(ptr + "/kind", "mixtures cannot be nested inside other states");
            return;
        }
        const json* comps = c.get(s, "components", ptr, true);
        if (!comps) return;
        if (!comps->is_array() || comps->empty()) {
            c.add(ptr + "/components", "must be a non-empty array");
            return;
        }
        double total = 0.0;
        bool all_weights = true;
        for (std::size_t i = 0; i < comps->size(); ++i) {
            const std::string cp = ptr + "/components/" + std::to_string(i);
            const json& m = (*comps)[i];
            if (!c.object(m, cp)) {
                all_weights = false;
                continue;
            }
            const auto w = c.number(m, "weight", cp, true, [](double x) { return x >= 0.0; },
                                    "mixture weights must be nonnegative (a density operator is positive)");
            if (w) total += *w;
            else all_weights = false;
            if (const json* st = c.get(m, "state", cp, true)) check_state(c, *st, cp + "/state", false);
        }
        if (all_weights && std::abs(total - 1.0) > 1e-12)
            c.add(ptr + "/components", "mixture weights must sum to 1 (unit trace)");
    }
}

void check_hamiltonian(Checker& c, const json& h, const std::string& ptr) {
    if (!c.object(h, ptr)) return;
    const auto kind = c.choice(h, "kind", ptr, false, {"polynomial", "harmonic", "free"});
    c.number(h, "mass", ptr, false, [](double x) { return x > 0.0; }, "mass must be positive");
    const std::string k = kind.value_or("polynomial");
    if (k == "harmonic") {
        c.number(h, "omega", ptr, false, [](double x) { return x > 0.0; }, "omega must be positive");
    } else if (k == "polynomial") {
        if (const json* co = c.get(h, "coefficients", ptr, true)) {
            if (c.vector(*co, ptr + "/coefficients", 0)) {
                std::size_t deg = 0;
                for (std::size_t i = 0; i < co->size(); ++i)
                    if ((*co)[i].get<double>() != 0.0) deg = i;
                if (deg > 6) c.add(ptr + "/coefficients", "potential degree must be at most 6");
            }
        }
    }
}

void check_evolution(Checker& c, const json& e, const std::string& ptr) {
    if (!c.object(e, ptr)) return;
    c.number(e, "dt", ptr, true, [](double x) { return x != 0.0; }, "dt must be nonzero");
    c.integer(e, "n_steps", ptr, true, [](long long n) { return n >= 1; }, "n_steps must be >= 1");
    c.choice(e, "generator", ptr, false, {"moyal", "liouville"});
    c.integer(e, "max_hbar_power", ptr, false, [](long long n) { return n == 0 || n == 2 || n == 4; },
              "max_hbar_power must be 0, 2 or 4");
    c.integer(e, "record_every", ptr, false, [](long long n) { return n >= 0; }, "record_every must be >= 0");
}

void check_tomogram(Checker& c, const json& t, const std::string& ptr) {
    if (!c.object(t, ptr)) return;
    c.integer(t, "n_angles", ptr, false, [](long long n) { return n >= 1 && n <= 4096; },
              "n_angles must lie in [1, 4096]");
    c.integer(t, "nu_points", ptr, false, [](long long n) { return n >= 8 && n <= 65536; },
              "nu_points must lie in [8, 65536]");
    c.number(t, "nu_half_width", ptr, false, [](double x) { return x > 0.0; }, "nu_half_width must be positive");
}

void check_unit_vector(Checker& c, const json& v, const std::string& ptr) {
    if (!c.vector(v, ptr, 3)) return;
    const double n = std::hypot(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    if (std::abs(n - 1.0) > 1e-12) c.add(ptr, "direction must have unit length");
}

void check_spin(Checker& c, const json& s, const std::string& ptr) {
    if (!c.object(s, ptr)) return;
    c.number(s, "resolution", ptr, false, [](double x) { return x >= 1.0 && x <= 15.0; },
             "resolution must lie in [1, 15] degrees");
    c.choice(s, "sector", ptr, false, {"agreement", "disagreement"});
    c.number(s, "max_angle", ptr, false, [](double x) { return x > 0.0 && x <= 360.0; },
             "max_angle must lie in (0, 360] degrees");
    if (const json* d = c.get(s, "directions", ptr, false)) {
        if (!d->is_array() || d->size() != 3) {
            c.add(ptr + "/directions", "must list exactly three directions");
        } else {
            for (std::size_t i = 0; i < 3; ++i) check_unit_vector(c, (*d)[i], ptr + "/directions/" + std::to_string(i));
        }
    }
    if (const json* st = c.get(s, "state", ptr, false)) {
        const std::string sp = ptr + "/state";
        if (!c.object(*st, sp)) return;
        if (st->contains("bloch")) {
            if (c.vector(st->at("bloch"), sp + "/bloch", 3)) {
                const auto& b = st->at("bloch");
                if (std::hypot(b[0].get<double>(), b[1].get<double>(), b[2].get<double>()) > 1.0 + 1e-12)
                    c.add(sp + "/bloch", "Bloch vector must have length <= 1");
            }
        } else if (st->contains("matrix")) {
            c.matrix(st->at("matrix"), sp + "/matrix", 2);
        } else {
            c.add(sp, "state needs a bloch vector or a matrix");
        }
    }
}

void check_projector(Checker& c, const json& p, const std::string& ptr, std::size_t d) {
    if (p.is_object()) {
        const json* pp = c.get(p, "pauli_projector", ptr, true);
        if (!pp) return;
        if (d != 2) c.add(ptr, "pauli_projector needs dimension 2");
        if (!c.object(*pp, ptr + "/pauli_projector")) return;
        if (const json* ax = c.get(*pp, "axis", ptr + "/pauli_projector", true))
            check_unit_vector(c, *ax, ptr + "/pauli_projector/axis");
        c.integer(*pp, "sign", ptr + "/pauli_projector", true, [](long long s) { return s == 1 || s == -1; },
                  "sign must be +1 or -1");
        return;
    }
    c.matrix(p, ptr, d);
}

void check_complex_vector(Checker& c, const json& v, const std::string& ptr, std::size_t d) {
    if (!v.is_array() || v.size() != d) {
        c.add(ptr, "must be a vector of " + std::to_string(d) + " entries");
        return;
    }
    for (std::size_t i = 0; i < d; ++i) c.complex(v[i], ptr + "/" + std::to_string(i));
}

void check_histories(Checker& c, const json& h, const std::string& ptr) {
    if (!c.object(h, ptr)) return;
    const auto dim = c.integer(h, "dimension", ptr, true, [](long long d) { return d >= 1 && d <= 16; },
                               "dimension must lie in [1, 16]");
    c.choice(h, "mode", ptr, false, {"strict", "weak", "both"});
    c.number(h, "tol", ptr, false, [](double x) { return x >= 0.0; }, "tol must be nonnegative");
    if (!dim) return;
    const auto d = static_cast<std::size_t>(*dim);
    if (const json* init = c.get(h, "initial", ptr, true)) {
        const std::string ip = ptr + "/initial";
        if (c.object(*init, ip)) {
            if (init->contains("vector")) check_complex_vector(c, init->at("vector"), ip + "/vector", d);
            else if (init->contains("density")) c.matrix(init->at("density"), ip + "/density", d);
            else if (init->contains("bloch")) {
                if (d != 2) c.add(ip + "/bloch", "bloch initial state needs dimension 2");
                check_unit_vector(c, init->at("bloch"), ip + "/bloch");
            } else c.add(ip, "initial state needs a vector, density or bloch entry");
        }
    }
    if (const json* br = c.get(h, "branches", ptr, true)) {
        if (!br->is_array() || br->empty()) {
            c.add(ptr + "/branches", "must be a non-empty array of projector chains");
        } else {
            for (std::size_t b = 0; b < br->size(); ++b) {
                const std::string bp = ptr + "/branches/" + std::to_string(b);
                const json& chain = (*br)[b];
                if (!chain.is_array()) {
                    c.add(bp, "branch must be an array of projectors");
                    continue;
                }
                if (chain.size() != (*br)[0].size()) c.add(bp, "branches must have equal length");
                for (std::size_t k = 0; k < chain.size(); ++k) check_projector(c, chain[k], bp + "/" + std::to_string(k), d);
            }
        }
    }
    if (const json* ff = c.get(h, "final_family", ptr, false)) {
        if (!ff->is_array()) {
            c.add(ptr + "/final_family", "must be an array of vectors");
        } else {
            for (std::size_t i = 0; i < ff->size(); ++i)
                check_complex_vector(c, (*ff)[i], ptr + "/final_family/" + std::to_string(i), d);
        }
    }
}

void check_decay(Checker& c, const json& dcy, const std::string& ptr) {
    if (!c.object(dcy, ptr)) return;
    bool zero_coupling = false;
    if (const json* m = c.get(dcy, "model", ptr, false)) {
        const std::string mp = ptr + "/model";
        if (c.object(*m, mp)) {
            const auto w0 = c.number(*m, "omega0", mp, false);
            std::optional<double> lo, hi;
            if (const json* band = c.get(*m, "band", mp, false)) {
                if (c.vector(*band, mp + "/band", 2)) {
                    lo = (*band)[0].get<double>();
                    hi = (*band)[1].get<double>();
                    if (!(*lo < *hi)) c.add(mp + "/band", "band must satisfy lo < hi");
                }
            }
            if (w0 && !(*w0 > lo.value_or(-1.0) && *w0 < hi.value_or(1.0)))
                c.add(mp + "/omega0", "omega0 must lie inside the band");
            c.integer(*m, "n_modes", mp, false, [](long long n) { return n >= 500 && n <= 20000; },
                      "n_modes must lie in [500, 20000]");
            if (const json* cp = c.get(*m, "coupling", mp, false)) {
                const std::string cpp = mp + "/coupling";
                if (c.object(*cp, cpp)) {
                    const auto prof = c.choice(*cp, "profile", cpp, false, {"flat", "lorentzian"});
                    const auto g = c.number(*cp, "g", cpp, false, [](double x) { return x >= 0.0; },
                                            "g must be nonnegative");
                    if (g && *g == 0.0) zero_coupling = true;
                    if (prof && *prof == "lorentzian") {
                        c.number(*cp, "center", cpp, false);
                        c.number(*cp, "width", cpp, false, [](double x) { return x > 0.0; }, "width must be positive");
                    }
                }
            }
        }
    }
    if (const json* t = c.get(dcy, "times", ptr, zero_coupling)) {
        const std::string tp = ptr + "/times";
        if (c.object(*t, tp)) {
            c.number(*t, "t_max", tp, true, [](double x) { return x > 0.0; }, "t_max must be positive");
            c.integer(*t, "n_positive", tp, false, [](long long n) { return n >= 1 && n <= 100000; },
                      "n_positive must lie in [1, 100000]");
        }
    }
    if (const json* fw = c.get(dcy, "fit_window", ptr, zero_coupling)) {
        if (c.vector(*fw, ptr + "/fit_window", 2) && !((*fw)[0].get<double>() < (*fw)[1].get<double>()))
            c.add(ptr + "/fit_window", "fit window must satisfy lo < hi");
    }
    if (const json* sp = c.get(dcy, "semigroup_pairs", ptr, false)) {
        if (!sp->is_array()) c.add(ptr + "/semigroup_pairs", "must be an array of [t1, t2] pairs");
        else
            for (std::size_t i = 0; i < sp->size(); ++i) {
                const std::string pp = ptr + "/semigroup_pairs/" + std::to_string(i);
                if (c.vector((*sp)[i], pp, 2) && ((*sp)[i][0].get<double>() < 0.0 || (*sp)[i][1].get<double>() < 0.0))
                    c.add(pp, "semigroup times must be nonnegative");
            }
    }
}

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& c : kCommands)
        if (c.name == name) return c.c;
    return std::nullopt;
}

std::string_view command_name(Command c) {
    for (const auto& k : kCommands)
        if (k.c == c) return k.name;
    return "";
}

void resolve_references(json& scenario, const fs::path& base) {
    require(scenario.is_object(), Errc::schema_violation, "scenario must be a JSON object");
    for (const char* key : kBlocks) {
        if (!scenario.contains(key) || !scenario[key].is_string()) continue;
        const fs::path p = base / scenario[key].get<std::string>();
        scenario[key] = io::read_json(p);
    }
    if (scenario.contains("reconstruct") && scenario["reconstruct"].is_object()) {
        json& r = scenario["reconstruct"];
        if (r.contains("tomogram") && r["tomogram"].is_string())
            r["tomogram"] = (base / r["tomogram"].get<std::string>()).lexically_normal().string();
    }
}

json load_scenario(const fs::path& path) {
    json doc = io::read_json(path);
    resolve_references(doc, path.parent_path());
    return doc;
}

std::vector<Violation> validate(const json& s) {
    Checker c;
    if (!s.is_object()) {
        c.add("", "scenario must be a JSON object");
        return c.list;
    }
    if (const json* v = c.get(s, "format_version", "", false))
        if (!v->is_number_integer() || v->get<long long>() != io::format_version)
            c.add("/format_version", "unsupported format_version");
    std::optional<Command> cmd;
    if (const json* v = c.get(s, "command", "", true)) {
        if (v->is_string()) cmd = parse_command(v->get<std::string>());
        if (!cmd)
            c.add("/command", "must be one of state wigner evolve tomogram reconstruct spin-search histories decay");
    }
    c.number(s, "hbar", "", false, [](double x) { return x > 0.0; }, "hbar must be positive");
    if (const json* out = c.get(s, "output", "", false)) {
        if (c.object(*out, "/output")) {
            if (const json* d = c.get(*out, "dir", "/output", false); d && !d->is_string())
                c.add("/output/dir", "must be a string");
            c.choice(*out, "format", "/output", false, {"csv", "json", "binary"});
        }
    }
    if (!cmd) return c.list;

    const bool needs_state = *cmd == Command::state || *cmd == Command::wigner || *cmd == Command::evolve ||
                             *cmd == Command::tomogram;
    bool has_tomogram_file = false;
    if (*cmd == Command::reconstruct) {
        if (const json* r = c.get(s, "reconstruct", "", false); r && c.object(*r, "/reconstruct")) {
            if (const json* t = c.get(*r, "tomogram", "/reconstruct", false)) {
                if (!t->is_string()) c.add("/reconstruct/tomogram", "must be a path");
                else if (!fs::is_regular_file(t->get<std::string>()))
                    c.add("/reconstruct/tomogram", "file does not exist: " + t->get<std::string>());
                has_tomogram_file = true;
            }
            c.choice(*r, "target", "/reconstruct", false, {"state_grid", "default"});
        }
    }
    if (needs_state || (*cmd == Command::reconstruct && !has_tomogram_file)) {
        if (const json* g = c.get(s, "grid", "", true)) check_grid(c, *g, "/grid");
        if (const json* st = c.get(s, "state", "", true)) check_state(c, *st, "/state", true);
    }
    if (*cmd == Command::evolve) {
        if (const json* h = c.get(s, "hamiltonian", "", true)) check_hamiltonian(c, *h, "/hamiltonian");
        if (const json* e = c.get(s, "evolution", "", true)) check_evolution(c, *e, "/evolution");
    }
    if (*cmd == Command::tomogram || *cmd == Command::reconstruct)
        if (const json* t = c.get(s, "tomogram", "", false)) check_tomogram(c, *t, "/tomogram");
    if (*cmd == Command::spin_search)
        if (const json* sp = c.get(s, "spin", "", false)) check_spin(c, *sp, "/spin");
    if (*cmd == Command::histories)
        if (const json* h = c.get(s, "histories", "", true)) check_histories(c, *h, "/histories");
    if (*cmd == Command::decay)
        if (const json* d = c.get(s, "decay", "", false)) check_decay(c, *d, "/decay");
    return c.list;
}

} // namespace phasekit::cli
