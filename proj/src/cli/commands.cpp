#include <cmath>
#include <variant>

#include "phasekit/cli.hpp"
#include "phasekit/decay.hpp"
#include "phasekit/dynamics.hpp"
#include "phasekit/histories.hpp"
#include "phasekit/spin_bell.hpp"
#include "phasekit/tomography.hpp"

namespace phasekit::cli {

namespace fs = std::filesystem;

namespace {

using State = std::variant<WaveFunction, MixedState>;

double num(const json& j, const char* key, double fallback) {
    return j.is_object() && j.contains(key) ? j.at(key).get<double>() : fallback;
}

long long integer(const json& j, const char* key, long long fallback) {
    return j.is_object() && j.contains(key) ? j.at(key).get<long long>() : fallback;
}

std::string text(const json& j, const char* key, const char* fallback) {
    return j.is_object() && j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

cplx complex_of(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    return {v[0].get<double>(), v[1].get<double>()};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_of(const json& v) {
    const auto d = static_cast<Eigen::Index>(v.size());
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = complex_of(v[std::size_t(i)][std::size_t(j)]);
    return m;
}

CVector vector_of(const json& v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = complex_of(v[i]);
    return out;
}

BlochVector direction_of(const json& v) {
    return BlochVector(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

json direction_json(const BlochVector& n) { return json::array({n.vec().x(), n.vec().y(), n.vec().z()}); }

HbarConfig hbar_of(const json& s) { return HbarConfig(num(s, "hbar", 1.0)); }

GridSpec grid_of(const json& g) {
    return GridSpec(g.at("q_min").get<double>(), g.at("q_max").get<double>(), g.at("n_points").get<std::size_t>());
}

WaveFunction pure_state(const json& s, const GridSpec& grid, const HbarConfig& hbar) {
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "gaussian")
        return gaussian_packet(grid, num(s, "q0", 0.0), num(s, "p0", 0.0), s.at("sigma").get<double>(), hbar);
    if (kind == "oscillator")
        return oscillator_state(grid, static_cast<unsigned>(integer(s, "level", 0)), num(s, "q0", 0.0),
                                num(s, "p0", 0.0), num(s, "mass", 1.0), num(s, "omega", 1.0), hbar);
    std::vector<SuperpositionTerm> terms;
    for (const auto& t : s.at("terms"))
        terms.push_back({complex_of(t.at("coefficient")), pure_state(t.at("state"), grid, hbar)});
    return superpose(terms);
}

State build_state(const json& scenario) {
    const GridSpec grid = grid_of(scenario.at("grid"));
    const HbarConfig hbar = hbar_of(scenario);
    const json& s = scenario.at("state");
    if (s.at("kind").get<std::string>() != "mixture") return pure_state(s, grid, hbar);
    std::vector<MixtureComponent> comps;
    for (const auto& c : s.at("components"))
        comps.push_back({c.at("weight").get<double>(), pure_state(c.at("state"), grid, hbar)});
    return MixedState(std::move(comps));
}

WignerFunction wigner_of(const State& st) {
    return std::visit([](const auto& s) { return wigner_from_state(s); }, st);
}

const GridSpec& grid_of(const State& st) {
    return std::visit([](const auto& s) -> const GridSpec& { return s.grid(); }, st);
}

std::vector<double> density_of(const State& st, bool momentum) {
    if (const auto* psi = std::get_if<WaveFunction>(&st)) return momentum ? momentum_density(*psi) : position_density(*psi);
    const auto& rho = std::get<MixedState>(st);
    std::vector<double> out;
    for (const auto& c : rho.components()) {
        const auto d = momentum ? momentum_density(c.state) : position_density(c.state);
        if (out.empty()) out.assign(d.size(), 0.0);
        for (std::size_t k = 0; k < d.size(); ++k) out[k] += c.weight * d[k];
    }
    return out;
}

io::Dataset wigner_dataset(const WignerFunction& w) {
    io::Dataset d;
    std::vector<double> q, p;
    q.reserve(w.values().size());
    p.reserve(w.values().size());
    for (std::size_t i = 0; i < w.n_q(); ++i)
        for (std::size_t j = 0; j < w.n_p(); ++j) {
            q.push_back(w.grid().q[i]);
            p.push_back(w.grid().p[j]);
        }
    d.meta = {{"kind", "wigner"}, {"n_q", w.n_q()}, {"n_p", w.n_p()}, {"hbar", w.hbar().hbar}};
    d.add_column("q", std::move(q));
    d.add_column("p", std::move(p));
    d.add_column("W", std::vector<double>(w.values().begin(), w.values().end()));
    return d;
}

double sup_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

json wigner_summary(const WignerFunction& w) {
    return {{"integral", w.total()}, {"purity", purity(w)}, {"negativity_volume", negativity_volume(w)},
            {"max_abs", w.max_abs()}, {"imag_residue", w.imag_residue()}};
}

fs::path file(const Outputs& out, const std::string& stem) {
    return out.dir / (stem + std::string(io::extension(out.format)));
}

json run_state(const json& s, const Outputs& out) {
    const State st = build_state(s);
    const GridSpec& g = grid_of(st);
    const HbarConfig hbar = hbar_of(s);
    io::Dataset pos;
    pos.meta = {{"kind", "position_density"}, {"hbar", hbar.hbar}};
    pos.add_column("q", g.position_axis().values());
    pos.add_column("density", density_of(st, false));
    if (const auto* psi = std::get_if<WaveFunction>(&st)) {
        std::vector<double> re, im;
        for (const auto& a : psi->amplitudes()) {
            re.push_back(a.real());
            im.push_back(a.imag());
        }
        pos.add_column("re_psi", std::move(re));
        pos.add_column("im_psi", std::move(im));
    }
    io::Dataset mom;
    mom.meta = {{"kind", "momentum_density"}, {"hbar", hbar.hbar}};
    mom.add_column("p", g.momentum_axis(hbar).values());
    mom.add_column("density", density_of(st, true));
    io::write_dataset(file(out, "state"), pos, out.format);
    io::write_dataset(file(out, "momentum"), mom, out.format);

    auto moments = [](const std::vector<double>& d, const Axis& ax) {
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            m0 += d[k] * ax.step;
            m1 += d[k] * ax[k] * ax.step;
        }
        for (std::size_t k = 0; k < d.size(); ++k) m2 += d[k] * (ax[k] - m1) * (ax[k] - m1) * ax.step;
        return std::array<double, 3>{m0, m1, m2};
    };
    const auto mq = moments(pos.column("density"), g.position_axis());
    const auto mp = moments(mom.column("density"), g.momentum_axis(hbar));
    return {{"command", "state"}, {"norm", mq[0]}, {"q_mean", mq[1]}, {"q_variance", mq[2]},
            {"p_mean", mp[1]}, {"p_variance", mp[2]}, {"pure", std::holds_alternative<WaveFunction>(st)}};
}

json run_wigner(const json& s, const Outputs& out) {
    const State st = build_state(s);
    const WignerFunction w = wigner_of(st);
    io::write_dataset(file(out, "wigner"), wigner_dataset(w), out.format);
    const auto m = marginals(w);
    json sum = wigner_summary(w);
    sum["command"] = "wigner";
    sum["marginal_q_error"] = sup_diff(m.q, density_of(st, false));
    sum["marginal_p_error"] = sup_diff(m.p, density_of(st, true));
    return sum;
}

PolynomialHamiltonian hamiltonian_of(const json& h) {
    const std::string kind = text(h, "kind", "polynomial");
    const double mass = num(h, "mass", 1.0);
    if (kind == "free") return PolynomialHamiltonian::free(mass);
    if (kind == "harmonic") return PolynomialHamiltonian::harmonic(mass, num(h, "omega", 1.0));
    return PolynomialHamiltonian(mass, h.at("coefficients").get<std::vector<double>>());
}

json run_evolve(const json& s, const Outputs& out) {
    const State st = build_state(s);
    const WignerFunction w0 = wigner_of(st);
    const auto h = hamiltonian_of(s.at("hamiltonian"));
    const json& e = s.at("evolution");
    EvolutionConfig cfg;
    cfg.dt = e.at("dt").get<double>();
    cfg.n_steps = e.at("n_steps").get<std::size_t>();
    cfg.generator = text(e, "generator", "moyal") == "liouville" ? Generator::liouville : Generator::moyal;
    cfg.max_hbar_power = static_cast<unsigned>(integer(e, "max_hbar_power", 4));
    const auto record = static_cast<std::size_t>(integer(e, "record_every", 0));
    const auto result = evolve(w0, h, cfg, record);

    io::write_dataset(file(out, "wigner_final"), wigner_dataset(result.final), out.format);
    io::Dataset traj;
    traj.meta = {{"kind", "trajectory"}, {"dt", cfg.dt}, {"n_steps", cfg.n_steps}};
    std::vector<double> t, sq, nm, pu;
    for (const auto& x : result.trajectory) {
        t.push_back(x.t);
        sq.push_back(x.sigma_q2);
        nm.push_back(x.norm);
        pu.push_back(x.purity);
    }
    traj.add_column("t", std::move(t));
    traj.add_column("sigma_q2", std::move(sq));
    traj.add_column("norm", std::move(nm));
    traj.add_column("purity", std::move(pu));
    io::write_dataset(file(out, "trajectory"), traj, out.format);

    json sum = wigner_summary(result.final);
    sum["command"] = "evolve";
    sum["t_final"] = cfg.dt * double(cfg.n_steps);
    sum["cfl_limit"] = cfl_limit(w0.grid(), h);
    sum["initial_purity"] = purity(w0);
    return sum;
}

Axis nu_axis(const json& s) {
    const json t = s.contains("tomogram") ? s.at("tomogram") : json::object();
    const auto n = static_cast<std::size_t>(integer(t, "nu_points", 512));
    const double half = num(t, "nu_half_width", 12.0);
    return Axis::centered(2.0 * half / double(n), n);
}

std::size_t angle_count(const json& s) {
    const json t = s.contains("tomogram") ? s.at("tomogram") : json::object();
    return static_cast<std::size_t>(integer(t, "n_angles", 128));
}

io::Dataset tomogram_dataset(const Tomogram& t) {
    io::Dataset d;
    std::vector<double> l, m, nu, p;
    for (std::size_t r = 0; r < t.n_rays(); ++r)
        for (std::size_t k = 0; k < t.nu().count; ++k) {
            l.push_back(t.rays()[r].lambda);
            m.push_back(t.rays()[r].mu);
            nu.push_back(t.nu()[k]);
            p.push_back(t.row(r)[k]);
        }
    d.meta = {{"kind", "tomogram"}, {"n_rays", t.n_rays()}, {"nu_start", t.nu().start},
              {"nu_step", t.nu().step}, {"nu_count", t.nu().count}, {"hbar", t.hbar().hbar}};
    d.add_column("lambda", std::move(l));
    d.add_column("mu", std::move(m));
    d.add_column("nu", std::move(nu));
    d.add_column("P", std::move(p));
    return d;
}

Tomogram tomogram_of(const io::Dataset& d) {
    require(d.meta.value("kind", "") == "tomogram", Errc::schema_violation, "dataset is not a tomogram");
    const auto n_rays = d.meta.at("n_rays").get<std::size_t>();
    const Axis nu{d.meta.at("nu_start").get<double>(), d.meta.at("nu_step").get<double>(),
                  d.meta.at("nu_count").get<std::size_t>()};
    require(d.rows() == n_rays * nu.count, Errc::schema_violation, "tomogram rows do not match its header");
    const auto& l = d.column("lambda");
    const auto& m = d.column("mu");
    std::vector<Ray> rays;
    for (std::size_t r = 0; r < n_rays; ++r) rays.push_back({l[r * nu.count], m[r * nu.count]});
    return Tomogram(std::move(rays), nu, d.column("P"), HbarConfig(d.meta.value("hbar", 1.0)));
}

json run_tomogram(const json& s, const Outputs& out) {
    const WignerFunction w = wigner_of(build_state(s));
    const Tomogram t = tomogram_from_wigner(w, uniform_rays(angle_count(s)), nu_axis(s));
    io::write_dataset(file(out, "tomogram"), tomogram_dataset(t), out.format);
    double worst = 0.0;
    for (std::size_t r = 0; r < t.n_rays(); ++r) worst = std::max(worst, std::abs(t.integral(r) - 1.0));
    return {{"command", "tomogram"}, {"n_rays", t.n_rays()}, {"nu_points", t.nu().count},
            {"min_value", t.min_value()}, {"max_normalization_error", worst}};
}

json run_reconstruct(const json& s, const Outputs& out) {
    const json r = s.contains("reconstruct") ? s.at("reconstruct") : json::object();
    json sum = {{"command", "reconstruct"}};
    std::optional<WignerFunction> original;
    std::optional<Tomogram> tomo;
    if (r.contains("tomogram")) {
        tomo = tomogram_of(io::read_dataset(r.at("tomogram").get<std::string>()));
        if (s.contains("grid") && s.contains("state")) original = wigner_of(build_state(s));
    } else {
        original = wigner_of(build_state(s));
        tomo = tomogram_from_wigner(*original, uniform_rays(angle_count(s)), nu_axis(s));
    }
    const bool on_state_grid = original && text(r, "target", "state_grid") == "state_grid";
    const WignerFunction back = on_state_grid ? wigner_from_tomogram(*tomo, original->grid())
                                              : wigner_from_tomogram(*tomo);
    io::write_dataset(file(out, "wigner_reconstructed"), wigner_dataset(back), out.format);
    sum["reconstructed"] = wigner_summary(back);
    sum["n_rays"] = tomo->n_rays();
    if (original) {
        sum["original"] = wigner_summary(*original);
        if (on_state_grid) sum["sup_error"] = sup_diff(back.values(), original->values());
    }
    return sum;
}

SpinState spin_state_of(const json& st) {
    if (st.contains("bloch")) {
        const auto& b = st.at("bloch");
        return SpinState::from_bloch(b[0].get<double>(), b[1].get<double>(), b[2].get<double>());
    }
    Mat2 m;
    const CMatrix full = matrix_of(st.at("matrix"));
    m = full;
    return SpinState(m);
}

json run_spin(const json& s, const Outputs& out) {
    const json sp = s.contains("spin") ? s.at("spin") : json::object();
    const double res = num(sp, "resolution", 5.0);
    const Sector sector = text(sp, "sector", "agreement") == "disagreement" ? Sector::disagreement : Sector::agreement;
    const double max_angle = num(sp, "max_angle", 360.0);
    const auto best = violation_search(res, sector, max_angle);
    json report = {{"command", "spin-search"},
                   {"resolution_deg", res},
                   {"sector", sector == Sector::agreement ? "agreement" : "disagreement"},
                   {"max_angle_deg", max_angle},
                   {"min_slack", best.slack},
                   {"violated", best.slack < 0.0},
                   {"angle2_deg", best.angle2_deg},
                   {"angle3_deg", best.angle3_deg},
                   {"directions", json::array({direction_json(best.directions[0]), direction_json(best.directions[1]),
                                               direction_json(best.directions[2])})}};
    if (sp.contains("directions")) {
        const auto& d = sp.at("directions");
        const BlochVector a = direction_of(d[0]), b = direction_of(d[1]), c = direction_of(d[2]);
        const auto tri = triangle_inequality_check(a, b, c, sector);
        json given = {{"slack", tri.slack}, {"holds", tri.holds}, {"symmetrized_triple", symmetrized_triple(a, b, c)}};
        const SpinState rho = sp.contains("state") ? spin_state_of(sp.at("state")) : SpinState::maximally_mixed();
        const auto master = master_distribution(rho, {a, b, c});
        json values = json::array();
        for (std::size_t m = 0; m < master.size(); ++m) {
            json signs = json::array();
            for (std::size_t i = 0; i < 3; ++i) signs.push_back(((m >> i) & 1u) ? -1 : 1);
            values.push_back({{"signs", signs}, {"value", complex_json(master.value_at(m))}});
        }
        given["master_distribution"] = std::move(values);
        report["given"] = std::move(given);
    }
    io::write_json(out.dir / "search.json", report);
    return report;
}

CMatrix projector_of(const json& p) {
    if (p.is_object()) {
        const auto& pp = p.at("pauli_projector");
        return pauli_projector(direction_of(pp.at("axis")), pp.at("sign").get<int>());
    }
    return matrix_of(p);
}

json run_histories(const json& s, const Outputs& out) {
    const json& h = s.at("histories");
    const auto d = h.at("dimension").get<std::size_t>();
    std::vector<ProjectorChain> chains;
    for (const auto& b : h.at("branches")) {
        std::vector<CMatrix> ps;
        for (const auto& p : b) ps.push_back(projector_of(p));
        chains.emplace_back(std::move(ps), d);
    }
    const json& init = h.at("initial");
    std::optional<BranchSet> set;
    if (init.contains("vector")) set.emplace(std::move(chains), vector_of(init.at("vector")));
    else if (init.contains("density")) set.emplace(std::move(chains), matrix_of(init.at("density")));
    else set.emplace(std::move(chains), CMatrix(projector(direction_of(init.at("bloch")), 1)));
    std::vector<CVector> finals;
    if (h.contains("final_family"))
        for (const auto& v : h.at("final_family")) finals.push_back(vector_of(v));
    const CMatrix dm = decoherence_matrix(*set, finals);
    const double tol = num(h, "tol", 1e-10);
    const auto strict = is_consistent(dm, ConsistencyMode::strict, tol);
    const auto weak = is_consistent(dm, ConsistencyMode::weak, tol);
    const std::string mode = text(h, "mode", "both");
    json report = {{"command", "histories"},
                   {"tol", tol},
                   {"mode", mode},
                   {"n_branches", set->size()},
                   {"n_final", finals.size()},
                   {"probability_sum", dm.trace().real()},
                   {"total_sum", complex_json(dm.sum())},
                   {"decoherence_matrix", matrix_json(dm)}};
    if (mode != "weak") report["strict"] = {{"consistent", strict.consistent}, {"max_off_diagonal", strict.max_off_diagonal}};
    if (mode != "strict") report["weak"] = {{"consistent", weak.consistent}, {"max_off_diagonal", weak.max_off_diagonal}};
    report["consistent"] = mode == "weak" ? weak.consistent : strict.consistent;
    io::write_json(out.dir / "report.json", report);
    return report;
}

FriedrichsModel model_of(const json& dcy) {
    if (!dcy.contains("model")) return FriedrichsModel::benchmark();
    const json& m = dcy.at("model");
    const json band = m.contains("band") ? m.at("band") : json::array({-1.0, 1.0});
    const json cp = m.contains("coupling") ? m.at("coupling") : json::object();
    Coupling c;
    c.profile = text(cp, "profile", "flat") == "lorentzian" ? CouplingProfile::lorentzian : CouplingProfile::flat;
    c.g = num(cp, "g", c.g);
    c.center = num(cp, "center", c.center);
    c.width = num(cp, "width", c.width);
    return FriedrichsModel(num(m, "omega0", 0.0), band[0].get<double>(), band[1].get<double>(),
                           static_cast<std::size_t>(integer(m, "n_modes", 2000)), c);
}

json run_decay(const json& s, const Outputs& out) {
    const json dcy = s.contains("decay") ? s.at("decay") : json::object();
    const FriedrichsModel model = model_of(dcy);
    const double gr = model.golden_rule_rate();
    const json tj = dcy.contains("times") ? dcy.at("times") : json::object();
    const double t_max = num(tj, "t_max", gr > 0.0 ? 6.0 / gr : 1.0);
    const auto n_pos = static_cast<std::size_t>(integer(tj, "n_positive", 600));
    const auto times = symmetric_times(t_max, n_pos);
    const Spectrum spec = diagonalize(model);
    const SurvivalRecord rec = survival_amplitude(spec, times, model.recurrence_time());

    io::Dataset surv;
    surv.meta = {{"kind", "survival"}, {"n_modes", model.n_modes()}, {"omega0", model.omega0()},
                 {"g", model.coupling().g}};
    std::vector<double> re, im;
    for (const auto& a : rec.amplitude) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    surv.add_column("t", rec.times);
    surv.add_column("re_A", std::move(re));
    surv.add_column("im_A", std::move(im));
    surv.add_column("P", rec.probability);
    io::write_dataset(file(out, "survival"), surv, out.format);

    double asym = 0.0, weight_sum = 0.0;
    for (std::size_t k = 0; k <= n_pos; ++k)
        asym = std::max(asym, std::abs(rec.probability[n_pos + k] - rec.probability[n_pos - k]));
    for (double w : spec.weights) weight_sum += w;

    json sum = {{"command", "decay"},
                {"n_modes", model.n_modes()},
                {"spacing", model.spacing()},
                {"gamma_golden_rule", gr},
                {"energy_variance", model.energy_variance()},
                {"weight_sum", weight_sum},
                {"time_asymmetry", asym},
                {"recurrence_warning", rec.recurrence_warning}};
    const json fw = dcy.contains("fit_window") ? dcy.at("fit_window") : json::array({1.0 / gr, 5.0 / gr});
    const double gamma_fit = fit_decay_rate(rec, fw[0].get<double>(), fw[1].get<double>());
    sum["gamma_fit"] = gamma_fit;
    sum["fit_window"] = fw;

    const double h = t_max / double(n_pos);
    const json pairs = dcy.contains("semigroup_pairs") ? dcy.at("semigroup_pairs")
                                                       : json::array({json::array({h, h}), json::array({2 * h, 3 * h})});
    json sg = json::array();
    for (const auto& p : pairs) {
        const auto d = semigroup_approximation_error(rec, gamma_fit, p[0].get<double>(), p[1].get<double>());
        sg.push_back({{"t1", p[0]}, {"t2", p[1]}, {"surrogate_defect", d.surrogate}, {"exact_defect", d.exact}});
    }
    sum["semigroup"] = std::move(sg);

    json pole = {{"command", "decay"}};
    if (model.coupling().profile == CouplingProfile::flat && model.coupling().g > 0.0) {
        const auto lower = second_sheet_pole(model, HalfPlane::lower);
        const auto upper = second_sheet_pole(model, HalfPlane::upper);
        pole["lower"] = {{"z", complex_json(lower.z)}, {"iterations", lower.iterations}};
        pole["upper"] = {{"z", complex_json(upper.z)}, {"iterations", upper.iterations}};
        pole["gamma_pole"] = -2.0 * lower.z.imag();
        pole["mirror_error"] = std::abs(upper.z - std::conj(lower.z));
        sum["gamma_pole"] = -2.0 * lower.z.imag();
        sum["pole"] = complex_json(lower.z);
    } else {
        pole["note"] = "closed-form continuation needs a flat nonzero coupling";
    }
    io::write_json(out.dir / "pole.json", pole);
    return sum;
}

} // namespace

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::invalid_argument:
    case Errc::invalid_grid:
    case Errc::bad_weights:
    case Errc::invalid_state:
    case Errc::non_unit_vector:
    case Errc::dimension_mismatch:
    case Errc::invalid_projector:
    case Errc::non_exhaustive_family:
    case Errc::invalid_model:
    case Errc::degree_too_high:
    case Errc::unsupported_profile:
    case Errc::schema_violation:
    case Errc::parse_error:
    case Errc::unreadable_file: return 1;
    default: return 2;
    }
}

json execute(const json& scenario, const Outputs& out) {
    const auto cmd = parse_command(scenario.at("command").get<std::string>());
    require(cmd.has_value(), Errc::schema_violation, "unknown command");
    json sum;
    switch (*cmd) {
    case Command::state: sum = run_state(scenario, out); break;
    case Command::wigner: sum = run_wigner(scenario, out); break;
    case Command::evolve: sum = run_evolve(scenario, out); break;
    case Command::tomogram: sum = run_tomogram(scenario, out); break;
    case Command::reconstruct: sum = run_reconstruct(scenario, out); break;
    case Command::spin_search: sum = run_spin(scenario, out); break;
    case Command::histories: sum = run_histories(scenario, out); break;
    case Command::decay: sum = run_decay(scenario, out); break;
    }
    io::write_json(out.dir / "summary.json", sum);
    return sum;
}

} // namespace phasekit::cli
