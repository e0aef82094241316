#include "phasekit/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "phasekit/fft.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {
namespace {

constexpr double significance = 1e-10;
constexpr std::size_t min_angles = 64;
constexpr std::size_t zero_pad = 4;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Evaluates the trigonometric interpolant of an n-periodic sequence at the
// fractional indices u0 + m * delta, m = 0..M-1 (Bluestein chirp-z). The
// kernel depends only on (n, M, delta), so one evaluator serves every line of a ray.
class ChirpEvaluator {
public:
    ChirpEvaluator(std::size_t n, std::size_t m, double delta)
        : n_(n), m_(m), size_(next_pow2(n + m - 1)), pre_(n), post_(m), kernel_(size_, cplx{}) {
        const auto chirp = [&](double x) { return std::polar(1.0, pi * delta * x * x / static_cast<double>(n)); };
        for (std::size_t k = 0; k < n; ++k) pre_[k] = chirp(static_cast<double>(k));
        for (std::size_t j = 0; j < m; ++j)
            post_[j] = chirp(static_cast<double>(j)) * std::polar(1.0, -pi * static_cast<double>(j) * delta);
        for (std::size_t j = 0; j < m; ++j) kernel_[j] = std::conj(chirp(static_cast<double>(j)));
        for (std::size_t j = 1; j < n; ++j) kernel_[size_ - j] = std::conj(chirp(static_cast<double>(j)));
        fft::forward(kernel_);
    }

    std::size_t buffer_size() const { return size_; }

    // spectrum: unnormalized forward DFT of the line (length n).
    // Writes the M real interpolant values into out, using buf as scratch.
    void evaluate(std::span<const cplx> spectrum, double u0, std::vector<cplx>& buf,
                  std::span<double> out) const {
        std::fill(buf.begin(), buf.end(), cplx{});
        const long half = static_cast<long>(n_ / 2);
        for (std::size_t kp = 0; kp < n_; ++kp) {
            const long k = static_cast<long>(kp) - half;
            const std::size_t idx = static_cast<std::size_t>((k + static_cast<long>(n_)) % static_cast<long>(n_));
            const double phase = 2.0 * pi * static_cast<double>(k) * u0 / static_cast<double>(n_);
            buf[kp] = spectrum[idx] * std::polar(1.0, phase) * pre_[kp];
        }
        fft::forward(buf);
        for (std::size_t j = 0; j < size_; ++j) buf[j] *= kernel_[j];
        fft::backward(buf);
        const double scale = 1.0 / (static_cast<double>(size_) * static_cast<double>(n_));
        for (std::size_t j = 0; j < m_; ++j) out[j] = scale * (post_[j] * buf[j]).real();
    }

private:
    std::size_t n_, m_, size_;
    std::vector<cplx> pre_, post_, kernel_;
};

struct LineSpectra {
    std::vector<cplx> rows;  // n_q lines of length n_p (W along p at fixed q)
    std::vector<cplx> cols;  // n_p lines of length n_q (W along q at fixed p)
    // Lines whose largest |W| is below 1e-15 max|W| contribute nothing measurable.
    std::vector<char> row_live, col_live;
};

LineSpectra line_spectra(const WignerFunction& w) {
    const std::size_t nq = w.n_q(), np = w.n_p();
    LineSpectra s{std::vector<cplx>(nq * np), std::vector<cplx>(np * nq)};
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            s.rows[i * np + j] = w(i, j);
            s.cols[j * nq + i] = w(i, j);
        }
    const double floor = 1e-15 * w.max_abs();
    s.row_live.assign(nq, 0);
    s.col_live.assign(np, 0);
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < np; ++j)
            if (std::abs(w(i, j)) > floor) s.row_live[i] = s.col_live[j] = 1;
    for (std::size_t i = 0; i < nq; ++i) fft::forward(std::span<cplx>(s.rows.data() + i * np, np));
    for (std::size_t j = 0; j < np; ++j) fft::forward(std::span<cplx>(s.cols.data() + j * nq, nq));
    return s;
}

// Unit-ray projection P(theta, x_m) at x_m = x0 + m dx.
void project_unit(const WignerFunction& w, const LineSpectra& spectra, double c, double s,
                  double x0, double dx, std::span<double> out) {
    const PhaseSpaceGrid& g = w.grid();
    const bool along_p = std::abs(c) >= std::abs(s);
    // Lines run along `inner`, one per sample of `outer`.
    const Axis& inner = along_p ? g.p : g.q;
    const Axis& outer = along_p ? g.q : g.p;
    const double a = along_p ? c : s;  // coefficient of the inner variable
    const double b = along_p ? s : c;  // coefficient of the outer variable
    const std::vector<cplx>& lines = along_p ? spectra.rows : spectra.cols;
    const std::vector<char>& live = along_p ? spectra.row_live : spectra.col_live;
    const std::size_t n = inner.count;
    const std::size_t m = out.size();
    const double delta = dx / (a * inner.step);
    const double weight = outer.step / std::abs(a);

    const ChirpEvaluator chirp(n, m, delta);
    std::vector<cplx> buf(chirp.buffer_size());
    std::vector<double> line(m);
    std::fill(out.begin(), out.end(), 0.0);
    const double u_lo = -0.5, u_hi = static_cast<double>(n) - 0.5;
    for (std::size_t i = 0; i < outer.count; ++i) {
        if (!live[i]) continue;
        const double u0 = ((x0 - b * outer[i]) / a - inner.start) / inner.step;
        const double u_last = u0 + static_cast<double>(m - 1) * delta;
        if (std::max(u0, u_last) < u_lo || std::min(u0, u_last) > u_hi) continue;
        chirp.evaluate(std::span<const cplx>(lines.data() + i * n, n), u0, buf, line);
        for (std::size_t j = 0; j < m; ++j) {
            const double u = u0 + static_cast<double>(j) * delta;
            if (u >= u_lo && u <= u_hi) out[j] += weight * line[j];
        }
    }
}

void check_nu_range(const WignerFunction& w, std::span<const Ray> rays, const Axis& nu) {
    const double threshold = significance * w.max_abs();
    std::vector<std::pair<double, double>> support;
    for (std::size_t i = 0; i < w.n_q(); ++i)
        for (std::size_t j = 0; j < w.n_p(); ++j)
            if (std::abs(w(i, j)) > threshold) support.emplace_back(w.grid().q[i], w.grid().p[j]);
    const double lo = std::min(nu.start, nu.back()), hi = std::max(nu.start, nu.back());
    for (const auto& ray : rays) {
        double xmin = 0.0, xmax = 0.0;
        bool first = true;
        for (const auto& [q, p] : support) {
            const double x = ray.lambda * p + ray.mu * q;
            xmin = first ? x : std::min(xmin, x);
            xmax = first ? x : std::max(xmax, x);
            first = false;
        }
        require(xmin >= lo && xmax <= hi, Errc::nu_range_too_small,
                "nu grid does not cover the support of W along ray (" +
                    std::to_string(ray.lambda) + ", " + std::to_string(ray.mu) + ")");
    }
}

// Lagrange weights on nodes -3..4 at fractional offset f.
std::array<double, 8> lagrange8(double f) {
    std::array<double, 8> wts{};
    for (int j = 0; j < 8; ++j) {
        double v = 1.0;
        for (int i = 0; i < 8; ++i)
            if (i != j) v *= (f - (i - 3)) / static_cast<double>(j - i);
        wts[j] = v;
    }
    return wts;
}

} // namespace

double Ray::norm() const { return std::hypot(lambda, mu); }
double Ray::angle() const { return std::atan2(mu, lambda); }
Ray Ray::at_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

Tomogram::Tomogram(std::vector<Ray> rays, Axis nu, std::vector<double> values, HbarConfig hbar)
    : rays_(std::move(rays)), nu_(nu), values_(std::move(values)), hbar_(hbar) {
    require(values_.size() == rays_.size() * nu_.count, Errc::invalid_argument,
            "tomogram value count does not match rays x nu");
}

double Tomogram::integral(std::size_t r) const {
    const auto v = row(r);
    return std::accumulate(v.begin(), v.end(), 0.0) * std::abs(nu_.step);
}

double Tomogram::min_value() const {
    return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

std::vector<Ray> uniform_rays(std::size_t n) {
    std::vector<Ray> rays(n);
    for (std::size_t r = 0; r < n; ++r) rays[r] = Ray::at_angle(pi * static_cast<double>(r) / n);
    return rays;
}

Tomogram tomogram_from_wigner(const WignerFunction& w, std::span<const Ray> rays, const Axis& nu) {
    require(nu.count >= 2, Errc::invalid_argument, "nu grid needs at least two points");
    for (const auto& ray : rays)
        require(ray.norm() > 1e-12, Errc::degenerate_ray, "ray (0, 0) has no direction");
    check_nu_range(w, rays, nu);

    const LineSpectra spectra = line_spectra(w);
    std::vector<double> values(rays.size() * nu.count);
    parallel_for(rays.size(), [&](std::size_t r) {
        const double rn = rays[r].norm();
        const double c = rays[r].lambda / rn, s = rays[r].mu / rn;
        std::span<double> out(values.data() + r * nu.count, nu.count);
        project_unit(w, spectra, c, s, nu.start / rn, nu.step / rn, out);
        for (auto& v : out) v /= rn;
    });
    return {std::vector<Ray>(rays.begin(), rays.end()), nu, std::move(values), w.hbar()};
}

double scaling_check(const Tomogram& base, const Tomogram& scaled, double s) {
    require(std::isfinite(s) && s != 0.0, Errc::invalid_argument, "scale factor must be nonzero");
    require(base.n_rays() == scaled.n_rays() && base.nu().count == scaled.nu().count,
            Errc::incompatible_grids, "tomograms have different shapes");
    for (std::size_t r = 0; r < base.n_rays(); ++r) {
        const Ray a = base.rays()[r], b = scaled.rays()[r];
        require(std::abs(b.lambda - s * a.lambda) <= 1e-12 * std::abs(s) * a.norm() &&
                    std::abs(b.mu - s * a.mu) <= 1e-12 * std::abs(s) * a.norm(),
                Errc::incompatible_grids, "scaled rays are not s times the base rays");
    }
    // Map base index m onto scaled index m' with nu'(m') = s * nu(m).
    const Axis& nb = base.nu();
    const Axis& ns = scaled.nu();
    const std::size_t n = nb.count;
    std::vector<std::size_t> map(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double pos = (s * nb[m] - ns.start) / ns.step;
        const double rounded = std::round(pos);
        require(std::abs(pos - rounded) <= 1e-8 && rounded >= 0 && rounded < static_cast<double>(n),
                Errc::incompatible_grids, "scaled nu grid is not s times the base grid");
        map[m] = static_cast<std::size_t>(rounded);
    }
    double sup = 0.0;
    for (std::size_t r = 0; r < base.n_rays(); ++r) {
        const auto pb = base.row(r);
        const auto ps = scaled.row(r);
        for (std::size_t m = 0; m < n; ++m)
            sup = std::max(sup, std::abs(ps[map[m]] - pb[m] / std::abs(s)));
    }
    return sup;
}

double scaling_check(const WignerFunction& w, std::span<const Ray> rays, const Axis& nu, double s) {
    require(std::isfinite(s) && s != 0.0, Errc::invalid_argument, "scale factor must be nonzero");
    std::vector<Ray> scaled_rays;
    for (const auto& r : rays) scaled_rays.push_back({s * r.lambda, s * r.mu});
    const Axis scaled_nu{s > 0 ? s * nu.start : s * nu.back(), std::abs(s) * nu.step, nu.count};
    return scaling_check(tomogram_from_wigner(w, rays, nu),
                         tomogram_from_wigner(w, scaled_rays, scaled_nu), s);
}

WignerFunction wigner_from_tomogram(const Tomogram& t, const PhaseSpaceGrid& target) {
    const std::size_t nr = t.n_rays();
    for (const auto& ray : t.rays())
        require(std::abs(ray.norm() - 1.0) <= 1e-12, Errc::non_unit_rays,
                "reconstruction needs unit rays");
    require(nr >= min_angles, Errc::insufficient_angular_coverage,
            "reconstruction needs at least 64 ray angles, got " + std::to_string(nr));

    // Fold every angle into [0, pi); a folded ray sees chi at -k.
    struct Slice {
        double theta;
        bool flipped;
        std::size_t index;
    };
    std::vector<Slice> slices(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        double th = t.rays()[r].angle();
        bool flipped = false;
        if (th < 0.0) th += pi, flipped = true;
        if (th >= pi - 1e-13) th -= pi, flipped = !flipped;
        slices[r] = {th, flipped, r};
    }
    std::sort(slices.begin(), slices.end(), [](const Slice& a, const Slice& b) { return a.theta < b.theta; });
    const double dtheta = pi / static_cast<double>(nr);
    for (std::size_t r = 0; r < nr; ++r)
        require(std::abs(slices[r].theta - slices[0].theta - static_cast<double>(r) * dtheta) <= 1e-9,
                Errc::insufficient_angular_coverage, "ray angles are not uniform over [0, pi)");

    // chi along each slice on a fine k grid: chi(k) = int P(nu) exp(i k nu) dnu.
    const Axis& nu = t.nu();
    const std::size_t fm = zero_pad * nu.count;
    const double dk = 2.0 * pi / (static_cast<double>(fm) * nu.step);
    std::vector<cplx> slice_chi(nr * fm);
    parallel_for(nr, [&](std::size_t r) {
        std::vector<cplx> buf(fm, cplx{});
        const auto row = t.row(slices[r].index);
        for (std::size_t m = 0; m < nu.count; ++m) buf[m] = row[m];
        fft::backward(buf);
        for (std::size_t l = 0; l < fm; ++l) {
            const double k = dk * static_cast<double>(fft::signed_index(l, fm));
            buf[l] *= nu.step * std::polar(1.0, k * nu.start);
        }
        // Store by signed k index, flipping folded slices.
        cplx* dst = slice_chi.data() + r * fm;
        for (std::size_t l = 0; l < fm; ++l) {
            const long kl = fft::signed_index(l, fm);
            const long src = slices[r].flipped ? -kl : kl;
            const long wrapped = (src + static_cast<long>(fm)) % static_cast<long>(fm);
            dst[l] = buf[static_cast<std::size_t>(wrapped)];
        }
    });

    const long kmax_index = static_cast<long>(fm / 2) - 5;
    struct Stencil {
        bool inside;
        long base;
        std::array<double, 8> wts;
    };
    const auto stencil = [&](double k) {
        const double pos = k / dk;
        const long base = static_cast<long>(std::floor(pos));
        if (std::abs(base) > kmax_index) return Stencil{false, 0, {}};
        return Stencil{true, base, lagrange8(pos - static_cast<double>(base))};
    };
    const auto radial = [&](std::size_t r, const Stencil& st) -> cplx {
        if (!st.inside) return {0.0, 0.0};
        const cplx* src = slice_chi.data() + r * fm;
        cplx s{0.0, 0.0};
        for (int j = 0; j < 8; ++j) {
            const long idx = (st.base - 3 + j + static_cast<long>(fm)) % static_cast<long>(fm);
            s += st.wts[j] * src[idx];
        }
        return s;
    };

    const DualGrid dual = DualGrid::of(target);
    const std::size_t na = dual.lambda.count, nb = dual.mu.count;
    const std::size_t ncirc = 2 * nr;
    const double theta0 = slices[0].theta;
    std::vector<double> half_cos(ncirc), half_sin(ncirc);
    for (std::size_t r = 0; r < ncirc; ++r) {
        half_cos[r] = std::cos(0.5 * static_cast<double>(r) * dtheta);
        half_sin[r] = std::sin(0.5 * static_cast<double>(r) * dtheta);
    }
    std::vector<cplx> chi(na * nb);
    parallel_for(na, [&](std::size_t a) {
        std::vector<cplx> ring(ncirc);
        for (std::size_t b = 0; b < nb; ++b) {
            const double lam = dual.lambda[a], mu = dual.mu[b];
            const double k = std::hypot(lam, mu);
            const Stencil plus = stencil(k), minus = stencil(-k);
            for (std::size_t r = 0; r < nr; ++r) {
                ring[r] = radial(r, plus);
                ring[r + nr] = radial(r, minus);
            }
            if (k == 0.0) {
                chi[a * nb + b] = ring[0];
                continue;
            }
            // Periodic (Dirichlet) interpolation around the circle of radius k.
            const double phi = std::atan2(mu, lam) - theta0;
            const double half_n = 0.5 * static_cast<double>(ncirc);
            const double s_common = std::sin(half_n * phi);
            // cot((phi - x_r)/2) from angle-addition on precomputed half-angle tables.
            const double ch = std::cos(0.5 * phi), sh = std::sin(0.5 * phi);
            cplx acc{0.0, 0.0};
            for (std::size_t r = 0; r < ncirc; ++r) {
                const double sn = sh * half_cos[r] - ch * half_sin[r];
                const double cs = ch * half_cos[r] + sh * half_sin[r];
                if (std::abs(sn) < 1e-14) {
                    acc = ring[r];
                    break;
                }
                const double sign = (r % 2 == 0) ? 1.0 : -1.0;
                acc += ring[r] * (sign * s_common * cs / (static_cast<double>(ncirc) * sn));
            }
            chi[a * nb + b] = acc;
        }
    });
    const CharacteristicFunction cf(dual.lambda, dual.mu, t.hbar(), std::move(chi));
    return wigner_from_characteristic(cf, target);
}

WignerFunction wigner_from_tomogram(const Tomogram& t) {
    const std::size_t n = t.nu().count / 2;
    const double step = 2.0 * std::abs(t.nu().step);
    return wigner_from_tomogram(t, {Axis::centered(step, n), Axis::centered(step, n)});
}

} // namespace phasekit
