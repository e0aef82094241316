#include "phasekit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace phasekit::fft {
namespace {

enum class Kind { c2c_forward, c2c_backward, r2c, c2r };

struct PlanKey {
    Kind kind;
    std::size_t n, howmany, istride, idist, ostride, odist;
    auto tie() const { return std::tie(kind, n, howmany, istride, idist, ostride, odist); }
    bool operator<(const PlanKey& o) const { return tie() < o.tie(); }
};

// Planner calls are not thread-safe in FFTW; execution with the new-array
// interface is. Plans live for the whole process.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(const PlanKey& key) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_plan plan = make(key);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    static fftw_plan make(const PlanKey& k) {
        const int n = static_cast<int>(k.n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        const std::size_t span = (k.howmany - 1) * k.idist + (k.n - 1) * k.istride + 1;
        const std::size_t ospan = (k.howmany - 1) * k.odist + (k.n - 1) * k.ostride + 1;
        const int howmany = static_cast<int>(k.howmany);
        const int is = static_cast<int>(k.istride), id = static_cast<int>(k.idist);
        const int os = static_cast<int>(k.ostride), od = static_cast<int>(k.odist);
        fftw_plan plan = nullptr;
        switch (k.kind) {
        case Kind::c2c_forward:
        case Kind::c2c_backward: {
            auto* buf = fftw_alloc_complex(span);
            plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, is, id, buf, nullptr, os, od,
                                      k.kind == Kind::c2c_forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      flags);
            fftw_free(buf);
            break;
        }
        case Kind::r2c: {
            auto* in = fftw_alloc_real(span);
            auto* out = fftw_alloc_complex(ospan);
            plan = fftw_plan_many_dft_r2c(1, &n, howmany, in, nullptr, is, id, out, nullptr, os, od,
                                          flags);
            fftw_free(in);
            fftw_free(out);
            break;
        }
        case Kind::c2r: {
            auto* in = fftw_alloc_complex(span);
            auto* out = fftw_alloc_real(ospan);
            plan = fftw_plan_many_dft_c2r(1, &n, howmany, in, nullptr, is, id, out, nullptr, os, od,
                                          flags);
            fftw_free(in);
            fftw_free(out);
            break;
        }
        }
        return plan;
    }

    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

void forward(std::span<cplx> data) {
    if (data.empty()) return;
    auto plan = cache().get({Kind::c2c_forward, data.size(), 1, 1, data.size(), 1, data.size()});
    fftw_execute_dft(plan, as_fftw(data.data()), as_fftw(data.data()));
}

void backward(std::span<cplx> data) {
    if (data.empty()) return;
    auto plan = cache().get({Kind::c2c_backward, data.size(), 1, 1, data.size(), 1, data.size()});
    fftw_execute_dft(plan, as_fftw(data.data()), as_fftw(data.data()));
}

void r2c_rows(const double* in, cplx* out, std::size_t rows, std::size_t cols) {
    const std::size_t half = cols / 2 + 1;
    auto plan = cache().get({Kind::r2c, cols, rows, 1, cols, 1, half});
    fftw_execute_dft_r2c(plan, const_cast<double*>(in), as_fftw(out));
}

void c2r_rows(cplx* in, double* out, std::size_t rows, std::size_t cols) {
    const std::size_t half = cols / 2 + 1;
    auto plan = cache().get({Kind::c2r, cols, rows, 1, half, 1, cols});
    fftw_execute_dft_c2r(plan, as_fftw(in), out);
}

void r2c_cols(const double* in, cplx* out, std::size_t rows, std::size_t cols) {
    auto plan = cache().get({Kind::r2c, rows, cols, cols, 1, cols, 1});
    fftw_execute_dft_r2c(plan, const_cast<double*>(in), as_fftw(out));
}

void c2r_cols(cplx* in, double* out, std::size_t rows, std::size_t cols) {
    auto plan = cache().get({Kind::c2r, rows, cols, cols, 1, cols, 1});
    fftw_execute_dft_c2r(plan, as_fftw(in), out);
}

} // namespace phasekit::fft
