#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Thin deterministic wrapper over FFTW. Transforms are unnormalized:
// forward uses exp(-2 pi i jk/n), backward exp(+2 pi i jk/n).
namespace phasekit::fft {

using cplx = std::complex<double>;

void forward(std::span<cplx> data);
void backward(std::span<cplx> data);

// Batched real transforms over a row-major matrix of shape rows x cols.
// *_rows transforms each row (length cols); the spectrum is rows x (cols/2+1).
// *_cols transforms each column (length rows); the spectrum is
// (rows/2+1) x cols. c2r variants overwrite their input.
void r2c_rows(const double* in, cplx* out, std::size_t rows, std::size_t cols);
void c2r_rows(cplx* in, double* out, std::size_t rows, std::size_t cols);
void r2c_cols(const double* in, cplx* out, std::size_t rows, std::size_t cols);
void c2r_cols(cplx* in, double* out, std::size_t rows, std::size_t cols);

// Signed frequency index of DFT bin k for length n: k for k < n/2, k - n otherwise.
inline long signed_index(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

} // namespace phasekit::fft
