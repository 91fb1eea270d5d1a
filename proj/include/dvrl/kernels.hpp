#pragma once
// Double-precision kernels for the dense inner loops. A scalar reference
// implementation always exists; vector variants (AVX2 on x86-64, NEON on
// aarch64) are selected once at startup. The env var DVRL_KERNELS
// ("scalar", "avx2", "neon") forces a backend, mainly for equivalence tests.

#include <cstddef>

namespace dvrl::kernels {

struct Ops {
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x[i] *= a
    void (*scale)(double* x, double a, std::size_t n);
    // y[i] += x[i]
    void (*add)(const double* x, double* y, std::size_t n);
    // x[i] = max(x[i], 0)
    void (*relu)(double* x, std::size_t n);
    // g[i] = act[i] > 0 ? g[i] : 0
    void (*relu_mask)(const double* act, double* g, std::size_t n);
};

const Ops& scalar_ops();

#if defined(__x86_64__)
bool avx2_available();
const Ops& avx2_ops();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

// Runtime-selected backend (cached after first call).
const Ops& ops();
const char* backend_name();

} // namespace dvrl::kernels
