// NEON variants for aarch64. float64x2 lanes; tails handled scalar.

#include "dvrl/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace dvrl::kernels {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    }
    double out = vaddvq_f64(acc);
    for (; i < n; ++i) out += x[i] * y[i];
    return out;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), va));
    }
    for (; i < n; ++i) x[i] *= a;
}

void add_neon(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += x[i];
}

void relu_neon(double* x, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmaxq_f64(vld1q_f64(x + i), zero));
    }
    for (; i < n; ++i) {
        if (x[i] < 0.0) x[i] = 0.0;
    }
}

void relu_mask_neon(const double* act, double* g, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t mask = vcgtq_f64(vld1q_f64(act + i), zero);
        float64x2_t vg = vld1q_f64(g + i);
        vst1q_f64(g + i, vreinterpretq_f64_u64(
                             vandq_u64(vreinterpretq_u64_f64(vg), mask)));
    }
    for (; i < n; ++i) {
        if (act[i] <= 0.0) g[i] = 0.0;
    }
}

} // namespace

const Ops& neon_ops() {
    static const Ops ops{dot_neon, axpy_neon, scale_neon,
                         add_neon, relu_neon, relu_mask_neon};
    return ops;
}

} // namespace dvrl::kernels

#endif // __aarch64__
