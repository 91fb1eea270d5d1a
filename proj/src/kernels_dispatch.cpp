#include "dvrl/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dvrl::kernels {

namespace {

struct Selection {
    const Ops* ops;
    const char* name;
};

Selection select() {
    const char* forced = std::getenv("DVRL_KERNELS");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return {&scalar_ops(), "scalar"};
#if defined(__x86_64__)
        if (std::strcmp(forced, "avx2") == 0 && avx2_available())
            return {&avx2_ops(), "avx2"};
#endif
#if defined(__aarch64__)
        if (std::strcmp(forced, "neon") == 0) return {&neon_ops(), "neon"};
#endif
        return {&scalar_ops(), "scalar"};
    }
#if defined(__x86_64__)
    if (avx2_available()) return {&avx2_ops(), "avx2"};
#endif
#if defined(__aarch64__)
    return {&neon_ops(), "neon"};
#endif
    return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

} // namespace

const Ops& ops() { return *selection().ops; }

const char* backend_name() { return selection().name; }

} // namespace dvrl::kernels
