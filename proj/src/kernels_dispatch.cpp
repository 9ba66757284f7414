#include "lpembed/kernels.hpp"

#include <stdexcept>
#include <string>

namespace lpembed::kernels {

namespace {
const Ops* pick_auto() { return avx2_available() ? &avx2_ops : &scalar_ops; }
const Ops* g_active = pick_auto();
}  // namespace

const Ops& active() { return *g_active; }

void force_variant(std::string_view name) {
    if (name == "auto") {
        g_active = pick_auto();
    } else if (name == "scalar") {
        g_active = &scalar_ops;
    } else if (name == "avx2") {
        if (!avx2_available()) throw std::runtime_error("avx2 kernels not supported on this CPU");
        g_active = &avx2_ops;
    } else {
        throw std::invalid_argument("unknown kernel variant: " + std::string(name));
    }
}

}  // namespace lpembed::kernels
