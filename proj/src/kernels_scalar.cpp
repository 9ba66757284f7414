#include "lpembed/kernels.hpp"

#include <cmath>
#include <limits>

namespace lpembed::kernels {

namespace {

double dot_ref(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_ref(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_ref(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double l1_norm_ref(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

double min_positive_ref(const double* x, std::size_t n) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > 0.0 && x[i] < m) m = x[i];
    return m;
}

void log_ref(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
}

void spmv_ref(const CsrView& a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.n; ++i) {
        double acc = 0.0;
        for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            acc += a.values[k] * x[a.col_idx[k]];
        y[i] = acc;
    }
}

}  // namespace

const Ops scalar_ops = {dot_ref,       axpy_ref, scale_ref, sum_ref, l1_norm_ref,
                        min_positive_ref, log_ref,  spmv_ref,  "scalar"};

}  // namespace lpembed::kernels
