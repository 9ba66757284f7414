#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Hot streaming kernels used by the walk operators, iterative solvers and
// the log transform. Each kernel has a scalar reference implementation and
// an AVX2 variant; the active set is chosen once at startup from CPUID and
// can be overridden for testing.

namespace lpembed::kernels {

struct CsrView {
    const std::int64_t* row_ptr;  // length n+1
    const std::int32_t* col_idx;  // length nnz
    const double* values;         // length nnz
    std::size_t n;
};

using DotFn = double (*)(const double*, const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);
using ScaleFn = void (*)(double, double*, std::size_t);
using SumFn = double (*)(const double*, std::size_t);
using L1NormFn = double (*)(const double*, std::size_t);
using MinPositiveFn = double (*)(const double*, std::size_t);
using LogFn = void (*)(const double*, double*, std::size_t);
using SpmvFn = void (*)(const CsrView&, const double*, double*);

struct Ops {
    DotFn dot;
    AxpyFn axpy;
    ScaleFn scale;
    SumFn sum;
    L1NormFn l1_norm;
    MinPositiveFn min_positive;  // min over strictly positive entries; +inf if none
    LogFn log;                   // elementwise natural log, all inputs > 0
    SpmvFn spmv;                 // y = A x for CSR A
    std::string_view name;
};

// Reference implementations (always available).
extern const Ops scalar_ops;

// AVX2 implementations; null members on builds without x86 support.
extern const Ops avx2_ops;
bool avx2_available();

// Active dispatch table. Defaults to the best supported variant.
const Ops& active();
void force_variant(std::string_view name);  // "scalar", "avx2", or "auto"

// Convenience wrappers over active().
inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double l1_norm(const double* x, std::size_t n) { return active().l1_norm(x, n); }
inline double min_positive(const double* x, std::size_t n) { return active().min_positive(x, n); }
inline void log_positive(const double* x, double* y, std::size_t n) { active().log(x, y, n); }
inline void spmv(const CsrView& a, const double* x, double* y) { active().spmv(a, x, y); }

}  // namespace lpembed::kernels
