#pragma once

#include <cstddef>

// Dense kernels behind the autodiff ops. Every kernel has a serial reference
// implementation and an OpenMP variant; the dispatching entry points pick the
// parallel one above a work threshold. Parallelism is always across output
// rows, so each output element is accumulated by exactly one thread in the
// same order as the serial code — results are bit-identical.

namespace mor::kernels {

// When true, dispatchers always use the serial reference (used by tests and
// the benchmark). Also settable via env MOR_KERNELS_SERIAL=1.
void set_force_serial(bool on);
bool force_serial();

// Work threshold (multiply-accumulate count) above which the OpenMP variants
// are used.
inline constexpr std::size_t kParallelGrain = 1u << 15;

namespace serial {
// c[n x m] = a[n x k] * b[k x m]
void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m);
// c[k x m] = a^T * b with a stored [n x k], b [n x m]
void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m);
// c[n x k] = a * b^T with a stored [n x m], b [k x m]
void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k);
void relu(const double* x, double* y, std::size_t n);
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
// row-wise softmax of logits[n x c] into p[n x c] (max-shifted)
void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c);
}  // namespace serial

namespace omp {
void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m);
void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m);
void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k);
void relu(const double* x, double* y, std::size_t n);
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c);
}  // namespace omp

// Dispatching entry points.
void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m);
void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m);
void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k);
void relu(const double* x, double* y, std::size_t n);
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c);

}  // namespace mor::kernels
