#include "mor/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

namespace mor::kernels {

namespace {

std::atomic<bool> g_force_serial{[] {
  const char* v = std::getenv("MOR_KERNELS_SERIAL");
  return v != nullptr && v[0] == '1';
}()};

}  // namespace

void set_force_serial(bool on) { g_force_serial.store(on, std::memory_order_relaxed); }
bool force_serial() { return g_force_serial.load(std::memory_order_relaxed); }

namespace serial {

void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c + i * m;
    std::fill(ci, ci + m, 0.0);
    const double* ai = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = ai[p];
      const double* bp = b + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < k; ++i) {
    double* ci = c + i * m;
    std::fill(ci, ci + m, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      const double av = a[p * k + i];
      const double* bp = b + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a + i * m;
    double* ci = c + i * k;
    for (std::size_t j = 0; j < k; ++j) {
      const double* bj = b + j * m;
      double s = 0.0;
      for (std::size_t p = 0; p < m; ++p) s += ai[p] * bj[p];
      ci[j] = s;
    }
  }
}

void relu(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_grad(const double* x, const double* dy, double* dx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = logits + i * c;
    double* pi = p + i * c;
    double mx = li[0];
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, li[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      pi[j] = std::exp(li[j] - mx);
      sum += pi[j];
    }
    const double inv = 1.0 / sum;
    for (std::size_t j = 0; j < c; ++j) pi[j] *= inv;
  }
}

}  // namespace serial

namespace omp {

void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c + i * m;
    std::fill(ci, ci + m, 0.0);
    const double* ai = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = ai[p];
      const double* bp = b + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < k; ++i) {
    double* ci = c + i * m;
    std::fill(ci, ci + m, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      const double av = a[p * k + i];
      const double* bp = b + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a + i * m;
    double* ci = c + i * k;
    for (std::size_t j = 0; j < k; ++j) {
      const double* bj = b + j * m;
      double s = 0.0;
      for (std::size_t p = 0; p < m; ++p) s += ai[p] * bj[p];
      ci[j] = s;
    }
  }
}

void relu(const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_grad(const double* x, const double* dy, double* dx, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    serial::softmax_rows(logits + i * c, p + i * c, 1, c);
  }
}

}  // namespace omp

void matmul(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m) {
  if (!force_serial() && n * k * m >= kParallelGrain) {
    omp::matmul(a, b, c, n, k, m);
  } else {
    serial::matmul(a, b, c, n, k, m);
  }
}

void matmul_at_b(const double* a, const double* b, double* c, std::size_t n, std::size_t k,
                 std::size_t m) {
  if (!force_serial() && n * k * m >= kParallelGrain) {
    omp::matmul_at_b(a, b, c, n, k, m);
  } else {
    serial::matmul_at_b(a, b, c, n, k, m);
  }
}

void matmul_a_bt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
                 std::size_t k) {
  if (!force_serial() && n * k * m >= kParallelGrain) {
    omp::matmul_a_bt(a, b, c, n, m, k);
  } else {
    serial::matmul_a_bt(a, b, c, n, m, k);
  }
}

void relu(const double* x, double* y, std::size_t n) {
  if (!force_serial() && n >= kParallelGrain) {
    omp::relu(x, y, n);
  } else {
    serial::relu(x, y, n);
  }
}

void relu_grad(const double* x, const double* dy, double* dx, std::size_t n) {
  if (!force_serial() && n >= kParallelGrain) {
    omp::relu_grad(x, dy, dx, n);
  } else {
    serial::relu_grad(x, dy, dx, n);
  }
}

void softmax_rows(const double* logits, double* p, std::size_t n, std::size_t c) {
  if (!force_serial() && n * c >= kParallelGrain) {
    omp::softmax_rows(logits, p, n, c);
  } else {
    serial::softmax_rows(logits, p, n, c);
  }
}

}  // namespace mor::kernels
