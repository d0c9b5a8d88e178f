#include "lazysp/kernels.hpp"

namespace lazysp::kernels {

void rank1_update(std::span<double> m, std::size_t n, std::span<const double> col, std::span<const double> row,
                  double scale) {
  const auto rows = static_cast<long>(n);
  // Small matrices are cheaper without a parallel region.
#pragma omp parallel for schedule(static) if (n >= 256)
  for (long x = 0; x < rows; ++x) {
    const double cx = scale * col[static_cast<std::size_t>(x)];
    if (cx == 0.0) continue;
    double* mr = m.data() + static_cast<std::size_t>(x) * n;
#pragma omp simd
    for (std::size_t y = 0; y < n; ++y) mr[y] += cx * row[y];
  }
}

void rank1_update_serial(std::span<double> m, std::size_t n, std::span<const double> col,
                         std::span<const double> row, double scale) {
  for (std::size_t x = 0; x < n; ++x) {
    const double cx = scale * col[x];
    if (cx == 0.0) continue;
    for (std::size_t y = 0; y < n; ++y) m[x * n + y] += cx * row[y];
  }
}

}  // namespace lazysp::kernels
