#pragma once

#include <cstddef>
#include <span>

namespace lazysp::kernels {

// Dense row-major n x n update  M[x][y] += scale * col[x] * row[y].
// `col` and `row` must not alias M.
void rank1_update(std::span<double> m, std::size_t n, std::span<const double> col, std::span<const double> row,
                  double scale);

// Single-threaded reference; bitwise identical to rank1_update.
void rank1_update_serial(std::span<double> m, std::size_t n, std::span<const double> col,
                         std::span<const double> row, double scale);

}  // namespace lazysp::kernels
