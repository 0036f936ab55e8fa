#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ergolab/numeric.hpp"

namespace ergolab::detail {

/// P(j/M) = sum_m coeffs[m] e(m j / M) for j in [0, M); requires M >= coeffs.size().
std::vector<Complex> trig_grid(std::span<const Complex> coeffs, std::size_t grid_size);

/// out[n] = sum_{m < len(b)} b[m] * c[n + m] for n in [0, out_len); c must hold
/// at least out_len + len(b) - 1 values.
std::vector<Complex> correlate(std::span<const Complex> b, std::span<const Complex> c, std::size_t out_len);

}  // namespace ergolab::detail
