#pragma once

#include <cstdint>
#include <string_view>

namespace ergolab {

/// Cap on the number of elementary products a single kernel may evaluate.
struct Budget {
  std::uint64_t max_terms = 100'000'000;

  /// Throws BudgetError when terms exceeds the cap.
  void require(std::uint64_t terms, std::string_view what) const;
};

/// 10^8 terms, or the value of ERGOLAB_BUDGET when it parses as a positive integer.
Budget default_budget();

}  // namespace ergolab
