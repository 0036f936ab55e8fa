#include "ergolab/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

void Budget::require(std::uint64_t terms, std::string_view what) const {
  if (terms > max_terms) {
    throw BudgetError(std::string(what) + ": " + std::to_string(terms) + " terms exceeds budget of " +
                      std::to_string(max_terms));
  }
}

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("ERGOLAB_BUDGET")) {
    std::uint64_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) b.max_terms = value;
  }
  return b;
}

}  // namespace ergolab
