#ifndef DIFFPOW_BUDGET_HPP
#define DIFFPOW_BUDGET_HPP

#include <cstdint>

namespace diffpow {

// Reduction-step budget. Long-running kernels charge steps against the
// active scope and throw ResourceError when it runs out, so a stuck
// computation fails loudly instead of hanging.
class BudgetScope {
public:
    static constexpr int64_t kDefaultSteps = 10'000'000;

    explicit BudgetScope(int64_t steps = kDefaultSteps);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

    static void charge(int64_t n = 1);
    static int64_t used();

private:
    int64_t saved_remaining_;
    int64_t saved_used_;
};

}  // namespace diffpow

#endif
