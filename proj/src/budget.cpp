#include "diffpow/budget.hpp"

#include "diffpow/poly.hpp"

namespace diffpow {

namespace {
thread_local int64_t g_remaining = BudgetScope::kDefaultSteps;
thread_local int64_t g_used = 0;
}  // namespace

BudgetScope::BudgetScope(int64_t steps) : saved_remaining_(g_remaining), saved_used_(g_used) {
    g_remaining = steps;
    g_used = 0;
}

BudgetScope::~BudgetScope() {
    g_remaining = saved_remaining_;
    g_used = saved_used_;
}

void BudgetScope::charge(int64_t n) {
    g_used += n;
    g_remaining -= n;
    if (g_remaining < 0) throw ResourceError("step budget exceeded");
}

int64_t BudgetScope::used() { return g_used; }

}  // namespace diffpow
