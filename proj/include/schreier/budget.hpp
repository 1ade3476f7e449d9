#ifndef SCHREIER_BUDGET_HPP
#define SCHREIER_BUDGET_HPP

#include <cstdint>
#include <cstdlib>
#include <string>

#include "schreier/errors.hpp"

namespace schreier {

// Work meter shared by the potentially exponential searches (family
// membership, chain enumeration, norming-set closure, ...).  Each elementary
// step calls tick(); crossing the limit raises BudgetExceeded so callers get
// an explicit failure instead of an open-ended run.
class Budget {
  public:
    static constexpr std::uint64_t kDefaultLimit = 20'000'000;

    Budget() : limit_(default_limit()) {}
    explicit Budget(std::uint64_t limit) : limit_(limit) {}

    void tick(std::uint64_t cost = 1) {
        used_ += cost;
        if (used_ > limit_)
            throw BudgetExceeded("work budget exhausted (" + std::to_string(limit_) +
                                 " steps); raise --budget or SCHREIER_BUDGET");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

    // Environment override, read once per process.
    static std::uint64_t default_limit() {
        static const std::uint64_t v = [] {
            if (const char* s = std::getenv("SCHREIER_BUDGET")) {
                char* end = nullptr;
                unsigned long long parsed = std::strtoull(s, &end, 10);
                if (end && *end == '\0' && parsed > 0) return (std::uint64_t)parsed;
            }
            return kDefaultLimit;
        }();
        return v;
    }

  private:
    std::uint64_t used_ = 0;
    std::uint64_t limit_;
};

} // namespace schreier

#endif
