#pragma once

// Certified enclosures built on MPFR directed rounding. Internal to the core.

#include "expramsey/nat.hpp"

#include <mpfr.h>

#include <vector>

namespace expramsey::detail {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision);
    BigFloat(const BigFloat& other);
    BigFloat& operator=(const BigFloat&) = delete;
    ~BigFloat();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }

private:
    mpfr_t value_;
};

/// Closed interval [lo, hi] that is guaranteed to contain the true value.
struct Interval {
    BigFloat lo;
    BigFloat hi;

    explicit Interval(mpfr_prec_t precision) : lo(precision), hi(precision) {}

    static Interval zero(mpfr_prec_t precision);
    static Interval of(const Nat& n, mpfr_prec_t precision);
    /// log2(n) for n >= 1.
    static Interval log2_of(const Nat& n, mpfr_prec_t precision);

    /// Both operands must be nonnegative.
    Interval& mul_nonneg(const Interval& other);
    Interval& add(const Interval& other);

    /// log2 of an interval with lo >= 1.
    Interval log2() const;

    /// Enclosure of log2(sum_i 2^{x_i}) for x_i in the given intervals (nonempty).
    static Interval log2_sum_exp2(const std::vector<Interval>& terms);

    bool strictly_below(const Interval& other) const;
    /// floor(lo) == floor(hi); stores that integer.
    bool floor_determined(Nat& floor_value) const;
};

} // namespace expramsey::detail
