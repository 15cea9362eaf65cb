#include "interval.hpp"

namespace expramsey::detail {

BigFloat::BigFloat(mpfr_prec_t precision)
{
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::~BigFloat()
{
    mpfr_clear(value_);
}

Interval Interval::zero(mpfr_prec_t precision)
{
    return Interval(precision);
}

Interval Interval::of(const Nat& n, mpfr_prec_t precision)
{
    Interval out(precision);
    mpfr_set_z(out.lo.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi.get(), n.get_mpz_t(), MPFR_RNDU);
    return out;
}

Interval Interval::log2_of(const Nat& n, mpfr_prec_t precision)
{
    Interval value = of(n, precision);
    return value.log2();
}

Interval& Interval::mul_nonneg(const Interval& other)
{
    mpfr_mul(lo.get(), lo.get(), other.lo.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), hi.get(), other.hi.get(), MPFR_RNDU);
    return *this;
}

Interval& Interval::add(const Interval& other)
{
    mpfr_add(lo.get(), lo.get(), other.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), other.hi.get(), MPFR_RNDU);
    return *this;
}

Interval Interval::log2() const
{
    Interval out(mpfr_get_prec(lo.get()));
    mpfr_log2(out.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log2(out.hi.get(), hi.get(), MPFR_RNDU);
    return out;
}

Interval Interval::log2_sum_exp2(const std::vector<Interval>& terms)
{
    const mpfr_prec_t precision = mpfr_get_prec(terms.front().lo.get());
    // Factor out the largest term: log2(sum 2^{x_i}) = t + log2(sum 2^{x_i - t}).
    BigFloat top_lo(precision);
    BigFloat top_hi(precision);
    mpfr_set(top_lo.get(), terms.front().lo.get(), MPFR_RNDD);
    mpfr_set(top_hi.get(), terms.front().hi.get(), MPFR_RNDU);
    for (const auto& t : terms) {
        mpfr_max(top_lo.get(), top_lo.get(), t.lo.get(), MPFR_RNDD);
        mpfr_max(top_hi.get(), top_hi.get(), t.hi.get(), MPFR_RNDU);
    }
    Interval sum(precision);
    BigFloat scratch(precision);
    for (const auto& t : terms) {
        mpfr_sub(scratch.get(), t.lo.get(), top_lo.get(), MPFR_RNDD);
        mpfr_exp2(scratch.get(), scratch.get(), MPFR_RNDD);
        mpfr_add(sum.lo.get(), sum.lo.get(), scratch.get(), MPFR_RNDD);
        mpfr_sub(scratch.get(), t.hi.get(), top_hi.get(), MPFR_RNDU);
        mpfr_exp2(scratch.get(), scratch.get(), MPFR_RNDU);
        mpfr_add(sum.hi.get(), sum.hi.get(), scratch.get(), MPFR_RNDU);
    }
    Interval out = sum.log2();
    mpfr_add(out.lo.get(), out.lo.get(), top_lo.get(), MPFR_RNDD);
    mpfr_add(out.hi.get(), out.hi.get(), top_hi.get(), MPFR_RNDU);
    return out;
}

bool Interval::strictly_below(const Interval& other) const
{
    return mpfr_less_p(hi.get(), other.lo.get()) != 0;
}

bool Interval::floor_determined(Nat& floor_value) const
{
    Nat a;
    Nat b;
    mpfr_get_z(a.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (a != b)
        return false;
    floor_value = a;
    return true;
}

} // namespace expramsey::detail
