#include "expramsey/nat.hpp"

#include "expramsey/errors.hpp"
#include "expramsey/limits.hpp"

#include <climits>

namespace expramsey {

void Limits::validate() const
{
    if (value_bit_cap == 0 || exponent_direct_bit_cap == 0 || lambda_multiplicity_bit_cap == 0
        || enumeration_budget == 0 || factorization_trial_bound == 0)
        throw InvalidArgument("all limits must be at least 1");
}

std::size_t bit_length(const Nat& n)
{
    if (n == 0)
        return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Nat parse_nat(std::string_view text)
{
    if (text.empty())
        throw InvalidArgument("empty number");
    for (char c : text)
        if (c < '0' || c > '9')
            throw InvalidArgument("not a nonnegative decimal integer: '" + std::string(text) + "'");
    return Nat(std::string(text), 10);
}

std::string to_decimal(const Nat& n)
{
    return n.get_str(10);
}

unsigned long to_ulong(const Nat& n, const char* what)
{
    if (n < 0 || !n.fits_ulong_p())
        throw CapExceeded(std::string(what) + " does not fit a machine word");
    return n.get_ui();
}

Nat pow(const Nat& base, const Nat& exponent)
{
    Nat result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), to_ulong(exponent, "exponent"));
    return result;
}

std::optional<Nat> exact_root(const Nat& n, unsigned long k)
{
    Nat root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0)
        return root;
    return std::nullopt;
}

Factorization factorize(const Nat& n, std::uint64_t trial_bound)
{
    if (n < 1)
        throw InvalidArgument("factorize expects n >= 1");
    Factorization out;
    Nat rest = n;

    auto strip = [&](unsigned long d) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), d))
            return;
        Nat multiplicity = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++multiplicity;
        }
        out.emplace_back(Nat(d), multiplicity);
    };

    strip(2);
    const unsigned long bound = trial_bound > ULONG_MAX ? ULONG_MAX : static_cast<unsigned long>(trial_bound);
    unsigned long d = 3;
    for (; d <= bound; d += 2) {
        if (Nat(d) * d > rest)
            break;
        strip(d);
    }
    if (rest > 1) {
        // rest has no divisor below d; it is prime when d^2 > rest.
        if (Nat(d) * d <= rest)
            throw FactorizationBudgetExceeded("cannot factor " + to_decimal(n)
                + " with trial divisors up to " + std::to_string(trial_bound));
        out.emplace_back(rest, Nat(1));
    }
    return out;
}

} // namespace expramsey
