#pragma once

#include <cstdint>
#include <vector>

#include "hass/bigint.hpp"

namespace hass::counting {

// Polynomial with exact rational coefficients, indexed by power. The
// generating-function route needs exact arithmetic: P_n has fractional
// coefficients (e.g. x^2/2 at n = 3) and the final extraction must equal
// the integer sum formula exactly.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static RationalPoly monomial(std::size_t power, const BigRational& c);

    const BigRational& coeff(std::size_t power) const;
    int degree() const; // -1 for the zero polynomial

    RationalPoly operator*(const RationalPoly& rhs) const;
    RationalPoly operator+(const RationalPoly& rhs) const;

    bool operator==(const RationalPoly&) const = default;

private:
    void trim();
    std::vector<BigRational> coeffs_;
};

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Stirling numbers of the second kind via the standard recurrence.
BigInt stirling2(unsigned n, unsigned k);

// First-order Eulerian numbers: permutations of [n] with k ascents.
BigInt eulerian(unsigned n, unsigned k);

// Number of length-n strings over n symbols using exactly k distinct
// symbols: C(n,k) * k! * S2(n,k).
BigInt n_k(unsigned n, unsigned k);

// S(n) = sum_k C(n,k) (k! S2(n,k))^2: the cover-pair count.
BigInt s_of_n_sum(unsigned n);

// Touchard polynomial T_n(x) = sum_k S2(n,k) x^k.
RationalPoly touchard(unsigned n);

// Convolution polynomial P_n(x) = sum_k ((n-k)!/k!) S2(n,n-k) x^k.
RationalPoly convolution_poly(unsigned n);

// S(n) via n! [x^n](T_n(x) P_n(x)); must equal s_of_n_sum(n).
BigInt s_of_n_gf(unsigned n);

// S(n) > n^{1.5n}, compared as S(n)^2 > n^{3n} in exact integers.
bool growth_bound_check(unsigned n);

struct ShareAccounting {
    BigInt elements;  // 2 * C(ell, floor(ell/2)), two per run at the maximum
    double reference; // 2^{ell+1} / sqrt(pi * ell / 2), the o(1)-free asymptote
    double ratio;     // elements / reference
};

ShareAccounting max_share_elements(unsigned ell);

} // namespace hass::counting
