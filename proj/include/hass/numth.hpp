#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hass/bigint.hpp"
#include "hass/rng.hpp"

namespace hass::numth {

struct PrimePower {
    BigInt p;
    unsigned alpha = 1;

    bool operator==(const PrimePower&) const = default;
};

// Group parameters for the token groups: a prime q = u * prod(p_i) + 1
// together with the full factorization of m = q - 1. The base primes are
// distinct; r (the number of distinct prime factors of m) is at least eta.
struct GroupParams {
    unsigned eta = 0;                  // number of base primes
    std::vector<BigInt> base_primes;   // p_1 .. p_eta, distinct
    BigInt cofactor = 1;               // u >= 1
    BigInt q;                          // prime modulus
    std::vector<PrimePower> m_factors; // factorization of m = q - 1

    BigInt m() const { return q - 1; }
    unsigned r() const { return static_cast<unsigned>(m_factors.size()); }

    bool operator==(const GroupParams&) const = default;
};

// base^exponent mod modulus by square-and-multiply; exponent 0 gives 1.
BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus);

BigInt mod_inverse(const BigInt& a, const BigInt& modulus);

// Deterministic trial division for small inputs, Miller-Rabin with 64
// fixed-derivation rounds above the threshold.
bool is_prime(const BigInt& n);

// q - 1 for prime q; rejects composite input.
BigInt totient_of_prime(const BigInt& q);

// Unique residue mod the product of the (pairwise coprime) moduli.
BigInt crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues);

// Setup step: eta = ell distinct primes of prime_bits bits, then search
// u = 1, 2, ... until q = u * prod(p_i) + 1 is prime. u stays below
// kMaxCofactor so factoring m reduces to trial division of u.
GroupParams gen_group_params(unsigned ell, unsigned prime_bits, std::uint64_t seed);

// Same search but with explicit base primes (toy instances in tests and
// docs use this; gen_group_params cannot hit e.g. {2,3}).
GroupParams group_params_from_primes(const std::vector<BigInt>& primes);

// Invariant check used by tests and by JSON input validation.
void validate_group_params(const GroupParams& g);

inline constexpr std::uint64_t kMaxCofactor = 1000000;

} // namespace hass::numth
