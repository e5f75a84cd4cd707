#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hass/bigint.hpp"
#include "hass/exec.hpp"

namespace hass::poly {

struct PrimePowerU64 {
    std::uint64_t p = 0;
    unsigned alpha = 1;
    bool operator==(const PrimePowerU64&) const = default;
};

// Composite modulus with its factorization; r > 1 distinct primes, m >= 6.
struct ModulusSpec {
    std::uint64_t m = 0;
    std::vector<PrimePowerU64> factors;

    unsigned r() const { return static_cast<unsigned>(factors.size()); }
    bool squarefree() const;

    static ModulusSpec from_m(std::uint64_t m);
    static ModulusSpec from_factors(const std::vector<PrimePowerU64>& factors);

    bool operator==(const ModulusSpec&) const = default;
};

// One prime's digit test: weight(z) = n (mod p^digit_count) holds iff for
// every j < digit_count the base-p digit of weight(z) at position j equals
// target_digits[j]. The digit is extracted as e_{p^j}(z) = C(weight, p^j)
// mod p, and each match is detected by 1 - (e - c_j)^phi mod p^alpha.
struct DigitTest {
    std::uint64_t prime = 0;
    unsigned alpha = 1;
    std::uint64_t prime_power = 0;   // p^alpha, the ring the test lives in
    std::uint64_t phi = 0;           // phi(p^alpha)
    unsigned digit_count = 0;        // a_i
    std::vector<std::uint64_t> digit_positions; // p^j for j < a_i
    std::vector<std::uint64_t> target_digits;   // base-p digits of n
    std::uint64_t crt_multiplier = 0;           // 1 mod p^alpha, 0 mod the others

    bool operator==(const DigitTest&) const = default;
};

// The multilinear polynomial of the construction. It is symmetric, so the
// multilinear form is fully described by one coefficient per degree: every
// size-l index tuple carries coeff_by_degree[l].
struct IntersectionPolynomial {
    unsigned n = 0;
    ModulusSpec modulus;
    std::vector<DigitTest> digit_tests;       // symmetric form
    std::vector<std::uint64_t> coeff_by_degree; // multilinear form, reduced mod m
    unsigned degree = 0;
    std::uint64_t degree_budget = 0; // sum_i phi(p_i^alpha_i) * sum_{j<a_i} p_i^j

    std::uint64_t coeff(unsigned l) const { return l < coeff_by_degree.size() ? coeff_by_degree[l] : 0; }

    bool operator==(const IntersectionPolynomial&) const = default;
};

struct EvalResult {
    std::uint64_t value = 0;                      // mod m
    std::vector<std::uint64_t> per_prime_power;   // value mod p_i^{alpha_i}, in factor order
};

struct ContractReport {
    bool pass = false;
    bool zero_set_ok = false;
    bool residues_ok = false;
    std::uint64_t inputs_checked = 0;
    long long witness_mask = -1;   // smallest violating input, -1 if none
    std::string witness_reason;
    unsigned degree = 0;
    std::uint64_t degree_budget = 0;
    double dimension_root = 0.0;   // n^{1/r}, the O(n^{1/r}) comparison value
    double millis = 0.0;
};

// Builds the polynomial for n variables over the given modulus: per prime,
// the smallest digit budgets a_i (balanced) with prod p_i^{a_i} > n, digit
// tests as above, CRT combination across primes, and the multilinear form
// recovered by finite differences of the weight function.
IntersectionPolynomial build_polynomial(unsigned n, const ModulusSpec& spec);

// Value of the multilinear form on a 0/1 input given as a bitmask.
EvalResult eval(const IntersectionPolynomial& poly, std::uint64_t z_mask);
EvalResult eval(const IntersectionPolynomial& poly, const std::vector<int>& z);

// Value via the symmetric (digit-test + CRT) route; must agree with eval.
std::uint64_t eval_symmetric(const IntersectionPolynomial& poly, std::uint64_t z_mask);

// Value mod m on any input of the given Hamming weight.
std::uint64_t value_at_weight(const IntersectionPolynomial& poly, unsigned weight);

// Unreduced integer evaluation sum_l coeff[l] * C(weight, l); the B-entry
// count of the set-system lives here.
BigInt integer_value_at_weight(const IntersectionPolynomial& poly, unsigned weight);

// Exhaustive scan of all 2^n inputs: zero-set must be exactly {all-ones}
// and every per-prime-power residue must lie in {0,1}. Never asserts;
// failures are report content with a witness.
ContractReport verify_contract(const IntersectionPolynomial& poly, Exec exec = Exec::Parallel);

// Exhaustive-evaluation budget (default 20 variables; HASS_BUDGET_OVERRIDE
// raises it).
unsigned contract_budget();

} // namespace hass::poly
