#include "hass/poly.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "hass/errors.hpp"

namespace hass::poly {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

bool ModulusSpec::squarefree() const {
    for (const auto& f : factors)
        if (f.alpha > 1) return false;
    return true;
}

ModulusSpec ModulusSpec::from_m(std::uint64_t m) {
    if (m < 6) throw InvalidArgument("ModulusSpec: m < 6");
    ModulusSpec spec;
    spec.m = m;
    std::uint64_t x = m;
    for (std::uint64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            unsigned a = 0;
            while (x % d == 0) {
                x /= d;
                ++a;
            }
            spec.factors.push_back({d, a});
        }
    }
    if (x > 1) spec.factors.push_back({x, 1});
    if (spec.r() < 2)
        throw UnsupportedModulus("ModulusSpec: m must have r > 1 distinct prime divisors");
    return spec;
}

ModulusSpec ModulusSpec::from_factors(const std::vector<PrimePowerU64>& factors) {
    std::uint64_t m = 1;
    for (const auto& f : factors) m *= ipow(f.p, f.alpha);
    ModulusSpec spec = from_m(m);
    if (spec.factors != factors)
        throw InvalidArgument("ModulusSpec: factor list does not match refactorization");
    return spec;
}

namespace {

// Balanced digit budgets: all a_i start at 1; while prod p_i^{a_i} <= n,
// bump the prime whose next power is smallest. Keeps max_i p_i^{a_i} (and
// with it the degree) near n^{1/r}.
std::vector<unsigned> choose_digit_budgets(unsigned n, const ModulusSpec& spec) {
    std::vector<unsigned> a(spec.factors.size(), 1);
    auto prod = [&] {
        unsigned __int128 r = 1;
        for (std::size_t i = 0; i < a.size(); ++i) r *= ipow(spec.factors[i].p, a[i]);
        return r;
    };
    while (prod() <= n) {
        std::size_t best = 0;
        std::uint64_t best_next = UINT64_MAX;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t next = ipow(spec.factors[i].p, a[i] + 1);
            if (next < best_next) {
                best_next = next;
                best = i;
            }
        }
        a[best] += 1;
    }
    return a;
}

constexpr unsigned kPrimePowerExpansionBudget = 16;

} // namespace

unsigned contract_budget() {
    if (const char* env = std::getenv("HASS_BUDGET_OVERRIDE")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return 20;
}

IntersectionPolynomial build_polynomial(unsigned n, const ModulusSpec& spec) {
    if (n < 1) throw InvalidArgument("build_polynomial: n < 1");
    if (spec.m < 6 || spec.r() < 2) throw UnsupportedModulus("build_polynomial: invalid modulus");
    if (!spec.squarefree() && n > kPrimePowerExpansionBudget)
        throw UnsupportedModulus(
            "build_polynomial: prime-power modulus supported only up to n = " +
            std::to_string(kPrimePowerExpansionBudget));

    IntersectionPolynomial poly;
    poly.n = n;
    poly.modulus = spec;

    const std::vector<unsigned> budgets = choose_digit_budgets(n, spec);

    // CRT multipliers: lambda_i = 1 mod p_i^{alpha_i}, 0 mod the others.
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& f = spec.factors[i];
        DigitTest t;
        t.prime = f.p;
        t.alpha = f.alpha;
        t.prime_power = ipow(f.p, f.alpha);
        t.phi = (f.p - 1) * ipow(f.p, f.alpha - 1);
        t.digit_count = budgets[i];
        std::uint64_t rest = spec.m / t.prime_power;
        // rest * (rest^{-1} mod p^alpha) is 1 mod p^alpha and 0 mod others.
        std::uint64_t inv = powmod(rest % t.prime_power, t.phi - 1, t.prime_power);
        t.crt_multiplier = mulmod(rest, inv, spec.m);
        std::uint64_t nn = n;
        for (unsigned j = 0; j < t.digit_count; ++j) {
            t.digit_positions.push_back(ipow(f.p, j));
            t.target_digits.push_back(nn % f.p);
            nn /= f.p;
        }
        poly.digit_tests.push_back(std::move(t));
    }

    // Weight function F(w): the CRT combination of the per-prime digit-test
    // indicators. Because prod p_i^{a_i} > n and 0 <= weight <= n, F(w) = 0
    // iff w = n, i.e. iff the input is all-ones.
    std::vector<std::uint64_t> weight_value(n + 1);
    for (unsigned w = 0; w <= n; ++w) {
        std::uint64_t v = 0;
        for (const auto& t : poly.digit_tests) {
            std::uint64_t span = ipow(t.prime, t.digit_count);
            std::uint64_t qi = (w % span == n % span) ? 0 : 1;
            v = (v + mulmod(qi, t.crt_multiplier, spec.m)) % spec.m;
        }
        weight_value[w] = v;
    }

    // Multilinear form by finite differences: the coefficient of any size-l
    // tuple is c_l = sum_j (-1)^{l-j} C(l,j) F(j), the unique multilinear
    // representation over Z_m (symmetric, so it depends on l only).
    poly.coeff_by_degree.assign(n + 1, 0);
    for (unsigned l = 0; l <= n; ++l) {
        BigInt acc = 0;
        BigInt binom = 1; // C(l, j)
        for (unsigned j = 0; j <= l; ++j) {
            BigInt term = binom * weight_value[j];
            if ((l - j) % 2 == 0)
                acc += term;
            else
                acc -= term;
            binom = binom * (l - j) / (j + 1);
        }
        BigInt red = acc % spec.m;
        if (red < 0) red += spec.m;
        poly.coeff_by_degree[l] = static_cast<std::uint64_t>(red);
    }

    poly.degree = 0;
    for (unsigned l = 0; l <= n; ++l)
        if (poly.coeff_by_degree[l] != 0) poly.degree = l;

    poly.degree_budget = 0;
    for (const auto& t : poly.digit_tests) {
        std::uint64_t span = 0;
        for (unsigned j = 0; j < t.digit_count; ++j) span += ipow(t.prime, j);
        poly.degree_budget += t.phi * span;
    }
    if (poly.degree > poly.degree_budget)
        throw Error("build_polynomial: degree exceeds construction budget");
    return poly;
}

std::uint64_t value_at_weight(const IntersectionPolynomial& poly, unsigned weight) {
    if (weight > poly.n) throw InvalidArgument("value_at_weight: weight > n");
    const std::uint64_t m = poly.modulus.m;
    // sum_l c_l * C(weight, l); the multilinear form collapses to binomials
    // because all 0/1 inputs of one weight hit the same number of tuples.
    std::uint64_t acc = 0;
    BigInt binom = 1;
    for (unsigned l = 0; l <= weight && l < poly.coeff_by_degree.size(); ++l) {
        std::uint64_t c = poly.coeff_by_degree[l];
        if (c != 0) acc = (acc + mulmod(c, static_cast<std::uint64_t>(binom % m), m)) % m;
        binom = binom * (weight - l) / (l + 1);
    }
    return acc;
}

BigInt integer_value_at_weight(const IntersectionPolynomial& poly, unsigned weight) {
    if (weight > poly.n) throw InvalidArgument("integer_value_at_weight: weight > n");
    BigInt acc = 0;
    BigInt binom = 1;
    for (unsigned l = 0; l <= weight && l < poly.coeff_by_degree.size(); ++l) {
        acc += binom * poly.coeff_by_degree[l];
        binom = binom * (weight - l) / (l + 1);
    }
    return acc;
}

EvalResult eval(const IntersectionPolynomial& poly, std::uint64_t z_mask) {
    if (poly.n < 64 && (z_mask >> poly.n) != 0)
        throw DimensionMismatch("eval: input mask wider than n");
    const unsigned w = static_cast<unsigned>(std::popcount(z_mask));
    EvalResult r;
    r.value = value_at_weight(poly, w);
    for (const auto& t : poly.digit_tests) r.per_prime_power.push_back(r.value % t.prime_power);
    return r;
}

EvalResult eval(const IntersectionPolynomial& poly, const std::vector<int>& z) {
    if (z.size() != poly.n) throw DimensionMismatch("eval: dimension mismatch");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] != 0 && z[i] != 1) throw InvalidArgument("eval: input not 0/1");
        if (z[i]) mask |= (1ULL << i);
    }
    return eval(poly, mask);
}

std::uint64_t eval_symmetric(const IntersectionPolynomial& poly, std::uint64_t z_mask) {
    const unsigned w = static_cast<unsigned>(std::popcount(z_mask));
    std::uint64_t v = 0;
    for (const auto& t : poly.digit_tests) {
        // Q_i = 1 - prod_j (1 - (e_{p^j}(z) - c_j)^{phi}) mod p^alpha, with
        // e_{p^j}(z) = C(w, p^j): the base-p digit of w via Lucas.
        std::uint64_t pa = t.prime_power;
        std::uint64_t prod = 1 % pa;
        for (unsigned j = 0; j < t.digit_count; ++j) {
            std::uint64_t pos = t.digit_positions[j];
            // C(w, p^j) mod p^alpha via exact binomial in BigInt.
            BigInt binom = 1;
            for (std::uint64_t i = 0; i < pos && i <= w; ++i) {
                binom = binom * (w - i) / (i + 1);
            }
            std::uint64_t e = pos > w ? 0 : static_cast<std::uint64_t>(binom % pa);
            std::uint64_t diff = (e + pa - (t.target_digits[j] % pa)) % pa;
            std::uint64_t indicator = (1 + pa - powmod(diff, t.phi, pa)) % pa;
            prod = mulmod(prod, indicator, pa);
        }
        std::uint64_t qi = (1 + pa - prod) % pa;
        v = (v + mulmod(qi, t.crt_multiplier, poly.modulus.m)) % poly.modulus.m;
    }
    return v;
}

ContractReport verify_contract(const IntersectionPolynomial& poly, Exec exec) {
    if (poly.n > contract_budget() || poly.n >= 63)
        throw BudgetExceeded("verify_contract: n exceeds exhaustive budget " +
                             std::to_string(std::min(contract_budget(), 62u)));
    const auto start = std::chrono::steady_clock::now();

    ContractReport report;
    report.degree = poly.degree;
    report.degree_budget = poly.degree_budget;
    report.dimension_root = std::pow(static_cast<double>(poly.n), 1.0 / poly.modulus.r());

    // Precompute the value per weight once; the scan still visits every
    // mask so a tampered coefficient is caught through value_at_weight's
    // dependence on the stored multilinear form.
    std::vector<std::uint64_t> by_weight(poly.n + 1);
    for (unsigned w = 0; w <= poly.n; ++w) by_weight[w] = value_at_weight(poly, w);

    const std::uint64_t total = 1ULL << poly.n;
    const std::uint64_t all_ones = total - 1;

    // Smallest violating mask per condition; total acts as the sentinel.
    long long zero_witness = static_cast<long long>(total);
    long long residue_witness = static_cast<long long>(total);

    auto scan_mask = [&](std::uint64_t mask, long long& zw, long long& rw) {
        const std::uint64_t v = by_weight[std::popcount(mask)];
        if ((v == 0) != (mask == all_ones) && static_cast<long long>(mask) < zw)
            zw = static_cast<long long>(mask);
        for (const auto& t : poly.digit_tests) {
            if (v % t.prime_power > 1 && static_cast<long long>(mask) < rw) {
                rw = static_cast<long long>(mask);
                break;
            }
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            long long zw = static_cast<long long>(total);
            long long rw = static_cast<long long>(total);
#pragma omp for nowait
            for (long long mask = 0; mask < static_cast<long long>(total); ++mask)
                scan_mask(static_cast<std::uint64_t>(mask), zw, rw);
#pragma omp critical
            {
                zero_witness = std::min(zero_witness, zw);
                residue_witness = std::min(residue_witness, rw);
            }
        }
    } else {
        for (std::uint64_t mask = 0; mask < total; ++mask)
            scan_mask(mask, zero_witness, residue_witness);
    }

    report.inputs_checked = total;
    report.zero_set_ok = zero_witness == static_cast<long long>(total);
    report.residues_ok = residue_witness == static_cast<long long>(total);
    report.pass = report.zero_set_ok && report.residues_ok;
    if (!report.pass) {
        report.witness_mask = std::min(zero_witness, residue_witness);
        report.witness_reason = zero_witness <= residue_witness ? "zero-set" : "residue-range";
    }
    report.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

} // namespace hass::poly
