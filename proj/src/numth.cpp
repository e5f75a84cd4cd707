#include "hass/numth.hpp"

#include <algorithm>
#include <map>

namespace hass::numth {

BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
    if (modulus < 2) throw InvalidArgument("mod_pow: modulus < 2");
    if (exponent < 0) throw InvalidArgument("mod_pow: negative exponent");
    BigInt b = base % modulus;
    if (b < 0) b += modulus;
    BigInt result = 1;
    BigInt e = exponent;
    while (e > 0) {
        if ((e & 1) != 0) result = (result * b) % modulus;
        b = (b * b) % modulus;
        e >>= 1;
    }
    return result;
}

namespace {

// Extended gcd: returns g, sets x with a*x = g (mod b-context use).
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    BigInt x1, y1;
    BigInt g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    BigInt x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

BigInt mod_inverse(const BigInt& a, const BigInt& modulus) {
    BigInt x, y;
    BigInt aa = a % modulus;
    if (aa < 0) aa += modulus;
    BigInt g = ext_gcd(aa, modulus, x, y);
    if (g != 1) throw InvalidArgument("mod_inverse: not invertible");
    BigInt r = x % modulus;
    if (r < 0) r += modulus;
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if ((n & 1) == 0) return false;

    // Trial division while the square fits in native words.
    if (n < (BigInt(1) << 32)) {
        const std::uint64_t v = static_cast<std::uint64_t>(n);
        for (std::uint64_t d = 3; d * d <= v; d += 2)
            if (v % d == 0) return false;
        return true;
    }

    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // 64 rounds with bases derived deterministically from n, so is_prime
    // stays a pure function.
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (unsigned w = 0; w < 4; ++w)
        h ^= static_cast<std::uint64_t>((n >> (64 * w)) & UINT64_MAX) + (h << 6) + (h >> 2);
    Rng rng(h);
    for (unsigned round = 0; round < 64; ++round) {
        BigInt a = rng.uniform_range(2, n - 2);
        if (!miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

BigInt totient_of_prime(const BigInt& q) {
    if (!is_prime(q)) throw InvalidArgument("totient_of_prime: composite input");
    return q - 1;
}

BigInt crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues) {
    if (residues.empty()) throw InvalidArgument("crt_combine: empty input");
    BigInt value = 0;
    BigInt modulus = 1;
    for (const auto& [r, m] : residues) {
        if (m < 1) throw InvalidArgument("crt_combine: modulus < 1");
        BigInt x, y;
        BigInt g = ext_gcd(modulus, m, x, y);
        if (g != 1) throw NonCoprimeModuli("crt_combine: moduli not pairwise coprime");
        BigInt rr = r % m;
        if (rr < 0) rr += m;
        // value' = value + modulus * ((rr - value) * modulus^{-1} mod m)
        BigInt t = ((rr - value) % m) * (x % m) % m;
        if (t < 0) t += m;
        value += modulus * t;
        modulus *= m;
        value %= modulus;
    }
    return value;
}

namespace {

std::vector<PrimePower> factor_small(BigInt u) {
    std::vector<PrimePower> out;
    for (BigInt d = 2; d * d <= u; ++d) {
        if (u % d == 0) {
            unsigned a = 0;
            while (u % d == 0) {
                u /= d;
                ++a;
            }
            out.push_back({d, a});
        }
    }
    if (u > 1) out.push_back({u, 1});
    return out;
}

GroupParams search_q(const std::vector<BigInt>& primes) {
    BigInt w = 1;
    for (const auto& p : primes) w *= p;
    for (std::uint64_t u = 1; u <= kMaxCofactor; ++u) {
        BigInt q = BigInt(u) * w + 1;
        if (!is_prime(q)) continue;
        // m = u * w; factorization merges the base primes with u's factors.
        std::map<BigInt, unsigned> fac;
        for (const auto& p : primes) fac[p] += 1;
        for (const auto& pp : factor_small(BigInt(u))) fac[pp.p] += pp.alpha;
        GroupParams g;
        g.eta = static_cast<unsigned>(primes.size());
        g.base_primes = primes;
        g.cofactor = u;
        g.q = q;
        for (const auto& [p, a] : fac) g.m_factors.push_back({p, a});
        return g;
    }
    throw SearchExhausted("gen_group_params: no prime q = u*prod(p) + 1 with u <= " +
                          std::to_string(kMaxCofactor));
}

} // namespace

GroupParams group_params_from_primes(const std::vector<BigInt>& primes) {
    if (primes.size() < 2) throw InvalidArgument("group_params_from_primes: need >= 2 primes");
    for (const auto& p : primes)
        if (!is_prime(p)) throw InvalidArgument("group_params_from_primes: composite base prime");
    std::vector<BigInt> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("group_params_from_primes: duplicate base prime");
    GroupParams g = search_q(primes);
    validate_group_params(g);
    return g;
}

GroupParams gen_group_params(unsigned ell, unsigned prime_bits, std::uint64_t seed) {
    if (ell < 2) throw InvalidArgument("gen_group_params: ell < 2");
    if (prime_bits < 3) throw InvalidArgument("gen_group_params: prime_bits < 3");

    Rng rng(seed);
    const BigInt lo = BigInt(1) << (prime_bits - 1);
    const BigInt hi = (BigInt(1) << prime_bits) - 1;
    std::vector<BigInt> primes;
    std::uint64_t tries = 0;
    // Insecure at toy sizes by design; the interface makes no security
    // claim at any size.
    while (primes.size() < ell) {
        if (++tries > 200000)
            throw SearchExhausted("gen_group_params: not enough distinct primes of " +
                                  std::to_string(prime_bits) + " bits");
        BigInt cand = rng.uniform_range(lo, hi);
        if ((cand & 1) == 0 && cand != 2) cand += 1;
        if (cand > hi) continue;
        if (!is_prime(cand)) continue;
        if (std::find(primes.begin(), primes.end(), cand) != primes.end()) continue;
        primes.push_back(cand);
    }
    GroupParams g = search_q(primes);
    validate_group_params(g);
    return g;
}

void validate_group_params(const GroupParams& g) {
    if (g.eta != g.base_primes.size())
        throw InvalidArgument("GroupParams: eta does not match base_primes");
    if (g.eta < 2) throw InvalidArgument("GroupParams: eta < 2");
    if (g.cofactor < 1) throw InvalidArgument("GroupParams: cofactor < 1");
    if (!is_prime(g.q)) throw InvalidArgument("GroupParams: q is not prime");
    BigInt w = 1;
    for (const auto& p : g.base_primes) w *= p;
    if (g.q != g.cofactor * w + 1)
        throw InvalidArgument("GroupParams: q != u * prod(p_i) + 1");
    BigInt m = g.q - 1;
    BigInt prod = 1;
    for (const auto& pp : g.m_factors) {
        if (!is_prime(pp.p)) throw InvalidArgument("GroupParams: m_factor not prime");
        for (unsigned i = 0; i < pp.alpha; ++i) prod *= pp.p;
    }
    if (prod != m) throw InvalidArgument("GroupParams: m_factors do not multiply to q - 1");
    for (const auto& p : g.base_primes)
        if (m % p != 0) throw InvalidArgument("GroupParams: base prime does not divide m");
    if (g.r() < g.eta) throw InvalidArgument("GroupParams: r < eta");
}

} // namespace hass::numth
