#include "hass/ases.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>

#include "hass/errors.hpp"
#include "hass/rng.hpp"

namespace hass::ases {

namespace {

unsigned env_budget(unsigned fallback) {
    if (const char* env = std::getenv("HASS_BUDGET_OVERRIDE")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return fallback;
}

void check_omega(unsigned ell, const std::vector<unsigned>& omega) {
    if (ell < 2) throw InvalidArgument("encode: ell < 2");
    if (omega.size() < 2)
        throw InvalidArgument("encode: omega needs at least two parties (identifiers are "
                              "nonzero and the members must sum to 0 mod m)");
    if (2 * omega.size() < ell)
        throw InvalidArgument("encode: omega violates |P| <= 2|omega|");
    std::set<unsigned> seen;
    for (unsigned p : omega) {
        if (p < 1 || p > ell) throw InvalidArgument("encode: omega member out of range");
        if (!seen.insert(p).second) throw InvalidArgument("encode: duplicate omega member");
    }
}

std::uint64_t omega_mask(unsigned ell, const std::vector<unsigned>& omega) {
    std::uint64_t msk = 0;
    for (unsigned p : omega) msk |= (1ULL << (p - 1));
    (void)ell;
    return msk;
}

} // namespace

unsigned coalition_budget() { return env_budget(20); }

std::optional<std::uint64_t> soundness_violation(const AsesInstance& inst) {
    const unsigned ell = inst.ell;
    if (ell > coalition_budget())
        throw BudgetExceeded("soundness_violation: ell exceeds coalition budget");
    const BigInt m = inst.group.m();
    const std::uint64_t omask = omega_mask(ell, inst.omega);
    const std::uint64_t total = 1ULL << ell;

    // Subset sums mod m by dynamic programming over party bits.
    std::vector<BigInt> sums(total, 0);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        const int low = std::countr_zero(mask);
        sums[mask] = (sums[mask & (mask - 1)] + inst.identifiers[low]) % m;
    }

    std::set<BigInt> unauthorized_sums;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        const bool superset = (mask & omask) == omask;
        if (mask == omask) {
            if (sums[mask] != 0) return mask;
            continue;
        }
        if (!superset) {
            if (sums[mask] == 0) return mask;
            unauthorized_sums.insert(sums[mask]);
        }
    }
    // mu must not collapse any unauthorized sum to the identity; a mu of
    // small order otherwise breaks soundness even though the sum is
    // nonzero mod m.
    for (const BigInt& s : unauthorized_sums)
        if (numth::mod_pow(inst.mu, s, inst.group.q) == 1) {
            for (std::uint64_t mask = 1; mask < total; ++mask)
                if (sums[mask] == s && (mask & omask) != omask) return mask;
        }
    return std::nullopt;
}

namespace {

void finish_instance(AsesInstance& inst) {
    inst.tokens.clear();
    for (const BigInt& x : inst.identifiers)
        inst.tokens.push_back(numth::mod_pow(inst.mu, x, inst.group.q));
}

bool identifiers_valid(const AsesInstance& inst) {
    const BigInt m = inst.group.m();
    std::set<BigInt> seen;
    for (const BigInt& x : inst.identifiers) {
        if (x == 0 || x < 0 || x >= m) return false;
        if (!seen.insert(x).second) return false; // collision: re-generate
    }
    return true;
}

} // namespace

AsesInstance encode(const numth::GroupParams& group, unsigned ell,
                    const std::vector<unsigned>& omega, std::uint64_t seed,
                    const EncodeOptions& opts) {
    check_omega(ell, omega);
    if (group.eta < ell) throw InvalidArgument("encode: group too small (eta < ell)");
    if (ell > coalition_budget())
        throw BudgetExceeded("encode: ell exceeds coalition budget");

    const BigInt m = group.m();
    Rng rng(seed);

    AsesInstance inst;
    inst.group = group;
    inst.ell = ell;
    inst.omega = omega;
    std::sort(inst.omega.begin(), inst.omega.end());
    inst.seed = seed;

    for (unsigned attempt = 1; attempt <= opts.retry_bound; ++attempt) {
        inst.attempts = attempt;
        inst.identifiers.assign(ell, 0);
        inst.covering_map.clear();

        // Stage V. Members of omega: uniform nonzero identifiers (the
        // inner products <v, v_i>), the last one closing the sum to 0 so
        // that v = sum v_i has <v, v> = 0 mod m.
        BigInt running = 0;
        bool ok = true;
        for (std::size_t idx = 0; idx + 1 < inst.omega.size(); ++idx) {
            BigInt x = rng.uniform_below(m - 1) + 1;
            inst.identifiers[inst.omega[idx] - 1] = x;
            running = (running + x) % m;
        }
        BigInt closer = (m - running) % m;
        if (closer == 0) ok = false;
        inst.identifiers[inst.omega.back() - 1] = closer;

        // Covered parties: a seeded shuffle of omega assigns each outside
        // party a unique covering member; x_e = x_j - x_i with x_j the
        // (abstracted) superset inner product.
        std::vector<unsigned> cover_order = inst.omega;
        for (std::size_t i = cover_order.size(); i > 1; --i)
            std::swap(cover_order[i - 1], cover_order[rng.uniform_u64_below(i)]);
        std::size_t next_cover = 0;
        for (unsigned p = 1; p <= ell && ok; ++p) {
            if (std::binary_search(inst.omega.begin(), inst.omega.end(), p)) continue;
            const unsigned coverer = cover_order[next_cover++];
            const BigInt xj = rng.uniform_below(m - 1) + 1;
            BigInt xe = (xj - inst.identifiers[coverer - 1]) % m;
            if (xe < 0) xe += m;
            if (xe == 0) ok = false;
            inst.identifiers[p - 1] = xe;
            inst.covering_map[p] = coverer;
        }
        if (!ok || !identifiers_valid(inst)) continue;

        // Stage R: exhaustive certificate, fresh mu on any order failure.
        inst.mu = rng.uniform_below(group.q - 2) + 2; // Z_q^* \ {1}
        if (soundness_violation(inst)) continue;

        finish_instance(inst);
        return inst;
    }
    throw RetryExhausted("encode: no accepted instance within " +
                         std::to_string(opts.retry_bound) + " attempts (ell " +
                         std::to_string(ell) + ", |omega| " + std::to_string(omega.size()) + ")");
}

AsesInstance make_instance(const numth::GroupParams& group, unsigned ell,
                           const std::vector<unsigned>& omega,
                           const std::vector<BigInt>& identifiers, const BigInt& mu) {
    check_omega(ell, omega);
    if (identifiers.size() != ell) throw InvalidArgument("make_instance: identifier count != ell");
    if (mu < 2 || mu >= group.q) throw InvalidArgument("make_instance: mu outside Z_q^* \\ {1}");

    AsesInstance inst;
    inst.group = group;
    inst.ell = ell;
    inst.omega = omega;
    std::sort(inst.omega.begin(), inst.omega.end());
    inst.identifiers = identifiers;
    inst.mu = mu;
    if (!identifiers_valid(inst))
        throw InvalidArgument("make_instance: identifiers zero, out of range, or colliding");
    if (auto bad = soundness_violation(inst))
        throw InvalidArgument("make_instance: soundness certificate fails on coalition mask " +
                              std::to_string(*bad));
    finish_instance(inst);
    return inst;
}

bool hsver_strict(const std::vector<BigInt>& tokens, const BigInt& q) {
    if (tokens.empty()) throw InvalidArgument("hsver_strict: empty token set");
    BigInt prod = 1;
    for (const BigInt& t : tokens) prod = (prod * t) % q;
    return prod == 1;
}

MonotoneResult hsver_monotone(const std::vector<BigInt>& tokens, const BigInt& q) {
    if (tokens.empty()) throw InvalidArgument("hsver_monotone: empty token set");
    const std::size_t n = tokens.size();
    if (n > coalition_budget())
        throw BudgetExceeded("hsver_monotone: coalition exceeds budget " +
                             std::to_string(coalition_budget()));

    // Size-ascending scan returns the smallest witness, lexicographically
    // first within a size.
    std::vector<std::size_t> pick;
    for (std::size_t size = 1; size <= n; ++size) {
        pick.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        for (;;) {
            BigInt prod = 1;
            for (std::size_t i : pick) prod = (prod * tokens[i]) % q;
            if (prod == 1) return {true, pick};
            int pos = static_cast<int>(size) - 1;
            while (pos >= 0 && pick[pos] == n - size + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (std::size_t i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    return {false, {}};
}

} // namespace hass::ases
