#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hass/bigint.hpp"
#include "hass/numth.hpp"

namespace hass::ases {

// Monotone access structure given by its family of minimal authorized
// subsets (1-based party ids, each set sorted, the family an antichain).
struct AccessStructure {
    unsigned ell = 0;
    std::vector<std::vector<unsigned>> minimal_sets;

    bool operator==(const AccessStructure&) const = default;
};

// One encoded minimal subset: identifiers and tokens for all ell parties.
// Identifiers are dealer-side secrets; only tokens leave the dealer.
struct AsesInstance {
    numth::GroupParams group;
    unsigned ell = 0;
    std::vector<unsigned> omega;            // sorted, 1-based
    BigInt mu;                              // token base, in Z_q^* \ {1}
    std::vector<BigInt> identifiers;        // x_z per party, index 0 = party 1
    std::vector<BigInt> tokens;             // t_z = mu^{x_z} mod q
    std::map<unsigned, unsigned> covering_map; // party outside omega -> its covering party
    std::uint64_t seed = 0;
    unsigned attempts = 0;                  // resample count until acceptance

    bool operator==(const AsesInstance&) const = default;
};

struct EncodeOptions {
    unsigned retry_bound = 4096;
};

// Encodes omega over the given group. Stage V draws identifiers with the
// inner-product structure of the distribution procedure (members of omega
// sum to 0 mod m, covered parties get x_e = x_j - x_i against their
// covering party); Stage R then verifies exhaustively that no coalition
// outside the superset closure of omega sums to 0 mod m and that mu has
// full order on every realized nonzero sum, resampling on any violation.
AsesInstance encode(const numth::GroupParams& group, unsigned ell,
                    const std::vector<unsigned>& omega, std::uint64_t seed,
                    const EncodeOptions& opts = {});

// Assembles an instance from explicit identifiers and mu, running the same
// acceptance checks as encode. Used by toy reproductions and tests.
AsesInstance make_instance(const numth::GroupParams& group, unsigned ell,
                           const std::vector<unsigned>& omega,
                           const std::vector<BigInt>& identifiers, const BigInt& mu);

// Token product equals 1 mod q.
bool hsver_strict(const std::vector<BigInt>& tokens, const BigInt& q);

struct MonotoneResult {
    bool authorized = false;
    std::vector<std::size_t> witness; // indices into the given token list
};

// Smallest nonempty sub-coalition whose token product equals 1 mod q.
MonotoneResult hsver_monotone(const std::vector<BigInt>& tokens, const BigInt& q);

// The soundness certificate: every coalition B that is not a superset of
// omega has sum != 0 mod m and mu^sum != 1 mod q. Returns the first
// violating coalition mask if any.
std::optional<std::uint64_t> soundness_violation(const AsesInstance& inst);

unsigned coalition_budget(); // default 20 parties, HASS_BUDGET_OVERRIDE raises

} // namespace hass::ases
