#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hass/ases.hpp"
#include "hass/bigint.hpp"
#include "hass/numth.hpp"

namespace hass::scheme {

using ases::AccessStructure;

// One run of the scheme (one minimal subset): a token instance over
// (q, mu), a share instance over (q', gamma), the blinding factors for
// the omega members, and the resulting per-party shares.
struct Run {
    ases::AsesInstance token_instance;
    ases::AsesInstance share_instance;
    std::vector<BigInt> blinding; // b_i, one per omega member in sorted order
    std::vector<BigInt> shares;   // s_z per party
};

// Dealer-side bundle; public_part() is what leaves the dealer.
struct ShareBundle {
    numth::GroupParams token_group; // q
    numth::GroupParams share_group; // q'
    AccessStructure access;
    BigInt secret;
    std::uint64_t seed = 0;
    std::vector<Run> runs;
};

struct RunPublic {
    std::string run_id;
    std::vector<BigInt> tokens;
    std::vector<BigInt> shares;
    bool operator==(const RunPublic&) const = default;
};

struct BundlePublic {
    BigInt q;
    BigInt qprime;
    unsigned ell = 0;
    std::vector<RunPublic> runs;
    bool operator==(const BundlePublic&) const = default;
};

// Removes every listed set that strictly contains another listed set.
AccessStructure minimal_sets(unsigned ell, const std::vector<std::vector<unsigned>>& authorized);

struct ValidationReport {
    bool antichain = false;
    bool sizes_ok = false; // every |omega| >= ceil(ell/2)
    std::vector<std::string> offenders;
    bool pass() const { return antichain && sizes_ok; }
};

ValidationReport validate_structure(const AccessStructure& access, unsigned ell);

// Shares k in Z_{q'}^* across the parties: per minimal subset, one token
// instance and one share instance with independent randomness, blinding
// factors multiplying to k for the omega members.
ShareBundle share(const numth::GroupParams& token_group, const numth::GroupParams& share_group,
                  const AccessStructure& access, const BigInt& k, std::uint64_t seed);

BundlePublic public_part(const ShareBundle& bundle);

// Witness-guided reconstruction: per run, the smallest sub-coalition whose
// token product is 1 mod q pins down the omega members, whose shares
// multiply to k. Throws NotAuthorized when no run yields a witness.
BigInt recon(const BundlePublic& bundle, const std::vector<unsigned>& coalition);

// Literal strict-product variant: multiplies every coalition share in a
// run whose full token product is 1. Correct only for coalitions equal to
// a minimal subset.
BigInt recon_strict(const BundlePublic& bundle, const std::vector<unsigned>& coalition);

// Assembles a run from explicit parts (toy reproductions and tests).
Run make_run(const ases::AsesInstance& token_instance, const ases::AsesInstance& share_instance,
             const std::vector<BigInt>& blinding, const BigInt& k);

} // namespace hass::scheme
