#include "hass/scheme.hpp"

#include <algorithm>
#include <set>

#include "hass/errors.hpp"
#include "hass/rng.hpp"

namespace hass::scheme {

namespace {

std::vector<unsigned> normalize_set(unsigned ell, std::vector<unsigned> s) {
    if (s.empty()) throw InvalidArgument("access structure: empty subset");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (unsigned p : s)
        if (p < 1 || p > ell) throw InvalidArgument("access structure: party id out of range");
    return s;
}

bool strict_subset(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

AccessStructure minimal_sets(unsigned ell, const std::vector<std::vector<unsigned>>& authorized) {
    if (authorized.empty()) throw InvalidArgument("minimal_sets: empty input");
    std::vector<std::vector<unsigned>> sets;
    for (const auto& s : authorized) sets.push_back(normalize_set(ell, s));
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    AccessStructure out;
    out.ell = ell;
    for (const auto& cand : sets) {
        bool keep = true;
        for (const auto& other : sets)
            if (strict_subset(other, cand)) {
                keep = false;
                break;
            }
        if (keep) out.minimal_sets.push_back(cand);
    }
    return out;
}

ValidationReport validate_structure(const AccessStructure& access, unsigned ell) {
    ValidationReport report;
    report.antichain = true;
    report.sizes_ok = true;
    const unsigned min_size = (ell + 1) / 2;

    auto name = [](const std::vector<unsigned>& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + std::to_string(s[i]);
        return out + "}";
    };

    for (std::size_t i = 0; i < access.minimal_sets.size(); ++i) {
        const auto& a = access.minimal_sets[i];
        if (a.empty() || a.back() > ell || !std::is_sorted(a.begin(), a.end())) {
            report.antichain = false;
            report.offenders.push_back(name(a) + ": malformed or out of range");
            continue;
        }
        if (a.size() < min_size) {
            report.sizes_ok = false;
            report.offenders.push_back(name(a) + ": size below ceil(ell/2) = " +
                                       std::to_string(min_size));
        }
        for (std::size_t j = 0; j < access.minimal_sets.size(); ++j) {
            if (i == j) continue;
            const auto& b = access.minimal_sets[j];
            if (a == b && i < j) {
                report.antichain = false;
                report.offenders.push_back(name(a) + ": duplicated");
            } else if (strict_subset(a, b)) {
                report.antichain = false;
                report.offenders.push_back(name(a) + " contained in " + name(b));
            }
        }
    }
    return report;
}

Run make_run(const ases::AsesInstance& token_instance, const ases::AsesInstance& share_instance,
             const std::vector<BigInt>& blinding, const BigInt& k) {
    if (token_instance.ell != share_instance.ell || token_instance.omega != share_instance.omega)
        throw InconsistentBundle("make_run: token and share instances disagree");
    const BigInt qprime = share_instance.group.q;
    if (blinding.size() != share_instance.omega.size())
        throw InvalidArgument("make_run: one blinding factor per omega member required");
    BigInt prod = 1;
    for (const BigInt& b : blinding) {
        if (b <= 0 || b >= qprime) throw InvalidArgument("make_run: blinding outside Z_q'^*");
        prod = (prod * b) % qprime;
    }
    if (prod != k % qprime)
        throw InvalidArgument("make_run: blinding factors do not multiply to the secret");

    Run run;
    run.token_instance = token_instance;
    run.share_instance = share_instance;
    run.blinding = blinding;
    run.shares.assign(token_instance.ell, 0);
    for (unsigned p = 1; p <= token_instance.ell; ++p) {
        const BigInt& gamma_pow = share_instance.tokens[p - 1];
        auto it = std::lower_bound(share_instance.omega.begin(), share_instance.omega.end(), p);
        if (it != share_instance.omega.end() && *it == p) {
            const std::size_t idx = it - share_instance.omega.begin();
            run.shares[p - 1] = (blinding[idx] * gamma_pow) % qprime;
        } else {
            run.shares[p - 1] = gamma_pow;
        }
    }
    return run;
}

ShareBundle share(const numth::GroupParams& token_group, const numth::GroupParams& share_group,
                  const AccessStructure& access, const BigInt& k, std::uint64_t seed) {
    const unsigned ell = access.ell;
    ValidationReport validation = validate_structure(access, ell);
    if (!validation.pass()) {
        std::string detail;
        for (const auto& o : validation.offenders) detail += " " + o;
        throw InvalidArgument("share: invalid access structure:" + detail);
    }
    const BigInt qprime = share_group.q;
    if (k <= 0 || k >= qprime) throw InvalidArgument("share: secret outside Z_q'^*");

    ShareBundle bundle;
    bundle.token_group = token_group;
    bundle.share_group = share_group;
    bundle.access = access;
    bundle.secret = k;
    bundle.seed = seed;

    // Identifiers must not repeat across runs (per instance kind); a salt
    // retries the offending run with fresh derived randomness.
    std::set<BigInt> token_ids;
    std::set<BigInt> share_ids;
    for (std::size_t r = 0; r < access.minimal_sets.size(); ++r) {
        const auto& omega = access.minimal_sets[r];
        Run run;
        bool accepted = false;
        for (unsigned salt = 0; salt < 64 && !accepted; ++salt) {
            ases::AsesInstance tok =
                ases::encode(token_group, ell, omega, Rng::derive(seed, 4 * r + 0, salt));
            ases::AsesInstance shr =
                ases::encode(share_group, ell, omega, Rng::derive(seed, 4 * r + 1, salt));
            bool fresh = true;
            for (const BigInt& x : tok.identifiers)
                if (token_ids.count(x)) fresh = false;
            for (const BigInt& y : shr.identifiers)
                if (share_ids.count(y)) fresh = false;
            if (!fresh) continue;
            token_ids.insert(tok.identifiers.begin(), tok.identifiers.end());
            share_ids.insert(shr.identifiers.begin(), shr.identifiers.end());

            // Blinding: |omega| - 1 uniform units, the last solving
            // prod b_i = k mod q'. Drawn k-independently.
            Rng rng(Rng::derive(seed, 4 * r + 2, salt));
            std::vector<BigInt> blinding;
            BigInt prod = 1;
            for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
                BigInt b = rng.uniform_below(qprime - 1) + 1;
                blinding.push_back(b);
                prod = (prod * b) % qprime;
            }
            blinding.push_back((k * numth::mod_inverse(prod, qprime)) % qprime);
            run = make_run(tok, shr, blinding, k);
            accepted = true;
        }
        if (!accepted)
            throw RetryExhausted("share: run " + std::to_string(r) +
                                 " could not avoid cross-run identifier repeats");
        bundle.runs.push_back(std::move(run));
    }
    return bundle;
}

BundlePublic public_part(const ShareBundle& bundle) {
    BundlePublic pub;
    pub.q = bundle.token_group.q;
    pub.qprime = bundle.share_group.q;
    pub.ell = bundle.access.ell;
    for (std::size_t r = 0; r < bundle.runs.size(); ++r) {
        RunPublic rp;
        rp.run_id = "run-" + std::to_string(r);
        rp.tokens = bundle.runs[r].token_instance.tokens;
        rp.shares = bundle.runs[r].shares;
        pub.runs.push_back(std::move(rp));
    }
    return pub;
}

namespace {

std::vector<unsigned> check_coalition(const BundlePublic& bundle,
                                      const std::vector<unsigned>& coalition) {
    if (coalition.empty()) throw InvalidArgument("recon: empty coalition");
    std::vector<unsigned> sorted = coalition;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("recon: duplicate coalition member");
    for (unsigned p : sorted)
        if (p < 1 || p > bundle.ell) throw InvalidArgument("recon: party id out of range");
    for (const auto& run : bundle.runs)
        if (run.tokens.size() != bundle.ell || run.shares.size() != bundle.ell)
            throw InconsistentBundle("recon: run party count does not match ell");
    return sorted;
}

} // namespace

BigInt recon(const BundlePublic& bundle, const std::vector<unsigned>& coalition) {
    const std::vector<unsigned> members = check_coalition(bundle, coalition);
    for (const auto& run : bundle.runs) {
        std::vector<BigInt> tokens;
        for (unsigned p : members) tokens.push_back(run.tokens[p - 1]);
        ases::MonotoneResult res = ases::hsver_monotone(tokens, bundle.q);
        if (!res.authorized) continue;
        BigInt secret = 1;
        for (std::size_t idx : res.witness)
            secret = (secret * run.shares[members[idx] - 1]) % bundle.qprime;
        return secret;
    }
    throw NotAuthorized("recon: no run verifies for this coalition");
}

BigInt recon_strict(const BundlePublic& bundle, const std::vector<unsigned>& coalition) {
    const std::vector<unsigned> members = check_coalition(bundle, coalition);
    for (const auto& run : bundle.runs) {
        std::vector<BigInt> tokens;
        for (unsigned p : members) tokens.push_back(run.tokens[p - 1]);
        if (!ases::hsver_strict(tokens, bundle.q)) continue;
        BigInt secret = 1;
        for (unsigned p : members) secret = (secret * run.shares[p - 1]) % bundle.qprime;
        return secret;
    }
    throw NotAuthorized("recon_strict: no run verifies for this coalition");
}

} // namespace hass::scheme
