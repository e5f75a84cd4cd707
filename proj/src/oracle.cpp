#include "hass/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "hass/covvec.hpp"
#include "hass/errors.hpp"

namespace hass::oracle {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

BigInt cover_pair_count(unsigned n) {
    if (n < 1) throw InvalidArgument("cover_pair_count: n < 1");
    if (n <= 6) {
        // Walk every string, bucket by the set of symbols it uses.
        std::map<std::vector<bool>, BigInt> buckets;
        std::vector<unsigned> digits(n, 0);
        for (;;) {
            std::vector<bool> used(n, false);
            for (unsigned d : digits) used[d] = true;
            buckets[used] += 1;
            unsigned pos = 0;
            while (pos < n) {
                if (++digits[pos] < n) break;
                digits[pos] = 0;
                ++pos;
            }
            if (pos == n) break;
        }
        BigInt total = 0;
        for (const auto& [used, cnt] : buckets) total += cnt * cnt;
        return total;
    }
    if (n <= 12) {
        // Strings using exactly the symbols of a k-subset: onto counts by
        // inclusion-exclusion, squared per subset.
        auto binom = [](unsigned a, unsigned b) {
            BigInt r = 1;
            for (unsigned i = 1; i <= b; ++i) {
                r *= a - b + i;
                r /= i;
            }
            return r;
        };
        BigInt total = 0;
        for (unsigned k = 1; k <= n; ++k) {
            BigInt onto = 0;
            for (unsigned j = 0; j <= k; ++j) {
                BigInt power = 1;
                for (unsigned i = 0; i < n; ++i) power *= (k - j);
                BigInt term = binom(k, j) * power;
                if (j % 2 == 0)
                    onto += term;
                else
                    onto -= term;
            }
            total += binom(n, k) * onto * onto;
        }
        return total;
    }
    throw BudgetExceeded("cover_pair_count: n > 12");
}

OracleReport exhaustive_coalitions(const ases::AsesInstance& instance) {
    Timer timer;
    OracleReport report;
    report.check = "exhaustive_coalitions/ases";
    report.instance = "ell=" + std::to_string(instance.ell) +
                      " seed=" + std::to_string(instance.seed);
    const unsigned ell = instance.ell;
    if (ell > 20) throw BudgetExceeded("exhaustive_coalitions: ell > 20");

    std::uint64_t omask = 0;
    for (unsigned p : instance.omega) omask |= (1ULL << (p - 1));

    report.pass = true;
    for (std::uint64_t mask = 1; mask < (1ULL << ell); ++mask) {
        const bool authorized = (mask & omask) == omask;
        std::vector<BigInt> tokens;
        for (unsigned p = 1; p <= ell; ++p)
            if (mask & (1ULL << (p - 1))) tokens.push_back(instance.tokens[p - 1]);
        const bool verdict = ases::hsver_monotone(tokens, instance.group.q).authorized;
        if (verdict != authorized) {
            report.pass = false;
            report.witness = "coalition mask " + std::to_string(mask) + ": expected " +
                             (authorized ? "authorized" : "unauthorized") + ", hsver said " +
                             (verdict ? "authorized" : "unauthorized");
            break;
        }
    }
    report.millis = timer.millis();
    return report;
}

OracleReport exhaustive_coalitions(const scheme::ShareBundle& bundle) {
    Timer timer;
    OracleReport report;
    report.check = "exhaustive_coalitions/scheme";
    report.instance = "ell=" + std::to_string(bundle.access.ell) +
                      " runs=" + std::to_string(bundle.runs.size()) +
                      " seed=" + std::to_string(bundle.seed);
    const unsigned ell = bundle.access.ell;
    if (ell > 12) throw BudgetExceeded("exhaustive_coalitions: ell > 12 with recon");

    std::vector<std::uint64_t> omasks;
    for (const auto& omega : bundle.access.minimal_sets) {
        std::uint64_t msk = 0;
        for (unsigned p : omega) msk |= (1ULL << (p - 1));
        omasks.push_back(msk);
    }

    const scheme::BundlePublic pub = scheme::public_part(bundle);
    report.pass = true;
    for (std::uint64_t mask = 1; mask < (1ULL << ell); ++mask) {
        bool authorized = false;
        for (std::uint64_t om : omasks)
            if ((mask & om) == om) authorized = true;
        std::vector<unsigned> coalition;
        for (unsigned p = 1; p <= ell; ++p)
            if (mask & (1ULL << (p - 1))) coalition.push_back(p);
        bool ok;
        if (authorized) {
            try {
                ok = scheme::recon(pub, coalition) == bundle.secret;
            } catch (const NotAuthorized&) {
                ok = false;
            }
        } else {
            try {
                scheme::recon(pub, coalition);
                ok = false;
            } catch (const NotAuthorized&) {
                ok = true;
            }
        }
        if (!ok) {
            report.pass = false;
            report.witness = "coalition mask " + std::to_string(mask) + " misclassified (" +
                             (authorized ? "authorized" : "unauthorized") + ")";
            break;
        }
    }
    report.millis = timer.millis();
    return report;
}

OracleReport naive_set_intersections(const setsys::SetSystem& ss) {
    Timer timer;
    OracleReport report;
    report.check = "naive_set_intersections";
    report.instance = "m=" + std::to_string(ss.modulus.m) + " n=" + std::to_string(ss.n);
    if (ss.sets.size() > 4096) throw BudgetExceeded("naive_set_intersections: too many sets");

    // Raw label sets, rebuilt from the universe rather than the sorted-id
    // representation the primary path uses.
    using Label = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
    std::vector<std::set<Label>> label_sets;
    for (const auto& ids : ss.sets) {
        std::set<Label> labels;
        for (std::uint32_t id : ids) {
            const auto& e = ss.universe[id];
            labels.insert({e.monomial, e.copy, e.pattern});
        }
        label_sets.push_back(std::move(labels));
    }

    report.pass = true;
    const std::uint64_t m = ss.modulus.m;
    for (std::size_t i = 0; i < label_sets.size() && report.pass; ++i) {
        covvec::CoveringVector vi = covvec::from_set(ss, i);
        for (std::size_t j = i; j < label_sets.size(); ++j) {
            std::size_t inter = 0;
            for (const Label& l : label_sets[i]) inter += label_sets[j].count(l);
            covvec::CoveringVector vj = covvec::from_set(ss, j);
            const std::uint64_t ip = covvec::inner(vi, vj);
            const std::uint64_t hw = covvec::hadamard_weight(vi, vj);
            if (ip != inter % m || hw != inter) {
                report.pass = false;
                report.witness = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                 "): raw intersection " + std::to_string(inter) +
                                 ", inner " + std::to_string(ip) + ", hadamard weight " +
                                 std::to_string(hw);
                break;
            }
        }
    }
    report.millis = timer.millis();
    return report;
}

} // namespace hass::oracle
