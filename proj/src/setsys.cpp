#include "hass/setsys.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>

#include "hass/counting.hpp"
#include "hass/errors.hpp"

namespace hass::setsys {

SymbolString::SymbolString(std::vector<std::uint8_t> syms)
    : n(static_cast<unsigned>(syms.size())), symbols(std::move(syms)) {
    if (n == 0 || n > 31) throw InvalidArgument("SymbolString: length must be 1..31");
    for (std::uint8_t s : symbols) {
        if (s >= n) throw InvalidArgument("SymbolString: symbol out of range");
        chi |= (1u << s);
    }
}

unsigned SymbolString::usw() const { return static_cast<unsigned>(std::popcount(chi)); }

bool cover(const SymbolString& x, const SymbolString& y) {
    if (x.n != y.n) throw DimensionMismatch("cover: length mismatch");
    return x.symbols == y.symbols || x.chi == y.chi;
}

namespace {

// Comparison vector of two characteristic vectors as a mask: bit j set iff
// the vectors agree at j.
std::uint32_t delta_mask(std::uint32_t chi_x, std::uint32_t chi_y, unsigned n) {
    return ~(chi_x ^ chi_y) & ((n >= 32 ? 0 : (1u << n)) - 1);
}

std::uint64_t mask_weight(std::uint32_t mask) {
    return static_cast<std::uint64_t>(std::popcount(mask));
}

} // namespace

std::uint64_t matrix_entry(const poly::IntersectionPolynomial& p, const SymbolString& x,
                           const SymbolString& y) {
    if (x.n != p.n || y.n != p.n) throw DimensionMismatch("matrix_entry: length mismatch");
    return poly::value_at_weight(p, static_cast<unsigned>(mask_weight(delta_mask(x.chi, y.chi, p.n))));
}

BigInt b_entry_count(const poly::IntersectionPolynomial& p, const SymbolString& x,
                     const SymbolString& y) {
    if (x.n != p.n || y.n != p.n) throw DimensionMismatch("b_entry_count: length mismatch");
    return poly::integer_value_at_weight(
        p, static_cast<unsigned>(mask_weight(delta_mask(x.chi, y.chi, p.n))));
}

void for_each_string(unsigned n, const std::function<void(const SymbolString&)>& fn) {
    std::vector<std::uint8_t> digits(n, 0);
    for (;;) {
        fn(SymbolString(digits));
        unsigned pos = 0;
        while (pos < n) {
            if (++digits[pos] < n) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == n) return;
    }
}

std::size_t intersection_size(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

namespace {

unsigned env_budget(unsigned fallback) {
    if (const char* env = std::getenv("HASS_BUDGET_OVERRIDE")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return fallback;
}

std::uint32_t restrict_chi(std::uint32_t chi, const std::vector<std::uint8_t>& coords) {
    std::uint32_t pattern = 0;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (chi & (1u << coords[k])) pattern |= (1u << k);
    return pattern;
}

} // namespace

unsigned setsys_budget() { return env_budget(6); }
unsigned lemma3_budget() { return env_budget(4); }

SetSystem build_set_system(unsigned n, const poly::ModulusSpec& spec, bool dedupe) {
    if (n < 1) throw InvalidArgument("build_set_system: n < 1");
    if (n > setsys_budget() || n > 20)
        throw BudgetExceeded("build_set_system: n exceeds budget " +
                             std::to_string(std::min(setsys_budget(), 20u)));

    SetSystem ss;
    ss.n = n;
    ss.modulus = spec;
    ss.polynomial = poly::build_polynomial(n, spec);
    ss.deduped = dedupe;

    // Monomials of each degree with nonzero coefficient, lexicographic
    // within a degree.
    for (unsigned l = 0; l <= ss.polynomial.degree; ++l) {
        std::uint64_t c = ss.polynomial.coeff(l);
        if (c == 0) continue;
        std::vector<std::uint8_t> tuple(l);
        for (unsigned i = 0; i < l; ++i) tuple[i] = static_cast<std::uint8_t>(i);
        for (;;) {
            ss.monomials.push_back({tuple, c});
            // next combination
            int pos = static_cast<int>(l) - 1;
            while (pos >= 0 && tuple[pos] == n - l + pos) --pos;
            if (pos < 0) break;
            ++tuple[pos];
            for (unsigned i = pos + 1; i < l; ++i) tuple[i] = tuple[i - 1] + 1;
        }
    }

    for (const auto& mono : ss.monomials) ss.sum_multiplicities += mono.coeff;

    // Characteristic classes: every nonempty symbol subset occurs (strings
    // have length n over n symbols).
    for (std::uint32_t chi = 1; chi < (1u << n); ++chi) ss.classes.push_back(chi);

    // Universe: per monomial, its realized agreement patterns; each copy of
    // the monomial contributes one element per pattern.
    ss.blocks.resize(ss.monomials.size());
    std::uint32_t next_id = 0;
    for (std::size_t t = 0; t < ss.monomials.size(); ++t) {
        std::set<std::uint32_t> pats;
        for (std::uint32_t chi : ss.classes) pats.insert(restrict_chi(chi, ss.monomials[t].indices));
        ss.blocks[t].offset = next_id;
        ss.blocks[t].patterns.assign(pats.begin(), pats.end());
        for (std::uint32_t copy = 0; copy < ss.monomials[t].coeff; ++copy)
            for (std::uint32_t p : ss.blocks[t].patterns)
                ss.universe.push_back({static_cast<std::uint32_t>(t), copy, p});
        next_id += static_cast<std::uint32_t>(ss.monomials[t].coeff * ss.blocks[t].patterns.size());
    }

    // One candidate set per class: from every B-copy the block the class
    // selects.
    auto element_id = [&](std::size_t t, std::uint32_t copy, std::uint32_t pattern) {
        const auto& blk = ss.blocks[t];
        auto it = std::lower_bound(blk.patterns.begin(), blk.patterns.end(), pattern);
        return blk.offset +
               copy * static_cast<std::uint32_t>(blk.patterns.size()) +
               static_cast<std::uint32_t>(it - blk.patterns.begin());
    };
    for (std::uint32_t chi : ss.classes) {
        std::vector<std::uint32_t> ids;
        ids.reserve(ss.sum_multiplicities);
        for (std::size_t t = 0; t < ss.monomials.size(); ++t) {
            std::uint32_t pattern = restrict_chi(chi, ss.monomials[t].indices);
            for (std::uint32_t copy = 0; copy < ss.monomials[t].coeff; ++copy)
                ids.push_back(element_id(t, copy, pattern));
        }
        std::sort(ids.begin(), ids.end());
        ss.sets.push_back(std::move(ids));
    }

    // Index count: zero cells over the full string space, one cover pair
    // per ordered same-class string pair; class sizes via the onto-string
    // count k! S2(n,k).
    for (std::uint32_t chi : ss.classes) {
        unsigned k = static_cast<unsigned>(std::popcount(chi));
        ss.strings_per_class.push_back(counting::factorial(k) * counting::stirling2(n, k));
    }
    for (const auto& cnt : ss.strings_per_class) ss.index_count += cnt * cnt;

    std::set<std::vector<std::uint32_t>> unique_sets(ss.sets.begin(), ss.sets.end());
    ss.distinct_count = unique_sets.size();

    if (dedupe && ss.distinct_count < ss.sets.size()) {
        std::vector<std::uint32_t> classes;
        std::vector<BigInt> per_class;
        std::vector<std::vector<std::uint32_t>> sets;
        std::set<std::vector<std::uint32_t>> seen;
        for (std::size_t i = 0; i < ss.sets.size(); ++i) {
            if (seen.insert(ss.sets[i]).second) {
                classes.push_back(ss.classes[i]);
                per_class.push_back(ss.strings_per_class[i]);
                sets.push_back(ss.sets[i]);
            }
        }
        ss.classes = std::move(classes);
        ss.strings_per_class = std::move(per_class);
        ss.sets = std::move(sets);
    }
    return ss;
}

std::vector<std::uint32_t> SetSystem::set_for_cell(const SymbolString& x,
                                                   const SymbolString& y) const {
    if (matrix_entry(polynomial, x, y) != 0)
        throw UnknownIndex("set_for_cell: cell is not a zero cell of A");
    // Zero cells are cover pairs, so both strings share one class.
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == x.chi) return sets[i];
    throw UnknownIndex("set_for_cell: class not materialized");
}

Theorem1Report verify_theorem1(const SetSystem& ss, Exec exec) {
    const auto start = std::chrono::steady_clock::now();
    Theorem1Report report;

    // Condition checks run on the extensional family.
    std::set<std::vector<std::uint32_t>> unique(ss.sets.begin(), ss.sets.end());
    std::vector<const std::vector<std::uint32_t>*> fam;
    fam.reserve(unique.size());
    for (const auto& s : unique) fam.push_back(&s);
    const std::size_t count = fam.size();
    report.sets_checked = count;

    const std::uint64_t m = ss.modulus.m;

    report.c2_pass = true;
    for (std::size_t i = 0; i < count; ++i) {
        if (fam[i]->size() % m != 0) {
            report.c2_pass = false;
            report.violations.push_back({i, i, fam[i]->size(), "size not divisible by m"});
        }
    }

    const std::size_t pair_total = count * (count - 1) / 2;
    report.pairs_checked = pair_total;

    std::size_t nested = 0;
    std::size_t non_nested = 0;
    bool c3 = true;
    bool c4 = true;
    std::vector<PairWitness> violations;

    auto check_pair = [&](std::size_t i, std::size_t j, std::size_t& nst, std::size_t& nnst,
                          bool& ok3, bool& ok4, std::vector<PairWitness>& viol) {
        const auto& a = *fam[i];
        const auto& b = *fam[j];
        const std::size_t inter = intersection_size(a, b);
        const bool nested_pair =
            std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
            std::includes(b.begin(), b.end(), a.begin(), a.end());
        if (nested_pair) {
            ++nst;
            if (inter % m != 0) {
                ok3 = false;
                viol.push_back({i, j, inter, "nested pair with intersection != 0 mod m"});
            }
        } else {
            ++nnst;
            if (inter % m == 0) {
                ok3 = false;
                viol.push_back({i, j, inter, "non-nested pair with intersection = 0 mod m"});
            }
        }
        for (const auto& f : ss.modulus.factors) {
            std::uint64_t pa = 1;
            for (unsigned e = 0; e < f.alpha; ++e) pa *= f.p;
            if (inter % pa > 1) {
                ok4 = false;
                viol.push_back({i, j, inter, "intersection residue outside {0,1}"});
            }
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            std::size_t l_nested = 0, l_non = 0;
            bool l3 = true, l4 = true;
            std::vector<PairWitness> l_viol;
#pragma omp for nowait schedule(static)
            for (long long i = 0; i < static_cast<long long>(count); ++i)
                for (std::size_t j = i + 1; j < count; ++j)
                    check_pair(i, j, l_nested, l_non, l3, l4, l_viol);
#pragma omp critical
            {
                nested += l_nested;
                non_nested += l_non;
                c3 = c3 && l3;
                c4 = c4 && l4;
                violations.insert(violations.end(), l_viol.begin(), l_viol.end());
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j)
                check_pair(i, j, nested, non_nested, c3, c4, violations);
    }

    std::sort(violations.begin(), violations.end(), [](const PairWitness& a, const PairWitness& b) {
        return std::tie(a.i, a.j, a.reason) < std::tie(b.i, b.j, b.reason);
    });
    report.nested_pairs = nested;
    report.non_nested_pairs = non_nested;
    report.c3_pass = c3;
    report.c4_pass = c4;
    report.violations.insert(report.violations.end(), violations.begin(), violations.end());
    report.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

Lemma3Report verify_lemma3(const SetSystem& ss, Exec exec) {
    const unsigned n = ss.n;
    if (n > lemma3_budget())
        throw BudgetExceeded("verify_lemma3: n exceeds budget " + std::to_string(lemma3_budget()));
    const auto start = std::chrono::steady_clock::now();

    // Characteristic vector of every string, in enumeration order.
    std::vector<std::uint32_t> chis;
    for_each_string(n, [&](const SymbolString& s) { chis.push_back(s.chi); });
    const std::size_t total = chis.size();

    // B-entry count at a cell through the monomial route: every copy of a
    // monomial whose coordinates all agree contributes one entry.
    std::vector<std::uint32_t> tuple_masks;
    std::vector<std::uint64_t> tuple_coeffs;
    for (const auto& mono : ss.monomials) {
        std::uint32_t msk = 0;
        for (std::uint8_t c : mono.indices) msk |= (1u << c);
        tuple_masks.push_back(msk);
        tuple_coeffs.push_back(mono.coeff);
    }
    auto cell_count = [&](std::uint32_t chi_x, std::uint32_t chi_y) {
        const std::uint32_t agree = delta_mask(chi_x, chi_y, n);
        std::uint64_t cnt = 0;
        for (std::size_t t = 0; t < tuple_masks.size(); ++t)
            if ((tuple_masks[t] & ~agree) == 0) cnt += tuple_coeffs[t];
        return cnt;
    };

    const std::uint64_t m = ss.modulus.m;
    const std::uint64_t diag = cell_count(chis[0], chis[0]);

    bool diag_equal = true;
    bool iff_ok = true;
    bool below_ok = true;
    long long witness_row = -1;

    auto scan_row = [&](std::size_t xi, bool& de, bool& io, bool& bo, long long& wr) {
        const std::uint32_t cx = chis[xi];
        if (cell_count(cx, cx) != diag) {
            de = false;
            if (wr < 0) wr = static_cast<long long>(xi);
        }
        for (std::size_t yi = 0; yi < total; ++yi) {
            const std::uint32_t cy = chis[yi];
            const std::uint64_t cnt = cell_count(cx, cy);
            const bool cov = (cx == cy); // x == y implies equal chi
            if ((cnt % m == 0) != cov) {
                io = false;
                if (wr < 0) wr = static_cast<long long>(xi);
            }
            if (!cov && !(cnt < diag)) {
                bo = false;
                if (wr < 0) wr = static_cast<long long>(xi);
            }
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            bool de = true, io = true, bo = true;
            long long wr = -1;
#pragma omp for nowait schedule(static)
            for (long long xi = 0; xi < static_cast<long long>(total); ++xi)
                scan_row(static_cast<std::size_t>(xi), de, io, bo, wr);
#pragma omp critical
            {
                diag_equal = diag_equal && de;
                iff_ok = iff_ok && io;
                below_ok = below_ok && bo;
                if (wr >= 0 && (witness_row < 0 || wr < witness_row)) witness_row = wr;
            }
        }
    } else {
        for (std::size_t xi = 0; xi < total; ++xi)
            scan_row(xi, diag_equal, iff_ok, below_ok, witness_row);
    }

    Lemma3Report report;
    report.diagonal_equal = diag_equal;
    report.diagonal_divisible = diag % m == 0;
    report.divisible_iff_cover = iff_ok;
    report.offdiag_below_diagonal = below_ok;
    report.diagonal_count = diag;
    report.cells_checked = static_cast<std::uint64_t>(total) * total;
    if (witness_row >= 0) report.witness = "row " + std::to_string(witness_row);
    report.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

UniformReport uniform_subsystem(const SetSystem& ss) {
    UniformReport report;
    report.class_count = ss.classes.size();
    const std::uint64_t m = ss.modulus.m;

    report.sizes_equal = true;
    report.sizes_divisible = true;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) {
        if (ss.sets[i].size() != ss.sum_multiplicities) report.sizes_equal = false;
        if (ss.sets[i].size() % m != 0) report.sizes_divisible = false;
    }

    report.cross_intersections_nonzero = true;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) {
        for (std::size_t j = i + 1; j < ss.sets.size(); ++j) {
            if (ss.classes[i] == ss.classes[j]) continue;
            std::size_t inter = intersection_size(ss.sets[i], ss.sets[j]);
            if (inter % m == 0) {
                report.cross_intersections_nonzero = false;
                report.violations.push_back({i, j, inter, "cross-class intersection = 0 mod m"});
            }
        }
    }
    return report;
}

} // namespace hass::setsys
