#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hass/bigint.hpp"
#include "hass/exec.hpp"
#include "hass/poly.hpp"

namespace hass::setsys {

// A string over the symbol alphabet {0..n-1} together with its
// characteristic bit-vector: chi bit j set iff symbol j occurs.
struct SymbolString {
    unsigned n = 0;
    std::vector<std::uint8_t> symbols;
    std::uint32_t chi = 0;

    SymbolString() = default;
    explicit SymbolString(std::vector<std::uint8_t> syms);

    unsigned usw() const; // unique-symbol weight = Hamming weight of chi
};

// x and y cover each other when x = y or chi(x) = chi(y).
bool cover(const SymbolString& x, const SymbolString& y);

// a_{x,y}: the polynomial evaluated at the bitwise comparison of the two
// characteristic vectors, reduced mod m. Zero exactly on cover pairs.
std::uint64_t matrix_entry(const poly::IntersectionPolynomial& p, const SymbolString& x,
                           const SymbolString& y);

// Unreduced count of B-entries at cell (x,y): the number of (monomial,
// copy) pairs whose comparison product is 1, each monomial counted with
// its multiplicity.
BigInt b_entry_count(const poly::IntersectionPolynomial& p, const SymbolString& x,
                     const SymbolString& y);

// One monomial of the multilinear form, carried with its multiplicity.
struct Monomial {
    std::vector<std::uint8_t> indices; // sorted coordinate tuple
    std::uint64_t coeff = 0;           // multiplicity, in 1..m-1
    bool operator==(const Monomial&) const = default;
};

// A universe element: one agreement block of one B-copy. The set indexed
// by a zero cell (x,y) takes, from every copy, the block whose pattern the
// cell selects, so each set holds exactly one element per B-copy.
struct Element {
    std::uint32_t monomial = 0;
    std::uint32_t copy = 0;
    std::uint32_t pattern = 0; // chi restricted to the monomial's coordinates
    bool operator==(const Element&) const = default;
};

// Element-id index for one monomial: ids run offset + copy * |patterns| +
// rank(pattern), with patterns sorted ascending.
struct MonomialBlocks {
    std::uint32_t offset = 0;
    std::vector<std::uint32_t> patterns;
    bool operator==(const MonomialBlocks&) const = default;
};

struct SetSystem {
    poly::ModulusSpec modulus;
    unsigned n = 0;
    poly::IntersectionPolynomial polynomial;
    std::vector<Monomial> monomials;
    std::vector<MonomialBlocks> blocks;
    std::vector<Element> universe;

    // Extensional family: one candidate set per characteristic class; the
    // class is the chi mask at classes[i], its set the sorted element ids
    // at sets[i]. Cover-pair-indexed sets inside one class coincide by
    // construction, which distinct_count measures rather than assumes.
    std::vector<std::uint32_t> classes;
    std::vector<BigInt> strings_per_class;
    std::vector<std::vector<std::uint32_t>> sets;

    BigInt index_count = 0;        // zero cells of A over the full string space
    std::size_t distinct_count = 0;
    bool deduped = false;
    std::uint64_t sum_multiplicities = 0; // sum of all coefficients = per-set size

    std::uint64_t h() const { return universe.size(); }

    // Materializes the set indexed by a zero cell; throws UnknownIndex on
    // cells with a_{x,y} != 0.
    std::vector<std::uint32_t> set_for_cell(const SymbolString& x, const SymbolString& y) const;
};

SetSystem build_set_system(unsigned n, const poly::ModulusSpec& spec, bool dedupe);

struct PairWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    std::uint64_t value = 0;
    std::string reason;
};

struct Theorem1Report {
    bool c2_pass = false;
    bool c3_pass = false; // nested => 0 mod m, non-nested => nonzero mod m
    bool c4_pass = false;
    std::size_t sets_checked = 0;
    std::size_t pairs_checked = 0;
    std::size_t nested_pairs = 0;
    std::size_t non_nested_pairs = 0;
    std::vector<PairWitness> violations;
    double millis = 0.0;
    bool pass() const { return c2_pass && c3_pass && c4_pass; }
};

Theorem1Report verify_theorem1(const SetSystem& ss, Exec exec = Exec::Parallel);

struct Lemma3Report {
    bool diagonal_equal = false;
    bool diagonal_divisible = false;
    bool divisible_iff_cover = false;
    bool offdiag_below_diagonal = false; // b-count(x,y) < b-count(x,x) for non-cover
    BigInt diagonal_count = 0;
    std::uint64_t cells_checked = 0;
    std::string witness;
    double millis = 0.0;
    bool pass() const {
        return diagonal_equal && diagonal_divisible && divisible_iff_cover &&
               offdiag_below_diagonal;
    }
};

// Full string-space scan (n^n rows); budget-guarded.
Lemma3Report verify_lemma3(const SetSystem& ss, Exec exec = Exec::Parallel);

struct UniformReport {
    std::size_t class_count = 0;
    bool sizes_equal = false;
    bool sizes_divisible = false;
    bool cross_intersections_nonzero = false;
    std::vector<PairWitness> violations;
    bool pass() const { return sizes_equal && sizes_divisible && cross_intersections_nonzero; }
};

// The diagonal-indexed family, one set per characteristic class: equal
// sizes divisible by m, pairwise intersections nonzero mod m.
UniformReport uniform_subsystem(const SetSystem& ss);

// Enumerates all n^n strings in lexicographic order.
void for_each_string(unsigned n, const std::function<void(const SymbolString&)>& fn);

std::size_t intersection_size(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b);

unsigned setsys_budget(); // default 6 variables, HASS_BUDGET_OVERRIDE raises
unsigned lemma3_budget(); // default 4 (n^{2n} cells), HASS_BUDGET_OVERRIDE raises

} // namespace hass::setsys
