#include <doctest.h>

#include "hass/covvec.hpp"
#include "hass/rng.hpp"

using namespace hass;
using namespace hass::covvec;

TEST_CASE("inner and hadamard weight on simple vectors") {
    auto zero = CoveringVector::dense(6, {0, 0, 0, 0});
    CHECK(inner(zero, zero) == 0);
    CHECK(hadamard_weight(zero, zero) == 0);

    auto u = CoveringVector::incidence(5, 6, {0, 2, 4});
    auto v = CoveringVector::incidence(5, 6, {2, 3, 4});
    CHECK(inner(u, v) == 2);           // shared support {2,4}
    CHECK(hadamard_weight(u, v) == 2); // coordinatewise AND
    CHECK(inner(u, u) == 3);

    auto w = CoveringVector::dense(6, {1, 0, 5, 0, 3});
    CHECK(inner(u, w) == (1 + 5 + 3) % 6);
    CHECK(hadamard_weight(u, w) == 3);
    // 2*3 = 6 vanishes mod 6: a nonzero-coordinate pair can still drop out
    // of the Hadamard weight.
    auto a = CoveringVector::dense(6, {2});
    auto b = CoveringVector::dense(6, {3});
    CHECK(inner(a, b) == 0);
    CHECK(hadamard_weight(a, b) == 0);

    CHECK_THROWS_AS(inner(u, CoveringVector::incidence(4, 6, {0})), DimensionMismatch);
}

TEST_CASE("sparse and dense storage agree") {
    Rng rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        const std::uint64_t dim = 20;
        std::vector<std::uint32_t> support;
        std::vector<std::uint64_t> coords(dim, 0);
        for (std::uint32_t i = 0; i < dim; ++i)
            if (rng.uniform_u64_below(2)) {
                support.push_back(i);
                coords[i] = 1;
            }
        auto s = CoveringVector::incidence(dim, 6, support);
        auto d = CoveringVector::dense(6, coords);
        auto other = CoveringVector::incidence(dim, 6, {1, 3, 5, 7, 9});
        CHECK(inner(s, other) == inner(d, other));
        CHECK(hadamard_weight(s, other) == hadamard_weight(d, other));
        CHECK(inner(s, d) == inner(d, d));
    }
}

TEST_CASE("set-system vectors realize intersection sizes, n <= 4") {
    for (unsigned n = 2; n <= 4; ++n) {
        auto ss = setsys::build_set_system(n, poly::ModulusSpec::from_m(6), true);
        std::vector<CoveringVector> family;
        for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(from_set(ss, i));

        for (std::size_t i = 0; i < family.size(); ++i) {
            CHECK(inner(family[i], family[i]) == 0); // |H| = 0 mod m
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                const std::uint64_t inter =
                    setsys::intersection_size(ss.sets[i], ss.sets[j]);
                CHECK(inner(family[i], family[j]) == inter % 6);
                CHECK(hadamard_weight(family[i], family[j]) == inter);
                // Per-prime-power residues stay in {0,1} for distinct sets.
                CHECK(inter % 2 <= 1);
                CHECK(inter % 3 <= 1);
            }
        }
    }
}

TEST_CASE("identical sets give vanishing inner product") {
    auto ss = setsys::build_set_system(3, poly::ModulusSpec::from_m(6), true);
    auto v = from_set(ss, 2);
    CHECK(inner(v, v) == 0);
    CHECK(v.source() == 2);
    CHECK_THROWS_AS(from_set(ss, 99), UnknownIndex);
}

TEST_CASE("covering family verification at n=3, m=6") {
    auto ss = setsys::build_set_system(3, poly::ModulusSpec::from_m(6), true);
    std::vector<CoveringVector> family;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(from_set(ss, i));

    auto par = verify_covering_family(family, ss.modulus, std::nullopt, Exec::Parallel);
    auto ser = verify_covering_family(family, ss.modulus, std::nullopt, Exec::Serial);
    CHECK(par.pass());
    CHECK(ser.pass());
    CHECK(par.realized_residues == ser.realized_residues);
    CHECK(par.residue_bound == 3); // 2^2 - 1 residue classes
    CHECK(par.realized_residues.size() <= 3);
    for (std::uint64_t r : par.realized_residues) {
        CHECK(r >= 1);
        CHECK(r <= 5);
    }

    // The realized residues form a valid S for the explicit check.
    auto with_s = verify_covering_family(family, ss.modulus, par.realized_residues);
    CHECK(with_s.pass());
}

TEST_CASE("single-vector family passes trivially") {
    auto ss = setsys::build_set_system(2, poly::ModulusSpec::from_m(6), true);
    std::vector<CoveringVector> family{from_set(ss, 0)};
    auto report = verify_covering_family(family, ss.modulus);
    CHECK(report.pass());
    CHECK(report.pairs_checked == 0);
    CHECK_THROWS_AS(verify_covering_family({}, ss.modulus), InvalidArgument);
}

TEST_CASE("tampered vector breaks self-orthogonality with witness") {
    auto ss = setsys::build_set_system(3, poly::ModulusSpec::from_m(6), true);
    std::vector<CoveringVector> family;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(from_set(ss, i));
    family[1].set_coord(0, family[1].coord(0) == 0 ? 1 : 0);
    auto report = verify_covering_family(family, ss.modulus);
    CHECK_FALSE(report.pass());
    CHECK_FALSE(report.witnesses.empty());
}
