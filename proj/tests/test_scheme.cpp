#include <doctest.h>

#include <algorithm>
#include <set>

#include "hass/errors.hpp"
#include "hass/scheme.hpp"

using namespace hass;
using namespace hass::scheme;

namespace {

numth::GroupParams toy_group() { return numth::group_params_from_primes({2, 3, 5}); } // q = 31

} // namespace

TEST_CASE("minimal_sets reduces to an antichain") {
    auto a = minimal_sets(3, {{1, 2}, {1, 2, 3}});
    CHECK(a.minimal_sets == std::vector<std::vector<unsigned>>{{1, 2}});

    auto b = minimal_sets(3, {{1, 2}, {2, 3}});
    CHECK(b.minimal_sets == std::vector<std::vector<unsigned>>{{1, 2}, {2, 3}});

    auto c = minimal_sets(3, {{1}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(c.minimal_sets == std::vector<std::vector<unsigned>>{{1}, {2, 3}});

    CHECK_THROWS_AS(minimal_sets(3, {}), InvalidArgument);
    CHECK_THROWS_AS(minimal_sets(3, {{1, 4}}), InvalidArgument);
}

TEST_CASE("validate_structure") {
    AccessStructure ok{4, {{1, 2}, {3, 4}}};
    CHECK(validate_structure(ok, 4).pass());

    AccessStructure small{4, {{1}}};
    auto r1 = validate_structure(small, 4);
    CHECK_FALSE(r1.pass());
    CHECK_FALSE(r1.offenders.empty());

    AccessStructure contained{4, {{1, 2}, {1, 2, 3}}};
    auto r2 = validate_structure(contained, 4);
    CHECK_FALSE(r2.antichain);

    // The will example: 15 parties, {Bob, Tom, Catherine} as a trio is far
    // below ceil(15/2) = 8 and must be reported, not silently accepted.
    AccessStructure will{15, {{2, 5, 7}}};
    auto r3 = validate_structure(will, 15);
    CHECK_FALSE(r3.pass());
    CHECK_FALSE(r3.sizes_ok);
}

TEST_CASE("toy run reproduces shares (21, 30, 17) and recon gives 10") {
    auto group = toy_group();
    // Token side and share side on the same toy group; y = (11, 19, 7)
    // satisfies 11 + 19 = 30 = 0 mod 30 with gamma = 3.
    auto token_inst = ases::make_instance(group, 3, {1, 2}, {7, 23, 11}, 3);
    auto share_inst = ases::make_instance(group, 3, {1, 2}, {11, 19, 7}, 3);

    auto run = make_run(token_inst, share_inst, {4, 18}, 10);
    CHECK(run.shares == std::vector<BigInt>{21, 30, 17});
    CHECK((run.shares[0] * run.shares[1]) % 31 == 10);

    ShareBundle bundle;
    bundle.token_group = group;
    bundle.share_group = group;
    bundle.access = AccessStructure{3, {{1, 2}}};
    bundle.secret = 10;
    bundle.runs.push_back(run);
    auto pub = public_part(bundle);

    CHECK(recon(pub, {1, 2}) == 10);
    CHECK(recon(pub, {1, 2, 3}) == 10); // via witness {P1,P2}
    CHECK(recon_strict(pub, {1, 2}) == 10);
    CHECK_THROWS_AS(recon(pub, {1, 3}), NotAuthorized);
    CHECK_THROWS_AS(recon(pub, {2}), NotAuthorized);
    CHECK_THROWS_AS(recon(pub, {}), InvalidArgument);
    CHECK_THROWS_AS(recon(pub, {1, 1, 2}), InvalidArgument);
    CHECK_THROWS_AS(recon(pub, {5}), InvalidArgument);
}

TEST_CASE("make_run validates blinding") {
    auto group = toy_group();
    auto token_inst = ases::make_instance(group, 3, {1, 2}, {7, 23, 11}, 3);
    auto share_inst = ases::make_instance(group, 3, {1, 2}, {11, 19, 7}, 3);
    // 4 * 17 = 68 = 6 mod 31 != 10.
    CHECK_THROWS_AS(make_run(token_inst, share_inst, {4, 17}, 10), InvalidArgument);
    CHECK_THROWS_AS(make_run(token_inst, share_inst, {4}, 10), InvalidArgument);
    CHECK_THROWS_AS(make_run(token_inst, share_inst, {4, 0}, 10), InvalidArgument);
}

TEST_CASE("share and recon round-trip over seeds and structures") {
    auto group = toy_group();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        AccessStructure access{3, {{1, 2}, {2, 3}}};
        auto bundle = share(group, group, access, 10, seed);
        REQUIRE(bundle.runs.size() == 2);
        auto pub = public_part(bundle);

        CHECK(recon(pub, {1, 2}) == 10);
        CHECK(recon(pub, {2, 3}) == 10);
        CHECK(recon(pub, {1, 2, 3}) == 10);
        CHECK_THROWS_AS(recon(pub, {1, 3}), NotAuthorized);
        CHECK_THROWS_AS(recon(pub, {1}), NotAuthorized);

        // Exactly one token and one share per party per run.
        for (const auto& run : pub.runs) {
            CHECK(run.tokens.size() == 3);
            CHECK(run.shares.size() == 3);
        }
    }
}

TEST_CASE("share determinism and input validation") {
    auto group = toy_group();
    AccessStructure access{3, {{1, 2}}};
    auto b1 = share(group, group, access, 7, 99);
    auto b2 = share(group, group, access, 7, 99);
    CHECK(public_part(b1) == public_part(b2));

    CHECK_THROWS_AS(share(group, group, access, 0, 1), InvalidArgument);  // k not a unit
    CHECK_THROWS_AS(share(group, group, access, 31, 1), InvalidArgument); // k outside Z_q'
    AccessStructure bad{3, {{1}}};
    CHECK_THROWS_AS(share(group, group, bad, 10, 1), InvalidArgument);
    AccessStructure nested{3, {{1, 2}, {1, 2, 3}}};
    CHECK_THROWS_AS(share(group, group, nested, 10, 1), InvalidArgument);
}

TEST_CASE("k-independence outside omega under a fixed seed") {
    auto group = toy_group();
    AccessStructure access{3, {{1, 2}, {1, 3}}};
    auto b1 = share(group, group, access, 10, 4242);
    auto b2 = share(group, group, access, 21, 4242);

    REQUIRE(b1.runs.size() == b2.runs.size());
    for (std::size_t r = 0; r < b1.runs.size(); ++r) {
        // Identical token instances.
        CHECK(b1.runs[r].token_instance == b2.runs[r].token_instance);
        CHECK(b1.runs[r].share_instance == b2.runs[r].share_instance);
        const auto& omega = access.minimal_sets[r];
        for (unsigned p = 1; p <= 3; ++p) {
            const bool inside = std::find(omega.begin(), omega.end(), p) != omega.end();
            if (!inside) CHECK(b1.runs[r].shares[p - 1] == b2.runs[r].shares[p - 1]);
        }
        // Blinding differs only in the last factor.
        for (std::size_t i = 0; i + 1 < b1.runs[r].blinding.size(); ++i)
            CHECK(b1.runs[r].blinding[i] == b2.runs[r].blinding[i]);
    }
}

TEST_CASE("share accounting: two elements per party per run") {
    auto group = toy_group();
    AccessStructure access{3, {{1, 2}, {2, 3}, {1, 3}}};
    auto pub = public_part(share(group, group, access, 10, 5));
    CHECK(pub.runs.size() == 3);
    // Per party: one token + one share per run = 2 * |Gamma_0| elements.
    for (const auto& run : pub.runs) {
        CHECK(run.tokens.size() == access.ell);
        CHECK(run.shares.size() == access.ell);
    }
}

TEST_CASE("identifiers never repeat across runs") {
    auto group = toy_group();
    AccessStructure access{3, {{1, 2}, {2, 3}, {1, 3}}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto bundle = share(group, group, access, 10, seed);
        std::set<BigInt> token_ids, share_ids;
        for (const auto& run : bundle.runs) {
            for (const auto& x : run.token_instance.identifiers)
                CHECK(token_ids.insert(x).second);
            for (const auto& y : run.share_instance.identifiers)
                CHECK(share_ids.insert(y).second);
        }
    }
}
