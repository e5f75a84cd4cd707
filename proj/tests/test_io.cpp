#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hass/cli.hpp"
#include "hass/json_io.hpp"
#include "hass/rng.hpp"

using namespace hass;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hass_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("hex encoding round-trips") {
    CHECK(to_hex(0) == "0");
    CHECK(to_hex(10) == "a");
    CHECK(to_hex(255) == "ff");
    CHECK(from_hex("ff") == 255);
    CHECK(from_hex("0xFF") == 255);
    CHECK(from_hex("0a") == 10);
    CHECK(from_decimal("31") == 31);
    CHECK_THROWS_AS(from_hex("xyz"), ParseError);
    CHECK_THROWS_AS(from_decimal("1f"), ParseError);

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        BigInt v = rng.uniform_below(BigInt(1) << 200);
        CHECK(from_hex(to_hex(v)) == v);
    }
}

TEST_CASE("group params JSON round-trip") {
    auto g = numth::gen_group_params(3, 5, 7);
    auto j = io::group_params_to_json(g);
    CHECK(io::group_params_from_json(j) == g);

    auto toy = numth::group_params_from_primes({2, 3, 5});
    auto jt = io::group_params_to_json(toy);
    CHECK(jt.at("q").get<std::string>() == "1f"); // 31
    CHECK(io::group_params_from_json(jt) == toy);
}

TEST_CASE("polynomial JSON round-trip") {
    auto p = poly::build_polynomial(5, poly::ModulusSpec::from_m(6));
    auto j = io::poly_to_json(p);
    CHECK(j.at("terms").size() == 1 + 5 + 10); // degrees 0,1,2 all nonzero
    auto back = io::poly_from_json(j);
    CHECK(back == p);

    // Tampering with a term flows into verify_contract, not the parser.
    auto tampered = j;
    for (auto& term : tampered.at("terms"))
        if (term.at("indices").size() == 1) term["coeff"] = 4;
    auto bad = io::poly_from_json(tampered);
    CHECK_FALSE(poly::verify_contract(bad).pass);

    // Inconsistent same-degree coefficients are a format error.
    auto broken = j;
    broken.at("terms")[1]["coeff"] = 5; // a degree-1 term diverging from its peers
    CHECK_THROWS_AS(io::poly_from_json(broken), ParseError);
}

TEST_CASE("access structure and bundle JSON round-trip") {
    ases::AccessStructure access{3, {{1, 2}, {2, 3}}};
    CHECK(io::access_from_json(io::access_to_json(access)) == access);

    auto group = numth::group_params_from_primes({2, 3, 5});
    auto bundle = scheme::share(group, group, access, 10, 3);
    auto pub = scheme::public_part(bundle);
    CHECK(io::bundle_from_json(io::bundle_to_json(pub)) == pub);
}

TEST_CASE("tokens JSON round-trip") {
    auto group = numth::group_params_from_primes({2, 3, 5});
    auto inst = ases::make_instance(group, 3, {1, 2}, {7, 23, 11}, 3);
    auto j = io::tokens_to_json(inst, "ases-7");
    auto file = io::tokens_from_json(j);
    CHECK(file.q == 31);
    CHECK(file.run_id == "ases-7");
    CHECK(file.tokens == inst.tokens);
}

TEST_CASE("covering vector family JSON round-trip") {
    auto ss = setsys::build_set_system(3, poly::ModulusSpec::from_m(6), true);
    std::vector<covvec::CoveringVector> family;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(covvec::from_set(ss, i));
    auto j = io::covvec_family_to_json(family, ss.h(), ss.modulus.m);
    auto back = io::covvec_family_from_json(j);
    REQUIRE(back.size() == family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        CHECK(back[i].dim() == family[i].dim());
        for (std::size_t k = 0; k < family.size(); ++k)
            CHECK(covvec::inner(back[i], back[k]) == covvec::inner(family[i], family[k]));
    }
}

TEST_CASE("CLI: setup is seed-deterministic and byte-identical") {
    TempDir dir;
    auto p1 = dir.file("a.json");
    auto p2 = dir.file("b.json");
    CHECK(cli::run({"setup", "--parties", "3", "--prime-bits", "5", "--seed", "1", "-o", p1}) == 0);
    CHECK(cli::run({"setup", "--parties", "3", "--prime-bits", "5", "--seed", "1", "-o", p2}) == 0);
    CHECK(slurp(p1) == slurp(p2));
    auto g = io::group_params_from_json(io::read_file(p1));
    // q = u * prod(p_i) + 1.
    BigInt w = 1;
    for (const auto& p : g.base_primes) w *= p;
    CHECK((g.q - 1) % w == 0);
}

TEST_CASE("CLI: poly build/eval/verify flow") {
    TempDir dir;
    auto poly_path = dir.file("poly.json");
    CHECK(cli::run({"poly", "build", "--n", "5", "--m", "6", "-o", poly_path}) == 0);
    CHECK(cli::run({"poly", "eval", "--poly", poly_path, "--input", "11111"}) == 0);
    CHECK(cli::run({"poly", "verify", "--poly", poly_path}) == 0);
    CHECK(cli::run({"poly", "verify", "--n", "7", "--m", "6"}) == 0);
}

TEST_CASE("CLI: setsys build with verification") {
    TempDir dir;
    auto report_path = dir.file("report.json");
    CHECK(cli::run({"setsys", "build", "--m", "6", "--n", "3", "--verify", "--dedupe", "--lemma3",
                    "--uniform", "-o", report_path}) == 0);
    auto j = io::read_file(report_path);
    CHECK(j.at("index_count").get<std::string>() == "93"); // 147 in hex
    CHECK(j.at("distinct_count").get<std::size_t>() == 7);
    CHECK(j.at("conditions").at("c2").get<std::string>() == "pass");
}

TEST_CASE("CLI: ases encode + hsver, determinism, exit codes") {
    TempDir dir;
    auto params = dir.file("params.json");
    auto tokens1 = dir.file("tokens1.json");
    auto tokens2 = dir.file("tokens2.json");
    auto audit = dir.file("audit.json");
    CHECK(cli::run({"setup", "--primes", "2,3,5", "--seed", "1", "-o", params}) == 0);
    CHECK(cli::run({"ases", "encode", "--params", params, "--omega", "1,2", "--seed", "7", "-o",
                    tokens1, "--emit-secret-audit", audit}) == 0);
    CHECK(cli::run({"ases", "encode", "--params", params, "--omega", "1,2", "--seed", "7", "-o",
                    tokens2}) == 0);
    CHECK(slurp(tokens1) == slurp(tokens2));

    CHECK(cli::run({"ases", "hsver", "--tokens", tokens1, "--coalition", "1,2"}) == 0);
    CHECK(cli::run({"ases", "hsver", "--tokens", tokens1, "--coalition", "1,2", "--strict"}) == 0);
    CHECK(cli::run({"ases", "hsver", "--tokens", tokens1, "--coalition", "1,3"}) == 1);
    CHECK(cli::run({"ases", "hsver", "--tokens", tokens1, "--coalition", "1,2,3", "--strict"}) ==
          1); // strict full product on a strict superset fails by design

    // Audit stays dealer-side: the token file must not contain identifiers.
    auto tj = io::read_file(tokens1);
    CHECK_FALSE(tj.contains("identifiers"));
    auto aj = io::read_file(audit);
    CHECK(aj.contains("identifiers"));
    CHECK(aj.at("omega").get<std::vector<unsigned>>() == std::vector<unsigned>{1, 2});
}

TEST_CASE("CLI: scheme share + recon round-trip") {
    TempDir dir;
    auto params = dir.file("params.json");
    auto access = dir.file("access.json");
    auto bundle1 = dir.file("bundle1.json");
    auto bundle2 = dir.file("bundle2.json");
    CHECK(cli::run({"setup", "--primes", "2,3,5", "--seed", "1", "-o", params}) == 0);
    io::write_file(access, io::json{{"parties", 3}, {"minimal_sets", {{1, 2}}}});

    CHECK(cli::run({"scheme", "share", "--access", access, "--secret-hex", "0a", "--seed", "9",
                    "--params", params, "--share-params", params, "-o", bundle1}) == 0);
    CHECK(cli::run({"scheme", "share", "--access", access, "--secret-hex", "0a", "--seed", "9",
                    "--params", params, "--share-params", params, "-o", bundle2}) == 0);
    CHECK(slurp(bundle1) == slurp(bundle2));

    CHECK(cli::run({"scheme", "recon", "--bundle", bundle1, "--coalition", "1,2"}) == 0);
    CHECK(cli::run({"scheme", "recon", "--bundle", bundle1, "--coalition", "1,3"}) == 1);

    // Round-trip: the written bundle re-parses to an equal value.
    auto pub = io::bundle_from_json(io::read_file(bundle1));
    CHECK(io::bundle_to_json(pub) == io::read_file(bundle1));
}

TEST_CASE("CLI: generated groups without --params are recorded via the seed") {
    TempDir dir;
    auto access = dir.file("access.json");
    auto b1 = dir.file("b1.json");
    auto b2 = dir.file("b2.json");
    io::write_file(access, io::json{{"parties", 2}, {"minimal_sets", {{1, 2}}}});
    CHECK(cli::run({"scheme", "share", "--access", access, "--secret-hex", "05", "--seed", "11",
                    "--prime-bits", "4", "-o", b1}) == 0);
    CHECK(cli::run({"scheme", "share", "--access", access, "--secret-hex", "05", "--seed", "11",
                    "--prime-bits", "4", "-o", b2}) == 0);
    CHECK(slurp(b1) == slurp(b2));
    auto pub = io::bundle_from_json(io::read_file(b1));
    CHECK(scheme::recon(pub, {1, 2}) == 5);
}

TEST_CASE("CLI: count emits csv and json") {
    TempDir dir;
    auto csv = dir.file("table.csv");
    CHECK(cli::run({"count", "--max-n", "4", "--format", "csv", "-o", csv}) == 0);
    auto text = slurp(csv);
    CHECK(text.find("6940") != std::string::npos); // S(4)
    auto jpath = dir.file("table.json");
    CHECK(cli::run({"count", "--max-n", "4", "--format", "json", "-o", jpath}) == 0);
    auto j = io::read_file(jpath);
    CHECK(j.at("table").size() == 4);
    CHECK(j.at("table")[3].at("s_of_n").get<std::string>() == "1b1c"); // 6940
}

TEST_CASE("CLI: usage errors exit with 2") {
    CHECK(cli::run({"nonsense"}) == 2);
    CHECK(cli::run({"setup"}) == 2);                      // missing --seed
    CHECK(cli::run({"poly", "build", "--n", "3"}) == 2);  // missing --m
    CHECK(cli::run({"poly", "eval", "--poly", "/nonexistent.json", "--input", "1"}) == 2);
}
