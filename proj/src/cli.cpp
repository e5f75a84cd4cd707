#include "hass/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hass/counting.hpp"
#include "hass/errors.hpp"
#include "hass/json_io.hpp"
#include "hass/oracle.hpp"
#include "hass/rng.hpp"

namespace hass::cli {

namespace {

std::vector<unsigned> parse_id_list(const std::string& csv) {
    std::vector<unsigned> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (out.empty()) throw InvalidArgument("empty id list");
    return out;
}

std::vector<BigInt> parse_prime_list(const std::string& csv) {
    std::vector<BigInt> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(from_decimal(item));
    return out;
}

void emit(const io::json& j, const std::string& out_path, bool to_stdout) {
    if (!out_path.empty()) io::write_file(out_path, j);
    if (to_stdout || out_path.empty()) std::cout << io::dump(j);
}

struct CommonOpts {
    std::string out_path;
    bool json_stdout = false;
    bool serial = false;
};

Exec exec_of(const CommonOpts& c) { return c.serial ? Exec::Serial : Exec::Parallel; }

int cmd_setup(unsigned parties, unsigned prime_bits, std::uint64_t seed,
              const std::string& primes_csv, const CommonOpts& common) {
    numth::GroupParams params;
    if (!primes_csv.empty())
        params = numth::group_params_from_primes(parse_prime_list(primes_csv));
    else
        params = numth::gen_group_params(parties, prime_bits, seed);
    emit(io::group_params_to_json(params), common.out_path, common.json_stdout);
    return 0;
}

int cmd_count(unsigned max_n, const std::string& format, const CommonOpts& common) {
    if (max_n < 1) throw InvalidArgument("count: --max-n must be >= 1");
    if (format == "csv") {
        std::ostringstream csv;
        csv << "n,s_of_n,s_of_n_gf,n_pow_3n,growth_bound_holds,n_k\n";
        for (unsigned n = 1; n <= max_n; ++n) {
            BigInt npow = 1;
            for (unsigned i = 0; i < 3 * n; ++i) npow *= n;
            csv << n << "," << counting::s_of_n_sum(n) << "," << counting::s_of_n_gf(n) << ","
                << npow << ",";
            csv << (n <= 2 ? "n/a" : (counting::growth_bound_check(n) ? "true" : "false"));
            csv << ",";
            for (unsigned k = 1; k <= n; ++k) csv << (k > 1 ? "|" : "") << counting::n_k(n, k);
            csv << "\n";
        }
        if (!common.out_path.empty()) {
            std::ofstream f(common.out_path, std::ios::binary);
            if (!f) throw Error("cannot write " + common.out_path);
            f << csv.str();
        } else {
            std::cout << csv.str();
        }
        return 0;
    }
    io::json rows = io::json::array();
    for (unsigned n = 1; n <= max_n; ++n) {
        BigInt npow = 1;
        for (unsigned i = 0; i < 3 * n; ++i) npow *= n;
        io::json nk = io::json::array();
        for (unsigned k = 1; k <= n; ++k) nk.push_back(to_hex(counting::n_k(n, k)));
        io::json row = {{"n", n},
                        {"n_k", nk},
                        {"s_of_n", to_hex(counting::s_of_n_sum(n))},
                        {"s_of_n_gf", to_hex(counting::s_of_n_gf(n))},
                        {"n_pow_3n", to_hex(npow)}};
        if (n > 2) row["growth_bound_holds"] = counting::growth_bound_check(n);
        rows.push_back(row);
    }
    emit(io::json{{"table", rows}}, common.out_path, common.json_stdout);
    return 0;
}

int cmd_poly_build(unsigned n, std::uint64_t m, const CommonOpts& common) {
    auto p = poly::build_polynomial(n, poly::ModulusSpec::from_m(m));
    emit(io::poly_to_json(p), common.out_path, common.json_stdout);
    return 0;
}

int cmd_poly_eval(const std::string& poly_path, const std::string& input,
                  const CommonOpts& common) {
    auto p = io::poly_from_json(io::read_file(poly_path));
    if (input.size() != p.n) throw InvalidArgument("poly eval: input length != n");
    std::vector<int> z;
    for (char c : input) {
        if (c != '0' && c != '1') throw InvalidArgument("poly eval: input must be a 0/1 string");
        z.push_back(c - '0');
    }
    auto result = poly::eval(p, z);
    io::json residues = io::json::array();
    for (std::size_t i = 0; i < p.modulus.factors.size(); ++i) {
        const auto& f = p.modulus.factors[i];
        std::uint64_t pa = 1;
        for (unsigned e = 0; e < f.alpha; ++e) pa *= f.p;
        residues.push_back({{"prime_power", pa}, {"residue", result.per_prime_power[i]}});
    }
    emit(io::json{{"value", result.value}, {"per_prime_power", residues}}, common.out_path,
         common.json_stdout || common.out_path.empty());
    return 0;
}

int cmd_poly_verify(const std::string& poly_path, unsigned n, std::uint64_t m,
                    const CommonOpts& common) {
    poly::IntersectionPolynomial p;
    if (!poly_path.empty())
        p = io::poly_from_json(io::read_file(poly_path));
    else
        p = poly::build_polynomial(n, poly::ModulusSpec::from_m(m));
    auto report = poly::verify_contract(p, exec_of(common));
    io::json j = {{"pass", report.pass},
                  {"zero_set_ok", report.zero_set_ok},
                  {"residues_ok", report.residues_ok},
                  {"inputs_checked", report.inputs_checked},
                  {"degree", report.degree},
                  {"degree_budget", report.degree_budget},
                  {"dimension_root", report.dimension_root},
                  {"millis", report.millis}};
    if (!report.pass) {
        j["witness_mask"] = report.witness_mask;
        j["witness_reason"] = report.witness_reason;
    }
    emit(j, common.out_path, common.json_stdout || common.out_path.empty());
    return report.pass ? 0 : 1;
}

int cmd_setsys(unsigned n, std::uint64_t m, bool verify, bool dedupe, bool lemma3, bool uniform,
               const std::string& vectors_path, const CommonOpts& common) {
    auto ss = setsys::build_set_system(n, poly::ModulusSpec::from_m(m), dedupe);
    setsys::Theorem1Report t1;
    setsys::Lemma3Report l3;
    setsys::UniformReport uni;
    bool have_l3 = false, have_uni = false;
    bool pass = true;
    if (verify) {
        t1 = setsys::verify_theorem1(ss, exec_of(common));
        pass = pass && t1.pass();
        if (lemma3 || n <= setsys::lemma3_budget()) {
            l3 = setsys::verify_lemma3(ss, exec_of(common));
            have_l3 = true;
            pass = pass && l3.pass();
        }
        if (uniform) {
            uni = setsys::uniform_subsystem(ss);
            have_uni = true;
            pass = pass && uni.pass();
        }
    }
    if (!vectors_path.empty()) {
        std::vector<covvec::CoveringVector> family;
        for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(covvec::from_set(ss, i));
        io::write_file(vectors_path, io::covvec_family_to_json(family, ss.h(), ss.modulus.m));
    }
    emit(io::setsys_report_to_json(ss, t1, have_l3 ? &l3 : nullptr, have_uni ? &uni : nullptr),
         common.out_path, common.json_stdout || common.out_path.empty());
    return verify && !pass ? 1 : 0;
}

int cmd_ases_encode(const std::string& params_path, const std::string& omega_csv,
                    std::uint64_t seed, unsigned parties, const std::string& audit_path,
                    const CommonOpts& common) {
    auto group = io::group_params_from_json(io::read_file(params_path));
    const unsigned ell = parties == 0 ? group.eta : parties;
    auto inst = ases::encode(group, ell, parse_id_list(omega_csv), seed);
    const std::string run_id = "ases-" + std::to_string(seed);
    emit(io::tokens_to_json(inst, run_id), common.out_path, common.json_stdout);
    if (!audit_path.empty()) io::write_file(audit_path, io::audit_to_json(inst, run_id));
    return 0;
}

int cmd_ases_hsver(const std::string& tokens_path, const std::string& coalition_csv, bool strict,
                   const CommonOpts& common) {
    auto file = io::tokens_from_json(io::read_file(tokens_path));
    auto coalition = parse_id_list(coalition_csv);
    std::vector<BigInt> tokens;
    for (unsigned p : coalition) {
        if (p < 1 || p > file.tokens.size())
            throw InvalidArgument("hsver: party id out of range");
        tokens.push_back(file.tokens[p - 1]);
    }
    io::json j;
    bool authorized;
    if (strict) {
        authorized = ases::hsver_strict(tokens, file.q);
        j = {{"mode", "strict"}, {"authorized", authorized}};
    } else {
        auto res = ases::hsver_monotone(tokens, file.q);
        authorized = res.authorized;
        io::json witness = io::json::array();
        for (std::size_t idx : res.witness) witness.push_back(coalition[idx]);
        j = {{"mode", "monotone"}, {"authorized", authorized}, {"witness", witness}};
    }
    emit(j, common.out_path, common.json_stdout || common.out_path.empty());
    return authorized ? 0 : 1;
}

int cmd_scheme_share(const std::string& access_path, const std::string& secret_hex,
                     std::uint64_t seed, const std::string& params_path,
                     const std::string& share_params_path, unsigned prime_bits,
                     const std::string& audit_path, const CommonOpts& common) {
    auto access = io::access_from_json(io::read_file(access_path));
    numth::GroupParams token_group, share_group;
    if (!params_path.empty())
        token_group = io::group_params_from_json(io::read_file(params_path));
    else
        token_group = numth::gen_group_params(access.ell, prime_bits, Rng::derive(seed, 101));
    if (!share_params_path.empty())
        share_group = io::group_params_from_json(io::read_file(share_params_path));
    else
        share_group = numth::gen_group_params(access.ell, prime_bits, Rng::derive(seed, 102));
    auto bundle = scheme::share(token_group, share_group, access, from_hex(secret_hex), seed);
    emit(io::bundle_to_json(scheme::public_part(bundle)), common.out_path, common.json_stdout);
    if (!audit_path.empty()) {
        io::json runs = io::json::array();
        for (std::size_t r = 0; r < bundle.runs.size(); ++r) {
            io::json blinding = io::json::array();
            for (const auto& b : bundle.runs[r].blinding) blinding.push_back(to_hex(b));
            runs.push_back(
                {{"run_id", "run-" + std::to_string(r)},
                 {"token", io::audit_to_json(bundle.runs[r].token_instance, "token")},
                 {"share", io::audit_to_json(bundle.runs[r].share_instance, "share")},
                 {"blinding", blinding}});
        }
        io::write_file(audit_path, io::json{{"warning", "dealer secret - do not distribute"},
                                            {"secret", to_hex(bundle.secret)},
                                            {"access", io::access_to_json(bundle.access)},
                                            {"runs", runs}});
    }
    return 0;
}

int cmd_scheme_recon(const std::string& bundle_path, const std::string& coalition_csv,
                     bool strict, const CommonOpts& common) {
    auto pub = io::bundle_from_json(io::read_file(bundle_path));
    auto coalition = parse_id_list(coalition_csv);
    try {
        BigInt secret = strict ? scheme::recon_strict(pub, coalition)
                               : scheme::recon(pub, coalition);
        emit(io::json{{"authorized", true}, {"secret", to_hex(secret)}}, common.out_path,
             common.json_stdout || common.out_path.empty());
        return 0;
    } catch (const NotAuthorized&) {
        emit(io::json{{"authorized", false}}, common.out_path,
             common.json_stdout || common.out_path.empty());
        return 1;
    }
}

int cmd_oracle_all(const std::string& grid, const CommonOpts& common) {
    if (grid != "default") throw InvalidArgument("oracle: unknown grid '" + grid + "'");
    io::json reports = io::json::array();
    bool all_pass = true;
    auto add = [&](const oracle::OracleReport& r) {
        all_pass = all_pass && r.pass;
        io::json j = {{"check", r.check},
                      {"instance", r.instance},
                      {"pass", r.pass},
                      {"millis", r.millis}};
        if (!r.witness.empty()) j["witness"] = r.witness;
        reports.push_back(j);
    };

    // Counting cross-check.
    for (unsigned n = 1; n <= 5; ++n) {
        oracle::OracleReport r;
        r.check = "cover_pair_count";
        r.instance = "n=" + std::to_string(n);
        auto t0 = std::chrono::steady_clock::now();
        BigInt brute = oracle::cover_pair_count(n);
        r.pass = brute == counting::s_of_n_sum(n);
        if (!r.pass) r.witness = "brute " + to_hex(brute);
        r.millis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        add(r);
    }

    // Set-system intersections on the default grid.
    for (unsigned n = 2; n <= 5; ++n) {
        auto ss = setsys::build_set_system(n, poly::ModulusSpec::from_m(6), true);
        add(oracle::naive_set_intersections(ss));
    }

    // Protocol coalitions over ell in {2..6}.
    for (unsigned ell = 2; ell <= 6; ++ell) {
        const unsigned bits = ell <= 2 ? 4 : (ell <= 5 ? 5 : 6);
        auto group = numth::gen_group_params(ell, bits, 1000 + ell);
        std::vector<unsigned> omega;
        for (unsigned p = 1; p <= std::max(2u, (ell + 1) / 2); ++p) omega.push_back(p);
        auto inst = ases::encode(group, ell, omega, 42);
        add(oracle::exhaustive_coalitions(inst));
    }

    emit(reports, common.out_path, common.json_stdout || common.out_path.empty());
    return all_pass ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Set-system and covering-vector toolkit with an access-structure-hiding "
                 "secret sharing protocol"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_flag("--json", common.json_stdout, "echo the primary JSON artifact on stdout");
    app.add_flag("--serial", common.serial, "run verification kernels serially");

    // setup
    auto* setup = app.add_subcommand("setup", "generate group parameters");
    unsigned parties = 2, prime_bits = 5;
    std::uint64_t seed = 0;
    std::string primes_csv;
    setup->add_option("--parties", parties, "party count (eta base primes)");
    setup->add_option("--prime-bits", prime_bits, "bit length of each base prime");
    setup->add_option("--seed", seed, "RNG seed")->required();
    setup->add_option("--primes", primes_csv, "explicit base primes (decimal, comma separated)");
    setup->add_option("-o,--out", common.out_path, "output file (params.json)");

    // count
    auto* count = app.add_subcommand("count", "counting table: N_k, S(n), growth bound");
    unsigned max_n = 6;
    std::string format = "json";
    count->add_option("--max-n", max_n, "largest n in the table");
    count->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    count->add_option("-o,--out", common.out_path, "output file");

    // poly
    auto* polycmd = app.add_subcommand("poly", "intersection polynomial");
    polycmd->require_subcommand(1);
    unsigned poly_n = 5;
    std::uint64_t poly_m = 6;
    std::string poly_path, poly_input;
    auto* poly_build = polycmd->add_subcommand("build", "construct and serialize");
    poly_build->add_option("--n", poly_n, "variable count")->required();
    poly_build->add_option("--m", poly_m, "composite modulus")->required();
    poly_build->add_option("-o,--out", common.out_path, "output file (poly.json)");
    auto* poly_eval = polycmd->add_subcommand("eval", "evaluate on a 0/1 input");
    poly_eval->add_option("--poly", poly_path, "poly.json")->required();
    poly_eval->add_option("--input", poly_input, "0/1 string of length n")->required();
    poly_eval->add_option("-o,--out", common.out_path, "output file");
    auto* poly_verify = polycmd->add_subcommand("verify", "exhaustive contract check");
    poly_verify->add_option("--poly", poly_path, "poly.json (else --n/--m build)");
    poly_verify->add_option("--n", poly_n, "variable count");
    poly_verify->add_option("--m", poly_m, "composite modulus");
    poly_verify->add_option("-o,--out", common.out_path, "output file");

    // setsys
    auto* setsyscmd = app.add_subcommand("setsys", "set-system construction");
    setsyscmd->require_subcommand(1);
    auto* setsys_build = setsyscmd->add_subcommand("build", "materialize and optionally verify");
    unsigned ss_n = 3;
    std::uint64_t ss_m = 6;
    bool ss_verify = false, ss_dedupe = false, ss_lemma3 = false, ss_uniform = false;
    std::string vectors_path;
    setsys_build->add_option("--n", ss_n, "string length")->required();
    setsys_build->add_option("--m", ss_m, "composite modulus")->required();
    setsys_build->add_flag("--verify", ss_verify, "run the condition checks");
    setsys_build->add_flag("--dedupe", ss_dedupe, "collapse extensionally equal sets");
    setsys_build->add_flag("--lemma3", ss_lemma3, "full string-space cell check");
    setsys_build->add_flag("--uniform", ss_uniform, "uniform-subsystem check");
    setsys_build->add_option("--export-vectors", vectors_path, "write covering vectors JSON");
    setsys_build->add_option("-o,--out", common.out_path, "report file");

    // ases
    auto* asescmd = app.add_subcommand("ases", "access structure encoding");
    asescmd->require_subcommand(1);
    std::string params_path, omega_csv, audit_path, tokens_path, coalition_csv;
    unsigned ases_parties = 0;
    bool strict = false;
    auto* ases_encode = asescmd->add_subcommand("encode", "emit tokens for one minimal subset");
    ases_encode->add_option("--params", params_path, "params.json")->required();
    ases_encode->add_option("--omega", omega_csv, "minimal subset, e.g. 1,2")->required();
    ases_encode->add_option("--seed", seed, "RNG seed")->required();
    ases_encode->add_option("--parties", ases_parties, "party count (default eta)");
    ases_encode->add_option("--emit-secret-audit", audit_path,
                            "write dealer-side audit JSON (identifiers, omega)");
    ases_encode->add_option("-o,--out", common.out_path, "tokens file (tokens.json)");
    auto* ases_hsver = asescmd->add_subcommand("hsver", "verify a coalition from tokens");
    ases_hsver->add_option("--tokens", tokens_path, "tokens.json")->required();
    ases_hsver->add_option("--coalition", coalition_csv, "party ids, e.g. 1,2,3")->required();
    ases_hsver->add_flag("--strict", strict, "full-product test instead of subset search");
    ases_hsver->add_option("-o,--out", common.out_path, "output file");

    // scheme
    auto* schemecmd = app.add_subcommand("scheme", "share / reconstruct secrets");
    schemecmd->require_subcommand(1);
    std::string access_path, secret_hex, share_params_path, bundle_path;
    auto* scheme_share = schemecmd->add_subcommand("share", "produce a share bundle");
    scheme_share->add_option("--access", access_path, "access.json")->required();
    scheme_share->add_option("--secret-hex", secret_hex, "secret in Z_q'^*, hex")->required();
    scheme_share->add_option("--seed", seed, "RNG seed")->required();
    scheme_share->add_option("--params", params_path, "token group params.json (else generated)");
    scheme_share->add_option("--share-params", share_params_path,
                             "share group params.json (else generated)");
    scheme_share->add_option("--prime-bits", prime_bits, "bits for generated groups");
    scheme_share->add_option("--emit-secret-audit", audit_path, "write dealer audit JSON");
    scheme_share->add_option("-o,--out", common.out_path, "bundle file (bundle.json)");
    auto* scheme_recon = schemecmd->add_subcommand("recon", "reconstruct from a bundle");
    scheme_recon->add_option("--bundle", bundle_path, "bundle.json")->required();
    scheme_recon->add_option("--coalition", coalition_csv, "party ids")->required();
    scheme_recon->add_flag("--strict", strict, "literal full-product reconstruction");
    scheme_recon->add_option("-o,--out", common.out_path, "output file");

    // oracle
    auto* oraclecmd = app.add_subcommand("oracle", "independent brute-force verifiers");
    oraclecmd->require_subcommand(1);
    std::string grid = "default";
    auto* oracle_all = oraclecmd->add_subcommand("all", "run the whole grid");
    oracle_all->add_option("--grid", grid, "grid name");
    oracle_all->add_option("-o,--out", common.out_path, "report file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*setup) return cmd_setup(parties, prime_bits, seed, primes_csv, common);
        if (*count) return cmd_count(max_n, format, common);
        if (*poly_build) return cmd_poly_build(poly_n, poly_m, common);
        if (*poly_eval) return cmd_poly_eval(poly_path, poly_input, common);
        if (*poly_verify) return cmd_poly_verify(poly_path, poly_verify->count("--n") ? poly_n : 0,
                                                 poly_m, common);
        if (*setsys_build)
            return cmd_setsys(ss_n, ss_m, ss_verify, ss_dedupe, ss_lemma3, ss_uniform,
                              vectors_path, common);
        if (*ases_encode)
            return cmd_ases_encode(params_path, omega_csv, seed, ases_parties, audit_path, common);
        if (*ases_hsver) return cmd_ases_hsver(tokens_path, coalition_csv, strict, common);
        if (*scheme_share)
            return cmd_scheme_share(access_path, secret_hex, seed, params_path, share_params_path,
                                    prime_bits, audit_path, common);
        if (*scheme_recon) return cmd_scheme_recon(bundle_path, coalition_csv, strict, common);
        if (*oracle_all) return cmd_oracle_all(grid, common);
        std::cerr << app.help();
        return 2;
    } catch (const NotAuthorized& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace hass::cli
