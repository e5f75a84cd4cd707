#include "hass/json_io.hpp"

#include <cmath>
#include <fstream>

#include "hass/errors.hpp"

namespace hass::io {

namespace {

std::string hex(const BigInt& v) { return to_hex(v); }

BigInt parse_big(const json& j, const char* field) {
    if (!j.is_string()) throw ParseError(std::string(field) + ": expected hex string");
    return from_hex(j.get<std::string>());
}

} // namespace

json group_params_to_json(const numth::GroupParams& g) {
    json factors = json::array();
    for (const auto& f : g.m_factors)
        factors.push_back({{"p", hex(f.p)}, {"alpha", f.alpha}});
    json primes = json::array();
    for (const auto& p : g.base_primes) primes.push_back(hex(p));
    return json{{"eta", g.eta},
                {"base_primes", primes},
                {"cofactor", hex(g.cofactor)},
                {"q", hex(g.q)},
                {"m_factors", factors}};
}

numth::GroupParams group_params_from_json(const json& j) {
    numth::GroupParams g;
    g.eta = j.at("eta").get<unsigned>();
    for (const auto& p : j.at("base_primes")) g.base_primes.push_back(parse_big(p, "base_primes"));
    g.cofactor = parse_big(j.at("cofactor"), "cofactor");
    g.q = parse_big(j.at("q"), "q");
    for (const auto& f : j.at("m_factors"))
        g.m_factors.push_back({parse_big(f.at("p"), "m_factors.p"), f.at("alpha").get<unsigned>()});
    numth::validate_group_params(g);
    return g;
}

json poly_to_json(const poly::IntersectionPolynomial& p) {
    json terms = json::array();
    for (unsigned l = 0; l <= p.degree; ++l) {
        if (p.coeff(l) == 0) continue;
        std::vector<unsigned> tuple(l);
        for (unsigned i = 0; i < l; ++i) tuple[i] = i;
        for (;;) {
            terms.push_back({{"indices", tuple}, {"coeff", p.coeff(l)}});
            int pos = static_cast<int>(l) - 1;
            while (pos >= 0 && tuple[pos] == p.n - l + pos) --pos;
            if (pos < 0) break;
            ++tuple[pos];
            for (unsigned i = pos + 1; i < l; ++i) tuple[i] = tuple[i - 1] + 1;
        }
    }
    return json{{"n", p.n}, {"m", p.modulus.m}, {"terms", terms}};
}

poly::IntersectionPolynomial poly_from_json(const json& j) {
    const unsigned n = j.at("n").get<unsigned>();
    const std::uint64_t m = j.at("m").get<std::uint64_t>();
    poly::IntersectionPolynomial rebuilt = poly::build_polynomial(n, poly::ModulusSpec::from_m(m));

    // Coefficients from the file; the symmetric construction forces one
    // coefficient per degree, which the format must respect.
    std::vector<long long> by_degree(n + 1, -1);
    for (const auto& term : j.at("terms")) {
        const auto indices = term.at("indices").get<std::vector<unsigned>>();
        for (unsigned idx : indices)
            if (idx >= n) throw ParseError("poly terms: index out of range");
        const std::uint64_t c = term.at("coeff").get<std::uint64_t>();
        if (c >= m) throw ParseError("poly terms: coefficient not reduced mod m");
        const unsigned l = static_cast<unsigned>(indices.size());
        if (by_degree[l] >= 0 && by_degree[l] != static_cast<long long>(c))
            throw ParseError("poly terms: same-degree coefficients differ");
        by_degree[l] = static_cast<long long>(c);
    }
    rebuilt.coeff_by_degree.assign(n + 1, 0);
    for (unsigned l = 0; l <= n; ++l)
        if (by_degree[l] > 0) rebuilt.coeff_by_degree[l] = static_cast<std::uint64_t>(by_degree[l]);
    rebuilt.degree = 0;
    for (unsigned l = 0; l <= n; ++l)
        if (rebuilt.coeff_by_degree[l] != 0) rebuilt.degree = l;
    return rebuilt;
}

json setsys_report_to_json(const setsys::SetSystem& ss, const setsys::Theorem1Report& t1,
                           const setsys::Lemma3Report* lemma3, const setsys::UniformReport* uni) {
    json witnesses = json::array();
    for (const auto& v : t1.violations)
        witnesses.push_back({{"i", v.i}, {"j", v.j}, {"value", v.value}, {"reason", v.reason}});
    json conditions = {
        {"c2", t1.c2_pass ? "pass" : "fail"},
        {"c3",
         {{"status", t1.c3_pass ? "pass" : "fail"},
          {"nested_pairs", t1.nested_pairs},
          {"non_nested_pairs", t1.non_nested_pairs}}},
        {"c4", t1.c4_pass ? "pass" : "fail"},
        {"witnesses", witnesses},
    };
    if (lemma3) {
        conditions["lemma3"] = {{"status", lemma3->pass() ? "pass" : "fail"},
                                {"diagonal_count", hex(lemma3->diagonal_count)},
                                {"cells_checked", lemma3->cells_checked},
                                {"witness", lemma3->witness}};
    }
    if (uni) {
        json uv = json::array();
        for (const auto& v : uni->violations)
            uv.push_back({{"i", v.i}, {"j", v.j}, {"value", v.value}, {"reason", v.reason}});
        conditions["uniform"] = {{"status", uni->pass() ? "pass" : "fail"},
                                 {"classes", uni->class_count},
                                 {"witnesses", uv}};
    }
    return json{{"m", ss.modulus.m},
                {"n", ss.n},
                {"index_count", hex(ss.index_count)},
                {"distinct_count", ss.distinct_count},
                {"h", ss.h()},
                {"set_size", ss.sum_multiplicities},
                {"conditions", conditions}};
}

json covvec_family_to_json(const std::vector<covvec::CoveringVector>& family, std::uint64_t h,
                           std::uint64_t m) {
    json vectors = json::array();
    for (const auto& v : family) {
        json coords = json::array();
        if (v.is_sparse()) {
            for (std::uint32_t i : v.support()) coords.push_back({i, 1});
        } else {
            for (std::uint64_t i = 0; i < v.dim(); ++i)
                if (v.coord(i) != 0) coords.push_back({i, v.coord(i)});
        }
        json entry = {{"coords_sparse", coords}};
        if (v.source())
            entry["source"] = *v.source();
        else
            entry["source"] = nullptr;
        vectors.push_back(entry);
    }
    return json{{"h", h}, {"m", m}, {"vectors", vectors}};
}

std::vector<covvec::CoveringVector> covvec_family_from_json(const json& j) {
    const std::uint64_t h = j.at("h").get<std::uint64_t>();
    const std::uint64_t m = j.at("m").get<std::uint64_t>();
    std::vector<covvec::CoveringVector> family;
    for (const auto& vj : j.at("vectors")) {
        std::optional<std::size_t> source;
        if (vj.contains("source") && !vj.at("source").is_null())
            source = vj.at("source").get<std::size_t>();
        bool all_ones = true;
        for (const auto& cj : vj.at("coords_sparse"))
            if (cj.at(1).get<std::uint64_t>() != 1) all_ones = false;
        if (all_ones) {
            std::vector<std::uint32_t> support;
            for (const auto& cj : vj.at("coords_sparse"))
                support.push_back(cj.at(0).get<std::uint32_t>());
            family.push_back(covvec::CoveringVector::incidence(h, m, std::move(support), source));
        } else {
            std::vector<std::uint64_t> coords(h, 0);
            for (const auto& cj : vj.at("coords_sparse"))
                coords[cj.at(0).get<std::uint64_t>()] = cj.at(1).get<std::uint64_t>();
            family.push_back(covvec::CoveringVector::dense(m, std::move(coords), source));
        }
    }
    return family;
}

json tokens_to_json(const ases::AsesInstance& inst, const std::string& run_id) {
    json parties = json::array();
    for (unsigned p = 1; p <= inst.ell; ++p)
        parties.push_back({{"id", p}, {"token", hex(inst.tokens[p - 1])}});
    return json{{"q", hex(inst.group.q)}, {"run_id", run_id}, {"parties", parties}};
}

TokenFile tokens_from_json(const json& j) {
    TokenFile f;
    f.q = parse_big(j.at("q"), "q");
    f.run_id = j.at("run_id").get<std::string>();
    const auto& parties = j.at("parties");
    f.tokens.assign(parties.size(), 0);
    for (const auto& p : parties) {
        const unsigned id = p.at("id").get<unsigned>();
        if (id < 1 || id > parties.size()) throw ParseError("tokens: party id out of range");
        f.tokens[id - 1] = parse_big(p.at("token"), "token");
    }
    return f;
}

json audit_to_json(const ases::AsesInstance& inst, const std::string& run_id) {
    json ids = json::array();
    for (unsigned p = 1; p <= inst.ell; ++p)
        ids.push_back({{"id", p}, {"x", hex(inst.identifiers[p - 1])}});
    json cov = json::array();
    for (const auto& [party, coverer] : inst.covering_map)
        cov.push_back({{"party", party}, {"coverer", coverer}});
    // Collision heuristic: identifiers land in <= 2^r - 1 residue classes,
    // so a single pair collides with probability about 1/(2^r-1)^2. The
    // observed attempt count sits next to it, reported rather than
    // asserted.
    const double classes = std::pow(2.0, inst.group.r()) - 1.0;
    return json{{"warning", "dealer secret - do not distribute"},
                {"run_id", run_id},
                {"q", hex(inst.group.q)},
                {"omega", inst.omega},
                {"mu", hex(inst.mu)},
                {"identifiers", ids},
                {"covering_map", cov},
                {"certificate",
                 {{"coalitions_checked", (1ULL << inst.ell) - 1}, {"pass", true}}},
                {"seed", inst.seed},
                {"resample",
                 {{"attempts", inst.attempts},
                  {"collision_heuristic", 1.0 / (classes * classes)}}}};
}

json access_to_json(const ases::AccessStructure& a) {
    return json{{"parties", a.ell}, {"minimal_sets", a.minimal_sets}};
}

ases::AccessStructure access_from_json(const json& j) {
    ases::AccessStructure a;
    a.ell = j.at("parties").get<unsigned>();
    for (const auto& s : j.at("minimal_sets"))
        a.minimal_sets.push_back(s.get<std::vector<unsigned>>());
    return a;
}

json bundle_to_json(const scheme::BundlePublic& pub) {
    json runs = json::array();
    for (const auto& run : pub.runs) {
        json tokens = json::array();
        json shares = json::array();
        for (unsigned p = 1; p <= pub.ell; ++p) {
            tokens.push_back({{"id", p}, {"token", hex(run.tokens[p - 1])}});
            shares.push_back({{"id", p}, {"share", hex(run.shares[p - 1])}});
        }
        runs.push_back({{"run_id", run.run_id}, {"tokens", tokens}, {"shares", shares}});
    }
    return json{{"q", hex(pub.q)}, {"qprime", hex(pub.qprime)}, {"runs", runs}};
}

scheme::BundlePublic bundle_from_json(const json& j) {
    scheme::BundlePublic pub;
    pub.q = parse_big(j.at("q"), "q");
    pub.qprime = parse_big(j.at("qprime"), "qprime");
    for (const auto& rj : j.at("runs")) {
        scheme::RunPublic run;
        run.run_id = rj.at("run_id").get<std::string>();
        const auto& tokens = rj.at("tokens");
        const auto& shares = rj.at("shares");
        if (tokens.size() != shares.size())
            throw ParseError("bundle: token/share count mismatch in " + run.run_id);
        run.tokens.assign(tokens.size(), 0);
        run.shares.assign(shares.size(), 0);
        for (const auto& t : tokens) {
            const unsigned id = t.at("id").get<unsigned>();
            if (id < 1 || id > tokens.size()) throw ParseError("bundle: party id out of range");
            run.tokens[id - 1] = parse_big(t.at("token"), "token");
        }
        for (const auto& s : shares) {
            const unsigned id = s.at("id").get<unsigned>();
            if (id < 1 || id > shares.size()) throw ParseError("bundle: party id out of range");
            run.shares[id - 1] = parse_big(s.at("share"), "share");
        }
        pub.runs.push_back(std::move(run));
        if (pub.ell == 0) pub.ell = static_cast<unsigned>(tokens.size());
        if (pub.ell != tokens.size())
            throw ParseError("bundle: runs disagree on the party count");
    }
    return pub;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << dump(j);
}

json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace hass::io
