#pragma once

#include <string>

#include <json.hpp>

#include "hass/ases.hpp"
#include "hass/covvec.hpp"
#include "hass/numth.hpp"
#include "hass/poly.hpp"
#include "hass/scheme.hpp"
#include "hass/setsys.hpp"

namespace hass::io {

using nlohmann::json;

// Big integers travel as lowercase hex strings in every file format;
// decimal is accepted where a CLI flag says so, never inside files.
json group_params_to_json(const numth::GroupParams& g);
numth::GroupParams group_params_from_json(const json& j);

json poly_to_json(const poly::IntersectionPolynomial& p);
// Rebuilds the digit tests from (n, m); the multilinear coefficients come
// from the file so a tampered file flows into verify_contract and fails
// there with a witness instead of being rejected silently here.
poly::IntersectionPolynomial poly_from_json(const json& j);

json setsys_report_to_json(const setsys::SetSystem& ss, const setsys::Theorem1Report& t1,
                           const setsys::Lemma3Report* lemma3, const setsys::UniformReport* uni);

json covvec_family_to_json(const std::vector<covvec::CoveringVector>& family, std::uint64_t h,
                           std::uint64_t m);
std::vector<covvec::CoveringVector> covvec_family_from_json(const json& j);

json tokens_to_json(const ases::AsesInstance& inst, const std::string& run_id);
struct TokenFile {
    BigInt q;
    std::string run_id;
    std::vector<BigInt> tokens; // index 0 = party 1
};
TokenFile tokens_from_json(const json& j);

// Dealer-side audit record; written only on request and marked secret.
json audit_to_json(const ases::AsesInstance& inst, const std::string& run_id);

json access_to_json(const ases::AccessStructure& a);
ases::AccessStructure access_from_json(const json& j);

json bundle_to_json(const scheme::BundlePublic& pub);
scheme::BundlePublic bundle_from_json(const json& j);

// Canonical dump: two-space indent, sorted keys (nlohmann default map
// ordering), trailing newline. Seeded flows must reproduce byte-identical
// files.
std::string dump(const json& j);
void write_file(const std::string& path, const json& j);
json read_file(const std::string& path);

} // namespace hass::io
