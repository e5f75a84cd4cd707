#pragma once

#include <string>
#include <vector>

#include "hass/ases.hpp"
#include "hass/bigint.hpp"
#include "hass/scheme.hpp"
#include "hass/setsys.hpp"

namespace hass::oracle {

// Brute-force verifiers, independent of the primary constructions by
// policy: plain enumeration and raw set operations only. Deliberately
// serial; this is the reference the parallel kernels are tested against.
struct OracleReport {
    std::string check;
    std::string instance;
    bool pass = false;
    std::string witness;
    double millis = 0.0;
};

// Cover pairs counted by direct enumeration of the n^n string space
// (n <= 6), or by inclusion-exclusion onto-counts per symbol subset up to
// n <= 12. Must equal counting::s_of_n_sum(n).
BigInt cover_pair_count(unsigned n);

// Every coalition classified straight from omega (monotone closure), then
// compared against hsver outcomes.
OracleReport exhaustive_coalitions(const ases::AsesInstance& instance);

// Every coalition classified from the access structure, then compared
// against recon outcomes (success iff authorized, value equal to the
// secret).
OracleReport exhaustive_coalitions(const scheme::ShareBundle& bundle);

// Pairwise intersections recomputed by raw element-set intersection over
// the universe labels and compared with the incidence-vector inner
// products.
OracleReport naive_set_intersections(const setsys::SetSystem& ss);

} // namespace hass::oracle
