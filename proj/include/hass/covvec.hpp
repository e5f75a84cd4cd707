#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hass/exec.hpp"
#include "hass/poly.hpp"
#include "hass/setsys.hpp"

namespace hass::covvec {

// A vector over Z_m of dimension h. Incidence vectors of set-system
// members are stored sparse (sorted support of 1-entries); synthesized
// vectors fall back to dense storage.
class CoveringVector {
public:
    CoveringVector() = default;

    static CoveringVector incidence(std::uint64_t dim, std::uint64_t m,
                                    std::vector<std::uint32_t> support,
                                    std::optional<std::size_t> source = std::nullopt);
    static CoveringVector dense(std::uint64_t m, std::vector<std::uint64_t> coords,
                                std::optional<std::size_t> source = std::nullopt);

    std::uint64_t dim() const { return dim_; }
    std::uint64_t modulus() const { return m_; }
    bool is_sparse() const { return sparse_; }
    const std::vector<std::uint32_t>& support() const { return support_; }
    std::optional<std::size_t> source() const { return source_; }

    std::uint64_t coord(std::uint64_t i) const;

    // Test hook: overwrite one coordinate (dense storage after this).
    void set_coord(std::uint64_t i, std::uint64_t value);

private:
    std::uint64_t dim_ = 0;
    std::uint64_t m_ = 0;
    bool sparse_ = true;
    std::vector<std::uint32_t> support_;
    std::vector<std::uint64_t> dense_;
    std::optional<std::size_t> source_;
};

// Incidence vector of the extensional set at the given index.
CoveringVector from_set(const setsys::SetSystem& ss, std::size_t index);

std::uint64_t inner(const CoveringVector& u, const CoveringVector& v);

// Hamming weight of the coordinatewise product reduced mod m.
std::uint64_t hadamard_weight(const CoveringVector& u, const CoveringVector& v);

struct CoveringFamilyReport {
    bool self_orthogonal = false;     // <v_i, v_i> = 0 mod m for all i
    bool pairwise_consistent = false; // both clauses of the covering definition
    std::vector<std::uint64_t> realized_residues; // distinct nonzero <v_i,v_j> mod m
    std::uint64_t residue_bound = 0;  // 2^r - 1
    bool bound_ok = false;            // |realized| <= 2^r - 1
    std::vector<std::string> witnesses;
    std::size_t pairs_checked = 0;
    bool pass() const { return self_orthogonal && pairwise_consistent && bound_ok; }
};

// Checks the covering-family definition on every pair: self inner products
// vanish mod m; for i != j the inner product vanishes iff the weight of
// the Hadamard product is divisible by m, and otherwise lands in the
// (given or derived) residue set. Divergent non-incidence cases are
// reported, never silently asserted.
CoveringFamilyReport verify_covering_family(
    const std::vector<CoveringVector>& family, const poly::ModulusSpec& spec,
    const std::optional<std::vector<std::uint64_t>>& allowed_residues = std::nullopt,
    Exec exec = Exec::Parallel);

} // namespace hass::covvec
