#include "hass/covvec.hpp"

#include <algorithm>
#include <set>

#include "hass/errors.hpp"

namespace hass::covvec {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

CoveringVector CoveringVector::incidence(std::uint64_t dim, std::uint64_t m,
                                         std::vector<std::uint32_t> support,
                                         std::optional<std::size_t> source) {
    if (m < 2) throw InvalidArgument("CoveringVector: m < 2");
    CoveringVector v;
    v.dim_ = dim;
    v.m_ = m;
    v.sparse_ = true;
    std::sort(support.begin(), support.end());
    for (std::uint32_t i : support)
        if (i >= dim) throw InvalidArgument("CoveringVector: support index out of range");
    v.support_ = std::move(support);
    v.source_ = source;
    return v;
}

CoveringVector CoveringVector::dense(std::uint64_t m, std::vector<std::uint64_t> coords,
                                     std::optional<std::size_t> source) {
    if (m < 2) throw InvalidArgument("CoveringVector: m < 2");
    CoveringVector v;
    v.dim_ = coords.size();
    v.m_ = m;
    v.sparse_ = false;
    for (auto& c : coords) c %= m;
    v.dense_ = std::move(coords);
    v.source_ = source;
    return v;
}

std::uint64_t CoveringVector::coord(std::uint64_t i) const {
    if (i >= dim_) throw DimensionMismatch("CoveringVector: coordinate out of range");
    if (sparse_)
        return std::binary_search(support_.begin(), support_.end(), static_cast<std::uint32_t>(i))
                   ? 1
                   : 0;
    return dense_[i];
}

void CoveringVector::set_coord(std::uint64_t i, std::uint64_t value) {
    if (i >= dim_) throw DimensionMismatch("CoveringVector: coordinate out of range");
    if (sparse_) {
        dense_.assign(dim_, 0);
        for (std::uint32_t s : support_) dense_[s] = 1;
        support_.clear();
        sparse_ = false;
    }
    dense_[i] = value % m_;
}

CoveringVector from_set(const setsys::SetSystem& ss, std::size_t index) {
    if (index >= ss.sets.size()) throw UnknownIndex("from_set: unknown set index");
    return CoveringVector::incidence(ss.h(), ss.modulus.m, ss.sets[index], index);
}

std::uint64_t inner(const CoveringVector& u, const CoveringVector& v) {
    if (u.dim() != v.dim() || u.modulus() != v.modulus())
        throw DimensionMismatch("inner: dimension or modulus mismatch");
    const std::uint64_t m = u.modulus();
    if (u.is_sparse() && v.is_sparse())
        return setsys::intersection_size(u.support(), v.support()) % m;
    std::uint64_t acc = 0;
    if (u.is_sparse() || v.is_sparse()) {
        const CoveringVector& s = u.is_sparse() ? u : v;
        const CoveringVector& d = u.is_sparse() ? v : u;
        for (std::uint32_t i : s.support()) acc = (acc + d.coord(i)) % m;
        return acc;
    }
    for (std::uint64_t i = 0; i < u.dim(); ++i)
        acc = (acc + mulmod(u.coord(i), v.coord(i), m)) % m;
    return acc;
}

std::uint64_t hadamard_weight(const CoveringVector& u, const CoveringVector& v) {
    if (u.dim() != v.dim() || u.modulus() != v.modulus())
        throw DimensionMismatch("hadamard_weight: dimension or modulus mismatch");
    const std::uint64_t m = u.modulus();
    if (u.is_sparse() && v.is_sparse())
        return setsys::intersection_size(u.support(), v.support());
    std::uint64_t weight = 0;
    for (std::uint64_t i = 0; i < u.dim(); ++i)
        if (mulmod(u.coord(i), v.coord(i), m) != 0) ++weight;
    return weight;
}

CoveringFamilyReport verify_covering_family(
    const std::vector<CoveringVector>& family, const poly::ModulusSpec& spec,
    const std::optional<std::vector<std::uint64_t>>& allowed_residues, Exec exec) {
    if (family.empty()) throw InvalidArgument("verify_covering_family: empty family");
    CoveringFamilyReport report;
    const std::uint64_t m = spec.m;
    report.residue_bound = (1ULL << spec.r()) - 1;

    report.self_orthogonal = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (inner(family[i], family[i]) != 0) {
            report.self_orthogonal = false;
            report.witnesses.push_back("vector " + std::to_string(i) +
                                       " has nonzero self inner product");
        }
    }

    const std::size_t count = family.size();
    bool consistent = true;
    std::set<std::uint64_t> realized;
    std::vector<std::string> witnesses;

    auto check_pair = [&](std::size_t i, std::size_t j, bool& ok,
                          std::set<std::uint64_t>& res, std::vector<std::string>& wit) {
        const std::uint64_t ip = inner(family[i], family[j]);
        const std::uint64_t hw = hadamard_weight(family[i], family[j]);
        if (hw % m == 0) {
            if (ip != 0) {
                ok = false;
                wit.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                              "): hadamard weight divisible by m but inner product " +
                              std::to_string(ip));
            }
        } else {
            if (ip == 0) {
                ok = false;
                wit.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                              "): inner product 0 but hadamard weight " + std::to_string(hw));
            } else {
                res.insert(ip);
                if (allowed_residues &&
                    std::find(allowed_residues->begin(), allowed_residues->end(), ip) ==
                        allowed_residues->end()) {
                    ok = false;
                    wit.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                  "): residue " + std::to_string(ip) + " outside S");
                }
            }
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            bool ok = true;
            std::set<std::uint64_t> res;
            std::vector<std::string> wit;
#pragma omp for nowait schedule(static)
            for (long long i = 0; i < static_cast<long long>(count); ++i)
                for (std::size_t j = i + 1; j < count; ++j)
                    check_pair(static_cast<std::size_t>(i), j, ok, res, wit);
#pragma omp critical
            {
                consistent = consistent && ok;
                realized.insert(res.begin(), res.end());
                witnesses.insert(witnesses.end(), wit.begin(), wit.end());
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j)
                check_pair(i, j, consistent, realized, witnesses);
    }

    std::sort(witnesses.begin(), witnesses.end());
    report.pairwise_consistent = consistent;
    report.realized_residues.assign(realized.begin(), realized.end());
    report.bound_ok = report.realized_residues.size() <= report.residue_bound;
    report.witnesses.insert(report.witnesses.end(), witnesses.begin(), witnesses.end());
    report.pairs_checked = count * (count - 1) / 2;
    return report;
}

} // namespace hass::covvec
