#include "hass/counting.hpp"

#include <cmath>

namespace hass::counting {

RationalPoly RationalPoly::monomial(std::size_t power, const BigRational& c) {
    std::vector<BigRational> v(power + 1, BigRational(0));
    v[power] = c;
    return RationalPoly(std::move(v));
}

const BigRational& RationalPoly::coeff(std::size_t power) const {
    static const BigRational zero(0);
    return power < coeffs_.size() ? coeffs_[power] : zero;
}

int RationalPoly::degree() const {
    return static_cast<int>(coeffs_.size()) - 1;
}

RationalPoly RationalPoly::operator*(const RationalPoly& rhs) const {
    if (coeffs_.empty() || rhs.coeffs_.empty()) return RationalPoly{};
    std::vector<BigRational> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator+(const RationalPoly& rhs) const {
    std::vector<BigRational> out(std::max(coeffs_.size(), rhs.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + rhs.coeff(i);
    return RationalPoly(std::move(out));
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt stirling2(unsigned n, unsigned k) {
    if (k > n) throw InvalidArgument("stirling2: k > n");
    // Triangle kept per call; no shared mutable state.
    std::vector<std::vector<BigInt>> t(n + 1, std::vector<BigInt>(k + 1, 0));
    t[0][0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= std::min(i, k); ++j)
            t[i][j] = BigInt(j) * t[i - 1][j] + t[i - 1][j - 1];
    return t[n][k];
}

BigInt eulerian(unsigned n, unsigned k) {
    if (k >= std::max(n, 1u)) throw InvalidArgument("eulerian: k out of range");
    std::vector<std::vector<BigInt>> t(n + 1, std::vector<BigInt>(k + 1, 0));
    for (unsigned i = 0; i <= n; ++i) t[i][0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= std::min(i - 1, k); ++j)
            t[i][j] = BigInt(j + 1) * t[i - 1][j] + BigInt(i - j) * t[i - 1][j - 1];
    return t[n][k];
}

BigInt n_k(unsigned n, unsigned k) {
    if (k < 1 || k > n) throw InvalidArgument("n_k: k out of range");
    return binomial(n, k) * factorial(k) * stirling2(n, k);
}

BigInt s_of_n_sum(unsigned n) {
    if (n < 1) throw InvalidArgument("s_of_n_sum: n < 1");
    BigInt total = 0;
    for (unsigned k = 1; k <= n; ++k) {
        BigInt cls = factorial(k) * stirling2(n, k);
        total += binomial(n, k) * cls * cls;
    }
    return total;
}

RationalPoly touchard(unsigned n) {
    std::vector<BigRational> c(n + 1, BigRational(0));
    for (unsigned k = 0; k <= n; ++k) c[k] = BigRational(stirling2(n, k));
    return RationalPoly(std::move(c));
}

RationalPoly convolution_poly(unsigned n) {
    std::vector<BigRational> c(n + 1, BigRational(0));
    for (unsigned k = 0; k <= n; ++k)
        c[k] = BigRational(factorial(n - k) * stirling2(n, n - k), factorial(k));
    return RationalPoly(std::move(c));
}

BigInt s_of_n_gf(unsigned n) {
    if (n < 1) throw InvalidArgument("s_of_n_gf: n < 1");
    RationalPoly product = touchard(n) * convolution_poly(n);
    BigRational scaled = product.coeff(n) * BigRational(factorial(n));
    if (boost::multiprecision::denominator(scaled) != 1)
        throw Error("s_of_n_gf: extraction is not an integer");
    return boost::multiprecision::numerator(scaled);
}

bool growth_bound_check(unsigned n) {
    if (n <= 2) throw InvalidArgument("growth_bound_check: n <= 2");
    BigInt s = s_of_n_sum(n);
    BigInt rhs = 1;
    for (unsigned i = 0; i < 3 * n; ++i) rhs *= n;
    return s * s > rhs;
}

ShareAccounting max_share_elements(unsigned ell) {
    if (ell < 2) throw InvalidArgument("max_share_elements: ell < 2");
    ShareAccounting out;
    out.elements = 2 * binomial(ell, ell / 2);
    out.reference = std::pow(2.0, static_cast<double>(ell) + 1.0) /
                    std::sqrt(std::acos(-1.0) * ell / 2.0);
    out.ratio = static_cast<double>(out.elements) / out.reference;
    return out;
}

} // namespace hass::counting
