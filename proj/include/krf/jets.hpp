#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace krf {

/// Truncated multivariate Taylor series with complex coefficients.
///
/// Up to 5 variables (4 real chart coordinates plus optional time), total
/// degree up to 5. All arithmetic is exact on the retained coefficients:
/// no truncation error enters below the tracked valid degree, so mixed
/// partials read off a TJet are exact values of the underlying function.
///
/// `valid` is the highest total degree whose coefficients are trustworthy.
/// Products take the min of the operands' valid degrees; derivatives
/// reduce it by one.
class TJet {
public:
    static constexpr int kMaxDeg = 5;
    static constexpr int kMaxVars = 5;

    using cplx = std::complex<double>;

    TJet() = default;
    TJet(int nvars, int valid_degree);

    static TJet constant(int nvars, int valid_degree, cplx value);
    /// value + x_i as a series.
    static TJet variable(int nvars, int valid_degree, int i, cplx value);

    int nvars() const { return nv_; }
    int valid() const { return valid_; }
    cplx value() const { return c_.empty() ? cplx{} : c_[0]; }

    /// Exact mixed partial; |exponents| must be <= valid().
    cplx partial(const std::array<int, kMaxVars>& exponents) const;

    TJet operator+(const TJet& o) const;
    TJet operator-(const TJet& o) const;
    TJet operator-() const;
    TJet operator*(const TJet& o) const;
    TJet& operator+=(const TJet& o);
    TJet& operator-=(const TJet& o);

    TJet operator*(cplx s) const;
    TJet operator+(cplx s) const;
    TJet operator-(cplx s) const;

    /// d/dx_i; valid degree drops by one.
    TJet deriv(int i) const;

    TJet exp() const;
    TJet log() const;
    TJet reciprocal() const;
    TJet pow_int(int p) const;

    /// Complex conjugate of the series (coefficients conjugated).
    TJet conj() const;

    /// Truncate the tracked degree (cheap view change, drops coefficients).
    TJet truncated(int degree) const;

    const std::vector<cplx>& coeffs() const { return c_; }

private:
    int nv_ = 0;
    int valid_ = 0;
    std::vector<cplx> c_;

    friend TJet mul_impl(const TJet& a, const TJet& b);
};

inline TJet operator*(TJet::cplx s, const TJet& j) { return j * s; }

namespace jet_tables {
/// Number of monomials in `nvars` variables with total degree <= deg.
int basis_size(int nvars, int deg);
/// Exponent array of monomial index k (graded order).
const std::array<std::uint8_t, TJet::kMaxVars>& exponents(int nvars, int k);
/// Degree of monomial index k.
int degree_of(int nvars, int k);
/// Index of a monomial from packed exponents (3 bits per variable).
int index_of_packed(int nvars, std::uint32_t packed);
std::uint32_t pack(const std::array<std::uint8_t, TJet::kMaxVars>& e);
} // namespace jet_tables

} // namespace krf
