#include "krf/jets.hpp"

#include "krf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace krf {

namespace jet_tables {

namespace {

struct Tables {
    // graded order: all monomials of degree 0, then 1, ...
    std::vector<std::array<std::uint8_t, TJet::kMaxVars>> expo;
    std::vector<int> deg;
    std::vector<int> deg_offset;            // first index of each degree
    std::vector<int> packed_to_index;       // 2^15 entries
};

void enumerate(int nvars, int target_deg, int var, std::array<std::uint8_t, TJet::kMaxVars>& cur,
               int remaining, Tables& t) {
    if (var == nvars) {
        if (remaining == 0) {
            t.expo.push_back(cur);
            t.deg.push_back(target_deg);
        }
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[var] = static_cast<std::uint8_t>(e);
        enumerate(nvars, target_deg, var + 1, cur, remaining - e, t);
    }
    cur[var] = 0;
}

const Tables& tables(int nvars) {
    static std::array<Tables, TJet::kMaxVars + 1> cache;
    static std::once_flag flags[TJet::kMaxVars + 1];
    std::call_once(flags[nvars], [nvars] {
        Tables& t = cache[nvars];
        t.deg_offset.assign(TJet::kMaxDeg + 2, 0);
        for (int d = 0; d <= TJet::kMaxDeg; ++d) {
            t.deg_offset[d] = static_cast<int>(t.expo.size());
            std::array<std::uint8_t, TJet::kMaxVars> cur{};
            enumerate(nvars, d, 0, cur, d, t);
        }
        t.deg_offset[TJet::kMaxDeg + 1] = static_cast<int>(t.expo.size());
        t.packed_to_index.assign(1u << (3 * TJet::kMaxVars), -1);
        for (std::size_t k = 0; k < t.expo.size(); ++k)
            t.packed_to_index[pack(t.expo[k])] = static_cast<int>(k);
    });
    return cache[nvars];
}

} // namespace

int basis_size(int nvars, int deg) {
    const Tables& t = tables(nvars);
    return t.deg_offset[std::min(deg, TJet::kMaxDeg) + 1];
}

const std::array<std::uint8_t, TJet::kMaxVars>& exponents(int nvars, int k) {
    return tables(nvars).expo[k];
}

int degree_of(int nvars, int k) { return tables(nvars).deg[k]; }

int index_of_packed(int nvars, std::uint32_t packed) {
    return tables(nvars).packed_to_index[packed];
}

std::uint32_t pack(const std::array<std::uint8_t, TJet::kMaxVars>& e) {
    std::uint32_t p = 0;
    for (int i = 0; i < TJet::kMaxVars; ++i) p |= static_cast<std::uint32_t>(e[i]) << (3 * i);
    return p;
}

} // namespace jet_tables

TJet::TJet(int nvars, int valid_degree) : nv_(nvars), valid_(valid_degree) {
    c_.assign(jet_tables::basis_size(nv_, valid_), cplx{});
}

TJet TJet::constant(int nvars, int valid_degree, cplx value) {
    TJet j(nvars, valid_degree);
    j.c_[0] = value;
    return j;
}

TJet TJet::variable(int nvars, int valid_degree, int i, cplx value) {
    TJet j(nvars, valid_degree);
    j.c_[0] = value;
    if (valid_degree >= 1) j.c_[1 + i] = 1.0;  // degree-1 block follows the constant
    return j;
}

TJet::cplx TJet::partial(const std::array<int, kMaxVars>& e) const {
    std::array<std::uint8_t, kMaxVars> u{};
    int total = 0;
    double fact = 1.0;
    for (int i = 0; i < kMaxVars; ++i) {
        u[i] = static_cast<std::uint8_t>(e[i]);
        total += e[i];
        for (int q = 2; q <= e[i]; ++q) fact *= q;
    }
    if (total > valid_) throw Error("TJet::partial beyond valid degree");
    int idx = jet_tables::index_of_packed(nv_, jet_tables::pack(u));
    return c_[idx] * fact;
}

namespace {
void align(const TJet& a, const TJet& b, int& vd) {
    if (a.nvars() != b.nvars()) throw Error("TJet nvars mismatch");
    vd = std::min(a.valid(), b.valid());
}
} // namespace

TJet TJet::operator+(const TJet& o) const {
    int vd;
    align(*this, o, vd);
    TJet r(nv_, vd);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

TJet TJet::operator-(const TJet& o) const {
    int vd;
    align(*this, o, vd);
    TJet r(nv_, vd);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
}

TJet TJet::operator-() const {
    TJet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

TJet& TJet::operator+=(const TJet& o) {
    *this = *this + o;
    return *this;
}

TJet& TJet::operator-=(const TJet& o) {
    *this = *this - o;
    return *this;
}

TJet mul_impl(const TJet& a, const TJet& b) {
    int vd;
    align(a, b, vd);
    TJet r(a.nvars(), vd);
    const int nv = a.nvars();
    const int na = jet_tables::basis_size(nv, std::min(a.valid(), vd));
    for (int i = 0; i < na; ++i) {
        const auto ai = a.c_[i];
        if (ai == TJet::cplx{}) continue;
        const int di = jet_tables::degree_of(nv, i);
        if (di > vd) break;
        const std::uint32_t pi = jet_tables::pack(jet_tables::exponents(nv, i));
        const int nb = jet_tables::basis_size(nv, vd - di);
        for (int j = 0; j < nb; ++j) {
            const auto bj = b.c_[j];
            if (bj == TJet::cplx{}) continue;
            const std::uint32_t pj = jet_tables::pack(jet_tables::exponents(nv, j));
            r.c_[jet_tables::index_of_packed(nv, pi + pj)] += ai * bj;
        }
    }
    return r;
}

TJet TJet::operator*(const TJet& o) const { return mul_impl(*this, o); }

TJet TJet::operator*(cplx s) const {
    TJet r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

TJet TJet::operator+(cplx s) const {
    TJet r = *this;
    r.c_[0] += s;
    return r;
}

TJet TJet::operator-(cplx s) const {
    TJet r = *this;
    r.c_[0] -= s;
    return r;
}

TJet TJet::deriv(int i) const {
    if (valid_ == 0) throw Error("TJet::deriv on degree-0 jet");
    TJet r(nv_, valid_ - 1);
    const int nr = jet_tables::basis_size(nv_, valid_ - 1);
    for (int k = 0; k < nr; ++k) {
        auto e = jet_tables::exponents(nv_, k);
        e[i] = static_cast<std::uint8_t>(e[i] + 1);
        int src = jet_tables::index_of_packed(nv_, jet_tables::pack(e));
        r.c_[k] = c_[src] * static_cast<double>(e[i]);
    }
    return r;
}

namespace {

// Evaluate sum_k coeff[k] * u^k for nilpotent u (zero constant term).
TJet eval_poly_nilpotent(const TJet& u, const std::vector<TJet::cplx>& coeff) {
    TJet acc = TJet::constant(u.nvars(), u.valid(), coeff.back());
    for (int k = static_cast<int>(coeff.size()) - 2; k >= 0; --k) {
        acc = mul_impl(acc, u);
        acc = acc + coeff[k];
    }
    return acc;
}

} // namespace

TJet TJet::exp() const {
    cplx u0 = value();
    TJet u = *this - u0;
    std::vector<cplx> coeff(valid_ + 1);
    double fact = 1.0;
    for (int k = 0; k <= valid_; ++k) {
        if (k > 1) fact *= k;
        coeff[k] = 1.0 / fact;
    }
    return eval_poly_nilpotent(u, coeff) * std::exp(u0);
}

TJet TJet::log() const {
    cplx u0 = value();
    if (u0 == cplx{}) throw Error("TJet::log at zero");
    TJet u = (*this - u0) * (1.0 / u0);
    std::vector<cplx> coeff(valid_ + 1);
    coeff[0] = std::log(u0);
    for (int k = 1; k <= valid_; ++k) coeff[k] = (k % 2 ? 1.0 : -1.0) / static_cast<double>(k);
    return eval_poly_nilpotent(u, coeff);
}

TJet TJet::reciprocal() const {
    cplx u0 = value();
    if (u0 == cplx{}) throw Error("TJet::reciprocal at zero");
    TJet u = (*this - u0) * (1.0 / u0);
    std::vector<cplx> coeff(valid_ + 1);
    for (int k = 0; k <= valid_; ++k) coeff[k] = (k % 2 ? -1.0 : 1.0);
    return eval_poly_nilpotent(u, coeff) * (1.0 / u0);
}

TJet TJet::pow_int(int p) const {
    if (p == 0) return TJet::constant(nv_, valid_, 1.0);
    if (p < 0) return reciprocal().pow_int(-p);
    TJet base = *this;
    TJet acc = TJet::constant(nv_, valid_, 1.0);
    int e = p;
    while (e > 0) {
        if (e & 1) acc = mul_impl(acc, base);
        e >>= 1;
        if (e) base = mul_impl(base, base);
    }
    return acc;
}

TJet TJet::conj() const {
    TJet r = *this;
    for (auto& v : r.c_) v = std::conj(v);
    return r;
}

TJet TJet::truncated(int degree) const {
    if (degree >= valid_) return *this;
    TJet r(nv_, degree);
    std::copy(c_.begin(), c_.begin() + r.c_.size(), r.c_.begin());
    return r;
}

} // namespace krf
