#pragma once

#include <optional>
#include <vector>

#include "lattice.hpp"

namespace miop {

// Dense polynomial in the sinusoidal coordinate eta.  Index = power of eta.
// The zero polynomial has an empty coefficient list; degree() of zero is the
// empty optional, never -1 arithmetic.
class EtaPoly {
  public:
    EtaPoly() = default;
    explicit EtaPoly(std::vector<Gauss> c) : c_(std::move(c)) { trim(); }
    explicit EtaPoly(const Gauss& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    static EtaPoly zero() { return EtaPoly(); }
    static EtaPoly one() { return EtaPoly(Gauss(1)); }
    static EtaPoly eta() { return EtaPoly(std::vector<Gauss>{Gauss(0), Gauss(1)}); }

    bool is_zero() const { return c_.empty(); }
    std::optional<long> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<long>(c_.size()) - 1;
    }
    Gauss coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Gauss(); }
    const std::vector<Gauss>& coeffs() const { return c_; }

    void set_coeff(std::size_t k, const Gauss& v) {
        if (k >= c_.size()) {
            if (v.is_zero()) return;
            c_.resize(k + 1);
        }
        c_[k] = v;
        trim();
    }

    EtaPoly& operator+=(const EtaPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    EtaPoly& operator-=(const EtaPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    EtaPoly& operator*=(const Gauss& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend EtaPoly operator+(EtaPoly a, const EtaPoly& b) { return a += b; }
    friend EtaPoly operator-(EtaPoly a, const EtaPoly& b) { return a -= b; }
    friend EtaPoly operator-(const EtaPoly& a) {
        EtaPoly r = a;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend EtaPoly operator*(const EtaPoly& a, const EtaPoly& b) {
        if (a.is_zero() || b.is_zero()) return EtaPoly();
        std::vector<Gauss> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return EtaPoly(std::move(r));
    }
    friend EtaPoly operator*(EtaPoly a, const Gauss& s) { return a *= s; }
    friend EtaPoly operator*(const Gauss& s, EtaPoly a) { return a *= s; }
    friend bool operator==(const EtaPoly& a, const EtaPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const EtaPoly& a, const EtaPoly& b) { return !(a == b); }

    EtaPoly pow(long k) const {
        if (k < 0) throw std::invalid_argument("negative power of a polynomial");
        EtaPoly r = one(), b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    Gauss eval(const Gauss& point) const {
        Gauss r;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * point + c_[k];
        return r;
    }

    // p(eta_fn) as a lattice function (Horner).
    LatticeFun compose(const LatticeFun& eta_fn) const {
        LatticeFun r = LatticeFun::zero(eta_fn.model());
        for (std::size_t k = c_.size(); k-- > 0;) {
            r = r * eta_fn;
            r.add_coeff(0, c_[k]);
        }
        return r;
    }

    bool all_real() const {
        for (const auto& v : c_)
            if (!v.is_real()) return false;
        return true;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Gauss> c_;
};

// Exact quotient in the eta ring; throws on a nonzero remainder.
inline EtaPoly exact_div(const EtaPoly& num, const EtaPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (num.is_zero()) return EtaPoly();
    long dn = *num.degree(), dd = *den.degree();
    if (dn < dd) throw exactness_error("non-exact division: quotient degree negative");
    std::vector<Gauss> n(num.coeffs());
    std::vector<Gauss> quo(static_cast<std::size_t>(dn - dd) + 1);
    Gauss lead = den.coeff(static_cast<std::size_t>(dd));
    for (long i = dn - dd; i >= 0; --i) {
        Gauss c = n[static_cast<std::size_t>(i + dd)] / lead;
        quo[static_cast<std::size_t>(i)] = c;
        if (!c.is_zero())
            for (long j = 0; j <= dd; ++j) n[static_cast<std::size_t>(i + j)] -= c * den.coeff(static_cast<std::size_t>(j));
    }
    for (const auto& c : n)
        if (!c.is_zero()) throw exactness_error("non-exact division: nonzero remainder");
    return EtaPoly(std::move(quo));
}

// Rebase a lattice function onto powers of a sinusoidal coordinate by
// successive leading-term elimination.  The returned p satisfies
// p(eta) == f exactly; anything left over means f is not a polynomial in eta.
inline EtaPoly eta_expand(const LatticeFun& f, const LatticeFun& eta) {
    if (eta.is_zero()) throw std::invalid_argument("eta_expand: zero coordinate");
    if (f.model() != eta.model()) throw std::invalid_argument("eta_expand: mixed coordinate models");
    long e = eta.max_exp();
    if (e < 1) throw std::invalid_argument("eta_expand: coordinate has no positive leading term");
    Gauss lead = eta.coeff(e);

    EtaPoly p;
    LatticeFun rem = f;
    long prev_k = -1;
    std::vector<LatticeFun> eta_pows;  // eta^0, eta^1, ...
    eta_pows.push_back(LatticeFun::constant(eta.model(), Gauss(1)));
    while (!rem.is_zero()) {
        long m = rem.max_exp();
        if (m < 0 || m % e != 0) throw exactness_error("not a polynomial in \xce\xb7");
        long k = m / e;
        if (prev_k >= 0 && k >= prev_k) throw exactness_error("not a polynomial in \xce\xb7");
        prev_k = k;
        while (static_cast<long>(eta_pows.size()) <= k) eta_pows.push_back(eta_pows.back() * eta);
        Gauss c = rem.coeff(m) / gauss_pow(lead, k);
        p.set_coeff(static_cast<std::size_t>(k), c);
        rem -= eta_pows[static_cast<std::size_t>(k)] * c;
    }
    return p;
}

}  // namespace miop
