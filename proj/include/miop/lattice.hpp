#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace miop {

// How the lattice coordinate enters a function of x.
//
//   additive_x       f is a polynomial in x            (Meixner, Racah)
//   additive_y       f is a polynomial in y = ix       (Wilson)
//   multiplicative_t f is a Laurent polynomial in t=q^x (little q-*, q-Racah)
//   multiplicative_z f is a Laurent polynomial in z=e^{ix} (Askey-Wilson)
//
// For the multiplicative kinds sqrt_q stores s with q = s^2, so every
// half-integer q-power stays rational.
enum class CoordKind { additive_x, additive_y, multiplicative_t, multiplicative_z };

struct CoordModel {
    CoordKind kind = CoordKind::additive_x;
    Rational sqrt_q = Rational(0);

    bool is_multiplicative() const {
        return kind == CoordKind::multiplicative_t || kind == CoordKind::multiplicative_z;
    }
    bool is_idqm() const {
        return kind == CoordKind::additive_y || kind == CoordKind::multiplicative_z;
    }
    Rational q() const { return sqrt_q * sqrt_q; }

    friend bool operator==(const CoordModel& a, const CoordModel& b) {
        return a.kind == b.kind && a.sqrt_q == b.sqrt_q;
    }
    friend bool operator!=(const CoordModel& a, const CoordModel& b) { return !(a == b); }

    static CoordModel additive() { return CoordModel{CoordKind::additive_x, Rational(0)}; }
    static CoordModel additive_ix() { return CoordModel{CoordKind::additive_y, Rational(0)}; }
    static CoordModel mult_t(Rational s) { return CoordModel{CoordKind::multiplicative_t, std::move(s)}; }
    static CoordModel mult_z(Rational s) { return CoordModel{CoordKind::multiplicative_z, std::move(s)}; }
};

inline const char* coord_symbol(CoordKind k) {
    switch (k) {
        case CoordKind::additive_x: return "x";
        case CoordKind::additive_y: return "y";
        case CoordKind::multiplicative_t: return "t";
        default: return "z";
    }
}

// A (Laurent) polynomial in the model's base symbol with Gaussian rational
// coefficients.  Stored sparsely, no zero coefficients.  Additive kinds are
// plain polynomials (no negative exponents).
class LatticeFun {
  public:
    explicit LatticeFun(CoordModel m) : model_(std::move(m)) {}
    LatticeFun(CoordModel m, const Gauss& constant) : model_(std::move(m)) {
        if (!constant.is_zero()) c_[0] = constant;
    }

    static LatticeFun zero(const CoordModel& m) { return LatticeFun(m); }
    static LatticeFun constant(const CoordModel& m, const Gauss& v) { return LatticeFun(m, v); }
    static LatticeFun monomial(const CoordModel& m, long k, const Gauss& v) {
        LatticeFun f(m);
        if (!v.is_zero()) {
            if (!m.is_multiplicative() && k < 0)
                throw std::invalid_argument("negative exponent on additive model");
            f.c_[k] = v;
        }
        return f;
    }
    static LatticeFun symbol(const CoordModel& m) { return monomial(m, 1, Gauss(1)); }

    const CoordModel& model() const { return model_; }
    const std::map<long, Gauss>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Gauss coeff(long k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Gauss() : it->second;
    }
    void set_coeff(long k, const Gauss& v) {
        if (v.is_zero())
            c_.erase(k);
        else
            c_[k] = v;
    }
    void add_coeff(long k, const Gauss& v) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            if (!v.is_zero()) c_[k] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    long min_exp() const {
        if (is_zero()) throw std::invalid_argument("min_exp of zero function");
        return c_.begin()->first;
    }
    long max_exp() const {
        if (is_zero()) throw std::invalid_argument("max_exp of zero function");
        return c_.rbegin()->first;
    }
    Gauss leading() const { return c_.rbegin()->second; }

    LatticeFun& operator+=(const LatticeFun& o) {
        check_model(o);
        for (const auto& [k, v] : o.c_) add_coeff(k, v);
        return *this;
    }
    LatticeFun& operator-=(const LatticeFun& o) {
        check_model(o);
        for (const auto& [k, v] : o.c_) add_coeff(k, -v);
        return *this;
    }
    LatticeFun& operator*=(const LatticeFun& o) {
        check_model(o);
        *this = *this * o;
        return *this;
    }
    LatticeFun& operator*=(const Gauss& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& [k, v] : c_) v *= s;
        return *this;
    }

    friend LatticeFun operator+(LatticeFun a, const LatticeFun& b) { return a += b; }
    friend LatticeFun operator-(LatticeFun a, const LatticeFun& b) { return a -= b; }
    friend LatticeFun operator-(const LatticeFun& a) {
        LatticeFun r(a.model_);
        for (const auto& [k, v] : a.c_) r.c_[k] = -v;
        return r;
    }
    friend LatticeFun operator*(const LatticeFun& a, const LatticeFun& b) {
        a.check_model(b);
        LatticeFun r(a.model_);
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_) r.add_coeff(ka + kb, va * vb);
        return r;
    }
    friend LatticeFun operator*(LatticeFun a, const Gauss& s) { return a *= s; }
    friend LatticeFun operator*(const Gauss& s, LatticeFun a) { return a *= s; }

    friend bool operator==(const LatticeFun& a, const LatticeFun& b) {
        return a.model_ == b.model_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LatticeFun& a, const LatticeFun& b) { return !(a == b); }

    LatticeFun pow(long k) const {
        if (k < 0) throw std::invalid_argument("negative power of a lattice function");
        LatticeFun r = constant(model_, Gauss(1));
        LatticeFun b = *this;
        while (k > 0) {
            if (k & 1) r *= b;
            if (k >>= 1) b *= b;
        }
        return r;
    }

    // Value at a concrete point of the base symbol.  Negative exponents need
    // point != 0.
    Gauss eval(const Gauss& point) const {
        if (is_zero()) return Gauss();
        Gauss r;
        for (const auto& [k, v] : c_) r += v * gauss_pow(point, k);
        return r;
    }

  private:
    void check_model(const LatticeFun& o) const {
        if (model_ != o.model_) throw std::invalid_argument("mixed coordinate models");
    }

    CoordModel model_;
    std::map<long, Gauss> c_;
};

// Realizes the lattice translation x -> x + step (additive-x, multiplicative-t)
// or x -> x + i*step resp. x -> x + i*step*gamma (additive-y, multiplicative-z).
// Ring homomorphism in f; steps compose additively.
inline LatticeFun lat_shift(const LatticeFun& f, const Rational& step) {
    const CoordModel& m = f.model();
    if (step == 0) return f;
    if (m.is_multiplicative()) {
        Rational two_step = step * 2;
        if (two_step.get_den() != 1)
            throw std::invalid_argument("unrepresentable shift: step must be half-integer on a multiplicative model");
        long n2 = static_cast<long>(two_step.get_num().get_si());
        // t -> q^{step} t, i.e. coeff_k *= s^{2 step k};  z -> q^{-step} z.
        long dir = (m.kind == CoordKind::multiplicative_t) ? n2 : -n2;
        LatticeFun r(m);
        for (const auto& [k, v] : f.coeffs()) r.set_coeff(k, v * Gauss(rat_pow(m.sqrt_q, dir * k)));
        return r;
    }
    // additive-x: substitute x -> x + step;  additive-y: y -> y - step.
    Rational a = (m.kind == CoordKind::additive_x) ? step : -step;
    LatticeFun shifted_symbol = LatticeFun::symbol(m);
    shifted_symbol.add_coeff(0, Gauss(a));
    LatticeFun r(m);
    LatticeFun p = LatticeFun::constant(m, Gauss(1));
    long prev = 0;
    for (const auto& [k, v] : f.coeffs()) {
        for (; prev < k; ++prev) p *= shifted_symbol;
        r += p * v;
    }
    return r;
}

// f evaluated at x - i*k*gamma/2 (the exponentiated momentum e^{k gamma p / 2}).
inline LatticeFun lat_shift_half(const LatticeFun& f, long k) {
    return lat_shift(f, Rational(-k, 2));
}

// The *-involution: conjugate coefficients together with y -> -y (additive-y)
// or z -> 1/z (multiplicative-z), so the result represents f*(x) on real x.
inline LatticeFun lat_star(const LatticeFun& f) {
    const CoordModel& m = f.model();
    LatticeFun r(m);
    switch (m.kind) {
        case CoordKind::additive_y:
            for (const auto& [k, v] : f.coeffs())
                r.set_coeff(k, (k % 2 != 0) ? -v.conj() : v.conj());
            return r;
        case CoordKind::multiplicative_z:
            for (const auto& [k, v] : f.coeffs()) r.set_coeff(-k, v.conj());
            return r;
        default:
            throw std::invalid_argument("star undefined on real-shift models");
    }
}

// Exact quotient: returns f with f * den == num, else throws.
inline LatticeFun exact_div(const LatticeFun& num, const LatticeFun& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero function");
    if (num.is_zero()) return LatticeFun::zero(num.model());
    if (num.model() != den.model()) throw std::invalid_argument("mixed coordinate models");

    long na = num.min_exp(), nb = num.max_exp();
    long da = den.min_exp(), db = den.max_exp();
    long qdeg = (nb - na) - (db - da);
    if (qdeg < 0) throw exactness_error("non-exact division: quotient degree negative");

    std::vector<Gauss> n(static_cast<std::size_t>(nb - na) + 1), d(static_cast<std::size_t>(db - da) + 1);
    for (const auto& [k, v] : num.coeffs()) n[static_cast<std::size_t>(k - na)] = v;
    for (const auto& [k, v] : den.coeffs()) d[static_cast<std::size_t>(k - da)] = v;

    std::vector<Gauss> quo(static_cast<std::size_t>(qdeg) + 1);
    Gauss lead = d.back();
    for (long i = qdeg; i >= 0; --i) {
        Gauss c = n[static_cast<std::size_t>(i + db - da)] / lead;
        quo[static_cast<std::size_t>(i)] = c;
        if (!c.is_zero())
            for (std::size_t j = 0; j < d.size(); ++j)
                n[static_cast<std::size_t>(i) + j] -= c * d[j];
    }
    for (const auto& c : n)
        if (!c.is_zero()) throw exactness_error("non-exact division: nonzero remainder");

    LatticeFun r(num.model());
    long off = na - da;
    if (off < 0 && !num.model().is_multiplicative()) {
        // Can only happen if num had a lower-order zero than den; remainder
        // check above would have caught an inexact case, so off >= 0 here for
        // additive models whenever the quotient is a genuine polynomial.
        throw exactness_error("non-exact division: negative valuation on additive model");
    }
    for (long i = 0; i <= qdeg; ++i)
        if (!quo[static_cast<std::size_t>(i)].is_zero()) r.set_coeff(i + off, quo[static_cast<std::size_t>(i)]);
    return r;
}

// Ratio of two lattice functions, normalized so the denominator's leading
// (highest-exponent) coefficient is 1.  Deterministic equality via
// cross-multiplication.
struct LatticeRat {
    LatticeFun num, den;

    LatticeRat(LatticeFun n, LatticeFun d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::invalid_argument("zero denominator");
        Gauss lead = den.leading();
        if (!(lead == Gauss(1))) {
            Gauss inv = Gauss(1) / lead;
            num *= inv;
            den *= inv;
        }
    }
    explicit LatticeRat(const LatticeFun& n) : LatticeRat(n, LatticeFun::constant(n.model(), Gauss(1))) {}

    Gauss eval(const Gauss& point) const {
        Gauss d = den.eval(point);
        if (d.is_zero()) throw std::invalid_argument("pole at evaluation point");
        return num.eval(point) / d;
    }

    friend LatticeRat operator*(const LatticeRat& a, const LatticeRat& b) {
        return LatticeRat(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const LatticeRat& a, const LatticeRat& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator!=(const LatticeRat& a, const LatticeRat& b) { return !(a == b); }
};

inline LatticeRat lat_shift(const LatticeRat& f, const Rational& step) {
    return LatticeRat(lat_shift(f.num, step), lat_shift(f.den, step));
}
inline LatticeRat lat_shift_half(const LatticeRat& f, long k) {
    return LatticeRat(lat_shift_half(f.num, k), lat_shift_half(f.den, k));
}
inline LatticeRat lat_star(const LatticeRat& f) { return LatticeRat(lat_star(f.num), lat_star(f.den)); }

}  // namespace miop
