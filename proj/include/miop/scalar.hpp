#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace miop {

// All scalar arithmetic is exact: rationals over GMP integers, extended to
// Gaussian rationals a + b*i where needed.
using Rational = mpq_class;
using Integer = mpz_class;

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Rational rat_pow(const Rational& base, long k) {
    if (k == 0) return Rational(1);
    Rational b = base;
    if (k < 0) {
        if (b == 0) throw std::invalid_argument("rat_pow: zero base, negative exponent");
        b = Rational(1) / b;
        k = -k;
    }
    Rational r(1);
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// Rising factorial (u)_m = u (u+1) ... (u+m-1).
inline Rational poch(const Rational& u, long m) {
    Rational r(1);
    for (long i = 0; i < m; ++i) r *= u + i;
    return r;
}

// q-shifted factorial (u;q)_m = (1-u)(1-uq)...(1-uq^{m-1}).
inline Rational qpoch(const Rational& u, const Rational& q, long m) {
    Rational r(1), f = u;
    for (long i = 0; i < m; ++i) {
        r *= 1 - f;
        f *= q;
    }
    return r;
}

inline Rational rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    v.canonicalize();
    return v;
}

inline std::string rat_str(const Rational& v) { return v.get_str(); }

// Gaussian rational a + b*i.  Field operations; conjugation is the star
// involution on scalars.
struct Gauss {
    Rational re, im;

    Gauss() : re(0), im(0) {}
    Gauss(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    Gauss(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Gauss unit_i() { return Gauss(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Gauss conj() const { return Gauss(re, -im); }

    Gauss& operator+=(const Gauss& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gauss& operator-=(const Gauss& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Gauss& operator*=(const Gauss& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }
    Gauss& operator/=(const Gauss& o) {
        Rational n = o.re * o.re + o.im * o.im;
        if (n == 0) throw std::invalid_argument("division by zero scalar");
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = r;
        im = i;
        return *this;
    }

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend Gauss operator-(const Gauss& a) { return Gauss(-a.re, -a.im); }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
};

inline Gauss gauss_pow(const Gauss& base, long k) {
    if (k < 0) return Gauss(1) / gauss_pow(base, -k);
    Gauss r(1), b = base;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// i^k, k may be negative.
inline Gauss i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Gauss(1);
        case 1: return Gauss::unit_i();
        case 2: return Gauss(-1);
        default: return -Gauss::unit_i();
    }
}

// Canonical text form: "p/q" when real, "p/q+r/s*i" otherwise.
inline std::string gauss_str(const Gauss& v) {
    if (v.im == 0) return rat_str(v.re);
    std::string s = rat_str(v.re);
    if (v.im < 0) {
        Rational a = -v.im;
        s += "-" + rat_str(a) + "*i";
    } else {
        s += "+" + rat_str(v.im) + "*i";
    }
    return s;
}

// Signals a broken algebraic identity (non-exact division, residual in a
// change of basis).  Distinct from std::invalid_argument which flags misuse.
class exactness_error : public std::runtime_error {
  public:
    explicit exactness_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace miop
