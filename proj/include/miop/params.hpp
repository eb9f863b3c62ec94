#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "scalar.hpp"

namespace miop {

enum class Family { M, lqL, lqJ, R, qR, W, AW };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::M: return "M";
        case Family::lqL: return "lqL";
        case Family::lqJ: return "lqJ";
        case Family::R: return "R";
        case Family::qR: return "qR";
        case Family::W: return "W";
        default: return "AW";
    }
}

inline std::optional<Family> family_from_name(const std::string& s) {
    if (s == "M") return Family::M;
    if (s == "lqL") return Family::lqL;
    if (s == "lqJ") return Family::lqJ;
    if (s == "R") return Family::R;
    if (s == "qR") return Family::qR;
    if (s == "W") return Family::W;
    if (s == "AW") return Family::AW;
    return std::nullopt;
}

inline bool is_rdqm(Family f) { return f != Family::W && f != Family::AW; }
inline bool is_idqm(Family f) { return !is_rdqm(f); }
inline bool is_q_family(Family f) {
    return f == Family::lqL || f == Family::lqJ || f == Family::qR || f == Family::AW;
}
inline bool is_finite(Family f) { return f == Family::R || f == Family::qR; }

// Twist tag.  rdQM families have a single twist (unit); idQM has types I/II.
enum class Twist { unit, I, II };

inline Twist other_type(Twist t) {
    if (t == Twist::I) return Twist::II;
    if (t == Twist::II) return Twist::I;
    return Twist::unit;
}

inline const char* twist_name(Twist t) {
    switch (t) {
        case Twist::I: return "I";
        case Twist::II: return "II";
        default: return "unit";
    }
}

// One concrete parameter point of a family.  The q-families store the values
// q^{lambda}; the others store lambda itself.  For AW, rho are the optional
// split-square witnesses rho1^2 = a1 a2 / q, rho2^2 = a3 a4 / q that keep the
// half-powers of alpha inside the rationals.
struct Params {
    Family fam = Family::M;
    std::vector<Rational> a;
    Rational s = Rational(0);  // sqrt(q) for q-families
    std::optional<std::array<Rational, 2>> rho;
    int N = -1;  // lattice size for finite families (base point only)

    Rational q() const { return s * s; }

    friend bool operator==(const Params& x, const Params& y) {
        return x.fam == y.fam && x.a == y.a && x.s == y.s;
    }
};

inline std::size_t param_arity(Family f) {
    switch (f) {
        case Family::M: return 2;
        case Family::lqL: return 1;
        case Family::lqJ: return 2;
        default: return 4;
    }
}

namespace detail {
inline void scale_rho(Params& p, long e1, long e2) {
    if (p.fam == Family::AW && p.rho) {
        (*p.rho)[0] *= rat_pow(p.s, e1);
        (*p.rho)[1] *= rat_pow(p.s, e2);
    }
}
}  // namespace detail

// lambda + u * delta.
inline Params shift_delta(const Params& p, long u) {
    Params r = p;
    switch (p.fam) {
        case Family::M:
            r.a[0] += u;
            break;
        case Family::lqL:
        case Family::lqJ:
        case Family::qR: {
            Rational f = rat_pow(p.q(), u);
            for (auto& v : r.a) v *= f;
            break;
        }
        case Family::R:
            for (auto& v : r.a) v += u;
            break;
        case Family::W:
            for (auto& v : r.a) v += Rational(u, 2);
            break;
        case Family::AW: {
            Rational f = rat_pow(p.s, u);
            for (auto& v : r.a) v *= f;
            detail::scale_rho(r, u, u);
            break;
        }
    }
    return r;
}

// lambda + u * delta-tilde (the twist-compatible shift).  rdQM families have a
// single delta-tilde; idQM has one per type.
inline Params shift_tdelta(const Params& p, long u, Twist t = Twist::unit) {
    Params r = p;
    switch (p.fam) {
        case Family::M:
            r.a[0] += u;
            break;
        case Family::lqL:
            r.a[0] *= rat_pow(p.q(), -u);
            break;
        case Family::lqJ:
            r.a[0] *= rat_pow(p.q(), -u);
            r.a[1] *= rat_pow(p.q(), u);
            break;
        case Family::R:
            r.a[2] += u;
            r.a[3] += u;
            break;
        case Family::qR: {
            Rational f = rat_pow(p.q(), u);
            r.a[2] *= f;
            r.a[3] *= f;
            break;
        }
        case Family::W: {
            if (t == Twist::unit) throw std::invalid_argument("idQM shift needs a twist type");
            Rational h(u, 2);
            if (t == Twist::I) {
                r.a[0] -= h;
                r.a[1] -= h;
                r.a[2] += h;
                r.a[3] += h;
            } else {
                r.a[0] += h;
                r.a[1] += h;
                r.a[2] -= h;
                r.a[3] -= h;
            }
            break;
        }
        case Family::AW: {
            if (t == Twist::unit) throw std::invalid_argument("idQM shift needs a twist type");
            Rational f = rat_pow(p.s, u), g = rat_pow(p.s, -u);
            if (t == Twist::I) {
                r.a[0] *= g;
                r.a[1] *= g;
                r.a[2] *= f;
                r.a[3] *= f;
                detail::scale_rho(r, -u, u);
            } else {
                r.a[0] *= f;
                r.a[1] *= f;
                r.a[2] *= g;
                r.a[3] *= g;
                detail::scale_rho(r, u, -u);
            }
            break;
        }
    }
    return r;
}

// The twist operation t(lambda): a parameter involution generating the
// virtual states.
inline Params twist(const Params& p, Twist t = Twist::unit) {
    Params r = p;
    switch (p.fam) {
        case Family::M:
            r.a[1] = Rational(1) / p.a[1];
            break;
        case Family::lqL:
            r.a[0] = Rational(1) / p.a[0];
            break;
        case Family::lqJ:
            r.a[0] = Rational(1) / p.a[0];
            break;
        case Family::R:
            r.a[0] = p.a[3] - p.a[0] + 1;
            r.a[1] = p.a[3] - p.a[1] + 1;
            break;
        case Family::qR:
            r.a[0] = p.a[3] * p.q() / p.a[0];
            r.a[1] = p.a[3] * p.q() / p.a[1];
            break;
        case Family::W:
            if (t == Twist::I) {
                r.a[0] = 1 - p.a[0];
                r.a[1] = 1 - p.a[1];
            } else if (t == Twist::II) {
                r.a[2] = 1 - p.a[2];
                r.a[3] = 1 - p.a[3];
            } else {
                throw std::invalid_argument("idQM twist needs a type");
            }
            break;
        case Family::AW:
            if (t == Twist::I) {
                r.a[0] = p.q() / p.a[0];
                r.a[1] = p.q() / p.a[1];
                if (r.rho) (*r.rho)[0] = Rational(1) / (*r.rho)[0];
            } else if (t == Twist::II) {
                r.a[2] = p.q() / p.a[2];
                r.a[3] = p.q() / p.a[3];
                if (r.rho) (*r.rho)[1] = Rational(1) / (*r.rho)[1];
            } else {
                throw std::invalid_argument("idQM twist needs a type");
            }
            break;
    }
    return r;
}

inline CoordModel model_of(const Params& p) {
    switch (p.fam) {
        case Family::M:
        case Family::R: return CoordModel::additive();
        case Family::lqL:
        case Family::lqJ:
        case Family::qR: return CoordModel::mult_t(p.s);
        case Family::W: return CoordModel::additive_ix();
        default: return CoordModel::mult_z(p.s);
    }
}

// kappa of the family; kappa_pow_half computes kappa^{num/2} exactly
// (kappa is 1 or 1/q, so half-powers are powers of 1/s).
inline Rational kappa(const Params& p) {
    if (is_q_family(p.fam)) return Rational(1) / p.q();
    return Rational(1);
}
inline Rational kappa_pow_half(const Params& p, long num) {
    if (is_q_family(p.fam)) return rat_pow(p.s, -num);
    return Rational(1);
}

}  // namespace miop
