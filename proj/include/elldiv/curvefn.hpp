/*
   Copyright 2026 The elldiv authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLDIV_CURVEFN_HPP
#define ELLDIV_CURVEFN_HPP

#include <optional>
#include <utility>

#include "elldiv/curve.hpp"

namespace elldiv {

/// Element u(x) + v(x) y of the coordinate ring k[x, y]/(y^2 - f(x)) of E.
/// Canonical form: deg_y <= 1, every product re-reduced via y^2 -> f(x).
/// Functions with poles only at infinity are exactly these.
///
/// The same ring carries the symbolic unknowns (x_P, y_P), so this type
/// doubles as the coefficient ring for the g_P linear system.
class CurveFunction {
  public:
    CurveFunction(EllipticCurve curve, Poly u, Poly v)
        : curve_(std::move(curve)), u_(std::move(u)), v_(std::move(v)) {}

    static CurveFunction zero(const EllipticCurve& E) {
        return {E, Poly::zero(E.field()), Poly::zero(E.field())};
    }
    static CurveFunction one(const EllipticCurve& E) {
        return {E, Poly::constant(E.field()->one()), Poly::zero(E.field())};
    }
    static CurveFunction from_x_poly(const EllipticCurve& E, Poly u) {
        return {E, std::move(u), Poly::zero(E.field())};
    }
    static CurveFunction y(const EllipticCurve& E) {
        return {E, Poly::zero(E.field()), Poly::constant(E.field()->one())};
    }
    static CurveFunction constant(const EllipticCurve& E, const FieldElement& c) {
        return {E, Poly::constant(c), Poly::zero(E.field())};
    }

    const EllipticCurve& curve() const { return curve_; }
    const Poly& u() const { return u_; }
    const Poly& v() const { return v_; }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool y_free() const { return v_.is_zero(); }

    friend bool operator==(const CurveFunction& a, const CurveFunction& b) {
        a.check_same(b);
        return a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const CurveFunction& a, const CurveFunction& b) {
        return !(a == b);
    }

    friend CurveFunction operator+(const CurveFunction& a, const CurveFunction& b) {
        a.check_same(b);
        return {a.curve_, a.u_ + b.u_, a.v_ + b.v_};
    }
    friend CurveFunction operator-(const CurveFunction& a, const CurveFunction& b) {
        a.check_same(b);
        return {a.curve_, a.u_ - b.u_, a.v_ - b.v_};
    }
    CurveFunction operator-() const { return {curve_, -u_, -v_}; }
    /// (u1 + v1 y)(u2 + v2 y) = (u1 u2 + v1 v2 f) + (u1 v2 + u2 v1) y
    friend CurveFunction operator*(const CurveFunction& a, const CurveFunction& b) {
        a.check_same(b);
        Poly f = a.curve_.f_poly();
        return {a.curve_, a.u_ * b.u_ + a.v_ * b.v_ * f,
                a.u_ * b.v_ + b.u_ * a.v_};
    }
    friend CurveFunction operator*(const FieldElement& s, const CurveFunction& a) {
        return {a.curve_, s * a.u_, s * a.v_};
    }
    CurveFunction& operator+=(const CurveFunction& o) { return *this = *this + o; }
    CurveFunction& operator-=(const CurveFunction& o) { return *this = *this - o; }
    CurveFunction& operator*=(const CurveFunction& o) { return *this = *this * o; }

    CurveFunction pow(Int e) const {
        if (e < 0) throw domain_error("CurveFunction::pow: negative exponent");
        CurveFunction acc = one(curve_), base = *this;
        while (e > 0) {
            if ((e & 1) != 0) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Conjugate u - v y; s * conj(s) = norm(s) is y-free.
    CurveFunction conj() const { return {curve_, u_, -v_}; }
    /// Norm u^2 - v^2 f, an element of k[x].
    Poly norm() const { return u_ * u_ - v_ * v_ * curve_.f_poly(); }

    /// Exact quotient in the coordinate ring (an integral domain); throws
    /// internal_error when b does not divide this.
    CurveFunction exact_div(const CurveFunction& b) const {
        check_same(b);
        if (b.is_zero()) throw domain_error("CurveFunction division by zero");
        CurveFunction num = *this * b.conj();
        Poly n = b.norm();
        return {curve_, num.u_.exact_div(n), num.v_.exact_div(n)};
    }

    FieldElement eval(const CurvePoint& P) const {
        if (P.is_infinity())
            throw domain_error("CurveFunction::eval at the point at infinity");
        return u_.eval(P.x()) + v_.eval(P.x()) * P.y();
    }

    std::string str() const { return "(" + u_.str() + ") + (" + v_.str() + ")*y"; }

  private:
    void check_same(const CurveFunction& o) const {
        if (!(curve_ == o.curve_))
            throw domain_error("curve function operands from different curves");
    }

    EllipticCurve curve_;
    Poly u_, v_;
};

/// Element of k[x_P, y_P]/(y_P^2 - f(x_P)): structurally the same quotient
/// ring as CurveFunction, reused for the symbolic unknowns of the g_P system.
using SymbolicElement = CurveFunction;

/// Quotient of two curve functions; exact divisor bookkeeping for functions
/// with affine poles (translates, epsilon factors).
class RationalCurveFunction {
  public:
    RationalCurveFunction(CurveFunction num, CurveFunction den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw domain_error("rational curve function with zero denominator");
    }

    static RationalCurveFunction from(const CurveFunction& f) {
        return {f, CurveFunction::one(f.curve())};
    }

    const CurveFunction& num() const { return num_; }
    const CurveFunction& den() const { return den_; }
    const EllipticCurve& curve() const { return num_.curve(); }

    friend RationalCurveFunction operator*(const RationalCurveFunction& a,
                                           const RationalCurveFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalCurveFunction operator+(const RationalCurveFunction& a,
                                           const RationalCurveFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalCurveFunction operator-(const RationalCurveFunction& a,
                                           const RationalCurveFunction& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    RationalCurveFunction inverse() const {
        if (num_.is_zero()) throw domain_error("inverse of the zero function");
        return {den_, num_};
    }
    RationalCurveFunction pow(Int e) const {
        if (e < 0) return inverse().pow(-e);
        return {num_.pow(e), den_.pow(e)};
    }

    /// Defined-ness test plus value: nullopt when the denominator vanishes
    /// at P (support collision).
    std::optional<FieldElement> eval(const CurvePoint& P) const {
        FieldElement d = den_.eval(P);
        if (d.is_zero()) return std::nullopt;
        return num_.eval(P) * d.inverse();
    }

  private:
    CurveFunction num_, den_;
};

}  // namespace elldiv

#endif  // ELLDIV_CURVEFN_HPP
