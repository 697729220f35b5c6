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

#ifndef ELLDIV_CURVE_HPP
#define ELLDIV_CURVE_HPP

#include <optional>
#include <utility>

#include "elldiv/poly.hpp"

namespace elldiv {

/// Short Weierstrass curve y^2 = x^3 + a x + b over F_q, nonsingular.
class EllipticCurve {
  public:
    EllipticCurve(FieldElement a, FieldElement b)
        : a_(std::move(a)), b_(std::move(b)) {
        auto four = field()->from_int(4), twentyseven = field()->from_int(27);
        if ((four * a_.pow(3) + twentyseven * b_.pow(2)).is_zero())
            throw domain_error("singular curve: 4a^3 + 27b^2 = 0");
    }

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldDescriptor::Ptr& field() const { return a_.field(); }

    /// f(x) = x^3 + a x + b
    Poly f_poly() const {
        return Poly(field(), {b_, a_, field()->zero(), field()->one()});
    }
    FieldElement f(const FieldElement& x) const { return (x * x + a_) * x + b_; }

    bool operator==(const EllipticCurve& o) const { return a_ == o.a_ && b_ == o.b_; }

  private:
    FieldElement a_, b_;
};

/// Affine point or the point at infinity.
class CurvePoint {
  public:
    CurvePoint() : infinity_(true) {}
    CurvePoint(FieldElement x, FieldElement y)
        : infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

    static CurvePoint infinity() { return CurvePoint(); }

    bool is_infinity() const { return infinity_; }
    const FieldElement& x() const {
        if (infinity_) throw domain_error("x() of the point at infinity");
        return x_;
    }
    const FieldElement& y() const {
        if (infinity_) throw domain_error("y() of the point at infinity");
        return y_;
    }

    CurvePoint operator-() const {
        if (infinity_) return *this;
        return {x_, -y_};
    }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity_ || b.infinity_) return a.infinity_ && b.infinity_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) {
        return !(a == b);
    }
    /// Lexicographic order on (x, y) coordinates; infinity first.
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity_ || b.infinity_) return a.infinity_ && !b.infinity_;
        if (a.x_.coeffs() != b.x_.coeffs()) return a.x_.coeffs() < b.x_.coeffs();
        return a.y_.coeffs() < b.y_.coeffs();
    }

    std::string str() const {
        if (infinity_) return "infinity";
        return "(" + x_.str() + "," + y_.str() + ")";
    }

  private:
    bool infinity_;
    FieldElement x_, y_;
};

inline bool on_curve(const EllipticCurve& E, const CurvePoint& P) {
    if (P.is_infinity()) return true;
    return P.y() * P.y() == E.f(P.x());
}

/// Chord-tangent group law.
inline CurvePoint point_add(const EllipticCurve& E, const CurvePoint& P,
                            const CurvePoint& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    if (P.x() == Q.x()) {
        if (P.y() != Q.y() || P.y().is_zero()) return CurvePoint::infinity();
        // tangent
        auto two = E.field()->from_int(2), three = E.field()->from_int(3);
        FieldElement lambda = (three * P.x() * P.x() + E.a()) / (two * P.y());
        FieldElement x3 = lambda * lambda - P.x() - Q.x();
        return {x3, lambda * (P.x() - x3) - P.y()};
    }
    FieldElement lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    FieldElement x3 = lambda * lambda - P.x() - Q.x();
    return {x3, lambda * (P.x() - x3) - P.y()};
}

inline CurvePoint point_sub(const EllipticCurve& E, const CurvePoint& P,
                            const CurvePoint& Q) {
    return point_add(E, P, -Q);
}

/// n P by double-and-add; n may be negative.
inline CurvePoint scalar_mul(const EllipticCurve& E, Int n, CurvePoint P) {
    if (n < 0) {
        n = -n;
        P = -P;
    }
    CurvePoint acc = CurvePoint::infinity();
    while (n > 0) {
        if ((n & 1) != 0) acc = point_add(E, acc, P);
        P = point_add(E, P, P);
        n >>= 1;
    }
    return acc;
}

/// Order of P in E(F_q) given a multiple `bound` of the group exponent, or
/// by naive stepping when bound = 0.
inline Int point_order_naive(const EllipticCurve& E, const CurvePoint& P) {
    Int n = 1;
    CurvePoint acc = P;
    while (!acc.is_infinity()) {
        acc = point_add(E, acc, P);
        ++n;
    }
    return n;
}

}  // namespace elldiv

#endif  // ELLDIV_CURVE_HPP
