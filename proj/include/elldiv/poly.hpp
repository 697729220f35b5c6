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

#ifndef ELLDIV_POLY_HPP
#define ELLDIV_POLY_HPP

#include <set>
#include <utility>
#include <vector>

#include "elldiv/field.hpp"

namespace elldiv {

/// Univariate polynomial over F_q, canonical (no trailing zeros).
/// Coefficients are stored constant term first.
class Poly {
  public:
    Poly() = default;
    explicit Poly(FieldDescriptor::Ptr field) : field_(std::move(field)) {}
    Poly(FieldDescriptor::Ptr field, std::vector<FieldElement> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }

    static Poly zero(const FieldDescriptor::Ptr& f) { return Poly(f); }
    static Poly constant(const FieldElement& c) {
        Poly r(c.field());
        r.c_ = {c};
        r.trim();
        return r;
    }
    static Poly x(const FieldDescriptor::Ptr& f) {
        Poly r(f);
        r.c_ = {f->zero(), f->one()};
        return r;
    }
    /// c0 + c1 x + ... from prime-subfield integers.
    static Poly from_ints(const FieldDescriptor::Ptr& f, std::vector<Int> ints) {
        Poly r(f);
        r.c_.reserve(ints.size());
        for (const auto& v : ints) r.c_.push_back(f->from_int(v));
        r.trim();
        return r;
    }
    /// x - c
    static Poly linear_root(const FieldElement& c) {
        Poly r(c.field());
        r.c_ = {-c, c.field()->one()};
        return r;
    }

    const FieldDescriptor::Ptr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return int(c_.size()) - 1; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& operator[](std::size_t i) const { return c_[i]; }
    FieldElement coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : field_->zero();
    }
    const FieldElement& leading() const {
        if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.field_ ? a.field_ : b.field_);
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.c_.size() && i < b.c_.size())
                r.c_.push_back(a.c_[i] + b.c_[i]);
            else
                r.c_.push_back(i < a.c_.size() ? a.c_[i] : b.c_[i]);
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        Poly r(field_);
        r.c_.reserve(c_.size());
        for (const auto& v : c_) r.c_.push_back(-v);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.field_ ? a.field_ : b.field_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, r.field_->zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const FieldElement& s, const Poly& a) {
        Poly r(a.field_);
        if (s.is_zero()) return r;
        r.c_.reserve(a.c_.size());
        for (const auto& v : a.c_) r.c_.push_back(s * v);
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    std::pair<Poly, Poly> divmod(const Poly& b) const {
        if (b.is_zero()) throw domain_error("polynomial division by zero");
        Poly q(field_), r = *this;
        if (r.degree() < b.degree()) return {q, r};
        q.c_.assign(r.c_.size() - b.c_.size() + 1, field_->zero());
        FieldElement linv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = r.c_.size() - b.c_.size();
            FieldElement c = r.leading() * linv;
            q.c_[shift] = c;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[shift + j] -= c * b.c_[j];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }

    /// Exact quotient; throws if b does not divide this.
    Poly exact_div(const Poly& b) const {
        auto [q, r] = divmod(b);
        if (!r.is_zero()) throw internal_error("exact_div: nonzero remainder");
        return q;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return leading().inverse() * *this;
    }

    Poly derivative() const {
        Poly r(field_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(field_->from_int(Int(i)) * c_[i]);
        r.trim();
        return r;
    }

    FieldElement eval(const FieldElement& x0) const {
        FieldElement acc = field_->zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x0 + c_[i];
        return acc;
    }

    Poly powmod(Int e, const Poly& mod) const {
        Poly acc = Poly::constant(field_->one()) % mod;
        Poly base = *this % mod;
        while (e > 0) {
            if ((e & 1) != 0) acc = (acc * base) % mod;
            base = (base * base) % mod;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += " + ";
            s += c_[i].str();
            if (i) s += "*x^" + std::to_string(i);
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldDescriptor::Ptr field_;
    std::vector<FieldElement> c_;
};

/// Monic gcd via Euclid.  Not both inputs may be zero.
inline Poly poly_gcd(Poly f, Poly g) {
    if (f.is_zero() && g.is_zero())
        throw domain_error("poly_gcd: both inputs are zero");
    while (!g.is_zero()) {
        Poly r = f % g;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

namespace detail {

// Splits a monic product of distinct linear factors into roots.
// Standard equal-degree splitting with random shifts; q odd.
inline void split_linears(const Poly& h, Rng& rng,
                          std::vector<FieldElement>& out) {
    if (h.degree() <= 0) return;
    if (h.degree() == 1) {
        out.push_back(-h[0] * h[1].inverse());
        return;
    }
    const auto& field = h.field();
    Int q = field->order();
    for (;;) {
        FieldElement delta = field->random_element(rng);
        Poly shifted(field, {delta, field->one()});  // x + delta
        Poly w = shifted.powmod((q - 1) / 2, h) - Poly::constant(field->one());
        if (w.is_zero()) continue;
        Poly g = poly_gcd(w, h);
        if (g.degree() > 0 && g.degree() < h.degree()) {
            split_linears(g, rng, out);
            split_linears(h.exact_div(g), rng, out);
            return;
        }
    }
}

}  // namespace detail

/// All roots of f in its field of definition (as a set; multiplicities are
/// not reported).  Randomized splitting, seeded from the input.
inline std::vector<FieldElement> roots_in_field(const Poly& f,
                                                std::uint64_t seed = 0) {
    if (f.is_zero()) throw domain_error("roots_in_field: zero polynomial");
    const auto& field = f.field();
    if (f.degree() == 0) return {};
    Int q = field->order();
    // gcd(f, x^q - x) isolates the distinct roots in F_q.
    Poly xq = Poly::x(field).powmod(q, f);
    Poly h = poly_gcd(xq - Poly::x(field), f);
    if (h.degree() == 0) return {};
    std::uint64_t s = hash_combine(seed, 0x726f6f74);
    for (const auto& c : f.coeffs()) s = hash_string(s, c.str());
    Rng rng(s);
    std::vector<FieldElement> out;
    detail::split_linears(h, rng, out);
    return out;
}

}  // namespace elldiv

#endif  // ELLDIV_POLY_HPP
