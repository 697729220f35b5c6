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

#ifndef ELLDIV_FIELD_HPP
#define ELLDIV_FIELD_HPP

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "elldiv/common.hpp"

namespace elldiv {

class FieldElement;

/// Describes F_p (m = 1) or F_{p^m} = F_p[t]/(modulus).  Immutable after
/// construction and shareable across threads.
class FieldDescriptor : public std::enable_shared_from_this<FieldDescriptor> {
  public:
    using Ptr = std::shared_ptr<const FieldDescriptor>;

    /// F_p.  Requires p prime and p not in {2, 3}.
    static Ptr prime_field(const Int& p) {
        check_char(p);
        return Ptr(new FieldDescriptor(p, 1, {}));
    }

    /// F_p[t]/(modulus).  modulus is given as its coefficient vector,
    /// constant term first, and must be monic and irreducible.
    static Ptr extension_field(const Int& p, std::vector<Int> modulus);

    /// Searches (seeded) for a monic irreducible of degree m and builds the
    /// extension.  m = 1 returns the prime field.
    static Ptr extension_of_degree(const Int& p, unsigned m,
                                   std::uint64_t seed = 0);

    const Int& characteristic() const { return p_; }
    unsigned extension_degree() const { return m_; }
    const std::vector<Int>& modulus() const { return modulus_; }
    Int order() const {
        Int q = 1;
        for (unsigned i = 0; i < m_; ++i) q *= p_;
        return q;
    }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element of the prime subfield, reduced mod p (negatives allowed).
    FieldElement from_int(const Int& v) const;
    /// Element from a coefficient vector over F_p, little-endian in the
    /// extension generator.
    FieldElement from_coeffs(std::vector<Int> coeffs) const;
    FieldElement random_element(Rng& rng) const;

    bool operator==(const FieldDescriptor& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

  private:
    FieldDescriptor(Int p, unsigned m, std::vector<Int> modulus)
        : p_(std::move(p)), m_(m), modulus_(std::move(modulus)) {}

    static void check_char(const Int& p) {
        if (p == 2 || p == 3)
            throw domain_error("field characteristic 2 and 3 are not supported");
        if (!is_prime(p)) throw domain_error("field characteristic must be prime");
    }

    Int p_;
    unsigned m_;
    std::vector<Int> modulus_;  // empty when m_ == 1
};

/// Element of F_{p^m}, stored as a fully reduced coefficient vector of
/// length m over F_p.  Value type; all operations are pure.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldDescriptor::Ptr desc, std::vector<Int> coeffs)
        : desc_(std::move(desc)), c_(std::move(coeffs)) {}

    const FieldDescriptor::Ptr& field() const { return desc_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The unique representative in [0, p) when this element lies in the
    /// prime subfield.
    Int as_int() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0)
                throw domain_error("as_int: element not in the prime subfield");
        return c_.empty() ? Int(0) : c_[0];
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.c_ == b.c_ && *a.desc_ == *b.desc_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Int> r(a.c_.size());
        const Int& p = a.desc_->characteristic();
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a.c_[i] + b.c_[i];
            if (r[i] >= p) r[i] -= p;
        }
        return {a.desc_, std::move(r)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Int> r(a.c_.size());
        const Int& p = a.desc_->characteristic();
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a.c_[i] - b.c_[i];
            if (r[i] < 0) r[i] += p;
        }
        return {a.desc_, std::move(r)};
    }
    FieldElement operator-() const {
        std::vector<Int> r(c_.size());
        const Int& p = desc_->characteristic();
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = c_[i] == 0 ? Int(0) : Int(p - c_[i]);
        return {desc_, std::move(r)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    FieldElement inverse() const;
    FieldElement pow(Int e) const {
        if (e < 0) return inverse().pow(-e);
        if (desc_->extension_degree() == 1)  // integer powm avoids element churn
            return FieldElement(desc_, {boost::multiprecision::powm(
                                           c_[0], e, desc_->characteristic())});
        FieldElement base = *this, acc = desc_->one();
        while (e > 0) {
            if ((e & 1) != 0) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (desc_->extension_degree() == 1) return c_[0].str();
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += c_[i].str();
        }
        return s + "]";
    }

  private:
    void check_same(const FieldElement& o) const {
        if (!(*desc_ == *o.desc_))
            throw domain_error("field element operands from different fields");
    }

    FieldDescriptor::Ptr desc_;
    std::vector<Int> c_;
};

namespace detail {

// Dense arithmetic on F_p coefficient vectors (little-endian, trailing zeros
// allowed).  Shared by extension-field elements and Poly.
inline std::vector<Int> vec_mul_mod_p(const std::vector<Int>& a,
                                      const std::vector<Int>& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    for (auto& v : r) v %= p;
    return r;
}

inline std::size_t vec_deg(const std::vector<Int>& a) {
    std::size_t d = a.size();
    while (d > 0 && a[d - 1] == 0) --d;
    return d;  // number of significant coefficients; 0 means zero polynomial
}

inline void vec_canon(std::vector<Int>& a, const Int& p) {
    for (auto& v : a) {
        v %= p;
        if (v < 0) v += p;
    }
    a.resize(vec_deg(a));
}

// (quotient, remainder) of a / b in F_p[t]; b nonzero.
inline std::pair<std::vector<Int>, std::vector<Int>> vec_divmod(
    std::vector<Int> a, const std::vector<Int>& b, const Int& p) {
    vec_canon(a, p);
    std::size_t db = vec_deg(b);
    if (db == 0) throw domain_error("vec_divmod: division by zero");
    Int linv = powm(b[db - 1], p - 2, p);
    std::vector<Int> q;
    if (a.size() >= db) q.assign(a.size() - db + 1, Int(0));
    while (vec_deg(a) >= db) {
        std::size_t da = vec_deg(a);
        Int c = a[da - 1] * linv % p;
        q[da - db] = c;
        for (std::size_t j = 0; j < db; ++j) {
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p;
            if (a[da - db + j] < 0) a[da - db + j] += p;
        }
        a.resize(vec_deg(a));
    }
    return {std::move(q), std::move(a)};
}

inline std::vector<Int> vec_gcd(std::vector<Int> a, std::vector<Int> b, const Int& p) {
    vec_canon(a, p);
    vec_canon(b, p);
    while (!b.empty()) {
        auto r = vec_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    const Int& p = a.desc_->characteristic();
    if (a.desc_->extension_degree() == 1) {
        return {a.desc_, {(a.c_[0] * b.c_[0]) % p}};
    }
    auto r = detail::vec_divmod(detail::vec_mul_mod_p(a.c_, b.c_, p),
                                a.desc_->modulus(), p).second;
    r.resize(a.c_.size(), Int(0));
    return {a.desc_, std::move(r)};
}

inline FieldElement FieldDescriptor::zero() const {
    return {shared_from_this(), std::vector<Int>(m_, Int(0))};
}

inline FieldElement FieldDescriptor::one() const {
    std::vector<Int> c(m_, Int(0));
    c[0] = 1;
    return {shared_from_this(), std::move(c)};
}

inline FieldElement FieldDescriptor::from_int(const Int& v) const {
    std::vector<Int> c(m_, Int(0));
    c[0] = v % p_;
    if (c[0] < 0) c[0] += p_;
    return {shared_from_this(), std::move(c)};
}

inline FieldElement FieldDescriptor::from_coeffs(std::vector<Int> coeffs) const {
    if (coeffs.size() > m_) throw domain_error("coefficient vector too long");
    coeffs.resize(m_, Int(0));
    for (auto& v : coeffs) {
        v %= p_;
        if (v < 0) v += p_;
    }
    return {shared_from_this(), std::move(coeffs)};
}

inline FieldElement FieldDescriptor::random_element(Rng& rng) const {
    std::vector<Int> c(m_);
    for (auto& v : c) v = uniform_below(rng, p_);
    return {shared_from_this(), std::move(c)};
}

inline FieldElement FieldElement::inverse() const {
    if (is_zero()) throw domain_error("inverse of zero");
    const Int& p = desc_->characteristic();
    if (desc_->extension_degree() == 1) {
        return {desc_, {powm(c_[0], p - 2, p)}};
    }
    // extended Euclid in F_p[t]: u * this + v * modulus = gcd = const
    std::vector<Int> r0 = desc_->modulus(), r1 = c_;
    std::vector<Int> u0, u1{Int(1)};
    detail::vec_canon(r1, p);
    while (!r1.empty()) {
        auto [q, r2] = detail::vec_divmod(r0, r1, p);
        auto qu = detail::vec_mul_mod_p(q, u1, p);
        std::vector<Int> u2(std::max(u0.size(), qu.size()), Int(0));
        for (std::size_t i = 0; i < u2.size(); ++i) {
            Int x = (i < u0.size() ? u0[i] : Int(0)) - (i < qu.size() ? qu[i] : Int(0));
            x %= p;
            if (x < 0) x += p;
            u2[i] = x;
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (detail::vec_deg(r0) != 1)
        throw internal_error("inverse: element not coprime to modulus");
    Int cinv = powm(r0[0], p - 2, p);
    std::vector<Int> res = u0;
    for (auto& v : res) v = v * cinv % p;
    res.resize(desc_->modulus().size() - 1, Int(0));
    return {desc_, std::move(res)};
}

namespace detail {

// base^e mod (mod) in F_p[t].
inline std::vector<Int> vec_powmod(std::vector<Int> base, Int e,
                                   const std::vector<Int>& mod, const Int& p) {
    std::vector<Int> acc{Int(1)};
    base = vec_divmod(std::move(base), mod, p).second;
    while (e > 0) {
        if ((e & 1) != 0)
            acc = vec_divmod(vec_mul_mod_p(acc, base, p), mod, p).second;
        base = vec_divmod(vec_mul_mod_p(base, base, p), mod, p).second;
        e >>= 1;
    }
    return acc;
}

inline bool is_irreducible(const std::vector<Int>& mod, const Int& p) {
    const std::size_t m = vec_deg(mod) - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // No factor of degree <= m/2  <=>  gcd(t^(p^i) - t, mod) = 1 for i <= m/2.
    std::vector<Int> t{Int(0), Int(1)};
    std::vector<Int> ti = t;
    for (unsigned i = 1; i <= m / 2; ++i) {
        ti = vec_powmod(ti, p, mod, p);
        std::vector<Int> g = ti;
        if (g.size() < 2) g.resize(2, Int(0));
        g[1] = (g[1] - 1) % p;
        if (g[1] < 0) g[1] += p;
        auto d = vec_gcd(mod, g, p);
        if (vec_deg(d) != 1) return false;
    }
    return true;
}

}  // namespace detail

inline FieldDescriptor::Ptr FieldDescriptor::extension_field(
    const Int& p, std::vector<Int> modulus) {
    check_char(p);
    for (auto& v : modulus) {
        v %= p;
        if (v < 0) v += p;
    }
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 3)
        throw domain_error("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw domain_error("extension modulus must be monic");
    if (!detail::is_irreducible(modulus, p))
        throw domain_error("extension modulus is reducible");
    return Ptr(new FieldDescriptor(p, unsigned(modulus.size() - 1), std::move(modulus)));
}

inline FieldDescriptor::Ptr FieldDescriptor::extension_of_degree(
    const Int& p, unsigned m, std::uint64_t seed) {
    if (m == 0) throw domain_error("extension degree must be positive");
    if (m == 1) return prime_field(p);
    Rng rng(hash_int(hash_combine(seed, m), p));
    for (int tries = 0; tries < 10000; ++tries) {
        std::vector<Int> mod(m + 1);
        for (unsigned i = 0; i < m; ++i) mod[i] = uniform_below(rng, p);
        mod[m] = 1;
        if (detail::is_irreducible(mod, p))
            return Ptr(new FieldDescriptor(p, m, std::move(mod)));
    }
    throw internal_error("failed to find an irreducible modulus");
}

// ---------------------------------------------------------------------------
// ell-th power residues, roots, and roots of unity
// ---------------------------------------------------------------------------

/// True iff a is an ell-th power in F_q, by the power residue criterion.
/// Requires a != 0 and ell | q - 1.
inline bool ell_power_residue(const FieldElement& a, const Int& ell) {
    if (a.is_zero())
        throw domain_error("ell_power_residue: zero input is handled by the caller");
    Int q = a.field()->order();
    if ((q - 1) % ell != 0)
        throw domain_error("ell_power_residue: ell does not divide q - 1");
    return a.pow((q - 1) / ell).is_one();
}

/// A primitive ell-th root of unity in F_q: zeta^ell = 1, zeta != 1.
/// Requires ell | q - 1.  Deterministic for a fixed seed.
inline FieldElement primitive_root_of_unity(const FieldDescriptor::Ptr& field,
                                            const Int& ell, std::uint64_t seed = 0) {
    Int q = field->order();
    if ((q - 1) % ell != 0)
        throw domain_error("primitive_root_of_unity: ell does not divide q - 1");
    Rng rng(hash_int(hash_int(hash_combine(seed, 0x9d2c5680), ell), q));
    for (;;) {
        FieldElement r = field->random_element(rng);
        if (r.is_zero()) continue;
        FieldElement z = r.pow((q - 1) / ell);
        if (!z.is_one()) return z;
    }
}

namespace detail {

// Pohlig-Hellman discrete log in the cyclic group of order ell^s generated
// by g: returns e with g^e = h.  ell is small, so each digit is found by a
// linear scan.
inline Int sylow_dlog(const FieldElement& g, const FieldElement& h, const Int& ell,
                      int s) {
    Int e = 0, ell_pow = 1;
    FieldElement zeta = g.pow(pow(ell, unsigned(s - 1)));  // order ell
    for (int i = 0; i < s; ++i) {
        // digit d_i: ((h * g^-e)^(ell^(s-1-i))) = zeta^(d_i)
        FieldElement t = (h * g.pow(e).inverse()).pow(pow(ell, unsigned(s - 1 - i)));
        Int d = -1;
        FieldElement z = g.field()->one();
        for (Int cand = 0; cand < ell; ++cand) {
            if (z == t) {
                d = cand;
                break;
            }
            z *= zeta;
        }
        if (d < 0) throw internal_error("sylow_dlog: digit not found");
        e += d * ell_pow;
        ell_pow *= ell;
    }
    return e;
}

}  // namespace detail

/// An ell-th root of a residue a (Adleman-Manders-Miller).  Deterministic for
/// a fixed seed: the non-residue search PRNG is keyed on (a, ell, q).
inline FieldElement ell_th_root(const FieldElement& a, const Int& ell,
                                std::uint64_t seed = 0) {
    const auto& field = a.field();
    Int q = field->order();
    if ((q - 1) % ell != 0)
        throw domain_error("ell_th_root: ell does not divide q - 1");
    if (a.is_zero()) throw domain_error("ell_th_root: zero input");
    if (!a.pow((q - 1) / ell).is_one())
        throw domain_error("ell_th_root: input is not an ell-th power residue");

    Int t = q - 1;
    int s = 0;
    while (t % ell == 0) {
        t /= ell;
        ++s;
    }
    // Split a across Z_{q-1} = Z_{ell^s} x Z_t and take roots in each part.
    Int ell_s = pow(ell, unsigned(s));
    auto inv_mod = [](Int x, const Int& mod) {
        // extended Euclid
        Int a0 = mod, a1 = x % mod, u0 = 0, u1 = 1;
        if (a1 < 0) a1 += mod;
        while (a1 != 0) {
            Int qq = a0 / a1;
            Int a2 = a0 - qq * a1;
            Int u2 = u0 - qq * u1;
            a0 = a1; a1 = a2; u0 = u1; u1 = u2;
        }
        if (a0 != 1) throw internal_error("inv_mod: not coprime");
        u0 %= mod;
        if (u0 < 0) u0 += mod;
        return u0;
    };

    FieldElement root_t = field->one();
    if (t > 1) {
        Int inv_ells = inv_mod(ell_s % t, t);
        FieldElement at = a.pow(ell_s * inv_ells % (q - 1));  // component of order | t
        root_t = at.pow(inv_mod(ell % t, t));
        // recombine later with the Sylow part
        // Sylow component:
        Int inv_t = inv_mod(t % ell_s, ell_s);
        FieldElement as = a.pow(t * inv_t % (q - 1));
        // find generator of the Sylow subgroup
        Rng rng(hash_string(hash_int(hash_int(hash_combine(seed, 0xa5a5), ell), q),
                            a.str()));
        FieldElement g = field->one();
        for (;;) {
            FieldElement r = field->random_element(rng);
            if (r.is_zero()) continue;
            if (!r.pow((q - 1) / ell).is_one()) {
                g = r.pow(t);
                break;
            }
        }
        Int e = detail::sylow_dlog(g, as, ell, s);
        if (e % ell != 0) throw internal_error("ell_th_root: residue with e % ell != 0");
        FieldElement root_s = g.pow(e / ell);
        return root_t * root_s;
    }
    // t == 1: the whole group is the Sylow subgroup.
    Rng rng(hash_string(hash_int(hash_int(hash_combine(seed, 0xa5a5), ell), q), a.str()));
    FieldElement g = field->one();
    for (;;) {
        FieldElement r = field->random_element(rng);
        if (r.is_zero()) continue;
        if (!r.pow((q - 1) / ell).is_one()) {
            g = r;
            break;
        }
    }
    Int e = detail::sylow_dlog(g, a, ell, s);
    if (e % ell != 0) throw internal_error("ell_th_root: residue with e % ell != 0");
    return g.pow(e / ell);
}

}  // namespace elldiv

#endif  // ELLDIV_FIELD_HPP
