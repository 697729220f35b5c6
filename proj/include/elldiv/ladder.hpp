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

#ifndef ELLDIV_LADDER_HPP
#define ELLDIV_LADDER_HPP

#include <chrono>
#include <optional>
#include <vector>

#include "elldiv/divide.hpp"

namespace elldiv {

struct LadderLevel {
    unsigned k;                 // torsion level reached: T has order ell^k
    unsigned extension_degree;  // first degree m with such a point found
    double seconds;             // wall time spent reaching this level
};

struct LadderState {
    Int ell;
    unsigned level = 0;  // 0 = nothing found
    std::optional<EllipticCurve> curve;   // base change over the working field
    std::optional<TorsionBasis> basis;    // E[ell] basis over the working field
    std::optional<CurvePoint> T;          // certified order ell^level
    std::vector<LadderLevel> history;
};

/// Certifies ord(T) = ell^k exactly.
inline bool has_order_ell_power(const EllipticCurve& E, const CurvePoint& T,
                                const Int& ell, unsigned k) {
    if (k == 0) return T.is_infinity();
    return scalar_mul(E, pow(ell, k), T).is_infinity() &&
           !scalar_mul(E, pow(ell, k - 1), T).is_infinity();
}

/// Climbs the ell-power torsion ladder: find an ell-torsion point, then
/// repeatedly divide it by ell, enlarging the base field whenever division
/// fails over the current one.  Each extension degree restarts the climb
/// from level 1 (fields of different degrees do not embed in one another
/// here), so the history records the first degree to admit each level.
inline LadderState climb(const EllipticCurve& E, const Int& ell, unsigned k_max,
                         unsigned ext_max, std::uint64_t seed = 0) {
    if (E.field()->extension_degree() != 1)
        throw domain_error("climb: base curve must be over a prime field");
    if (ell == E.field()->characteristic() || E.field()->characteristic() <= 3)
        throw domain_error("climb: require ell != p and p > 3");
    LadderState st;
    st.ell = ell;
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    for (unsigned m = 1; m <= ext_max && st.level < k_max; ++m) {
        std::optional<TorsionBasis> basis;
        try {
            basis = torsion_basis(E, ell, m, seed);
        } catch (const not_found_error&) {
            continue;
        }
        if (basis->extension_degree != m) continue;  // smaller field already tried
        const EllipticCurve& Em = basis->curve;
        CurvePoint T = basis->W1;
        unsigned k = 1;
        auto record = [&] {
            st.level = k;
            st.curve = Em;
            st.basis = basis;
            st.T = T;
            st.history.push_back({k, m, elapsed()});
        };
        if (st.level < 1) record();  // level 1 comes straight from the basis
        while (k < k_max) {
            auto res = divide_point(Em, *basis, T, ell, seed);
            if (!res.in_image || res.preimages.empty()) break;
            T = res.preimages.front().P;
            if (!has_order_ell_power(Em, T, ell, k + 1))
                throw internal_error("climb: preimage has wrong order");
            ++k;
            if (k > st.level) record();
        }
    }
    if (st.level == 0)
        throw not_found_error("climb: no ell-torsion within the extension bound");
    return st;
}

struct TraceResult {
    Int modulus;                  // ell^k
    std::vector<Int> candidates;  // all t with pi^2 T - [t] pi T + [p] T = oo
    bool ambiguous() const { return candidates.size() != 1; }
    Int value() const {
        if (ambiguous()) throw not_found_error("trace_mod: ambiguous candidate set");
        return candidates.front();
    }
};

/// Coordinate-wise p-power map (the p-Frobenius of the base prime field).
inline CurvePoint frobenius(const CurvePoint& P, const Int& p) {
    if (P.is_infinity()) return P;
    return CurvePoint(P.x().pow(p), P.y().pow(p));
}

/// a_p mod ell^k from a point T of order ell^k: collect every t in Z/ell^k
/// with pi^2(T) - [t] pi(T) + [p] T = P_infinity.  The true trace always
/// satisfies the relation; on a single cyclic piece other t may too, so the
/// whole candidate set is surfaced.
inline TraceResult trace_mod(const LadderState& st, unsigned k) {
    if (k > st.level)
        throw not_found_error("trace_mod: ladder reached level " +
                              std::to_string(st.level) + " < requested " +
                              std::to_string(k));
    const EllipticCurve& E = *st.curve;
    const Int p = E.field()->characteristic();
    Int mod = pow(st.ell, k);
    CurvePoint T = scalar_mul(E, pow(st.ell, st.level - k), *st.T);  // order ell^k
    if (!has_order_ell_power(E, T, st.ell, k))
        throw internal_error("trace_mod: order certification failed");
    CurvePoint piT = frobenius(T, p);
    CurvePoint pi2T = frobenius(piT, p);
    CurvePoint rhs = point_add(E, pi2T, scalar_mul(E, p % mod, T));
    TraceResult out{mod, {}};
    CurvePoint acc = CurvePoint::infinity();  // [t] pi T
    for (Int t = 0; t < mod; ++t) {
        if (rhs == acc) out.candidates.push_back(t);
        acc = point_add(E, acc, piT);
    }
    if (out.candidates.empty())
        throw internal_error("trace_mod: Frobenius relation has no solution");
    return out;
}

/// CRT combiner for pairwise-coprime moduli: returns (r, M) with r = r_i
/// (mod m_i) for all i and M the product of the moduli.
inline std::pair<Int, Int> crt_combine(const std::vector<std::pair<Int, Int>>& parts) {
    Int r = 0, M = 1;
    for (const auto& [ri, mi] : parts) {
        // solve r + M*x = ri (mod mi) via the extended gcd of M and mi
        Int a = M % mi, b = mi, x0 = 1, x1 = 0;
        while (b != 0) {
            Int q = a / b;
            Int tmp = a - q * b;
            a = b;
            b = tmp;
            tmp = x0 - q * x1;
            x0 = x1;
            x1 = tmp;
        }
        if (a != 1) throw domain_error("crt_combine: moduli not coprime");
        Int x = ((ri - r) % mi) * x0 % mi;
        if (x < 0) x += mi;
        r += M * x;
        M *= mi;
        r %= M;
    }
    return {r, M};
}

}  // namespace elldiv

#endif  // ELLDIV_LADDER_HPP
