#pragma once

// Named constructors for the explicit homomorphisms the library certifies:
// the four standard inclusion classes between classical Hermitian families,
// corner inclusions so(2,k) -> so(2,n), the odd-weight irreducible
// su(1,1) -> sp(2n,R) representations, and the spin representations
// so(2,p) -> (target determined by p mod 8).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tighthom/algebra.hpp"
#include "tighthom/clifford.hpp"
#include "tighthom/homomorphism.hpp"

namespace tighthom {

// ===================================================================
// Standard inclusions
// ===================================================================

enum class StdInclusionKind { SP_TO_SU, SOSTAR_TO_SU, SU_TO_SP, SU_TO_SOSTAR };

namespace detail {

/// Big-block image of X = [[A, Z], [Z*, B]] in su(p,q):
///   [ A  0  0  Z ]         sp variant:  eps = +1 (Z' = [[0,Z],[Z^T,0]])
///   [ 0  B~ eZt 0 ]        so* variant: eps = -1 (Z' = [[0,Z],[-Z^T,0]])
///   [ 0  eZ~ A~ 0 ]
///   [ Z* 0  0  B ]
/// with ~ = entrywise conjugate, Zt = transpose, block rows (p, q, p, q).
inline Mat su_big_block(long p, long q, const Mat& x, int eps) {
    const std::size_t sp = static_cast<std::size_t>(p), sq = static_cast<std::size_t>(q);
    Mat a = x.block(0, 0, sp, sp);
    Mat z = x.block(0, sp, sp, sq);
    Mat w = x.block(sp, 0, sq, sp);  // = Z* for members
    Mat b = x.block(sp, sp, sq, sq);
    const std::size_t r1 = sp, r2 = sp + sq, r3 = 2 * sp + sq, n = 2 * (sp + sq);
    Mat out(n, n);
    const Surd e(eps);
    out.set_block(0, 0, a);
    out.set_block(r1, r1, b.conj());
    out.set_block(r2, r2, a.conj());
    out.set_block(r3, r3, b);
    out.set_block(0, r3, z);
    out.set_block(r1, r2, e * z.transpose());
    out.set_block(r2, r1, e * z.conj());
    out.set_block(r3, 0, w);
    return out;
}

}  // namespace detail

/// The standard inclusion of the given kind.  SP_TO_SU and SOSTAR_TO_SU take
/// one parameter n (the complex matrix models are literal subalgebras of
/// su(n,n)); SU_TO_SP and SU_TO_SOSTAR take (m, n) and use the displayed
/// big-block map su(m,n) -> sp(2(m+n),R) / so*(2(m+n)).
inline Homomorphism std_inclusion(StdInclusionKind kind, long m, long n = 0) {
    Homomorphism rho;
    switch (kind) {
        case StdInclusionKind::SP_TO_SU:
        case StdInclusionKind::SOSTAR_TO_SU: {
            rho.source = (kind == StdInclusionKind::SP_TO_SU) ? sp_algebra(m) : sostar_algebra(m);
            rho.target = su_algebra(m, m);
            for (const Element& b : cartan_split(rho.source).basis())
                rho.images.push_back(Element{rho.target, b.mat});
            rho.label = (kind == StdInclusionKind::SP_TO_SU ? "std(sp_to_su," : "std(sostar_to_su,") +
                        std::to_string(m) + ")";
            return rho;
        }
        case StdInclusionKind::SU_TO_SP:
        case StdInclusionKind::SU_TO_SOSTAR: {
            rho.source = su_algebra(m, n);
            const long p = rho.source.factors[0].p, q = rho.source.factors[0].q;
            const int eps = (kind == StdInclusionKind::SU_TO_SP) ? 1 : -1;
            rho.target = (eps == 1) ? sp_algebra(p + q) : sostar_algebra(p + q);
            for (const Element& b : cartan_split(rho.source).basis())
                rho.images.push_back(Element{rho.target, detail::su_big_block(p, q, b.mat, eps)});
            rho.label = (eps == 1 ? "std(su_to_sp," : "std(su_to_sostar,") + std::to_string(p) +
                        "," + std::to_string(q) + ")";
            return rho;
        }
    }
    throw std::logic_error("std_inclusion: bad kind");
}

/// Corner inclusion so(2,k) -> so(2,n) for k <= n (identity on the first
/// 2+k coordinates).
inline Homomorphism so2_inclusion(long k, long n) {
    if (k < 1 || n < k) throw std::invalid_argument("so2_inclusion: need 1 <= k <= n");
    Homomorphism rho;
    rho.source = so2_algebra(k);
    rho.target = so2_algebra(n);
    const std::size_t big = rho.target.matrix_size();
    for (const Element& b : cartan_split(rho.source).basis()) {
        Mat im(big, big);
        im.set_block(0, 0, b.mat);
        rho.images.push_back(Element{rho.target, im});
    }
    rho.label = "incl(so2," + std::to_string(k) + "," + std::to_string(n) + ")";
    return rho;
}

// ===================================================================
// Odd-weight representations su(1,1) -> sp(2n,R)
// ===================================================================

namespace detail {

inline long binomial(long n, long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!b.fits_slong_p()) throw std::overflow_error("binomial: value too large");
    return b.get_si();
}

}  // namespace detail

/// The irreducible representation of su(1,1) with highest weight 2n-1 (the
/// odd symmetric power of the defining representation), conjugated into the
/// standard sp(2n,R) model.  The conjugation reorders the weight basis
/// (even weight indices ascending, then their symplectic partners) and
/// rescales by square roots of binomial coefficients so the preserved
/// Hermitian and symplectic forms become exactly the model forms.
inline Homomorphism rho_odd(long n) {
    if (n < 1) throw std::invalid_argument("rho_odd: need n >= 1");
    const long N = 2 * n;
    // Monomial-basis action on v_k = x^{N-1-k} y^k, k = 0..N-1:
    //   E v_k = k v_{k-1},  F v_k = (N-1-k) v_{k+1},  H v_k = (N-1-2k) v_k.
    Mat rho_e(N, N), rho_f(N, N), rho_h(N, N);
    for (long k = 1; k < N; ++k) rho_e.at(k - 1, k) = Surd(k);
    for (long k = 0; k + 1 < N; ++k) rho_f.at(k + 1, k) = Surd(N - 1 - k);
    for (long k = 0; k < N; ++k) rho_h.at(k, k) = Surd(N - 1 - 2 * k);
    // Images of the fixed su(1,1) basis 2Z0 = iH, X0 = E+F, Y0 = i(E-F).
    const Surd i1 = surd_i();
    std::vector<Mat> mono = {i1 * rho_h, rho_e + rho_f, i1 * (rho_e - rho_f)};
    // Change of basis: column j < n is sqrt(C(N-1, 2j)) * v_{2j} (positive
    // Hermitian sign), column n+j is sqrt(C(N-1, 2j)) * v_{N-1-2j} (its
    // symplectic partner).
    Mat t(N, N), t_inv(N, N);
    for (long j = 0; j < n; ++j) {
        const long c = detail::binomial(N - 1, 2 * j);
        t.at(2 * j, j) = Surd::radical(c);
        t.at(N - 1 - 2 * j, n + j) = Surd::radical(c);
        const Surd inv = Surd::radical(c).inverse();
        t_inv.at(j, 2 * j) = inv;
        t_inv.at(n + j, N - 1 - 2 * j) = inv;
    }
    Homomorphism rho;
    rho.source = su_algebra(1, 1);
    rho.target = sp_algebra(n);
    for (const Mat& im : mono) rho.images.push_back(Element{rho.target, t_inv * im * t});
    rho.label = "rho_odd(" + std::to_string(n) + ")";
    return rho;
}

// ===================================================================
// Spin representations so(2,p) -> Clifford even part
// ===================================================================

enum class HalfSpin { EVEN, ODD };

namespace detail {

inline int popcount_parity(std::size_t v) {
    int par = 0;
    for (; v; v >>= 1) par ^= static_cast<int>(v & 1);
    return par;
}

}  // namespace detail

/// Target family of spin(p) by residue: sp for p = 1,2,3 (mod 8), so* for
/// p = 5,6,7, bare su(c,c) for p = 0,4.
inline AlgebraDescriptor spin_target(long p) {
    if (p < 3) throw std::invalid_argument("spin_target: need p >= 3");
    const long m = (p + 2) / 2;
    const long half = (p % 2 == 0) ? (1L << (m - 1)) : (1L << m);  // module size
    switch (p % 8) {
        case 1:
        case 2:
        case 3: return sp_algebra(half / 2);
        case 5:
        case 6:
        case 7: return sostar_algebra(half / 2);
        case 0:
        case 4: return su_algebra(half / 2, half / 2);
    }
    throw std::logic_error("spin_target: unreachable");
}

/// The spin (p odd) or half-spin (p even) representation of so(2,p) on the
/// even Clifford algebra module, conjugated into the standard target model.
/// Generators map as Z0 -> g1 g2 / 2, so(p) rotations -> -g_{2+a} g_{2+b}/2,
/// and the two p-space directions over e_b to -g1 g_{2+b}/2, +g2 g_{2+b}/2.
/// For even p the chirality flag selects which half-spin summand.
inline Homomorphism spin(long p, HalfSpin chirality = HalfSpin::EVEN) {
    if (p < 3) throw std::invalid_argument("spin: need p >= 3 (use the low-rank isomorphisms)");
    const CliffordAlgebraData cl = clifford(p);
    const std::size_t dim = cl.even_part_dim;
    const Surd half(rational(1, 2));
    // Images on the full module in fixed so(2,p) basis order.
    std::vector<Mat> full;
    full.push_back(half * (cl.gamma[0] * cl.gamma[1]));  // Z0
    for (long a = 0; a < p; ++a)
        for (long b = a + 1; b < p; ++b)
            full.push_back(-half * (cl.gamma[2 + a] * cl.gamma[2 + b]));
    for (long b = 0; b < p; ++b) {
        full.push_back(-half * (cl.gamma[0] * cl.gamma[2 + b]));
        full.push_back(half * (cl.gamma[1] * cl.gamma[2 + b]));
    }
    // Coordinate subset: everything (p odd) or one popcount-parity class
    // (p even; the even part preserves each class).
    std::vector<std::size_t> coords;
    const int want = (chirality == HalfSpin::EVEN) ? 0 : 1;
    for (std::size_t v = 0; v < dim; ++v)
        if (p % 2 == 1 || detail::popcount_parity(v) == want) coords.push_back(v);
    // Order: Hermitian-positive coordinates (top tensor bit 0) ascending,
    // then their partners.  With a bilinear pairing the partner of v is its
    // bit complement and a unit phase normalizes the pairing entries to 1;
    // without one (bare su target) the negatives sort ascending, phase 1.
    const std::size_t top = dim / 2;
    const long res = p % 8;
    const bool has_pair = (res != 0 && res != 4);
    std::vector<std::size_t> order;
    std::vector<Surd> phase;
    for (std::size_t v : coords)
        if (v < top) {
            order.push_back(v);
            phase.push_back(Surd(1));
        }
    const std::size_t c = order.size();
    if (has_pair) {
        for (std::size_t j = 0; j < c; ++j) {
            const std::size_t partner = (dim - 1) ^ order[j];
            order.push_back(partner);
            phase.push_back(cl.bilinear.at(order[j], partner).inverse());
        }
    } else {
        for (std::size_t v : coords)
            if (v >= top) {
                order.push_back(v);
                phase.push_back(Surd(1));
            }
    }
    AlgebraDescriptor target = spin_target(p);
    if (target.matrix_size() != order.size())
        throw std::logic_error("spin: coordinate count does not match target size");
    Homomorphism rho;
    rho.source = so2_algebra(p);
    rho.target = target;
    for (const Mat& im : full) {
        Mat small(order.size(), order.size());
        for (std::size_t r = 0; r < order.size(); ++r)
            for (std::size_t s = 0; s < order.size(); ++s) {
                const Surd& e = im.at(order[r], order[s]);
                if (!e.is_zero()) small.at(r, s) = phase[r].conj() * phase[s] * e;
            }
        rho.images.push_back(Element{target, small});
    }
    rho.label = "spin(" + std::to_string(p) + (p % 2 == 0 && chirality == HalfSpin::ODD ? ",odd" : "") + ")";
    return rho;
}

}  // namespace tighthom
