#pragma once
// Hermitian hull of a tight positive homomorphism: the smallest
// holomorphically embedded Hermitian subalgebra of the target containing
// the image.  Every su(1,1)-isomorphic source factor contributes one
// sp(2m,R) per isomorphism type of nontrivial irreducible summand (complex
// dimension 2m) of its restricted module action -- isomorphic repeats merge
// into a single diagonal piece, which keeps the hull invariant under
// post-composition with holomorphic injections.  Every other source factor
// contributes itself.  An explicit inclusion of the hull into the target is
// built and certified; for sp/so* targets it is expressed in the ambient
// su(n,n) model sharing the same Hermitian form.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tighthom/branching.hpp"
#include "tighthom/tightness.hpp"

namespace tighthom {

/// One sp(2m,R) hull piece contributed by an su(1,1)-type source factor.
struct HullPiece {
    std::size_t source_factor = 0;
    long m = 0;             // the piece is sp(2m,R)
    long multiplicity = 1;  // isomorphic summands merged into this piece
};

struct HullResult {
    AlgebraDescriptor hull;
    /// Per-factor detail: pieces ordered by source factor, then by m.
    /// Non-su(1,1) factors pass through unchanged and appear only in `hull`.
    std::vector<HullPiece> pieces;
    /// Inclusion of the hull into the target (ambient su(n,n) model when the
    /// target is sp(2n,R) or so*(2n)).  Images follow cartan_split(hull).
    Homomorphism embedding;
    bool holomorphic_tight_into_target = false;
};

namespace detail {

/// Factors isomorphic to su(1,1) as stored: su(1,1), sp(2,R), so(2,1).
inline bool su11_like(const SimpleFactor& f) {
    switch (f.family) {
        case Family::SU: return f.p == 1 && f.q == 1;
        case Family::SP: return f.n == 1;
        case Family::SO2N: return f.n == 1;
        case Family::SOSTAR: return false;
    }
    return false;
}

/// Index positions of factor f's basis elements inside the direct-sum basis
/// (all k blocks in factor order, then all p blocks in factor order).
inline std::vector<std::size_t> source_factor_indices(const AlgebraDescriptor& a, std::size_t f) {
    std::vector<std::size_t> kc, pc;
    for (const SimpleFactor& fac : a.factors) {
        const CartanData& c = cartan_split(AlgebraDescriptor{{fac}});
        kc.push_back(c.k_basis.size());
        pc.push_back(c.p_basis.size());
    }
    std::size_t ktotal = 0;
    for (std::size_t v : kc) ktotal += v;
    std::size_t koff = 0, poff = 0;
    for (std::size_t j = 0; j < f; ++j) {
        koff += kc[j];
        poff += pc[j];
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < kc[f]; ++i) idx.push_back(koff + i);
    for (std::size_t i = 0; i < pc[f]; ++i) idx.push_back(ktotal + poff + i);
    return idx;
}

/// Summands of one su(1,1)-type factor action grouped by isomorphism type.
/// su(1,1) has exactly one irreducible per dimension, so the type of a
/// summand is its complex dimension 2m.
struct OddSummandGroup {
    long m = 0;
    std::vector<Mat> bases;  // ambient column bases, pairwise orthogonal
};

inline std::vector<OddSummandGroup> odd_summand_census(const Mat& gram,
                                                       const std::vector<Mat>& factor_mats,
                                                       const DecompositionReport& dec,
                                                       unsigned long seed) {
    std::map<long, std::vector<Mat>> groups;
    for (const DecompositionBlock& b : dec.blocks) {
        std::vector<Mat> restricted = restrict_operators(factor_mats, b.basis);
        bool any = false;
        for (const Mat& r : restricted)
            if (!r.is_zero()) { any = true; break; }
        if (!any) continue;
        DecompositionReport sub =
            decompose_core(restricted_gram(gram, b.basis), restricted, std::nullopt, seed);
        if (sub.residual_kind != ResidualKind::COMPLETE)
            throw std::logic_error("hermitian_hull: factor-restricted module failed to decompose");
        for (const DecompositionBlock& sb : sub.blocks) {
            bool act = false;
            for (const Mat& r : restrict_operators(restricted, sb.basis))
                if (!r.is_zero()) { act = true; break; }
            if (!act) continue;  // the factor vanishes on this summand
            if (sb.basis.cols() % 2 != 0)
                throw std::logic_error(
                    "hermitian_hull: odd-dimensional nontrivial su(1,1) summand contradicts "
                    "positivity");
            groups[static_cast<long>(sb.basis.cols()) / 2].push_back(b.basis * sb.basis);
        }
    }
    std::vector<OddSummandGroup> out;
    for (auto& [m, bases] : groups) out.push_back({m, std::move(bases)});
    return out;
}

/// Coordinates of columns inside the span of a full-column-rank basis.
inline Mat coords_in(const Mat& basis, const Mat& cols) {
    Mat p = inverse(basis.conj_transpose() * basis) * (basis.conj_transpose() * cols);
    if (!(basis * p - cols).is_zero())
        throw std::logic_error("hermitian_hull: columns left their summand span");
    return p;
}

/// Frame S of a 2m-dimensional summand with S^H G S = diag(I_m, -I_m) and
/// Z0 S = S (i/2) diag(I_m, -I_m): the column coordinates are aligned with
/// the target complex structure, so the sp(2m,R) block embedded through S is
/// holomorphic.  Falls back to a plain unitized frame (positives first) when
/// the summand is not stable under Z0; the certificate then reports the
/// inclusion honestly as non-holomorphic.
inline Mat holomorphic_frame(const Mat& gram, const Mat& z0, const Mat& w) {
    const std::size_t d = w.cols();
    std::optional<Mat> zr;
    try {
        zr = restrict_operators({z0}, w)[0];
    } catch (const std::domain_error&) {
        zr = std::nullopt;
    }
    if (zr) {
        const Surd half_i(Gaussian(Rational(0), Rational(1, 2)));
        auto pk = kernel_basis(*zr - half_i * Mat::identity(d));
        auto mk = kernel_basis(*zr + half_i * Mat::identity(d));
        if (pk.size() == mk.size() && pk.size() + mk.size() == d) {
            Mat pcoords(d, pk.size()), mcoords(d, mk.size());
            for (std::size_t j = 0; j < pk.size(); ++j)
                for (std::size_t i = 0; i < d; ++i) pcoords.at(i, j) = pk[j][i];
            for (std::size_t j = 0; j < mk.size(); ++j)
                for (std::size_t i = 0; i < d; ++i) mcoords.at(i, j) = mk[j][i];
            auto [sp, sigp] = unitize_columns(gram, w * pcoords);
            auto [sm, sigm] = unitize_columns(gram, w * mcoords);
            if (sigp.negative == 0 && sigm.positive == 0) {
                Mat s(w.rows(), d);
                s.set_block(0, 0, sp);
                s.set_block(0, sp.cols(), sm);
                return s;
            }
        }
    }
    return unitize_columns(gram, w).first;
}

/// Aligned frames for all summands of one isomorphism type, plus the left
/// inverses T with T S = I and T = 0 on the orthocomplement.  Frames after
/// the first are transported through an intertwiner (Z0-compatible when one
/// exists) so that the factor acts by the *same* matrices in every frame and
/// the merged diagonal piece contains the factor's image.
struct PieceFrames {
    std::vector<Mat> s, t;
};

inline PieceFrames piece_frames(const Mat& gram, const Mat& z0,
                                const std::vector<Mat>& factor_mats,
                                const std::vector<Mat>& bases) {
    PieceFrames out;
    out.s.push_back(holomorphic_frame(gram, z0, bases[0]));
    Mat p1 = coords_in(bases[0], out.s[0]);
    for (std::size_t k = 1; k < bases.size(); ++k) {
        std::vector<Mat> aug = factor_mats;
        aug.push_back(z0);
        std::vector<Mat> hom;
        try {
            hom = intertwiners(aug, bases[0], bases[k]);
        } catch (const std::domain_error&) {
        }
        if (hom.empty()) hom = intertwiners(factor_mats, bases[0], bases[k]);
        if (hom.empty())
            throw std::logic_error(
                "hermitian_hull: equal-dimensional summands admit no intertwiner");
        out.s.push_back(bases[k] * (hom.front() * p1));
    }
    for (const Mat& s : out.s) {
        Mat gk = restricted_gram(gram, s);
        out.t.push_back(inverse(gk) * s.conj_transpose() * gram);
    }
    return out;
}

}  // namespace detail

/// Hermitian hull of a certified tight positive homomorphism with a complete
/// module decomposition.  Throws invalid_argument when the input is not
/// tight, not positive, or the decomposition is incomplete.
inline HullResult hermitian_hull(const Homomorphism& rho, const DecompositionReport& dec,
                                 unsigned long seed = 0) {
    if (!rho.target.is_simple())
        throw std::invalid_argument("hermitian_hull: target must be simple (merge factors first)");
    if (rho.target.factors[0].family == Family::SO2N)
        throw std::invalid_argument("hermitian_hull: so(2,n) targets are not supported");
    TightnessCertificate cert = certify(rho);
    if (!cert.tight)
        throw std::invalid_argument("hermitian_hull: homomorphism is not tight (" + rho.label +
                                    ")");
    if (!cert.positive)
        throw std::invalid_argument("hermitian_hull: homomorphism is not positive (" + rho.label +
                                    ")");
    if (dec.residual_kind != ResidualKind::COMPLETE)
        throw std::invalid_argument("hermitian_hull: module decomposition is not complete");

    const Mat& gram = rho.target.factors[0].form.gram;
    const Mat z0 = algebra_Z0(rho.target).mat;

    HullResult out;
    std::vector<SimpleFactor> hull_factors;
    std::vector<std::vector<Mat>> k_chunks, p_chunks;  // per hull factor

    for (std::size_t f = 0; f < rho.source.factors.size(); ++f) {
        std::vector<std::size_t> idx = detail::source_factor_indices(rho.source, f);
        std::vector<Mat> fmats;
        fmats.reserve(idx.size());
        for (std::size_t i : idx) fmats.push_back(rho.images[i].mat);
        if (detail::su11_like(rho.source.factors[f])) {
            for (const auto& g : detail::odd_summand_census(gram, fmats, dec, seed)) {
                out.pieces.push_back({f, g.m, static_cast<long>(g.bases.size())});
                detail::PieceFrames fr = detail::piece_frames(gram, z0, fmats, g.bases);
                AlgebraDescriptor piece = sp_algebra(g.m);
                const CartanData& pc = cartan_split(piece);
                auto embed_elem = [&](const Mat& b) {
                    Mat acc(gram.rows(), gram.cols());
                    for (std::size_t k = 0; k < fr.s.size(); ++k) acc += fr.s[k] * b * fr.t[k];
                    return acc;
                };
                std::vector<Mat> kc, pv;
                for (const Element& e : pc.k_basis) kc.push_back(embed_elem(e.mat));
                for (const Element& e : pc.p_basis) pv.push_back(embed_elem(e.mat));
                hull_factors.push_back(piece.factors[0]);
                k_chunks.push_back(std::move(kc));
                p_chunks.push_back(std::move(pv));
            }
        } else {
            const CartanData& fc = cartan_split(AlgebraDescriptor{{rho.source.factors[f]}});
            const std::size_t kn = fc.k_basis.size();
            std::vector<Mat> kc(fmats.begin(), fmats.begin() + static_cast<std::ptrdiff_t>(kn));
            std::vector<Mat> pv(fmats.begin() + static_cast<std::ptrdiff_t>(kn), fmats.end());
            hull_factors.push_back(rho.source.factors[f]);
            k_chunks.push_back(std::move(kc));
            p_chunks.push_back(std::move(pv));
        }
    }
    out.hull = AlgebraDescriptor{hull_factors};

    AlgebraDescriptor etarget = rho.target;
    if (rho.target.factors[0].family != Family::SU) {
        const long half = static_cast<long>(rho.target.matrix_size()) / 2;
        etarget = su_algebra(half, half);
    }
    out.embedding.source = out.hull;
    out.embedding.target = etarget;
    for (const auto& chunk : k_chunks)
        for (const Mat& m : chunk) out.embedding.images.push_back(Element{etarget, m});
    for (const auto& chunk : p_chunks)
        for (const Mat& m : chunk) out.embedding.images.push_back(Element{etarget, m});
    out.embedding.label = "hull_inclusion(" + rho.label + ")";

    if (is_zero(verify_homomorphism(out.embedding))) {
        TightnessCertificate ec = certify(out.embedding);
        out.holomorphic_tight_into_target = ec.tight && ec.holomorphic;
    }
    return out;
}

/// Convenience form: decomposes the module internally, merging a direct-sum
/// target into its single standard model first when necessary.
inline HullResult hermitian_hull(const Homomorphism& rho, unsigned long seed = 0) {
    if (rho.target.is_simple()) return hermitian_hull(rho, invariant_decomposition(rho, seed), seed);
    Homomorphism merged = merge_factors(rho);
    return hermitian_hull(merged, invariant_decomposition(merged, seed), seed);
}

}  // namespace tighthom
