#pragma once

// Homomorphisms between Hermitian Lie algebras: a source descriptor, a
// target descriptor, and one image per fixed source basis element (k basis
// then p basis, in cartan_split order).  Linearity determines the map;
// verify_homomorphism certifies the bracket relations and target membership
// exactly.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tighthom/algebra.hpp"

namespace tighthom {

struct Homomorphism {
    AlgebraDescriptor source;
    AlgebraDescriptor target;
    std::vector<Element> images;  // one per source basis element
    std::string label;
};

/// Image of an arbitrary source element (expanded in the fixed basis).
inline Mat apply(const Homomorphism& rho, const Mat& m) {
    std::vector<Surd> c = expand_in_basis(rho.source, m);
    Mat out(rho.target.matrix_size(), rho.target.matrix_size());
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (c[t].is_zero()) continue;
        out += c[t] * rho.images[t].mat;
    }
    return out;
}

inline Element apply(const Homomorphism& rho, const Element& x) {
    if (x.algebra != rho.source)
        throw std::invalid_argument("apply: element is not in the source algebra");
    return Element{rho.target, apply(rho, x.mat)};
}

/// Maximum residual over (a) membership of every image in the target and
/// (b) the bracket relations rho[b_i, b_j] = [rho b_i, rho b_j] over all
/// source basis pairs.  Zero certifies a Lie algebra homomorphism.
inline Rational verify_homomorphism(const Homomorphism& rho) {
    const CartanData& cd = cartan_split(rho.source);
    const std::size_t dim = cd.dimension();
    if (rho.images.size() != dim)
        throw std::invalid_argument("verify_homomorphism: image count " +
                                    std::to_string(rho.images.size()) + " != source dimension " +
                                    std::to_string(dim));
    Rational acc(0);
    for (const auto& im : rho.images)
        detail::track_max(acc, membership_residual(rho.target, im.mat));
    const StructureConstants& sc = structure_constants(rho.source);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Mat lhs = rho.images[i].mat * rho.images[j].mat - rho.images[j].mat * rho.images[i].mat;
            for (const auto& [t, coeff] : sc.at(i, j)) lhs += (-coeff) * rho.images[t].mat;
            detail::track_max(acc, detail::max_entry_magnitude(lhs));
        }
    return acc;
}

inline Homomorphism identity_hom(const AlgebraDescriptor& a) {
    Homomorphism rho;
    rho.source = a;
    rho.target = a;
    rho.images = cartan_split(a).basis();
    rho.label = "identity(" + a.str() + ")";
    return rho;
}

inline Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
    if (inner.target != outer.source)
        throw std::invalid_argument("compose: descriptor mismatch, inner target " +
                                    inner.target.str() + " vs outer source " + outer.source.str());
    Homomorphism rho;
    rho.source = inner.source;
    rho.target = outer.target;
    rho.images.reserve(inner.images.size());
    for (const auto& im : inner.images)
        rho.images.push_back(Element{outer.target, apply(outer, im.mat)});
    rho.label = "compose(" + outer.label + "," + inner.label + ")";
    return rho;
}

/// Block-diagonal direct sum.  With same_source = true both maps must share
/// their source and the result maps it diagonally into the sum target; with
/// false the result's source is the direct-sum algebra.  All target factors
/// must belong to one family so the sum target matches a single matrix
/// model family.
inline Homomorphism direct_sum(const Homomorphism& r1, const Homomorphism& r2, bool same_source) {
    for (const auto& f1 : r1.target.factors)
        for (const auto& f2 : r2.target.factors)
            if (f1.family != f2.family)
                throw std::invalid_argument("direct_sum: incompatible target families " +
                                            r1.target.str() + " vs " + r2.target.str());
    AlgebraDescriptor target = direct_sum(r1.target, r2.target);
    const std::size_t s1 = r1.target.matrix_size(), s2 = r2.target.matrix_size();
    auto embed1 = [&](const Mat& m) {
        Mat out(s1 + s2, s1 + s2);
        out.set_block(0, 0, m);
        return out;
    };
    auto embed2 = [&](const Mat& m) {
        Mat out(s1 + s2, s1 + s2);
        out.set_block(s1, s1, m);
        return out;
    };
    Homomorphism rho;
    rho.target = target;
    if (same_source) {
        if (r1.source != r2.source)
            throw std::invalid_argument("direct_sum: same_source requires equal sources, got " +
                                        r1.source.str() + " vs " + r2.source.str());
        rho.source = r1.source;
        for (std::size_t t = 0; t < r1.images.size(); ++t)
            rho.images.push_back(
                Element{target, embed1(r1.images[t].mat) + embed2(r2.images[t].mat)});
    } else {
        // The combined source's basis enumerates all k's (r1's then r2's)
        // followed by all p's (r1's then r2's), and each summand's own basis
        // is its k's then its p's, so both image lists interleave blockwise.
        rho.source = direct_sum(r1.source, r2.source);
        const std::size_t k1 = cartan_split(r1.source).k_basis.size();
        const std::size_t k2 = cartan_split(r2.source).k_basis.size();
        const std::size_t p1 = cartan_split(r1.source).p_basis.size();
        const std::size_t p2 = cartan_split(r2.source).p_basis.size();
        rho.images.reserve(k1 + k2 + p1 + p2);
        for (std::size_t t = 0; t < k1; ++t)
            rho.images.push_back(Element{target, embed1(r1.images[t].mat)});
        for (std::size_t t = 0; t < k2; ++t)
            rho.images.push_back(Element{target, embed2(r2.images[t].mat)});
        for (std::size_t t = 0; t < p1; ++t)
            rho.images.push_back(Element{target, embed1(r1.images[k1 + t].mat)});
        for (std::size_t t = 0; t < p2; ++t)
            rho.images.push_back(Element{target, embed2(r2.images[k2 + t].mat)});
    }
    rho.label = "dsum(" + r1.label + "," + r2.label + (same_source ? ",same_source" : "") + ")";
    return rho;
}

// ===================================================================
// Merging a direct-sum target into one simple matrix model
// ===================================================================

namespace detail {

/// Positive-half size (rows carrying +1 in the Hermitian gram) of a factor.
inline std::size_t positive_size(const SimpleFactor& f) {
    switch (f.family) {
        case Family::SU: return static_cast<std::size_t>(f.p);
        case Family::SP:
        case Family::SOSTAR: return static_cast<std::size_t>(f.n);
        case Family::SO2N: return 2;
    }
    throw std::logic_error("positive_size: bad family");
}

inline std::size_t negative_size(const SimpleFactor& f) {
    return f.matrix_size() - positive_size(f);
}

}  // namespace detail

/// Conjugates a homomorphism with direct-sum target (all factors of one
/// family, SU/SP/SOSTAR) into the single standard model of that family by
/// the permutation gathering all positive coordinates first.  An optional
/// larger target of the same family pads with zero coordinates (used for
/// non-tube targets whose capacity equations leave slack).
inline Homomorphism merge_factors(const Homomorphism& rho,
                                  std::optional<AlgebraDescriptor> target_override = std::nullopt) {
    if (rho.target.factors.empty()) throw std::invalid_argument("merge_factors: empty target");
    const Family fam = rho.target.factors[0].family;
    if (fam == Family::SO2N)
        throw std::invalid_argument("merge_factors: so(2,n) targets cannot be merged");
    std::size_t pos_total = 0, neg_total = 0;
    for (const auto& f : rho.target.factors) {
        if (f.family != fam)
            throw std::invalid_argument("merge_factors: mixed target families in " +
                                        rho.target.str());
        pos_total += detail::positive_size(f);
        neg_total += detail::negative_size(f);
    }
    AlgebraDescriptor merged;
    switch (fam) {
        case Family::SU: merged = su_algebra(pos_total, neg_total); break;
        case Family::SP: merged = sp_algebra(pos_total); break;
        case Family::SOSTAR: merged = sostar_algebra(pos_total); break;
        default: throw std::logic_error("merge_factors: bad family");
    }
    AlgebraDescriptor final_target = target_override.value_or(merged);
    if (final_target.factors.size() != 1 || final_target.factors[0].family != fam)
        throw std::invalid_argument("merge_factors: target override must be simple of family " +
                                    merged.str());
    // Canonical storage (p <= q per factor) makes pos_total <= neg_total and
    // fin_pos <= fin_neg, so the direct orientation is the only one to try.
    const std::size_t fin_pos = detail::positive_size(final_target.factors[0]);
    const std::size_t fin_neg = detail::negative_size(final_target.factors[0]);
    if (fin_pos < pos_total || fin_neg < neg_total)
        throw std::invalid_argument("merge_factors: target " + final_target.str() +
                                    " too small for " + rho.target.str());
    // new_index[old dsum coordinate] inside the final model.
    std::vector<std::size_t> new_index(rho.target.matrix_size());
    std::size_t pos_off = 0, neg_off = 0, old_off = 0;
    for (const auto& f : rho.target.factors) {
        const std::size_t a = detail::positive_size(f), b = detail::negative_size(f);
        for (std::size_t j = 0; j < a; ++j) new_index[old_off + j] = pos_off + j;
        for (std::size_t j = 0; j < b; ++j) new_index[old_off + a + j] = fin_pos + neg_off + j;
        pos_off += a;
        neg_off += b;
        old_off += a + b;
    }
    const std::size_t fin_size = final_target.matrix_size();
    Homomorphism out;
    out.source = rho.source;
    out.target = final_target;
    out.images.reserve(rho.images.size());
    for (const auto& im : rho.images) {
        Mat m(fin_size, fin_size);
        for (std::size_t r = 0; r < im.mat.rows(); ++r)
            for (std::size_t c = 0; c < im.mat.cols(); ++c)
                if (!im.mat.at(r, c).is_zero()) m.at(new_index[r], new_index[c]) = im.mat.at(r, c);
        out.images.push_back(Element{final_target, m});
    }
    out.label = "merge(" + rho.label + ")";
    return out;
}

// ===================================================================
// Polydiscs and diagonal discs
// ===================================================================

namespace detail {

/// One maximal-polydisc sl(2) triple of A, embedded at its factor's block:
/// Y = [Z0, X] and Z = -[X, Y]/4, so (2Z, X, Y) matches the fixed su(1,1)
/// basis (k = 2 Z0, p = X0, J X0).
struct DiscTriple {
    std::size_t factor;
    Mat x, y, z;
};

inline std::vector<DiscTriple> embedded_disc_triples(const AlgebraDescriptor& a) {
    std::vector<DiscTriple> out;
    const std::size_t total = a.matrix_size();
    const Mat z0 = algebra_Z0(a).mat;
    const Surd quarter(rational(-1, 4));
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        for (const Mat& g : disc_generators(a.factors[i])) {
            DiscTriple t;
            t.factor = i;
            t.x = Mat(total, total);
            t.x.set_block(off, off, g);
            t.y = z0 * t.x - t.x * z0;
            t.z = quarter * (t.x * t.y - t.y * t.x);
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace detail

/// The maximal polydisc su(1,1)^rank(A) -> A through the standard commuting
/// disc generators (coordinate pairs (e_i, e_{p+i}) for su, (e_i, e_{n+i})
/// for sp, quadruples (e_{2i}, e_{2i+1}, e_{n+2i}, e_{n+2i+1}) for so*, and
/// the split light-cone pair for so(2,n)).
inline Homomorphism polydisc(const AlgebraDescriptor& a) {
    auto triples = detail::embedded_disc_triples(a);
    Homomorphism rho;
    rho.source = su11_power(static_cast<long>(triples.size()));
    rho.target = a;
    const Surd two(2);
    for (const auto& t : triples) rho.images.push_back(Element{a, two * t.z});
    for (const auto& t : triples) {
        rho.images.push_back(Element{a, t.x});
        rho.images.push_back(Element{a, t.y});
    }
    rho.label = "polydisc(" + a.str() + ")";
    return rho;
}

/// The diagonal disc su(1,1) -> A with one sign per simple factor of A:
/// sign -1 pre-composes that factor's diagonal with the antiholomorphic
/// automorphism (Z0, X0, JX0) -> (-Z0, -X0, JX0) of su(1,1).
inline Homomorphism disc(const AlgebraDescriptor& a, const std::vector<int>& signs) {
    if (signs.size() != a.factors.size())
        throw std::invalid_argument("disc: need one sign per factor of " + a.str());
    for (int s : signs)
        if (s != 1 && s != -1) throw std::invalid_argument("disc: signs must be +1 or -1");
    const std::size_t total = a.matrix_size();
    Mat zs(total, total), xs(total, total), ys(total, total);
    for (const auto& t : detail::embedded_disc_triples(a)) {
        const Surd s(signs[t.factor]);
        zs += s * t.z;
        xs += s * t.x;
        ys += t.y;
    }
    Homomorphism rho;
    rho.source = su_algebra(1, 1);
    rho.target = a;
    rho.images = {Element{a, Surd(2) * zs}, Element{a, xs}, Element{a, ys}};
    std::string tag;
    for (std::size_t i = 0; i < signs.size(); ++i)
        tag += (i ? "," : "") + std::string(signs[i] > 0 ? "+1" : "-1");
    rho.label = "disc(" + a.str() + ",[" + tag + "])";
    return rho;
}

}  // namespace tighthom
