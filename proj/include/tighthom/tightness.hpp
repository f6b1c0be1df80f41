#pragma once

// Pullback-coefficient computation and tightness / positivity / holomorphy
// certificates.  For a homomorphism rho between Hermitian descriptors the
// pullback of the target's calibrated Kahler form decomposes over the
// simple source factors as  rho* omega_h = sum_i alpha_i omega_{g_i}; the
// certificate reports the alpha_i, the weighted sum  sum |alpha_i| rk(g_i),
// and whether it reaches rk(h) (tightness), all in exact arithmetic.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tighthom/homomorphism.hpp"

namespace tighthom {

struct TightnessCertificate {
    std::vector<std::pair<SimpleFactor, Rational>> per_factor;  // (source factor, alpha)
    Rational weighted_sum;  // sum |alpha_i| * rk(source factor i)
    long target_rank = 0;
    bool tight = false;
    bool positive = false;
    bool aligned = false;  // drho(p_source) contained in p_target
    bool holomorphic = false;
    Rational alignment_residual;   // max k-component magnitude over p images
    Rational holomorphy_residual;  // max |drho(J X) - J drho(X)| over p basis
};

namespace detail {

/// omega_h evaluated through the invariant formula sum_j c_j Re tr_j of
/// ([Z0, x] y) restricted to factor j's block.  Unlike kahler_pairing this
/// accepts arguments with k components (needed for non-aligned maps, where
/// the pullback form is still well defined).
inline Rational kahler_raw(const AlgebraDescriptor& a, const Mat& x, const Mat& y) {
    const Mat z0 = algebra_Z0(a).mat;
    const Mat prod = (z0 * x - x * z0) * y;
    Rational acc(0);
    for (std::size_t j = 0; j < a.factors.size(); ++j) {
        const std::size_t off = a.factor_offset(j);
        const std::size_t sz = a.factors[j].matrix_size();
        Surd t;
        for (std::size_t d = 0; d < sz; ++d) t += prod.at(off + d, off + d);
        Surd re = t.real();
        if (!re.is_gaussian())
            throw std::domain_error("kahler_raw: irrational trace value");
        acc += kahler_constant(a.factors[j]) * re.rational_part();
    }
    return acc;
}

}  // namespace detail

/// One alpha per simple source factor, with rho* omega_target =
/// sum_i alpha_i omega_{source factor i}.  Each alpha is evaluated on every
/// disc generator of its factor plus one skew combination; disagreement
/// (impossible for homomorphisms between these families) is rejected with a
/// diagnostic.
inline std::vector<Rational> pullback_coefficients(const Homomorphism& rho) {
    if (verify_homomorphism(rho) != 0)
        throw std::invalid_argument("pullback_coefficients: input is not a homomorphism (" +
                                    rho.label + ")");
    const AlgebraDescriptor& src = rho.source;
    const Mat z0s = algebra_Z0(src).mat;
    std::vector<Rational> alphas;
    for (std::size_t i = 0; i < src.factors.size(); ++i) {
        const std::size_t off = src.factor_offset(i);
        const std::size_t total = src.matrix_size();
        bool have = false;
        Rational alpha(0);
        auto check_generator = [&](const Mat& x, const Rational& denom) {
            Mat jx = z0s * x - x * z0s;
            Rational num = detail::kahler_raw(rho.target, apply(rho, x), apply(rho, jx));
            Rational a = num / denom;
            if (!have) {
                alpha = a;
                have = true;
            } else if (a != alpha) {
                throw std::domain_error(
                    "pullback_coefficients: pullback form is not factorwise proportional (" +
                    rho.label + ")");
            }
        };
        std::vector<Mat> gens = disc_generators(src.factors[i]);
        Mat first;
        for (const Mat& g : gens) {
            Mat x(total, total);
            x.set_block(off, off, g);
            if (!have) first = x;
            check_generator(x, Rational(1));  // omega(X, JX) = 1, calibrated
        }
        // Independent second direction: X + JX has omega(X', JX') = 2.
        Mat jfirst = z0s * first - first * z0s;
        check_generator(first + jfirst, Rational(2));
        alphas.push_back(alpha);
    }
    return alphas;
}

/// Full certificate: coefficients, rank accounting, alignment of
/// drho(p_source) with p_target, and the exact holomorphy residual
/// max_X |drho(J X) - [Z0_target, drho X]| over the fixed p basis.
inline TightnessCertificate certify(const Homomorphism& rho) {
    TightnessCertificate cert;
    std::vector<Rational> alphas = pullback_coefficients(rho);
    const AlgebraDescriptor& src = rho.source;
    for (std::size_t i = 0; i < src.factors.size(); ++i) {
        cert.per_factor.push_back({src.factors[i], alphas[i]});
        cert.weighted_sum += rat_abs(alphas[i]) * src.factors[i].rank();
    }
    cert.target_rank = rank(rho.target);
    cert.tight = (cert.weighted_sum == cert.target_rank);
    cert.positive = true;
    for (const Rational& a : alphas)
        if (a < 0) cert.positive = false;
    const CartanData& cd = cartan_split(src);
    const std::size_t kd = cd.k_basis.size();
    const Mat z0t = algebra_Z0(rho.target).mat;
    cert.alignment_residual = 0;
    cert.holomorphy_residual = 0;
    for (std::size_t t = 0; t < cd.p_basis.size(); ++t) {
        const Mat& im = rho.images[kd + t].mat;
        detail::track_max(cert.alignment_residual, k_component_residual(rho.target, im));
        // J p[2s] = p[2s+1] and J p[2s+1] = -p[2s] in the fixed pair order.
        const Mat& jim = (t % 2 == 0) ? rho.images[kd + t + 1].mat : rho.images[kd + t - 1].mat;
        const Mat j_of_im = z0t * im - im * z0t;
        Mat diff = (t % 2 == 0) ? (jim - j_of_im) : (-Surd(1) * jim - j_of_im);
        detail::track_max(cert.holomorphy_residual, detail::max_entry_magnitude(diff));
    }
    cert.aligned = (cert.alignment_residual == 0);
    cert.holomorphic = cert.aligned && (cert.holomorphy_residual == 0);
    return cert;
}

// ===================================================================
// Executable spot-check of the holomorphy theorem
// ===================================================================

enum class Theorem1Status {
    APPLIES,            // tight, positive, no su(1,1)-isomorphic source factor
    NOT_TIGHT_POSITIVE, // precondition fails: certificate not tight or not positive
    SU11_SOURCE,        // precondition fails: a source factor is su(1,1) up to isomorphism
};

struct Theorem1Result {
    Theorem1Status status;
    bool holomorphic = false;  // meaningful when status == APPLIES
};

namespace detail {

/// True when the factor is isomorphic to su(1,1) (or contains it as a
/// direct summand, for the non-simple descriptor so(2,2)).
inline bool has_su11_summand(const SimpleFactor& f) {
    switch (f.family) {
        case Family::SU: return f.p == 1 && f.q == 1;
        case Family::SP: return f.n == 1;
        case Family::SOSTAR: return f.n == 2;  // so*(4) = su(1,1) + su(2)
        case Family::SO2N: return f.n <= 2;    // so(2,1) and both halves of so(2,2)
    }
    throw std::logic_error("has_su11_summand: bad family");
}

}  // namespace detail

/// Checks the holomorphy conclusion on one qualifying homomorphism: tight +
/// positive maps with no su(1,1)-isomorphic source factor must be
/// holomorphic.  Precondition failures are reported as distinct statuses so
/// callers can skip rather than fail them.
inline Theorem1Result theorem1_check(const Homomorphism& rho) {
    for (const auto& f : rho.source.factors)
        if (detail::has_su11_summand(f)) return {Theorem1Status::SU11_SOURCE, false};
    TightnessCertificate cert = certify(rho);
    if (!cert.tight || !cert.positive) return {Theorem1Status::NOT_TIGHT_POSITIVE, false};
    return {Theorem1Status::APPLIES, cert.holomorphic};
}

}  // namespace tighthom
