#pragma once
// Invariant-subspace decomposition of the module carried by a homomorphism
// into su(m,n), sp(2n,R), or so*(2n).
//
// The module is split into pairwise form-orthogonal invariant blocks with
// nondegenerate restricted form, entirely in exact arithmetic:
//   * the commutant of the image is computed by intersecting bracket kernels,
//   * invariant subspaces are peeled off as eigenspaces ker(C - lambda) of
//     commutant elements whose eigenvalues lie in the coefficient field,
//   * a subspace is certified irreducible when the commutant of the
//     restricted action is one-dimensional (Schur),
//   * a degenerate irreducible is totally isotropic (its radical is
//     invariant); we then locate a partner module pairing it nondegenerately.
//     If the two are non-isomorphic the module cannot be decomposed into
//     nondegenerate blocks and the report carries the isotropic pair; if they
//     are isomorphic, a graph  u -> u + s*phi(u)  with generic rational s is a
//     nondegenerate irreducible and peeling continues.
//
// For so*(2n) targets the complex blocks are paired under the antilinear map
// J(v) = Sigma * conj(v), Sigma = [[0, I], [-I, 0]], which realizes right
// multiplication by the quaternion j in the fixed identification of C^{2n}
// with H^n.  Every so*(2n) member M satisfies conj(M) = Sigma M Sigma^{-1},
// so J commutes with all images; J flips the sign of the Hermitian form,
// hence the restricted signature of J V is that of V reversed.  A block is
// either J-stable (quaternionic flag) or the span <V, JV> of two disjoint
// anti-isomorphic modules (anti_isomorphic_pair flag).
//
// Randomized choices (generic commutant combinations, graph coefficients)
// are drawn from a deterministic seeded sequence so reports are reproducible.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "homomorphism.hpp"
#include "tightness.hpp"

namespace tighthom {

// ===================================================================
// Report types
// ===================================================================

enum class ResidualKind { COMPLETE, ISOTROPIC_OBSTRUCTION };

struct DecompositionBlock {
    Mat basis;            // ambient_dim x block_dim; columns span the subspace
    long positive = 0;    // signature of the restricted Hermitian form
    long negative = 0;
    bool irreducible = false;
    bool quaternionic = false;          // J-stable complex-irreducible block
    bool anti_isomorphic_pair = false;  // block is <V, JV> with V disjoint from JV
};

struct IsotropicObstruction {
    Mat module_a;               // totally isotropic invariant subspace
    Mat module_b;               // partner module pairing module_a nondegenerately
    long hyperbolic_rank = 0;   // common dimension k; the pair spans a (k,k) block
    std::string detail;
};

struct DecompositionReport {
    ResidualKind residual_kind = ResidualKind::COMPLETE;
    std::vector<DecompositionBlock> blocks;
    std::optional<IsotropicObstruction> obstruction;
    std::size_t commutant_dimension = 0;  // of the full module
};

// ===================================================================
// Exact Hermitian signature
// ===================================================================

struct HermitianSignature {
    long positive = 0;
    long negative = 0;
    long zero = 0;
};

namespace detail {

inline int real_surd_sign(const Surd& v) {
    if (v.is_zero()) return 0;
    return v.sign();
}

inline std::vector<Mat> image_mats(const Homomorphism& rho) {
    std::vector<Mat> out;
    out.reserve(rho.images.size());
    for (const Element& e : rho.images) out.push_back(e.mat);
    return out;
}

}  // namespace detail

/// Exact signature of a Hermitian matrix by congruence elimination.  When no
/// nonzero diagonal entry is available, a substitution e_i += e_j (or
/// e_i += i e_j) creates one from a nonzero off-diagonal pair.
inline HermitianSignature hermitian_signature(const Mat& g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("hermitian_signature: matrix not square");
    Mat w = g;
    const std::size_t n = w.rows();
    std::vector<bool> alive(n, true);
    HermitianSignature sig;
    while (true) {
        // Prefer a nonzero diagonal pivot.
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i)
            if (alive[i] && !w.at(i, i).is_zero()) piv = i;
        if (piv == n) {
            // All alive diagonal entries vanish; look for an off-diagonal one.
            std::size_t a = n, b = n;
            for (std::size_t i = 0; i < n && a == n; ++i) {
                if (!alive[i]) continue;
                for (std::size_t j = i + 1; j < n && a == n; ++j)
                    if (alive[j] && !w.at(i, j).is_zero()) { a = i; b = j; }
            }
            if (a == n) break;  // all remaining entries are zero
            // Substitute e_a += e_j or e_a += i e_b so that h(e_a, e_a) != 0.
            Surd lambda = Surd(1);
            Surd diag = w.at(a, b) + w.at(b, a);  // value of new h(e_a, e_a)
            if (diag.is_zero()) {
                lambda = surd_i();
                diag = surd_i() * w.at(a, b) - surd_i() * w.at(b, a);
            }
            // Row a picks up conj(lambda) * row b; column a picks up lambda * col b.
            for (std::size_t k = 0; k < n; ++k) {
                if (!alive[k]) continue;
                w.at(a, k) += lambda.conj() * w.at(b, k);
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (!alive[k]) continue;
                w.at(k, a) += lambda * w.at(k, b);
            }
            continue;
        }
        const Surd d = w.at(piv, piv);
        if (!d.is_real_valued())
            throw std::domain_error("hermitian_signature: non-real diagonal entry");
        const int s = detail::real_surd_sign(d);
        if (s > 0) ++sig.positive; else ++sig.negative;
        // Congruence-eliminate the pivot row/column from the rest.
        const Surd dinv = d.inverse();
        alive[piv] = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            const Surd ci = w.at(i, piv);
            if (ci.is_zero()) continue;
            const Surd f = ci * dinv;
            for (std::size_t j = 0; j < n; ++j) {
                if (!alive[j]) continue;
                w.at(i, j) -= f * w.at(piv, j);
            }
        }
        for (std::size_t j = 0; j < n; ++j)
            if (alive[j]) w.at(piv, j) = Surd(0);
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i]) w.at(i, piv) = Surd(0);
    }
    sig.zero = static_cast<long>(n) - sig.positive - sig.negative;
    return sig;
}

// ===================================================================
// Subspace utilities
// ===================================================================

/// True when the column spans of a and b coincide.
inline bool same_span(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) return false;
    const std::size_t ra = rank(a), rb = rank(b);
    if (ra != rb) return false;
    Mat both(a.rows(), a.cols() + b.cols());
    both.set_block(0, 0, a);
    both.set_block(0, a.cols(), b);
    return rank(both) == ra;
}

/// The antilinear quaternionic structure on C^{2n}: J(v) = Sigma * conj(v).
inline Mat quaternionic_structure(long n) {
    if (n < 1) throw std::invalid_argument("quaternionic_structure: n must be >= 1");
    const std::size_t m = static_cast<std::size_t>(n);
    Mat sigma(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        sigma.at(i, m + i) = Surd(1);
        sigma.at(m + i, i) = Surd(-1);
    }
    return sigma;
}

/// Image of the column span under the antilinear map v -> sigma * conj(v).
inline Mat apply_antilinear(const Mat& sigma, const Mat& columns) {
    return sigma * columns.conj();
}

namespace detail {

/// Columns of `cols` combined by the coefficient matrix: cols * coeffs.
inline Mat combine_columns(const Mat& cols, const std::vector<std::vector<Surd>>& coeff_vectors) {
    Mat coeffs(cols.cols(), coeff_vectors.size());
    for (std::size_t j = 0; j < coeff_vectors.size(); ++j)
        for (std::size_t i = 0; i < cols.cols(); ++i) coeffs.at(i, j) = coeff_vectors[j][i];
    return cols * coeffs;
}

/// Gram matrix of the form restricted to the column span: S^H * gram * S.
inline Mat restricted_gram(const Mat& gram, const Mat& s) {
    return s.conj_transpose() * gram * s;
}

/// Operators restricted to an invariant column span, expressed in the span's
/// basis.  Throws when a column image leaves the span (non-invariance).
inline std::vector<Mat> restrict_operators(const std::vector<Mat>& ops, const Mat& s) {
    LinearExpander<Surd> expander(s);
    std::vector<Mat> out;
    out.reserve(ops.size());
    for (const Mat& x : ops) {
        Mat xs = x * s;
        Mat r(s.cols(), s.cols());
        for (std::size_t j = 0; j < s.cols(); ++j) {
            std::vector<Surd> col(s.rows());
            for (std::size_t i = 0; i < s.rows(); ++i) col[i] = xs.at(i, j);
            auto c = expander.expand(col);
            if (!c) throw std::domain_error("restrict_operators: subspace is not invariant");
            for (std::size_t i = 0; i < s.cols(); ++i) r.at(i, j) = (*c)[i];
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Basis of { M : [M, X] = 0 for every X in ops }, computed by intersecting
/// the bracket kernels one operator at a time.
inline std::vector<Mat> commutant_basis(const std::vector<Mat>& ops, std::size_t dim) {
    std::vector<Mat> basis;
    basis.reserve(dim * dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) basis.push_back(unit(dim, r, c));
    for (const Mat& x : ops) {
        if (basis.size() <= 1) break;  // the identity always commutes
        if (x.is_zero()) continue;
        Mat system(dim * dim, basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            std::vector<Surd> v = (basis[j] * x - x * basis[j]).vectorize();
            for (std::size_t i = 0; i < v.size(); ++i) system.at(i, j) = v[i];
        }
        auto ker = kernel_basis(system);
        std::vector<Mat> next;
        next.reserve(ker.size());
        for (const auto& coeff : ker) {
            Mat m(dim, dim);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (!coeff[j].is_zero()) m += coeff[j] * basis[j];
            next.push_back(std::move(m));
        }
        basis = std::move(next);
    }
    return basis;
}

/// Monic minimal polynomial of a square matrix, ascending coefficients.
inline std::vector<Surd> minimal_polynomial(const Mat& c) {
    const std::size_t d = c.rows();
    std::vector<std::vector<Surd>> powers;
    Mat p = Mat::identity(d);
    powers.push_back(p.vectorize());
    for (std::size_t k = 1;; ++k) {
        p = p * c;
        powers.push_back(p.vectorize());
        Mat system(d * d, powers.size());
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t i = 0; i < d * d; ++i) system.at(i, j) = powers[j][i];
        auto ker = kernel_basis(system);
        if (!ker.empty()) {
            // First dependence involves the top power with nonzero coefficient.
            std::vector<Surd> rel = ker.front();
            Surd lead = rel.back();
            if (lead.is_zero()) throw std::logic_error("minimal_polynomial: degenerate relation");
            Surd inv = lead.inverse();
            std::vector<Surd> monic(rel.size());
            for (std::size_t i = 0; i < rel.size(); ++i) monic[i] = rel[i] * inv;
            return monic;
        }
        if (k > d) throw std::logic_error("minimal_polynomial: no relation found");
    }
}

inline Surd poly_eval(const std::vector<Surd>& coeffs, const Surd& x) {
    Surd acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

/// Roots of a monic polynomial that lie in the coefficient field.  Exact for
/// degree <= 2 with rational discriminant; otherwise a deterministic sweep of
/// small Gaussian-integer and small-denominator rational candidates.  The
/// list may be incomplete for higher degrees -- callers only need one root to
/// split an eigenspace off, and try several elements.
inline std::vector<Surd> field_roots(const std::vector<Surd>& monic) {
    std::vector<Surd> roots;
    auto push = [&roots](const Surd& r) {
        for (const Surd& s : roots)
            if ((s - r).is_zero()) return;
        roots.push_back(r);
    };
    const std::size_t deg = monic.size() - 1;
    if (deg == 0) return roots;
    if (deg == 1) {
        push(-monic[0]);
        return roots;
    }
    if (deg == 2) {
        const Surd& b = monic[1];
        const Surd& c0 = monic[0];
        Surd disc = b * b - Surd(4) * c0;
        const Surd half = Surd(Gaussian(rational(1, 2)));
        if (disc.is_zero()) {
            push(-b * half);
            return roots;
        }
        if (disc.is_rational()) {
            Rational r = disc.rational_part();
            Rational ar = abs(r);
            // sqrt(p/q) = sqrt(p*q)/q, with an extra factor i when negative.
            Surd root_abs = surd_sqrt(ar.get_num().get_si() * ar.get_den().get_si()) *
                            Surd(Gaussian(Rational(1) / ar.get_den()));
            Surd sq = sgn(r) > 0 ? root_abs : surd_i() * root_abs;
            push((-b + sq) * half);
            push((-b - sq) * half);
            return roots;
        }
        // fall through to the sweep for non-rational discriminants
    }
    if (!monic[0].is_zero()) {
        // no zero root; nothing special to add
    } else {
        push(Surd(0));
    }
    auto try_candidate = [&](const Surd& x) {
        if (poly_eval(monic, x).is_zero()) push(x);
    };
    for (long a = -60; a <= 60; ++a) {
        if (a != 0) try_candidate(Surd(Gaussian(Rational(a))));
        try_candidate(Surd(Gaussian(Rational(0), Rational(a == 0 ? 1 : a))));
    }
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b) {
            if (a == 0 || b == 0) continue;
            try_candidate(Surd(Gaussian(Rational(a), Rational(b))));
        }
    static const long denoms[] = {2, 3, 4, 5, 6, 8, 12};
    for (long d : denoms)
        for (long nnum = -24; nnum <= 24; ++nnum) {
            if (nnum % d == 0) continue;
            try_candidate(Surd(Gaussian(rational(nnum, d))));
        }
    return roots;
}

/// Deterministic draw sequence for generic combinations.  Small distinct
/// primes keep the eigenvalues of projection-like combinations small and
/// integral, which the root sweep then recovers.
class DrawSequence {
  public:
    explicit DrawSequence(unsigned long seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}

    long next_small() {
        static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        return primes[next_raw() % 12];
    }

    long next_signed(long bound) {
        return static_cast<long>(next_raw() % static_cast<unsigned long>(2 * bound + 1)) - bound;
    }

  private:
    unsigned long next_raw() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state_ >> 33);
    }
    unsigned long state_;
};

inline bool is_scalar_matrix(const Mat& c) {
    const std::size_t d = c.rows();
    Surd lambda = c.trace() * Surd(Gaussian(rational(1, static_cast<long>(d))));
    return (c - lambda * Mat::identity(d)).is_zero();
}

/// One eigenspace split of the span: returns coefficient vectors (in the
/// current basis) of a proper nonzero invariant subspace, or nullopt.
inline std::optional<std::vector<std::vector<Surd>>> split_once(const std::vector<Mat>& restricted,
                                                                const std::vector<Mat>& comm,
                                                                DrawSequence& draws) {
    const std::size_t d = restricted.empty() ? 0 : restricted.front().rows();
    std::vector<Mat> candidates;
    for (const Mat& m : comm)
        if (!is_scalar_matrix(m)) candidates.push_back(m);
    for (int t = 0; t < 24; ++t) {
        Mat m(d, d);
        for (const Mat& b : comm) m += Surd(Gaussian(Rational(draws.next_small()))) * b;
        if (!is_scalar_matrix(m)) candidates.push_back(m);
    }
    for (const Mat& c : candidates) {
        std::vector<Surd> mu = minimal_polynomial(c);
        std::vector<Surd> roots = field_roots(mu);
        std::optional<std::vector<std::vector<Surd>>> best;
        for (const Surd& lambda : roots) {
            auto ker = kernel_basis(c - lambda * Mat::identity(d));
            if (ker.empty() || ker.size() >= d) continue;
            if (!best || ker.size() < best->size()) best = std::move(ker);
        }
        if (best) return best;
    }
    return std::nullopt;
}

/// An irreducible invariant subspace of the column span `space`, returned as
/// ambient columns.  Refines by eigenspace splitting until the commutant of
/// the restricted action is scalar.
inline Mat find_irreducible(const std::vector<Mat>& ambient_ops, const Mat& space, DrawSequence& draws) {
    Mat cur = space;
    while (true) {
        std::vector<Mat> restricted = restrict_operators(ambient_ops, cur);
        std::vector<Mat> comm = commutant_basis(restricted, cur.cols());
        if (comm.size() <= 1) return cur;
        auto coeffs = split_once(restricted, comm, draws);
        if (!coeffs)
            throw std::domain_error(
                "invariant decomposition: commutant eigenvalues lie outside the supported field");
        cur = combine_columns(cur, *coeffs);
    }
}

/// Orthogonal complement of span(sub) inside span(space) w.r.t. the form.
inline Mat orthogonal_complement_in(const Mat& gram, const Mat& space, const Mat& sub) {
    Mat pairing = sub.conj_transpose() * gram * space;  // k x d
    auto ker = kernel_basis(pairing);
    return combine_columns(space, ker);
}

/// Invariant complement of the submodule span(sub) inside span(space):
/// the kernel of an invariant projection onto sub, found inside the
/// commutant of the restricted action.
inline Mat invariant_complement_in(const std::vector<Mat>& ambient_ops, const Mat& space, const Mat& sub) {
    std::vector<Mat> restricted = restrict_operators(ambient_ops, space);
    const std::size_t d = space.cols();
    std::vector<Mat> comm = commutant_basis(restricted, d);

    // Coordinates of sub inside space.
    LinearExpander<Surd> expander(space);
    Mat subc(d, sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) {
        std::vector<Surd> col(sub.rows());
        for (std::size_t i = 0; i < sub.rows(); ++i) col[i] = sub.at(i, j);
        auto c = expander.expand(col);
        if (!c) throw std::domain_error("invariant_complement_in: submodule outside the space");
        for (std::size_t i = 0; i < d; ++i) subc.at(i, j) = (*c)[i];
    }

    // Rows annihilating sub's coordinate span: z * subc = 0.
    auto left = kernel_basis(subc.transpose());  // vectors z with subc^T z = 0
    // Solve for P = sum a_j comm[j] with P * subc = subc and rows(left) * P = 0.
    const std::size_t k = sub.cols();
    const std::size_t zrows = left.size();
    Mat system(d * k + zrows * d, comm.size());
    std::vector<Surd> rhs(d * k + zrows * d, Surd(0));
    for (std::size_t j = 0; j < comm.size(); ++j) {
        Mat pj = comm[j] * subc;  // d x k
        for (std::size_t cc = 0; cc < k; ++cc)
            for (std::size_t rr = 0; rr < d; ++rr) system.at(cc * d + rr, j) = pj.at(rr, cc);
        for (std::size_t z = 0; z < zrows; ++z)
            for (std::size_t cc = 0; cc < d; ++cc) {
                Surd acc(0);
                for (std::size_t rr = 0; rr < d; ++rr) acc += left[z][rr] * comm[j].at(rr, cc);
                system.at(d * k + z * d + cc, j) = acc;
            }
    }
    for (std::size_t cc = 0; cc < k; ++cc)
        for (std::size_t rr = 0; rr < d; ++rr) rhs[cc * d + rr] = subc.at(rr, cc);
    auto sol = solve(system, rhs);
    if (!sol)
        throw std::logic_error("invariant_complement_in: no invariant projection (module not semisimple?)");
    Mat p(d, d);
    for (std::size_t j = 0; j < comm.size(); ++j)
        if (!(*sol)[j].is_zero()) p += (*sol)[j] * comm[j];
    auto ker = kernel_basis(p);
    return combine_columns(space, ker);
}

/// Intertwiner space Hom(U, T) between restricted actions on two column
/// spans of equal dimension: matrices F with F a_U(X) = a_T(X) F.
inline std::vector<Mat> intertwiners(const std::vector<Mat>& ambient_ops, const Mat& u, const Mat& t) {
    std::vector<Mat> au = restrict_operators(ambient_ops, u);
    std::vector<Mat> at = restrict_operators(ambient_ops, t);
    const std::size_t ku = u.cols(), kt = t.cols();
    std::vector<Mat> basis;
    basis.reserve(ku * kt);
    for (std::size_t c = 0; c < ku; ++c)
        for (std::size_t r = 0; r < kt; ++r) {
            Mat m(kt, ku);
            m.at(r, c) = Surd(1);
            basis.push_back(std::move(m));
        }
    for (std::size_t i = 0; i < au.size(); ++i) {
        if (basis.empty()) break;
        if (au[i].is_zero() && at[i].is_zero()) continue;
        Mat system(kt * ku, basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            std::vector<Surd> v = (basis[j] * au[i] - at[i] * basis[j]).vectorize();
            for (std::size_t rr = 0; rr < v.size(); ++rr) system.at(rr, j) = v[rr];
        }
        auto ker = kernel_basis(system);
        std::vector<Mat> next;
        for (const auto& coeff : ker) {
            Mat m(kt, ku);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (!coeff[j].is_zero()) m += coeff[j] * basis[j];
            next.push_back(std::move(m));
        }
        basis = std::move(next);
    }
    return basis;
}

// -------------------------------------------------------------------
// Core peeling loop (complex targets; optional quaternionic pairing)
// -------------------------------------------------------------------

inline DecompositionReport decompose_core(const Mat& gram, const std::vector<Mat>& images,
                                          const std::optional<Mat>& jmat, unsigned long seed) {
    const std::size_t n = gram.rows();
    for (const Mat& x : images)
        if (!(x.conj_transpose() * gram + gram * x).is_zero())
            throw std::invalid_argument("invariant decomposition: images do not preserve the form");

    DecompositionReport report;
    report.commutant_dimension = commutant_basis(images, n).size();
    DrawSequence draws(seed);

    Mat remaining = Mat::identity(n);
    while (remaining.cols() > 0) {
        Mat u = find_irreducible(images, remaining, draws);
        Mat gu = restricted_gram(gram, u);
        HermitianSignature sig = hermitian_signature(gu);
        std::optional<Mat> block;       // chosen nondegenerate block to peel
        bool block_irreducible = true;
        if (sig.zero == 0) {
            block = u;
        } else {
            if (!gu.is_zero())
                throw std::logic_error("invariant decomposition: degenerate irreducible not isotropic");
            // u is totally isotropic.  Its dual partner is an invariant
            // complement of u-perp; the partner pairs u nondegenerately.
            Mat uperp = orthogonal_complement_in(gram, remaining, u);
            Mat t = invariant_complement_in(images, remaining, uperp);
            Mat gt = restricted_gram(gram, t);
            HermitianSignature sigt = hermitian_signature(gt);
            if (sigt.zero == 0) {
                block = t;
                sig = sigt;
            } else {
                if (!gt.is_zero())
                    throw std::logic_error("invariant decomposition: degenerate partner not isotropic");
                std::vector<Mat> hom = intertwiners(images, u, t);
                if (hom.empty()) {
                    IsotropicObstruction ob;
                    ob.module_a = u;
                    ob.module_b = t;
                    ob.hyperbolic_rank = static_cast<long>(u.cols());
                    std::ostringstream os;
                    os << "two non-isomorphic totally isotropic invariant subspaces of dimension "
                       << u.cols() << " pair each other nondegenerately; their span carries a split "
                       << "(" << u.cols() << "," << u.cols() << ") form and admits no nondegenerate "
                       << "invariant refinement";
                    ob.detail = os.str();
                    report.obstruction = std::move(ob);
                    report.residual_kind = ResidualKind::ISOTROPIC_OBSTRUCTION;
                    return report;
                }
                // u and t are isomorphic: a generic graph u + s*phi(u) is a
                // nondegenerate irreducible inside their span.
                const Mat& phi = hom.front();
                static const Gaussian first_draws[] = {Gaussian(Rational(1)), Gaussian(Rational(-1)),
                                                       Gaussian(Rational(2)), Gaussian(Rational(0), Rational(1)),
                                                       Gaussian(Rational(1), Rational(1)),
                                                       Gaussian(Rational(3)), Gaussian(Rational(2), Rational(-1))};
                for (int attempt = 0; attempt < 25 && !block; ++attempt) {
                    Gaussian s = attempt < 7 ? first_draws[attempt]
                                             : Gaussian(Rational(draws.next_signed(9)), Rational(draws.next_signed(9)));
                    Mat graph = u + Surd(s) * (t * phi);
                    Mat gg = restricted_gram(gram, graph);
                    HermitianSignature sg = hermitian_signature(gg);
                    if (sg.zero == 0) {
                        block = graph;
                        sig = sg;
                    }
                }
                if (!block)
                    throw std::logic_error("invariant decomposition: no nondegenerate graph found");
            }
        }

        // Quaternionic pairing for so* targets.
        bool quaternionic = false, anti_pair = false;
        if (jmat) {
            Mat jb = apply_antilinear(*jmat, *block);
            if (same_span(jb, *block)) {
                quaternionic = true;
                if (sig.positive != sig.negative)
                    throw std::logic_error("invariant decomposition: unbalanced quaternionic block");
            } else {
                Mat pair(n, block->cols() + jb.cols());
                pair.set_block(0, 0, *block);
                pair.set_block(0, block->cols(), jb);
                Mat gp = restricted_gram(gram, pair);
                HermitianSignature sp = hermitian_signature(gp);
                if (sp.zero != 0)
                    throw std::logic_error("invariant decomposition: degenerate quaternionic pair span");
                block = pair;
                sig = sp;
                anti_pair = true;
                block_irreducible = false;
            }
        }

        DecompositionBlock db;
        db.basis = *block;
        db.positive = sig.positive;
        db.negative = sig.negative;
        db.irreducible = block_irreducible;
        db.quaternionic = quaternionic;
        db.anti_isomorphic_pair = anti_pair;
        report.blocks.push_back(std::move(db));
        remaining = orthogonal_complement_in(gram, remaining, *block);
    }
    return report;
}

}  // namespace detail

// ===================================================================
// Entry points
// ===================================================================

/// Decomposition of a raw image set acting on the space of a Hermitian form.
/// The images must preserve the form infinitesimally (X^H G + G X = 0) but
/// need not be traceless, so reductive examples can be analyzed directly.
inline DecompositionReport invariant_decomposition_su(const Mat& gram, const std::vector<Mat>& images,
                                                      unsigned long seed = 0) {
    return detail::decompose_core(gram, images, std::nullopt, seed);
}

/// Decomposition of the module of a homomorphism into su(m,n) (or into
/// sp(2n,R), whose matrix model preserves the same Hermitian form).
inline DecompositionReport invariant_decomposition_su(const Homomorphism& rho, unsigned long seed = 0) {
    if (!rho.target.is_simple() ||
        (rho.target.factors[0].family != Family::SU && rho.target.factors[0].family != Family::SP))
        throw std::invalid_argument("invariant_decomposition_su: target must be simple su(m,n) or sp(2n,R)");
    if (!is_zero(verify_homomorphism(rho)))
        throw std::invalid_argument("invariant_decomposition_su: input is not a homomorphism");
    return detail::decompose_core(rho.target.factors[0].form.gram, detail::image_mats(rho),
                                  std::nullopt, seed);
}

/// Decomposition of the module of a homomorphism into so*(2n), with blocks
/// paired under the quaternionic structure J.
inline DecompositionReport invariant_decomposition_sostar(const Homomorphism& rho, unsigned long seed = 0) {
    if (!rho.target.is_simple() || rho.target.factors[0].family != Family::SOSTAR)
        throw std::invalid_argument("invariant_decomposition_sostar: target must be simple so*(2n)");
    if (!is_zero(verify_homomorphism(rho)))
        throw std::invalid_argument("invariant_decomposition_sostar: input is not a homomorphism");
    Mat sigma = quaternionic_structure(rho.target.factors[0].n);
    return detail::decompose_core(rho.target.factors[0].form.gram, detail::image_mats(rho), sigma,
                                  seed);
}

/// Dispatch on the target family.
inline DecompositionReport invariant_decomposition(const Homomorphism& rho, unsigned long seed = 0) {
    if (!rho.target.is_simple())
        throw std::invalid_argument("invariant_decomposition: target must be simple");
    switch (rho.target.factors[0].family) {
        case Family::SU:
        case Family::SP: return invariant_decomposition_su(rho, seed);
        case Family::SOSTAR: return invariant_decomposition_sostar(rho, seed);
        case Family::SO2N:
            throw std::invalid_argument("invariant_decomposition: so(2,n) targets are not supported");
    }
    throw std::logic_error("invariant_decomposition: bad family");
}

// ===================================================================
// Factor splitting
// ===================================================================

struct FactorSplit {
    bool did_split = false;
    std::string diagnostic;   // set when !did_split
    Homomorphism first;       // restriction of factor 1 to its blocks
    Homomorphism second;      // restriction of factor 2 to its blocks
    Homomorphism embedding;   // block-diagonal inclusion of the two targets
    DecompositionReport report;
};

namespace detail {

/// Column basis change making the restricted form exactly diag(I_a, -I_b),
/// positives first.  Pivots must be rational after elimination; this holds
/// for the coordinate-aligned and small-graph blocks the splitter produces.
inline std::pair<Mat, HermitianSignature> unitize_columns(const Mat& gram, const Mat& s) {
    Mat cols = s;
    Mat g = restricted_gram(gram, cols);
    const std::size_t d = cols.cols();
    std::vector<Mat> pos_cols, neg_cols;
    std::vector<bool> used(d, false);
    for (std::size_t step = 0; step < d; ++step) {
        // refresh the gram of the not-yet-used columns against themselves
        std::size_t piv = d;
        for (std::size_t i = 0; i < d && piv == d; ++i)
            if (!used[i] && !g.at(i, i).is_zero()) piv = i;
        if (piv == d) {
            std::size_t a = d, b = d;
            for (std::size_t i = 0; i < d && a == d; ++i) {
                if (used[i]) continue;
                for (std::size_t j = i + 1; j < d && a == d; ++j)
                    if (!used[j] && !g.at(i, j).is_zero()) { a = i; b = j; }
            }
            if (a == d) throw std::logic_error("unitize_columns: degenerate block");
            Surd lambda = Surd(1);
            if ((g.at(a, b) + g.at(b, a)).is_zero()) lambda = surd_i();
            // column a += lambda * column b, then recompute pairings
            for (std::size_t r = 0; r < cols.rows(); ++r) cols.at(r, a) += lambda * cols.at(r, b);
            g = restricted_gram(gram, cols);
            --step;
            continue;
        }
        Surd dval = g.at(piv, piv);
        if (!dval.is_rational())
            throw std::domain_error("unitize_columns: pivot is not rational; block not normalizable");
        Rational r = dval.rational_part();
        const int sgn_r = sgn(r);
        Rational ar = abs(r);
        // scale = 1/sqrt(|d|) = sqrt(num*den)/num, exact in the field
        Surd scale = surd_sqrt(ar.get_num().get_si() * ar.get_den().get_si()) *
                     Surd(Gaussian(Rational(1) / ar.get_num()));
        for (std::size_t rr = 0; rr < cols.rows(); ++rr) cols.at(rr, piv) = cols.at(rr, piv) * scale;
        // Eliminate the pivot direction from the other unused columns.  The
        // scale factor is real, so h(v_piv', v_j) = scale * g(piv, j) and the
        // correction is sign * that pairing times the normalized pivot.
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j] || j == piv) continue;
            Surd f = Surd(Gaussian(Rational(sgn_r))) * (scale * g.at(piv, j));
            for (std::size_t rr = 0; rr < cols.rows(); ++rr)
                cols.at(rr, j) -= f * cols.at(rr, piv);
        }
        used[piv] = true;
        Mat v(cols.rows(), 1);
        for (std::size_t rr = 0; rr < cols.rows(); ++rr) v.at(rr, 0) = cols.at(rr, piv);
        if (sgn_r > 0) pos_cols.push_back(v); else neg_cols.push_back(v);
        g = restricted_gram(gram, cols);
    }
    Mat out(cols.rows(), d);
    std::size_t idx = 0;
    for (const Mat& v : pos_cols) { out.set_block(0, idx, v); ++idx; }
    for (const Mat& v : neg_cols) { out.set_block(0, idx, v); ++idx; }
    HermitianSignature sig;
    sig.positive = static_cast<long>(pos_cols.size());
    sig.negative = static_cast<long>(neg_cols.size());
    return {out, sig};
}

}  // namespace detail

/// Split a homomorphism with a two-factor source through per-factor maps and
/// a block-diagonal embedding: rho = embedding o (first (+) second).  Blocks
/// of the module decomposition are assigned to the unique source factor
/// acting nontrivially on them; a block on which both factors act yields
/// did_split = false with a diagnostic.  Trivial blocks (no factor acts) are
/// attached to the second factor's subspace.  For sp/so* targets the
/// embedding is expressed in the ambient su(n,n) model.
inline FactorSplit split_by_factor(const Homomorphism& rho, bool require_tight = true,
                                   unsigned long seed = 0) {
    if (rho.source.factors.size() != 2)
        throw std::invalid_argument("split_by_factor: source must have exactly two factors");
    if (require_tight) {
        TightnessCertificate cert = certify(rho);
        if (!cert.tight)
            throw std::invalid_argument("split_by_factor: homomorphism is not tight");
    }

    FactorSplit out;
    out.report = invariant_decomposition(rho, seed);
    if (out.report.residual_kind != ResidualKind::COMPLETE) {
        out.diagnostic = "module decomposition hit an isotropic obstruction";
        return out;
    }

    // Index ranges of each factor inside the direct-sum basis (all k blocks in
    // factor order, then all p blocks in factor order).
    AlgebraDescriptor a0{{rho.source.factors[0]}};
    AlgebraDescriptor a1{{rho.source.factors[1]}};
    const CartanData& c0 = cartan_split(a0);
    const CartanData& c1 = cartan_split(a1);
    const std::size_t k0 = c0.k_basis.size(), k1 = c1.k_basis.size();
    const std::size_t p0 = c0.p_basis.size(), p1 = c1.p_basis.size();
    auto factor_indices = [&](int f) {
        std::vector<std::size_t> idx;
        if (f == 0) {
            for (std::size_t i = 0; i < k0; ++i) idx.push_back(i);
            for (std::size_t i = 0; i < p0; ++i) idx.push_back(k0 + k1 + i);
        } else {
            for (std::size_t i = 0; i < k1; ++i) idx.push_back(k0 + i);
            for (std::size_t i = 0; i < p1; ++i) idx.push_back(k0 + k1 + p0 + i);
        }
        return idx;
    };

    std::vector<Mat> factor_cols(2, Mat(rho.target.matrix_size(), 0));
    auto append_cols = [](Mat& acc, const Mat& more) {
        Mat next(acc.rows(), acc.cols() + more.cols());
        next.set_block(0, 0, acc);
        next.set_block(0, acc.cols(), more);
        acc = next;
    };
    for (const DecompositionBlock& b : out.report.blocks) {
        bool active[2] = {false, false};
        for (int f = 0; f < 2; ++f)
            for (std::size_t i : factor_indices(f))
                if (!(rho.images[i].mat * b.basis).is_zero()) { active[f] = true; break; }
        if (active[0] && active[1]) {
            std::ostringstream os;
            os << "a " << b.basis.cols() << "-dimensional irreducible block carries a nontrivial "
               << "action of both source factors; the module does not split factorwise";
            out.diagnostic = os.str();
            return out;
        }
        append_cols(factor_cols[active[0] ? 0 : 1], b.basis);
    }

    const Mat& gram = rho.target.factors[0].form.gram;
    Homomorphism parts[2];
    Mat unitized[2] = {Mat(0, 0), Mat(0, 0)};
    for (int f = 0; f < 2; ++f) {
        auto [cols, sig] = detail::unitize_columns(gram, factor_cols[f]);
        unitized[f] = cols;
        // Present the block in its canonical model.  When positives exceed
        // negatives the canonical descriptor lists the negative count first;
        // reordering columns (negatives first) matches its gram up to overall
        // sign, which defines the same matrix algebra.
        long tp = sig.positive, tn = sig.negative;
        Mat basis_cols = cols;
        if (tp > tn) {
            Mat flipped(cols.rows(), cols.cols());
            for (long j = 0; j < tn; ++j)
                flipped.set_block(0, static_cast<std::size_t>(j), cols.block(0, static_cast<std::size_t>(tp + j), cols.rows(), 1));
            for (long j = 0; j < tp; ++j)
                flipped.set_block(0, static_cast<std::size_t>(tn + j), cols.block(0, static_cast<std::size_t>(j), cols.rows(), 1));
            basis_cols = flipped;
            std::swap(tp, tn);
        }
        unitized[f] = basis_cols;
        const AlgebraDescriptor& src = (f == 0) ? a0 : a1;
        Homomorphism& part = parts[f];
        part.source = src;
        part.target = su_algebra(tp, tn);
        std::vector<Mat> selected;
        for (std::size_t i : factor_indices(f)) selected.push_back(rho.images[i].mat);
        for (const Mat& m : detail::restrict_operators(selected, basis_cols))
            part.images.push_back(Element{part.target, m});
        part.label = "split(" + rho.label + ",factor" + std::to_string(f + 1) + ")";
    }

    // Block-diagonal embedding of the two canonical targets into the ambient
    // target model, via the combined column basis.
    Mat c(rho.target.matrix_size(), unitized[0].cols() + unitized[1].cols());
    c.set_block(0, 0, unitized[0]);
    c.set_block(0, unitized[0].cols(), unitized[1]);
    if (c.rows() != c.cols())
        throw std::logic_error("split_by_factor: blocks do not span the ambient space");
    Mat cinv = inverse(c);
    Homomorphism iota;
    iota.source = direct_sum(parts[0].target, parts[1].target);
    iota.target = (rho.target.factors[0].family == Family::SU)
                      ? rho.target
                      : su_algebra(static_cast<long>(rho.target.matrix_size()) / 2,
                                   static_cast<long>(rho.target.matrix_size()) / 2);
    const CartanData& cdsum = cartan_split(iota.source);
    for (const Element& b : cdsum.basis())
        iota.images.push_back(Element{iota.target, c * b.mat * cinv});
    iota.label = "splitEmbedding(" + rho.label + ")";

    out.did_split = true;
    out.first = std::move(parts[0]);
    out.second = std::move(parts[1]);
    out.embedding = std::move(iota);
    return out;
}

}  // namespace tighthom
