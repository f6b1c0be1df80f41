#pragma once

// Matrix models of the four classical Hermitian Lie algebra families and
// their direct sums:
//
//   su(p,q)    p+q x p+q   complex, anti-invariant for gram diag(I_p,-I_q),
//                          traceless
//   sp(2n,R)   2n x 2n     the complex model su(n,n) /\ sp(2n,C):
//                          [[A,Z],[Z*,conj(A)]], A anti-Hermitian, Z symmetric
//   so*(2n)    2n x 2n     su(n,n) /\ so(2n,C): same block shape, Z
//                          antisymmetric
//   so(2,n)    n+2 x n+2   real matrices, anti-invariant for diag(I_2,-I_n)
//
// Each family carries a fixed Cartan decomposition g = k (+) p, a fixed
// central element Z0 of k with ad(Z0)^2 = -id on p (the complex structure
// J = ad(Z0)), and a calibrated Kahler pairing normalized so the unit disc
// generators pair to 1.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tighthom/matrix.hpp"
#include "tighthom/scalars.hpp"

namespace tighthom {

using Mat = Matrix<Surd>;

enum class Family { SU, SP, SOSTAR, SO2N };

enum class FormKind { HERMITIAN, SYMPLECTIC_PAIR, SKEW_PAIR, ORTHOGONAL };

/// The defining form(s) of a matrix model: the Hermitian gram matrix, plus
/// the preserved bilinear form for the pair kinds (J for sp, S for so*).
struct FormSpec {
    FormKind kind;
    Mat gram;
    std::optional<Mat> pair_form;
};

// ===================================================================
// Descriptors
// ===================================================================

struct SimpleFactor {
    Family family;
    long p = 0;  // SU only
    long q = 0;  // SU only
    long n = 0;  // SP: sp(2n,R); SOSTAR: so*(2n); SO2N: so(2,n)
    FormSpec form;

    std::size_t matrix_size() const {
        switch (family) {
            case Family::SU: return static_cast<std::size_t>(p + q);
            case Family::SP: return static_cast<std::size_t>(2 * n);
            case Family::SOSTAR: return static_cast<std::size_t>(2 * n);
            case Family::SO2N: return static_cast<std::size_t>(n + 2);
        }
        throw std::logic_error("SimpleFactor: bad family");
    }

    long rank() const {
        switch (family) {
            case Family::SU: return p < q ? p : q;
            case Family::SP: return n;
            case Family::SOSTAR: return n / 2;
            case Family::SO2N: return n >= 2 ? 2 : 1;
        }
        throw std::logic_error("SimpleFactor: bad family");
    }

    std::string str() const {
        switch (family) {
            case Family::SU: return "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
            case Family::SP: return "sp(" + std::to_string(2 * n) + ",R)";
            case Family::SOSTAR: return "so*(" + std::to_string(2 * n) + ")";
            case Family::SO2N: return "so(2," + std::to_string(n) + ")";
        }
        throw std::logic_error("SimpleFactor: bad family");
    }

    friend bool operator==(const SimpleFactor& a, const SimpleFactor& b) {
        return a.family == b.family && a.p == b.p && a.q == b.q && a.n == b.n;
    }
    friend bool operator!=(const SimpleFactor& a, const SimpleFactor& b) { return !(a == b); }
};

/// A Hermitian Lie algebra: an ordered sequence of simple factors,
/// represented block-diagonally in that order.
struct AlgebraDescriptor {
    std::vector<SimpleFactor> factors;

    bool is_simple() const { return factors.size() == 1; }

    std::size_t matrix_size() const {
        std::size_t s = 0;
        for (const auto& f : factors) s += f.matrix_size();
        return s;
    }

    long rank() const {
        long r = 0;
        for (const auto& f : factors) r += f.rank();
        return r;
    }

    /// Row/column offset of factor i's diagonal block.
    std::size_t factor_offset(std::size_t i) const {
        std::size_t s = 0;
        for (std::size_t j = 0; j < i; ++j) s += factors[j].matrix_size();
        return s;
    }

    std::string str() const {
        if (factors.empty()) return "(trivial)";
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "+";
            s += factors[i].str();
        }
        return s;
    }

    friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
        return a.factors == b.factors;
    }
    friend bool operator!=(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
        return !(a == b);
    }
};

namespace detail {

inline Mat hermitian_gram(long p, long q) {
    Mat g(p + q, p + q);
    for (long i = 0; i < p; ++i) g.at(i, i) = Surd(1);
    for (long i = p; i < p + q; ++i) g.at(i, i) = Surd(-1);
    return g;
}

/// J = [[0, I], [-I, 0]] of size 2n.
inline Mat symplectic_form(long n) {
    Mat j(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        j.at(i, n + i) = Surd(1);
        j.at(n + i, i) = Surd(-1);
    }
    return j;
}

/// S = [[0, I], [I, 0]] of size 2n.
inline Mat split_symmetric_form(long n) {
    Mat s(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        s.at(i, n + i) = Surd(1);
        s.at(n + i, i) = Surd(1);
    }
    return s;
}

}  // namespace detail

inline SimpleFactor su_factor(long p, long q) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("su(p,q) requires p >= 1 and q >= 1");
    if (p > q) std::swap(p, q);  // canonical order p <= q
    SimpleFactor f;
    f.family = Family::SU;
    f.p = p;
    f.q = q;
    f.form = FormSpec{FormKind::HERMITIAN, detail::hermitian_gram(p, q), std::nullopt};
    return f;
}

inline SimpleFactor sp_factor(long n) {
    if (n < 1) throw std::invalid_argument("sp(2n,R) requires n >= 1");
    SimpleFactor f;
    f.family = Family::SP;
    f.n = n;
    f.form = FormSpec{FormKind::SYMPLECTIC_PAIR, detail::hermitian_gram(n, n),
                      detail::symplectic_form(n)};
    return f;
}

inline SimpleFactor sostar_factor(long n) {
    if (n < 2) throw std::invalid_argument("so*(2n) requires n >= 2");
    SimpleFactor f;
    f.family = Family::SOSTAR;
    f.n = n;
    f.form = FormSpec{FormKind::SKEW_PAIR, detail::hermitian_gram(n, n),
                      detail::split_symmetric_form(n)};
    return f;
}

inline SimpleFactor so2_factor(long n) {
    if (n < 1) throw std::invalid_argument("so(2,n) requires n >= 1");
    SimpleFactor f;
    f.family = Family::SO2N;
    f.n = n;
    f.form = FormSpec{FormKind::ORTHOGONAL, detail::hermitian_gram(2, n), std::nullopt};
    return f;
}

inline AlgebraDescriptor su_algebra(long p, long q) { return {{su_factor(p, q)}}; }
inline AlgebraDescriptor sp_algebra(long n) { return {{sp_factor(n)}}; }
inline AlgebraDescriptor sostar_algebra(long n) { return {{sostar_factor(n)}}; }
inline AlgebraDescriptor so2_algebra(long n) { return {{so2_factor(n)}}; }

/// Generic constructor: SU takes (p, q); the other families take (n).
inline AlgebraDescriptor make_algebra(Family family, long a, long b = 0) {
    switch (family) {
        case Family::SU: return su_algebra(a, b);
        case Family::SP: return sp_algebra(a);
        case Family::SOSTAR: return sostar_algebra(a);
        case Family::SO2N: return so2_algebra(a);
    }
    throw std::logic_error("make_algebra: bad family");
}

inline AlgebraDescriptor direct_sum(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
    AlgebraDescriptor d = a;
    d.factors.insert(d.factors.end(), b.factors.begin(), b.factors.end());
    return d;
}

/// su(1,1)^k as a direct-sum descriptor.
inline AlgebraDescriptor su11_power(long k) {
    AlgebraDescriptor d;
    for (long i = 0; i < k; ++i) d.factors.push_back(su_factor(1, 1));
    return d;
}

// ===================================================================
// Elements and membership
// ===================================================================

struct Element {
    AlgebraDescriptor algebra;
    Mat mat;
};

inline Element element(const AlgebraDescriptor& a, const Mat& m) { return Element{a, m}; }

namespace detail {

inline void track_max(Rational& acc, const Rational& v) {
    if (v > acc) acc = v;
}

inline Rational max_entry_magnitude(const Mat& m) {
    Rational acc(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) track_max(acc, m.at(i, j).magnitude());
    return acc;
}

/// Residual of one simple factor's defining constraints on its own block.
inline Rational factor_residual(const SimpleFactor& f, const Mat& m) {
    Rational acc(0);
    const Mat& g = f.form.gram;
    switch (f.family) {
        case Family::SU: {
            track_max(acc, max_entry_magnitude(m.conj_transpose() * g + g * m));
            track_max(acc, m.trace().magnitude());
            break;
        }
        case Family::SP:
        case Family::SOSTAR: {
            track_max(acc, max_entry_magnitude(m.conj_transpose() * g + g * m));
            track_max(acc, m.trace().magnitude());
            const Mat& b = *f.form.pair_form;
            track_max(acc, max_entry_magnitude(m.transpose() * b + b * m));
            break;
        }
        case Family::SO2N: {
            track_max(acc, max_entry_magnitude(m.transpose() * g + g * m));
            // Realness of every entry.
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    Surd im = (m.at(i, j) - m.at(i, j).conj());
                    track_max(acc, im.magnitude());
                }
            break;
        }
    }
    return acc;
}

}  // namespace detail

/// 0 iff the matrix satisfies every defining constraint of the algebra
/// exactly; otherwise the maximum entry magnitude across the violated
/// constraint residuals.  Direct sums additionally require vanishing
/// off-diagonal inter-factor blocks.
inline Rational membership_residual(const AlgebraDescriptor& a, const Mat& m) {
    if (m.rows() != a.matrix_size() || m.cols() != a.matrix_size())
        throw std::invalid_argument("membership_residual: dimension mismatch for " + a.str());
    Rational acc(0);
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        const std::size_t sz = a.factors[i].matrix_size();
        detail::track_max(acc, detail::factor_residual(a.factors[i], m.block(off, off, sz, sz)));
    }
    // Off-diagonal blocks between different factors must vanish.
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero()) continue;
            std::size_t fi = 0, fj = 0, acc_i = 0, acc_j = 0;
            while (acc_i + a.factors[fi].matrix_size() <= i) acc_i += a.factors[fi++].matrix_size();
            while (acc_j + a.factors[fj].matrix_size() <= j) acc_j += a.factors[fj++].matrix_size();
            if (fi != fj) detail::track_max(acc, m.at(i, j).magnitude());
        }
    return acc;
}

inline Element bracket(const Element& x, const Element& y) {
    if (x.algebra != y.algebra)
        throw std::invalid_argument("bracket: ambient algebra mismatch (" + x.algebra.str() +
                                    " vs " + y.algebra.str() + ")");
    return Element{x.algebra, x.mat * y.mat - y.mat * x.mat};
}

// ===================================================================
// Cartan decomposition
// ===================================================================

/// Fixed Cartan data g = k (+) p with the standard center element Z0 of k;
/// J = ad(Z0) squares to -id on p.  The p basis is ordered in adjacent
/// (X, JX) pairs: p_basis[2t+1] = [Z0, p_basis[2t]].
struct CartanData {
    AlgebraDescriptor algebra;
    std::vector<Element> k_basis;
    std::vector<Element> p_basis;
    Element Z0;

    std::size_t dimension() const { return k_basis.size() + p_basis.size(); }

    /// Full ordered basis: k_basis then p_basis.  This is the basis order
    /// homomorphism images refer to.
    std::vector<Element> basis() const {
        std::vector<Element> b = k_basis;
        b.insert(b.end(), p_basis.begin(), p_basis.end());
        return b;
    }
};

namespace detail {

inline Mat unit(std::size_t n, std::size_t r, std::size_t c, const Surd& v = Surd(1)) {
    Mat m(n, n);
    m.at(r, c) = v;
    return m;
}

/// Z0 of one simple factor (its own block size).
inline Mat factor_Z0(const SimpleFactor& f) {
    const std::size_t n = f.matrix_size();
    Mat z(n, n);
    switch (f.family) {
        case Family::SU: {
            // (i/(p+q)) diag(q I_p, -p I_q)
            Surd iq = surd_i() * Surd(Gaussian(rational(f.q, f.p + f.q)));
            Surd ip = surd_i() * Surd(Gaussian(rational(-f.p, f.p + f.q)));
            for (long a = 0; a < f.p; ++a) z.at(a, a) = iq;
            for (long a = f.p; a < f.p + f.q; ++a) z.at(a, a) = ip;
            break;
        }
        case Family::SP:
        case Family::SOSTAR: {
            // (i/2) diag(I_n, -I_n)
            Surd h = surd_i() * Surd(Gaussian(rational(1, 2)));
            for (long a = 0; a < f.n; ++a) z.at(a, a) = h;
            for (long a = f.n; a < 2 * f.n; ++a) z.at(a, a) = -h;
            break;
        }
        case Family::SO2N: {
            // The rotation generator E12 - E21 of the definite 2-block.
            z.at(0, 1) = Surd(1);
            z.at(1, 0) = Surd(-1);
            break;
        }
    }
    return z;
}

/// k basis of one simple factor (own block size), Z0 listed first where it
/// is itself a basis vector direction; the span always contains Z0.
inline std::vector<Mat> factor_k_basis(const SimpleFactor& f) {
    std::vector<Mat> out;
    const std::size_t sz = f.matrix_size();
    const Surd i1 = surd_i();
    switch (f.family) {
        case Family::SU: {
            const long N = f.p + f.q;
            for (long a = 0; a + 1 < N; ++a) {
                Mat m(sz, sz);
                m.at(a, a) = i1;
                m.at(a + 1, a + 1) = -i1;
                out.push_back(m);
            }
            auto push_pair = [&](long a, long b) {
                Mat m1(sz, sz);
                m1.at(a, b) = Surd(1);
                m1.at(b, a) = Surd(-1);
                out.push_back(m1);
                Mat m2(sz, sz);
                m2.at(a, b) = i1;
                m2.at(b, a) = i1;
                out.push_back(m2);
            };
            for (long a = 0; a < f.p; ++a)
                for (long b = a + 1; b < f.p; ++b) push_pair(a, b);
            for (long a = f.p; a < N; ++a)
                for (long b = a + 1; b < N; ++b) push_pair(a, b);
            break;
        }
        case Family::SP:
        case Family::SOSTAR: {
            const long n = f.n;
            // Block diag(A, conj(A)) for a basis of anti-Hermitian A.
            auto push_k = [&](const Mat& a_block) {
                Mat m(sz, sz);
                m.set_block(0, 0, a_block);
                m.set_block(n, n, a_block.conj());
                out.push_back(m);
            };
            for (long a = 0; a < n; ++a) {
                Mat d(n, n);
                d.at(a, a) = i1;
                push_k(d);
            }
            for (long a = 0; a < n; ++a)
                for (long b = a + 1; b < n; ++b) {
                    Mat r(n, n);
                    r.at(a, b) = Surd(1);
                    r.at(b, a) = Surd(-1);
                    push_k(r);
                    Mat s(n, n);
                    s.at(a, b) = i1;
                    s.at(b, a) = i1;
                    push_k(s);
                }
            break;
        }
        case Family::SO2N: {
            const long n = f.n;
            Mat r(sz, sz);
            r.at(0, 1) = Surd(1);
            r.at(1, 0) = Surd(-1);
            out.push_back(r);  // = Z0
            for (long a = 0; a < n; ++a)
                for (long b = a + 1; b < n; ++b) {
                    Mat m(sz, sz);
                    m.at(2 + a, 2 + b) = Surd(1);
                    m.at(2 + b, 2 + a) = Surd(-1);
                    out.push_back(m);
                }
            break;
        }
    }
    return out;
}

/// p basis of one simple factor, in adjacent (X, JX) pairs.
inline std::vector<Mat> factor_p_basis(const SimpleFactor& f) {
    std::vector<Mat> out;
    const std::size_t sz = f.matrix_size();
    const Surd i1 = surd_i();
    switch (f.family) {
        case Family::SU: {
            const long N = f.p + f.q;
            for (long a = 0; a < f.p; ++a)
                for (long b = f.p; b < N; ++b) {
                    Mat m1(sz, sz);
                    m1.at(a, b) = Surd(1);
                    m1.at(b, a) = Surd(1);
                    out.push_back(m1);
                    Mat m2(sz, sz);  // = J m1
                    m2.at(a, b) = i1;
                    m2.at(b, a) = -i1;
                    out.push_back(m2);
                }
            break;
        }
        case Family::SP: {
            const long n = f.n;
            auto push_p = [&](const Mat& z_block) {
                Mat m1(sz, sz);
                m1.set_block(0, n, z_block);
                m1.set_block(n, 0, z_block.conj_transpose());
                out.push_back(m1);
                Mat iz = i1 * z_block;
                Mat m2(sz, sz);  // = J m1
                m2.set_block(0, n, iz);
                m2.set_block(n, 0, iz.conj_transpose());
                out.push_back(m2);
            };
            for (long a = 0; a < n; ++a)
                for (long b = a; b < n; ++b) {
                    Mat z(n, n);
                    z.at(a, b) = Surd(1);
                    z.at(b, a) = Surd(1);
                    push_p(z);
                }
            break;
        }
        case Family::SOSTAR: {
            const long n = f.n;
            auto push_p = [&](const Mat& z_block) {
                Mat m1(sz, sz);
                m1.set_block(0, n, z_block);
                m1.set_block(n, 0, z_block.conj_transpose());
                out.push_back(m1);
                Mat iz = i1 * z_block;
                Mat m2(sz, sz);
                m2.set_block(0, n, iz);
                m2.set_block(n, 0, iz.conj_transpose());
                out.push_back(m2);
            };
            for (long a = 0; a < n; ++a)
                for (long b = a + 1; b < n; ++b) {
                    Mat z(n, n);
                    z.at(a, b) = Surd(1);
                    z.at(b, a) = Surd(-1);
                    push_p(z);
                }
            break;
        }
        case Family::SO2N: {
            const long n = f.n;
            for (long b = 0; b < n; ++b) {
                Mat m1(sz, sz);
                m1.at(0, 2 + b) = Surd(1);
                m1.at(2 + b, 0) = Surd(1);
                out.push_back(m1);
                Mat m2(sz, sz);  // J m1 = -(E_{2,b} + E_{b,2})
                m2.at(1, 2 + b) = Surd(-1);
                m2.at(2 + b, 1) = Surd(-1);
                out.push_back(m2);
            }
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Cartan decomposition with fixed bases.  Memoized: repeated calls for the
/// same descriptor share one immutable instance.
inline const CartanData& cartan_split(const AlgebraDescriptor& a) {
    static std::map<std::string, std::shared_ptr<const CartanData>> cache;
    static std::mutex mtx;
    const std::string key = a.str();
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto data = std::make_shared<CartanData>();
    data->algebra = a;
    const std::size_t total = a.matrix_size();
    Mat z0(total, total);
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        const std::size_t sz = a.factors[i].matrix_size();
        z0.set_block(off, off, detail::factor_Z0(a.factors[i]));
        for (const Mat& kb : detail::factor_k_basis(a.factors[i])) {
            Mat m(total, total);
            m.set_block(off, off, kb);
            data->k_basis.push_back(Element{a, m});
        }
    }
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        for (const Mat& pb : detail::factor_p_basis(a.factors[i])) {
            Mat m(total, total);
            m.set_block(off, off, pb);
            data->p_basis.push_back(Element{a, m});
        }
    }
    data->Z0 = Element{a, z0};
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(data));
    return *it->second;
}

/// Z0 alone (cheap even for large algebras; no basis construction).
inline Element algebra_Z0(const AlgebraDescriptor& a) {
    const std::size_t total = a.matrix_size();
    Mat z0(total, total);
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        z0.set_block(a.factor_offset(i), a.factor_offset(i), detail::factor_Z0(a.factors[i]));
    return Element{a, z0};
}

inline long rank(const AlgebraDescriptor& a) { return a.rank(); }

// ===================================================================
// k / p projections (structural block masks, no basis expansion)
// ===================================================================

namespace detail {

/// True when position (r, c) of the factor block lies in k (block-diagonal
/// positions of the compact part).
inline bool position_in_k(const SimpleFactor& f, std::size_t r, std::size_t c) {
    switch (f.family) {
        case Family::SU: {
            const std::size_t p = static_cast<std::size_t>(f.p);
            return (r < p) == (c < p);
        }
        case Family::SP:
        case Family::SOSTAR: {
            const std::size_t n = static_cast<std::size_t>(f.n);
            return (r < n) == (c < n);
        }
        case Family::SO2N: {
            return (r < 2) == (c < 2);
        }
    }
    throw std::logic_error("position_in_k: bad family");
}

}  // namespace detail

/// Projection of a (membership-valid) matrix onto p along k, implemented by
/// block masking; inter-factor positions belong to neither and are zeroed.
inline Mat p_project(const AlgebraDescriptor& a, const Mat& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        const std::size_t sz = a.factors[i].matrix_size();
        for (std::size_t r = 0; r < sz; ++r)
            for (std::size_t c = 0; c < sz; ++c)
                if (!detail::position_in_k(a.factors[i], r, c))
                    out.at(off + r, off + c) = m.at(off + r, off + c);
    }
    return out;
}

inline Mat k_project(const AlgebraDescriptor& a, const Mat& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const std::size_t off = a.factor_offset(i);
        const std::size_t sz = a.factors[i].matrix_size();
        for (std::size_t r = 0; r < sz; ++r)
            for (std::size_t c = 0; c < sz; ++c)
                if (detail::position_in_k(a.factors[i], r, c))
                    out.at(off + r, off + c) = m.at(off + r, off + c);
    }
    return out;
}

/// Max entry magnitude of the k component: 0 iff m lies in p (+) off-factor
/// zeros.
inline Rational k_component_residual(const AlgebraDescriptor& a, const Mat& m) {
    return detail::max_entry_magnitude(k_project(a, m));
}

// ===================================================================
// Calibrated Kahler pairing
// ===================================================================

/// Calibration constant c_A with omega(X, JX) = 1 on the unit disc
/// generators of the polydisc (values fixed by the su(1,1) reference
/// normalization omega(X0, J X0) = 1 for X0 = [[0,1],[1,0]]).
inline Rational kahler_constant(const SimpleFactor& f) {
    switch (f.family) {
        case Family::SU: return rational(1, 2);
        case Family::SP: return rational(1, 2);
        case Family::SOSTAR: return rational(1, 4);
        case Family::SO2N: return f.n >= 2 ? rational(1, 4) : rational(1, 8);
    }
    throw std::logic_error("kahler_constant: bad family");
}

/// omega_A(X, Y) = c_A * Re tr([Z0, X] * Y) for X, Y in p of a simple A.
/// Errors when X or Y has a nonzero k component.
inline Rational kahler_pairing(const AlgebraDescriptor& a, const Mat& x, const Mat& y) {
    if (!a.is_simple()) throw std::invalid_argument("kahler_pairing: descriptor must be simple");
    if (k_component_residual(a, x) != 0 || k_component_residual(a, y) != 0)
        throw std::invalid_argument("kahler_pairing: argument not in p (nonzero k component)");
    const Mat z0 = algebra_Z0(a).mat;
    Surd t = ((z0 * x - x * z0) * y).trace().real();
    if (!t.is_gaussian())
        throw std::domain_error("kahler_pairing: irrational trace value");
    return Surd(kahler_constant(a.factors[0])).rational_part() * t.rational_part();
}

inline Rational kahler_pairing(const AlgebraDescriptor& a, const Element& x, const Element& y) {
    return kahler_pairing(a, x.mat, y.mat);
}

// ===================================================================
// Disc generators
// ===================================================================

/// The rank(A) commuting unit-disc generators in p of a simple factor
/// (factor-local coordinates).  Each X with J X = [Z0, X] spans an sl(2)
/// triple with [X, JX] = -4 * (its own Z), and omega(X, JX) = 1.
inline std::vector<Mat> disc_generators(const SimpleFactor& f) {
    std::vector<Mat> out;
    const std::size_t sz = f.matrix_size();
    switch (f.family) {
        case Family::SU: {
            const long r = f.rank();
            for (long i = 0; i < r; ++i) {
                Mat m(sz, sz);
                m.at(i, f.p + i) = Surd(1);
                m.at(f.p + i, i) = Surd(1);
                out.push_back(m);
            }
            break;
        }
        case Family::SP: {
            for (long i = 0; i < f.n; ++i) {
                Mat m(sz, sz);
                m.at(i, f.n + i) = Surd(1);
                m.at(f.n + i, i) = Surd(1);
                out.push_back(m);
            }
            break;
        }
        case Family::SOSTAR: {
            for (long i = 0; i < f.n / 2; ++i) {
                Mat m(sz, sz);
                // Z block E_{2i,2i+1} - E_{2i+1,2i} (0-based) and its
                // conjugate transpose below.
                m.at(2 * i, f.n + 2 * i + 1) = Surd(1);
                m.at(2 * i + 1, f.n + 2 * i) = Surd(-1);
                m.at(f.n + 2 * i + 1, 2 * i) = Surd(1);
                m.at(f.n + 2 * i, 2 * i + 1) = Surd(-1);
                out.push_back(m);
            }
            break;
        }
        case Family::SO2N: {
            if (f.n == 1) {
                Mat m(sz, sz);
                m.at(0, 2) = Surd(2);
                m.at(2, 0) = Surd(2);
                out.push_back(m);
            } else {
                // A+ = (E13+E31) + (E24+E42), A- = (E13+E31) - (E24+E42)
                Mat u(sz, sz), v(sz, sz);
                u.at(0, 2) = Surd(1);
                u.at(2, 0) = Surd(1);
                v.at(1, 3) = Surd(1);
                v.at(3, 1) = Surd(1);
                out.push_back(u + v);
                out.push_back(u - v);
            }
            break;
        }
    }
    return out;
}

// ===================================================================
// Basis expansion and structure constants (memoized per descriptor)
// ===================================================================

/// Expands elements in the fixed basis of A.  Memoized; only ever built for
/// the algebras it is actually requested on (sources and small targets).
inline const LinearExpander<Surd>& basis_expander(const AlgebraDescriptor& a) {
    static std::map<std::string, std::shared_ptr<const LinearExpander<Surd>>> cache;
    static std::mutex mtx;
    const std::string key = a.str();
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const CartanData& cd = cartan_split(a);
    const std::size_t n2 = a.matrix_size() * a.matrix_size();
    std::vector<Element> basis = cd.basis();
    Mat cols(n2, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto v = basis[j].mat.vectorize();
        for (std::size_t i = 0; i < n2; ++i) cols.at(i, j) = v[i];
    }
    auto ex = std::make_shared<const LinearExpander<Surd>>(cols);
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(ex));
    return *it->second;
}

/// Coordinates of m in the fixed basis of A; throws when m is outside the
/// span (i.e. not a member).
inline std::vector<Surd> expand_in_basis(const AlgebraDescriptor& a, const Mat& m) {
    auto c = basis_expander(a).expand(m.vectorize());
    if (!c) throw std::domain_error("expand_in_basis: matrix is not in " + a.str());
    return *c;
}

/// Structure constants c[i][j] = sparse coordinates of [b_i, b_j] in the
/// fixed basis, stored as (index, coefficient) pairs for j < i only
/// (antisymmetry fills the rest).  Memoized.
struct StructureConstants {
    std::size_t dim;
    // c[i*dim + j] for all i, j: list of (basis index, coefficient).
    std::vector<std::vector<std::pair<std::size_t, Surd>>> table;

    const std::vector<std::pair<std::size_t, Surd>>& at(std::size_t i, std::size_t j) const {
        return table[i * dim + j];
    }
};

inline const StructureConstants& structure_constants(const AlgebraDescriptor& a) {
    static std::map<std::string, std::shared_ptr<const StructureConstants>> cache;
    static std::mutex mtx;
    const std::string key = a.str();
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const CartanData& cd = cartan_split(a);
    std::vector<Element> basis = cd.basis();
    const std::size_t dim = basis.size();
    auto sc = std::make_shared<StructureConstants>();
    sc->dim = dim;
    sc->table.resize(dim * dim);
    const LinearExpander<Surd>& ex = basis_expander(a);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Mat br = basis[i].mat * basis[j].mat - basis[j].mat * basis[i].mat;
            auto c = ex.expand(br.vectorize());
            if (!c)
                throw std::logic_error("structure_constants: bracket escapes the algebra " +
                                       a.str());
            std::vector<std::pair<std::size_t, Surd>> sparse;
            for (std::size_t t = 0; t < dim; ++t)
                if (!(*c)[t].is_zero()) sparse.push_back({t, (*c)[t]});
            sc->table[i * dim + j] = sparse;
            for (auto& e : sparse) e.second = -e.second;
            sc->table[j * dim + i] = std::move(sparse);
        }
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(sc));
    return *it->second;
}

}  // namespace tighthom
