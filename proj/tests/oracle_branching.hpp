// Brute-force oracle for invariant-subspace decomposition: grows invariant
// subspaces as cyclic closures of a fixed candidate grid (e_i, e_i +- e_j,
// e_i + i e_j) and peels nondegenerate ones recursively.  Shares no logic
// with the commutant-based decomposition it is checked against.
//
// Framework-free: shared between the unit tests and the acceptance gate.

#pragma once

#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "tighthom/branching.hpp"

namespace branching_oracle {

inline tighthom::Mat cyclic_closure(const std::vector<tighthom::Mat>& ops,
                                    const std::vector<tighthom::Surd>& start) {
    using tighthom::Mat;
    using tighthom::Surd;
    const std::size_t n = start.size();
    Mat span(n, 1);
    for (std::size_t i = 0; i < n; ++i) span.at(i, 0) = start[i];
    while (true) {
        std::vector<std::vector<Surd>> vecs;
        for (std::size_t j = 0; j < span.cols(); ++j) {
            std::vector<Surd> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = span.at(i, j);
            vecs.push_back(v);
        }
        const std::size_t before = vecs.size();
        for (const Mat& x : ops)
            for (std::size_t j = 0; j < before; ++j) {
                std::vector<Surd> img(n);
                for (std::size_t i = 0; i < n; ++i) {
                    Surd acc(0);
                    for (std::size_t k = 0; k < n; ++k) acc += x.at(i, k) * vecs[j][k];
                    img[i] = acc;
                }
                vecs.push_back(img);
            }
        auto reduced = tighthom::span_basis(vecs);
        if (reduced.size() == span.cols()) return span;
        Mat next(n, reduced.size());
        for (std::size_t j = 0; j < reduced.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) next.at(i, j) = reduced[j][i];
        span = next;
    }
}

struct OracleResult {
    bool obstruction = false;
    std::multiset<std::tuple<long, long, long>> blocks;  // (dim, pos, neg)
};

inline void oracle_decompose_rec(const tighthom::Mat& gram,
                                 const std::vector<tighthom::Mat>& ambient_ops,
                                 const tighthom::Mat& space, OracleResult& out) {
    using tighthom::Mat;
    using tighthom::Surd;
    namespace detail = tighthom::detail;
    const std::size_t d = space.cols();
    if (d == 0) return;
    std::vector<Mat> ops = detail::restrict_operators(ambient_ops, space);
    Mat g = detail::restricted_gram(gram, space);

    // Candidate starts in the restricted coordinates.
    std::vector<std::vector<Surd>> starts;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Surd> v(d);
        v[i] = Surd(1);
        starts.push_back(v);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            std::vector<Surd> a(d), b(d), c(d);
            a[i] = Surd(1); a[j] = Surd(1);
            b[i] = Surd(1); b[j] = Surd(-1);
            c[i] = Surd(1); c[j] = tighthom::surd_i();
            starts.push_back(a);
            starts.push_back(b);
            starts.push_back(c);
        }
    std::vector<Mat> candidates;
    for (const auto& s : starts) {
        Mat w = cyclic_closure(ops, s);
        if (w.cols() == 0 || w.cols() >= d) continue;
        bool dup = false;
        for (const Mat& seen : candidates)
            if (tighthom::same_span(seen, w)) { dup = true; break; }
        if (!dup) candidates.push_back(w);
    }
    if (candidates.empty()) {
        tighthom::HermitianSignature sig = tighthom::hermitian_signature(g);
        if (sig.zero != 0)
            throw std::logic_error("branching oracle: degenerate form on an invariant leaf");
        out.blocks.insert({static_cast<long>(d), sig.positive, sig.negative});
        return;
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Mat& a, const Mat& b) { return a.cols() < b.cols(); });
    for (const Mat& w : candidates) {
        Mat gw = detail::restricted_gram(g, w);
        if (tighthom::hermitian_signature(gw).zero != 0) continue;
        // Peel w (recursing into it as well) and its orthogonal complement.
        Mat w_ambient = space * w;
        oracle_decompose_rec(gram, ambient_ops, w_ambient, out);
        Mat pairing = w.conj_transpose() * g;  // w-perp inside the restricted space
        auto ker = tighthom::kernel_basis(pairing);
        Mat comp(d, ker.size());
        for (std::size_t j = 0; j < ker.size(); ++j)
            for (std::size_t i = 0; i < d; ++i) comp.at(i, j) = ker[j][i];
        oracle_decompose_rec(gram, ambient_ops, space * comp, out);
        return;
    }
    out.obstruction = true;  // reducible, but no nondegenerate invariant candidate
}

inline OracleResult oracle_decompose(const tighthom::Mat& gram,
                                     const std::vector<tighthom::Mat>& ops) {
    OracleResult out;
    oracle_decompose_rec(gram, ops, tighthom::Mat::identity(gram.rows()), out);
    return out;
}

inline std::multiset<std::tuple<long, long, long>> block_multiset(
    const tighthom::DecompositionReport& r) {
    std::multiset<std::tuple<long, long, long>> out;
    for (const auto& b : r.blocks)
        out.insert({static_cast<long>(b.basis.cols()), b.positive, b.negative});
    return out;
}

}  // namespace branching_oracle
