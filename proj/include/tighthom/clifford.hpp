#pragma once

// Clifford algebra of the real form of signature (2,p), built from iterated
// 2x2 Kronecker factors.  With m pair-generators the ambient space is
// (C^2)^{tensor m}; coordinates are bit strings (first tensor slot = most
// significant bit).
//
//   Gamma_{2j-1} = s3^{(j-1)} (x) s1 (x) I^{(m-j)}     (Hermitian, square +1)
//   Gamma_{2j}   = s3^{(j-1)} (x) s2 (x) I^{(m-j)}     (Hermitian, square +1)
//   Gamma_{2m+1} = s3^{(m)}                            (odd total count only)
//
// The signature-(2,p) generators are gamma_1 = Gamma_1, gamma_2 = Gamma_2
// (square +1) and gamma_{2+i} = i * Gamma_{2+i} (square -1), so
// gamma_a gamma_b + gamma_b gamma_a = 2 S_ab with S = diag(1,1,-1,...,-1).
//
// Derived structure used by the spin constructions:
//   - Hermitian gram h = -i gamma_1 gamma_2 = diag(I, -I) in the first
//     tensor slot; every even product gamma_a gamma_b is anti-invariant.
//   - bilinear pairing B = Gamma_2 Gamma_4 ... Gamma_{2m}, satisfying
//     B gamma_a B^{-1} = (-1)^m gamma_a^T, hence rho(X)^T B + B rho(X) = 0
//     on the even part; B is antidiagonal (maps each bit string to its
//     complement) and B^T = (-1)^{ceil(m/2)} B.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tighthom/algebra.hpp"

namespace tighthom {

struct CliffordAlgebraData {
    long p = 0;                // form signature (2, p)
    long pairs = 0;            // m: number of 2x2 tensor slots
    std::vector<Mat> gamma;    // p + 2 generators, each 2^m x 2^m
    std::size_t even_part_dim = 0;  // dim of the even subalgebra's module
    Mat hermitian_gram;        // h = -i gamma_1 gamma_2
    Mat bilinear;              // B = Gamma_2 Gamma_4 ... Gamma_{2m}
};

namespace detail {

inline Mat pauli(int which) {
    Mat m(2, 2);
    switch (which) {
        case 1:
            m.at(0, 1) = Surd(1);
            m.at(1, 0) = Surd(1);
            break;
        case 2:
            m.at(0, 1) = -surd_i();
            m.at(1, 0) = surd_i();
            break;
        case 3:
            m.at(0, 0) = Surd(1);
            m.at(1, 1) = Surd(-1);
            break;
        default: throw std::logic_error("pauli: bad index");
    }
    return m;
}

/// s3^{(j)} (x) factor (x) I^{(m-j-1)} with factor at slot j (0-based).
inline Mat slot_product(long m, long j, const Mat& factor) {
    Mat out = Mat::identity(1);
    for (long t = 0; t < j; ++t) out = kronecker(out, pauli(3));
    out = kronecker(out, factor);
    for (long t = j + 1; t < m; ++t) out = kronecker(out, Mat::identity(2));
    return out;
}

}  // namespace detail

/// Generators and invariant forms for the Clifford algebra of signature
/// (2, p); p >= 1.
inline CliffordAlgebraData clifford(long p) {
    if (p < 1) throw std::invalid_argument("clifford: need p >= 1");
    CliffordAlgebraData data;
    data.p = p;
    const long total = p + 2;
    const long m = total / 2;  // tensor slots; odd total adds s3^{(m)}
    data.pairs = m;
    std::vector<Mat> big;  // Gamma_1 .. Gamma_{total}
    for (long j = 0; j < m; ++j) {
        big.push_back(detail::slot_product(m, j, detail::pauli(1)));
        big.push_back(detail::slot_product(m, j, detail::pauli(2)));
    }
    if (total % 2 == 1) {
        Mat g = Mat::identity(1);
        for (long t = 0; t < m; ++t) g = kronecker(g, detail::pauli(3));
        big.push_back(g);
    }
    data.gamma.reserve(total);
    for (long a = 0; a < total; ++a)
        data.gamma.push_back(a < 2 ? big[a] : surd_i() * big[a]);
    data.even_part_dim = std::size_t(1) << m;
    data.hermitian_gram = -surd_i() * (data.gamma[0] * data.gamma[1]);
    Mat b = Mat::identity(data.even_part_dim);
    for (long j = 1; 2 * j <= 2 * m; ++j) b = b * big[2 * j - 1];  // Gamma_{2j}
    data.bilinear = b;
    return data;
}

}  // namespace tighthom
