// Invariant-subspace decomposition: exact signature computation, block
// invariants, isotropic-pair detection, quaternionic pairing, and factor
// splitting -- cross-checked against an independent brute-force search that
// grows invariant subspaces as cyclic closures of a fixed candidate grid.

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "tighthom/branching.hpp"
#include "tighthom/catalog.hpp"

#include "oracle_branching.hpp"
#include "split_parts_example.hpp"

using namespace tighthom;

namespace {

using branching_oracle::OracleResult;
using branching_oracle::block_multiset;
using branching_oracle::oracle_decompose;
using split_parts::gl2_example_images;
using split_parts::gl2_example_su11_restriction;

Mat columns_from(const std::vector<std::vector<long>>& cols, std::size_t n) {
    Mat m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = Surd(cols[j][i]);
    return m;
}

// -------------------------------------------------------------------
// Shared checks
// -------------------------------------------------------------------

void check_complete_invariants(const DecompositionReport& r, const Mat& gram,
                               const std::vector<Mat>& images) {
    REQUIRE(r.residual_kind == ResidualKind::COMPLETE);
    const std::size_t n = gram.rows();
    std::size_t total = 0;
    long pos = 0, neg = 0;
    Mat all(n, 0);
    for (const auto& b : r.blocks) {
        total += b.basis.cols();
        pos += b.positive;
        neg += b.negative;
        // restricted form nondegenerate with the reported signature
        HermitianSignature sig = hermitian_signature(detail::restricted_gram(gram, b.basis));
        CHECK(sig.zero == 0);
        CHECK(sig.positive == b.positive);
        CHECK(sig.negative == b.negative);
        // invariance: restriction succeeds
        CHECK_NOTHROW(detail::restrict_operators(images, b.basis));
        // irreducibility certificate when flagged
        if (b.irreducible) {
            auto ops = detail::restrict_operators(images, b.basis);
            CHECK(detail::commutant_basis(ops, b.basis.cols()).size() == 1);
        }
        Mat next(n, all.cols() + b.basis.cols());
        next.set_block(0, 0, all);
        next.set_block(0, all.cols(), b.basis);
        all = next;
    }
    CHECK(total == n);
    CHECK(rank(all) == n);
    HermitianSignature ambient = hermitian_signature(gram);
    CHECK(pos == ambient.positive);
    CHECK(neg == ambient.negative);
    // pairwise orthogonality
    for (std::size_t i = 0; i < r.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < r.blocks.size(); ++j)
            CHECK((r.blocks[i].basis.conj_transpose() * gram * r.blocks[j].basis).is_zero());
}

void check_against_oracle(const DecompositionReport& r, const Mat& gram,
                          const std::vector<Mat>& images) {
    OracleResult oracle = oracle_decompose(gram, images);
    if (r.residual_kind == ResidualKind::COMPLETE) {
        CHECK_FALSE(oracle.obstruction);
        CHECK(block_multiset(r) == oracle.blocks);
    } else {
        CHECK(oracle.obstruction);
    }
}

// -------------------------------------------------------------------
// Example constructions (the split-parts map comes from the shared header)
// -------------------------------------------------------------------

// Outer tensor product of the standard su(1,1) modules: an irreducible
// module of su(1,1)+su(1,1) on C^2 (x) C^2 with form h (x) h, reordered so
// the target is the standard su(2,2) model.
Homomorphism tensor_product_map() {
    // basis order (v0 (x) v0, v1 (x) v1 | v0 (x) v1, v1 (x) v0) gathers the
    // positive directions of diag(1,-1,-1,1) first.
    std::vector<std::size_t> perm = {0, 3, 1, 2};
    Mat p(4, 4);
    for (std::size_t j = 0; j < 4; ++j) p.at(j, perm[j]) = Surd(1);
    Mat pinv = inverse(p);
    Homomorphism rho;
    rho.source = su11_power(2);
    rho.target = su_algebra(2, 2);
    const CartanData& cd = cartan_split(su_algebra(1, 1));
    std::vector<Mat> f1, f2;
    Mat id2 = Mat::identity(2);
    auto push_pair = [&](const Mat& x) {
        f1.push_back(p * kronecker(x, id2) * pinv);
        f2.push_back(p * kronecker(id2, x) * pinv);
    };
    for (const Element& b : cd.basis()) push_pair(b.mat);
    // direct-sum basis order: k of factor 1, k of factor 2, p of 1, p of 2
    for (const Mat& m : {f1[0], f2[0], f1[1], f1[2], f2[1], f2[2]})
        rho.images.push_back(Element{rho.target, m});
    rho.label = "tensorProduct";
    return rho;
}

Homomorphism odd_into_su(long n) {
    return compose(std_inclusion(StdInclusionKind::SP_TO_SU, n), rho_odd(n));
}

}  // namespace

// ===================================================================
// Exact Hermitian signature
// ===================================================================

TEST_CASE("hermitian signature by congruence", "[branching]") {
    Mat d = Mat::diagonal({Surd(2), Surd(-3), Surd(0), surd_sqrt(2)});
    HermitianSignature s = hermitian_signature(d);
    CHECK(s.positive == 2);
    CHECK(s.negative == 1);
    CHECK(s.zero == 1);

    Mat hyp(2, 2);
    hyp.at(0, 1) = Surd(1);
    hyp.at(1, 0) = Surd(1);
    s = hermitian_signature(hyp);
    CHECK(s.positive == 1);
    CHECK(s.negative == 1);

    Mat ihyp(2, 2);
    ihyp.at(0, 1) = surd_i();
    ihyp.at(1, 0) = -surd_i();
    s = hermitian_signature(ihyp);
    CHECK(s.positive == 1);
    CHECK(s.negative == 1);

    // mixed 4x4: hyperbolic pair plus definite tail
    Mat m(4, 4);
    m.at(0, 1) = Surd(Gaussian(Rational(2), Rational(1)));
    m.at(1, 0) = Surd(Gaussian(Rational(2), Rational(-1)));
    m.at(2, 2) = Surd(-5);
    m.at(3, 3) = Surd(7);
    m.at(2, 3) = Surd(1);
    m.at(3, 2) = Surd(1);
    s = hermitian_signature(m);
    CHECK(s.positive == 2);
    CHECK(s.negative == 2);
    CHECK(s.zero == 0);

    CHECK(hermitian_signature(detail::hermitian_gram(2, 3)).positive == 2);
    CHECK(hermitian_signature(detail::hermitian_gram(2, 3)).negative == 3);
}

TEST_CASE("quaternionic structure: square and commutation", "[branching]") {
    Mat sigma = quaternionic_structure(3);
    // J^2 = -id as an antilinear map
    Mat twice = apply_antilinear(sigma, apply_antilinear(sigma, Mat::identity(6)));
    CHECK((twice + Mat::identity(6)).is_zero());
    // J commutes with every image of a so*-valued homomorphism
    for (const Element& e : std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 2).images)
        CHECK((sigma * e.mat.conj() - e.mat * sigma).is_zero());
    for (const Element& b : cartan_split(sostar_algebra(3)).basis())
        CHECK((sigma * b.mat.conj() - b.mat * sigma).is_zero());
}

// ===================================================================
// Complete decompositions
// ===================================================================

TEST_CASE("irreducible modules give a single block", "[branching]") {
    for (long n = 1; n <= 4; ++n) {
        DecompositionReport r = invariant_decomposition_su(odd_into_su(n));
        check_complete_invariants(r, su_algebra(n, n).factors[0].form.gram,
                                  detail::image_mats(odd_into_su(n)));
        REQUIRE(r.blocks.size() == 1);
        CHECK(r.blocks[0].irreducible);
        CHECK(r.blocks[0].positive == n);
        CHECK(r.blocks[0].negative == n);
        CHECK(r.commutant_dimension == 1);
    }
    // sp targets decompose through the same Hermitian ambient model
    DecompositionReport r = invariant_decomposition_su(spin(3));
    REQUIRE(r.blocks.size() == 1);
    CHECK(r.blocks[0].positive == 2);
    CHECK(r.blocks[0].negative == 2);
    CHECK(r.commutant_dimension == 1);
}

TEST_CASE("two-summand module splits into blocks (1,1) and (2,2)", "[branching]") {
    Homomorphism rho = merge_factors(direct_sum(odd_into_su(1), odd_into_su(2), true));
    REQUIRE(rho.target == su_algebra(3, 3));
    DecompositionReport r = invariant_decomposition_su(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    CHECK(r.commutant_dimension == 2);
    std::multiset<std::tuple<long, long, long>> expect = {{2, 1, 1}, {4, 2, 2}};
    CHECK(block_multiset(r) == expect);
    for (const auto& b : r.blocks) CHECK(b.irreducible);
}

TEST_CASE("isotypic multiplicity two is separated", "[branching]") {
    Homomorphism rho = merge_factors(direct_sum(odd_into_su(1), odd_into_su(1), true));
    DecompositionReport r = invariant_decomposition_su(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    CHECK(r.commutant_dimension == 4);  // End of V+V is a 2x2 matrix algebra
    std::multiset<std::tuple<long, long, long>> expect = {{2, 1, 1}, {2, 1, 1}};
    CHECK(block_multiset(r) == expect);
}

TEST_CASE("standard and conjugate-dual summands of su(1,2) in sp(6,R)", "[branching]") {
    Homomorphism rho = std_inclusion(StdInclusionKind::SU_TO_SP, 1, 2);
    DecompositionReport r = invariant_decomposition_su(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    CHECK(r.commutant_dimension == 2);
    std::multiset<std::tuple<long, long, long>> expect = {{3, 1, 2}, {3, 2, 1}};
    CHECK(block_multiset(r) == expect);
}

// ===================================================================
// Isotropic obstruction
// ===================================================================

TEST_CASE("split-parts map on gl(2,C): isotropic obstruction", "[branching]") {
    Mat gram = detail::hermitian_gram(2, 2);
    std::vector<Mat> images = gl2_example_images();
    DecompositionReport r = invariant_decomposition_su(gram, images);
    REQUIRE(r.residual_kind == ResidualKind::ISOTROPIC_OBSTRUCTION);
    REQUIRE(r.obstruction.has_value());
    CHECK(r.obstruction->hyperbolic_rank == 2);
    CHECK_FALSE(r.obstruction->detail.empty());
    CHECK(r.blocks.empty());
    CHECK(r.commutant_dimension == 2);

    Mat vplus = columns_from({{1, 0, 1, 0}, {0, 1, 0, 1}}, 4);
    Mat vminus = columns_from({{1, 0, -1, 0}, {0, 1, 0, -1}}, 4);
    const Mat& a = r.obstruction->module_a;
    const Mat& b = r.obstruction->module_b;
    bool direct = same_span(a, vplus) && same_span(b, vminus);
    bool swapped = same_span(a, vminus) && same_span(b, vplus);
    CHECK((direct || swapped));
    // both are totally isotropic, and together they pair nondegenerately
    CHECK(detail::restricted_gram(gram, a).is_zero());
    CHECK(detail::restricted_gram(gram, b).is_zero());
    Mat both(4, 4);
    both.set_block(0, 0, a);
    both.set_block(0, 2, b);
    HermitianSignature s = hermitian_signature(detail::restricted_gram(gram, both));
    CHECK(s.positive == 2);
    CHECK(s.negative == 2);
}

TEST_CASE("su(1,1) restriction of the split-parts map decomposes and is not tight", "[branching]") {
    Homomorphism rho = gl2_example_su11_restriction();
    REQUIRE(is_zero(verify_homomorphism(rho)));
    TightnessCertificate cert = certify(rho);
    CHECK(cert.per_factor[0].second == 0);  // standard and conjugate copies cancel
    CHECK_FALSE(cert.tight);
    DecompositionReport r = invariant_decomposition_su(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    CHECK(r.commutant_dimension == 4);
    std::multiset<std::tuple<long, long, long>> expect = {{2, 1, 1}, {2, 1, 1}};
    CHECK(block_multiset(r) == expect);
}

// ===================================================================
// Quaternionic pairing for so* targets
// ===================================================================

TEST_CASE("identity on so*(4): one J-stable quaternionic block", "[branching]") {
    Homomorphism rho = identity_hom(sostar_algebra(2));
    DecompositionReport r = invariant_decomposition_sostar(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    REQUIRE(r.blocks.size() == 1);
    CHECK(r.blocks[0].quaternionic);
    CHECK_FALSE(r.blocks[0].anti_isomorphic_pair);
    CHECK(r.blocks[0].irreducible);
    CHECK(r.blocks[0].positive == 2);
    CHECK(r.blocks[0].negative == 2);
    CHECK(r.commutant_dimension == 1);
}

TEST_CASE("su(1,1) in so*(4): anti-isomorphic pair", "[branching]") {
    // the block-diagonal embedding X -> diag(X, conj(X)) keeps the standard
    // module and its J-image disjoint, so they are reported as one paired block
    Homomorphism rho = std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 1);
    DecompositionReport r = invariant_decomposition_sostar(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    REQUIRE(r.blocks.size() == 1);
    CHECK(r.blocks[0].anti_isomorphic_pair);
    CHECK_FALSE(r.blocks[0].quaternionic);
    CHECK_FALSE(r.blocks[0].irreducible);
    CHECK(r.blocks[0].positive == 2);
    CHECK(r.blocks[0].negative == 2);
}

TEST_CASE("su(1,2) in so*(6): anti-isomorphic pair of signature (3,3)", "[branching]") {
    Homomorphism rho = std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 2);
    DecompositionReport r = invariant_decomposition_sostar(rho);
    check_complete_invariants(r, rho.target.factors[0].form.gram, detail::image_mats(rho));
    REQUIRE(r.blocks.size() == 1);
    CHECK(r.blocks[0].anti_isomorphic_pair);
    CHECK_FALSE(r.blocks[0].quaternionic);
    CHECK(r.blocks[0].positive == 3);
    CHECK(r.blocks[0].negative == 3);
}

TEST_CASE("signature reversal under J", "[branching]") {
    // the complex blocks of su(1,2) inside so*(6), viewed in the ambient
    // su(3,3) model, have signatures (1,2) and (2,1); J swaps them
    Homomorphism rho = std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 2);
    Homomorphism tau = std_inclusion(StdInclusionKind::SOSTAR_TO_SU, 3);
    Homomorphism comp = compose(tau, rho);
    DecompositionReport complex_r = invariant_decomposition_su(comp);
    REQUIRE(complex_r.residual_kind == ResidualKind::COMPLETE);
    std::multiset<std::tuple<long, long, long>> expect = {{3, 1, 2}, {3, 2, 1}};
    CHECK(block_multiset(complex_r) == expect);
    Mat sigma = quaternionic_structure(3);
    const Mat& gram = comp.target.factors[0].form.gram;
    for (const auto& b : complex_r.blocks) {
        HermitianSignature sv = hermitian_signature(detail::restricted_gram(gram, b.basis));
        Mat jb = apply_antilinear(sigma, b.basis);
        HermitianSignature sj = hermitian_signature(detail::restricted_gram(gram, jb));
        CHECK(sv.positive == sj.negative);
        CHECK(sv.negative == sj.positive);
    }
}

// ===================================================================
// Oracle equivalence
// ===================================================================

TEST_CASE("commutant decomposition matches brute-force search", "[branching][oracle]") {
    std::vector<Homomorphism> instances;
    for (long n = 1; n <= 4; ++n) instances.push_back(odd_into_su(n));
    instances.push_back(merge_factors(direct_sum(odd_into_su(1), odd_into_su(2), true)));
    instances.push_back(merge_factors(direct_sum(odd_into_su(1), odd_into_su(1), true)));
    instances.push_back(polydisc(su_algebra(2, 2)));
    instances.push_back(disc(su_algebra(2, 2), {1}));
    instances.push_back(spin(3));
    instances.push_back(gl2_example_su11_restriction());
    instances.push_back(std_inclusion(StdInclusionKind::SP_TO_SU, 2));
    instances.push_back(std_inclusion(StdInclusionKind::SOSTAR_TO_SU, 2));
    instances.push_back(std_inclusion(StdInclusionKind::SU_TO_SP, 1, 2));
    instances.push_back(compose(std_inclusion(StdInclusionKind::SOSTAR_TO_SU, 2),
                                std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 1)));
    instances.push_back(compose(std_inclusion(StdInclusionKind::SOSTAR_TO_SU, 3),
                                std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 2)));
    instances.push_back(tensor_product_map());
    for (const Homomorphism& rho : instances) {
        INFO(rho.label);
        DecompositionReport r = invariant_decomposition_su(rho);
        const Mat& gram = rho.target.factors[0].form.gram;
        std::vector<Mat> mats = detail::image_mats(rho);
        if (r.residual_kind == ResidualKind::COMPLETE)
            check_complete_invariants(r, gram, mats);
        check_against_oracle(r, gram, mats);
    }
    // the raw reductive example, via the image-set entry point
    Mat gram = detail::hermitian_gram(2, 2);
    DecompositionReport r = invariant_decomposition_su(gram, gl2_example_images());
    check_against_oracle(r, gram, gl2_example_images());
}

// ===================================================================
// Factor splitting
// ===================================================================

TEST_CASE("polydisc of su(2,2) splits into its two disc factors", "[branching]") {
    Homomorphism rho = polydisc(su_algebra(2, 2));
    FactorSplit s = split_by_factor(rho);
    REQUIRE(s.did_split);
    CHECK(s.first.source == su_algebra(1, 1));
    CHECK(s.first.target == su_algebra(1, 1));
    CHECK(s.second.target == su_algebra(1, 1));
    CHECK(is_zero(verify_homomorphism(s.first)));
    CHECK(is_zero(verify_homomorphism(s.second)));
    CHECK(is_zero(verify_homomorphism(s.embedding)));
    // embedding o (first (+) second) reproduces the original map
    Homomorphism recomposed = compose(s.embedding, direct_sum(s.first, s.second, false));
    REQUIRE(recomposed.images.size() == rho.images.size());
    for (std::size_t i = 0; i < rho.images.size(); ++i)
        CHECK((recomposed.images[i].mat - rho.images[i].mat).is_zero());
}

TEST_CASE("independent odd summands split with targets su(1,1) and su(2,2)", "[branching]") {
    Homomorphism rho = merge_factors(direct_sum(odd_into_su(1), odd_into_su(2), false));
    REQUIRE(rho.source == su11_power(2));
    REQUIRE(certify(rho).tight);
    FactorSplit s = split_by_factor(rho);
    REQUIRE(s.did_split);
    CHECK(s.first.target == su_algebra(1, 1));
    CHECK(s.second.target == su_algebra(2, 2));
    CHECK(is_zero(verify_homomorphism(s.first)));
    CHECK(is_zero(verify_homomorphism(s.second)));
    Homomorphism recomposed = compose(s.embedding, direct_sum(s.first, s.second, false));
    for (std::size_t i = 0; i < rho.images.size(); ++i)
        CHECK((recomposed.images[i].mat - rho.images[i].mat).is_zero());
}

TEST_CASE("tensor-product module does not split by factor", "[branching]") {
    Homomorphism rho = tensor_product_map();
    REQUIRE(is_zero(verify_homomorphism(rho)));
    CHECK_FALSE(certify(rho).tight);
    CHECK_THROWS_AS(split_by_factor(rho), std::invalid_argument);
    FactorSplit s = split_by_factor(rho, false);
    CHECK_FALSE(s.did_split);
    CHECK(s.diagnostic.find("both source factors") != std::string::npos);
}

TEST_CASE("split rejects one-factor sources", "[branching]") {
    CHECK_THROWS_AS(split_by_factor(rho_odd(2)), std::invalid_argument);
}

// ===================================================================
// Error paths
// ===================================================================

TEST_CASE("decomposition rejects bad inputs", "[branching]") {
    // corrupted image set: not form-compatible
    std::vector<Mat> bad = {Mat::identity(4)};
    CHECK_THROWS_AS(invariant_decomposition_su(detail::hermitian_gram(2, 2), bad),
                    std::invalid_argument);
    // non-homomorphism input
    Homomorphism broken = odd_into_su(2);
    broken.images[0] = broken.images[1];
    CHECK_THROWS_AS(invariant_decomposition_su(broken), std::invalid_argument);
    // so(2,n) targets unsupported
    CHECK_THROWS_AS(invariant_decomposition(so2_inclusion(1, 3)), std::invalid_argument);
    // sostar entry point rejects su targets
    CHECK_THROWS_AS(invariant_decomposition_sostar(odd_into_su(2)), std::invalid_argument);
}
