#include "tighthom/homomorphism.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace tighthom;

TEST_CASE("identity homomorphism verifies exactly", "[hom]") {
    for (const AlgebraDescriptor& a :
         {su_algebra(1, 1), su_algebra(2, 3), sp_algebra(2), sostar_algebra(3), so2_algebra(4),
          direct_sum(su_algebra(1, 1), sp_algebra(1))}) {
        Homomorphism id = identity_hom(a);
        CHECK(verify_homomorphism(id) == 0);
        Element z = algebra_Z0(a);
        CHECK(apply(id, z).mat == z.mat);
    }
}

TEST_CASE("verification detects corrupted images", "[hom]") {
    Homomorphism id = identity_hom(su_algebra(1, 1));
    // Violate a bracket relation while staying inside the target algebra.
    id.images[1] = Element{id.target, Surd(2) * id.images[1].mat};
    CHECK(verify_homomorphism(id) > 0);

    Homomorphism id2 = identity_hom(su_algebra(1, 1));
    // Violate membership instead.
    id2.images[0].mat.at(0, 1) = Surd(1);
    CHECK(verify_homomorphism(id2) > 0);

    Homomorphism id3 = identity_hom(su_algebra(1, 1));
    id3.images.pop_back();
    CHECK_THROWS_AS(verify_homomorphism(id3), std::invalid_argument);
}

TEST_CASE("apply expands in the fixed source basis", "[hom]") {
    AlgebraDescriptor a = sp_algebra(2);
    Homomorphism id = identity_hom(a);
    const CartanData& cd = cartan_split(a);
    Mat m = cd.k_basis[1].mat + Surd(Gaussian(rational(2, 3))) * cd.p_basis[0].mat;
    CHECK(apply(id, m) == m);
    CHECK_THROWS_AS(apply(id, Element{su_algebra(1, 1), Mat::identity(2)}),
                    std::invalid_argument);
}

TEST_CASE("composition", "[hom]") {
    AlgebraDescriptor a = su_algebra(2, 2);
    Homomorphism id = identity_hom(a);
    Homomorphism c = compose(id, id);
    CHECK(verify_homomorphism(c) == 0);
    for (std::size_t t = 0; t < c.images.size(); ++t)
        CHECK(c.images[t].mat == id.images[t].mat);
    CHECK_THROWS_AS(compose(identity_hom(sp_algebra(2)), id), std::invalid_argument);
}

TEST_CASE("direct sum with distinct sources", "[hom]") {
    Homomorphism r = direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(su_algebra(2, 2)),
                                /*same_source=*/false);
    CHECK(r.source.str() == "su(1,1)+su(2,2)");
    CHECK(r.target.str() == "su(1,1)+su(2,2)");
    CHECK(verify_homomorphism(r) == 0);
    // Mixed target families are rejected.
    CHECK_THROWS_AS(
        direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(sp_algebra(1)), false),
        std::invalid_argument);
}

TEST_CASE("direct sum with shared source maps diagonally", "[hom]") {
    Homomorphism d =
        direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(su_algebra(1, 1)), true);
    CHECK(d.source.str() == "su(1,1)");
    CHECK(d.target.str() == "su(1,1)+su(1,1)");
    CHECK(verify_homomorphism(d) == 0);
    Element z = algebra_Z0(su_algebra(1, 1));
    Mat im = apply(d, z).mat;
    CHECK(im.block(0, 0, 2, 2) == z.mat);
    CHECK(im.block(2, 2, 2, 2) == z.mat);
    CHECK_THROWS_AS(
        direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(su_algebra(2, 2)), true),
        std::invalid_argument);
}

TEST_CASE("merge_factors into the standard model", "[hom]") {
    Homomorphism d =
        direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(su_algebra(1, 1)), true);
    Homomorphism m = merge_factors(d);
    CHECK(m.target.str() == "su(2,2)");
    CHECK(verify_homomorphism(m) == 0);
    // Diagonal p-generator image becomes [[0,I],[I,0]] after regrouping.
    const CartanData& cd = cartan_split(su_algebra(1, 1));
    Mat x = apply(m, cd.p_basis[0]).mat;
    CHECK(x.at(0, 2) == Surd(1));
    CHECK(x.at(1, 3) == Surd(1));
    CHECK(x.at(2, 0) == Surd(1));
    CHECK(x.at(3, 1) == Surd(1));
    CHECK(x.at(0, 1).is_zero());
}

TEST_CASE("merge_factors for sp and so* pair models", "[hom]") {
    Homomorphism dsp = direct_sum(identity_hom(sp_algebra(1)), identity_hom(sp_algebra(2)),
                                  /*same_source=*/false);
    Homomorphism msp = merge_factors(dsp);
    CHECK(msp.target.str() == "sp(6,R)");
    CHECK(verify_homomorphism(msp) == 0);

    Homomorphism dso = direct_sum(identity_hom(sostar_algebra(2)), identity_hom(sostar_algebra(2)),
                                  /*same_source=*/false);
    Homomorphism mso = merge_factors(dso);
    CHECK(mso.target.str() == "so*(8)");
    CHECK(verify_homomorphism(mso) == 0);
}

TEST_CASE("merge_factors with padding override", "[hom]") {
    Homomorphism d = direct_sum(identity_hom(su_algebra(1, 1)), identity_hom(su_algebra(1, 1)),
                                /*same_source=*/false);
    Homomorphism m = merge_factors(d, su_algebra(2, 3));
    CHECK(m.target.str() == "su(2,3)");
    CHECK(verify_homomorphism(m) == 0);
    // Padded column stays zero across all images.
    for (const auto& im : m.images)
        for (std::size_t r = 0; r < 5; ++r) CHECK(im.mat.at(r, 4).is_zero());
}

TEST_CASE("merge_factors error paths", "[hom]") {
    CHECK_THROWS_AS(merge_factors(identity_hom(so2_algebra(3))), std::invalid_argument);
    Homomorphism mixed;
    mixed.source = su_algebra(1, 1);
    mixed.target = direct_sum(su_algebra(1, 1), sp_algebra(1));
    CHECK_THROWS_AS(merge_factors(mixed), std::invalid_argument);
    CHECK_THROWS_AS(merge_factors(identity_hom(su_algebra(2, 2)), su_algebra(1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(merge_factors(identity_hom(su_algebra(2, 2)), su11_power(2)),
                    std::invalid_argument);
}

TEST_CASE("polydisc verifies and matches the fixed disc supports", "[hom]") {
    for (const AlgebraDescriptor& a :
         {su_algebra(1, 1), su_algebra(2, 3), sp_algebra(2), sostar_algebra(4), sostar_algebra(5),
          so2_algebra(1), so2_algebra(5)}) {
        Homomorphism pd = polydisc(a);
        CHECK(pd.source.factors.size() == static_cast<std::size_t>(rank(a)));
        CHECK(verify_homomorphism(pd) == 0);
        // Image of each source Z0 direction lies in k, of each X in p.
        const long r = rank(a);
        for (long t = 0; t < r; ++t) {
            CHECK(k_component_residual(a, pd.images[r + 2 * t].mat) == 0);
            CHECK(detail::max_entry_magnitude(p_project(a, pd.images[t].mat)) == 0);
        }
    }
    // polydisc(su(1,1)) is the identity map.
    Homomorphism pd = polydisc(su_algebra(1, 1));
    Homomorphism id = identity_hom(su_algebra(1, 1));
    for (std::size_t t = 0; t < pd.images.size(); ++t)
        CHECK(pd.images[t].mat == id.images[t].mat);
}

TEST_CASE("diagonal disc with signs", "[hom]") {
    // disc(su(1,1), [+1]) is the identity.
    Homomorphism d1 = disc(su_algebra(1, 1), {+1});
    Homomorphism id = identity_hom(su_algebra(1, 1));
    for (std::size_t t = 0; t < d1.images.size(); ++t)
        CHECK(d1.images[t].mat == id.images[t].mat);

    for (const AlgebraDescriptor& a :
         {su_algebra(2, 2), sp_algebra(2), so2_algebra(3), sostar_algebra(4)}) {
        CHECK(verify_homomorphism(disc(a, {+1})) == 0);
        CHECK(verify_homomorphism(disc(a, {-1})) == 0);
    }
    AlgebraDescriptor two = direct_sum(su_algebra(1, 1), sp_algebra(2));
    CHECK(verify_homomorphism(disc(two, {+1, -1})) == 0);
    CHECK_THROWS_AS(disc(two, {+1}), std::invalid_argument);
    CHECK_THROWS_AS(disc(two, {+1, 2}), std::invalid_argument);
}
