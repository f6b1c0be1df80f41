#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tighthom/hull.hpp"
#include "tighthom/shapes.hpp"
#include "tighthom/tightness.hpp"

#include "oracle_shapes.hpp"

using namespace tighthom;

namespace {

using shape_oracle::oracle_shapes;
using shape_oracle::record_key;

std::set<std::string> enumerated_keys(const AlgebraDescriptor& target) {
    std::set<std::string> out;
    for (const auto& rec : enumerate_shapes(target)) {
        auto [it, fresh] = out.insert(record_key(rec));
        INFO("duplicate shape " << rec.str());
        REQUIRE(fresh);
    }
    return out;
}

bool has_entries(const std::vector<ShapeRecord>& recs,
                 const std::vector<ShapeEntry>& entries) {
    auto sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    return std::any_of(recs.begin(), recs.end(),
                       [&](const ShapeRecord& r) { return r.entries == sorted; });
}

}  // namespace

TEST_CASE("shape enumeration matches the independent partition oracle") {
    std::vector<AlgebraDescriptor> targets = {
        su_algebra(1, 1), su_algebra(2, 2), su_algebra(3, 3), su_algebra(4, 4),
        sp_algebra(1),   sp_algebra(2),    sp_algebra(3),    sp_algebra(4),
        sostar_algebra(4), sostar_algebra(6),                       // so*(8), so*(12)
        sostar_algebra(3), sostar_algebra(5),                       // so*(6), so*(10)
        su_algebra(1, 2), su_algebra(1, 3), su_algebra(2, 3), su_algebra(2, 4)};
    for (const auto& target : targets) {
        INFO("target " << target.str());
        CHECK(enumerated_keys(target) == oracle_shapes(target));
    }
}

TEST_CASE("frozen shape lists for the smallest targets") {
    SECTION("sp(4,R) has exactly three shapes") {
        const auto recs = enumerate_shapes(sp_algebra(2));
        REQUIRE(recs.size() == 3);
        CHECK(has_entries(recs, {{ShapeKind::SU11_VIA_RHO, 2, 0, 1}}));
        CHECK(has_entries(recs, {{ShapeKind::SP, 2, 0, 1}}));
        CHECK(has_entries(recs, {{ShapeKind::SU11_VIA_RHO, 1, 0, 2}}));
    }
    SECTION("su(2,2)") {
        const auto recs = enumerate_shapes(su_algebra(2, 2));
        REQUIRE(recs.size() == 4);
        CHECK(has_entries(recs, {{ShapeKind::SU11_VIA_RHO, 2, 0, 1}}));
        CHECK(has_entries(recs, {{ShapeKind::SU11_VIA_RHO, 1, 0, 2}}));
        CHECK(has_entries(recs, {{ShapeKind::SU_PP, 2, 0, 1}}));
        CHECK(has_entries(recs, {{ShapeKind::SP, 2, 0, 1}}));
    }
    SECTION("su(1,1) and sp(2,R) reduce to the identity block") {
        for (const auto& t : {su_algebra(1, 1), sp_algebra(1)}) {
            const auto recs = enumerate_shapes(t);
            REQUIRE(recs.size() == 1);
            CHECK(recs[0].entries ==
                  std::vector<ShapeEntry>{{ShapeKind::SU11_VIA_RHO, 1, 0, 1}});
        }
    }
    SECTION("frozen counts on the acceptance sweep targets") {
        CHECK(enumerate_shapes(su_algebra(3, 3)).size() == 7);
        CHECK(enumerate_shapes(su_algebra(4, 4)).size() == 18);
        CHECK(enumerate_shapes(sp_algebra(3)).size() == 5);
        CHECK(enumerate_shapes(sp_algebra(4)).size() == 11);
        CHECK(enumerate_shapes(sostar_algebra(4)).size() == 6);
        CHECK(enumerate_shapes(sostar_algebra(6)).size() == 10);
        CHECK(enumerate_shapes(sostar_algebra(3)).size() == 3);
    }
    SECTION("so(2,6) spin entries are recorded as so*(8) identity entries") {
        for (const auto& rec : enumerate_shapes(su_algebra(4, 4)))
            for (const auto& e : rec.entries)
                CHECK_FALSE((e.kind == ShapeKind::SO2 && e.a == 6));
        CHECK(has_entries(enumerate_shapes(su_algebra(4, 4)),
                          {{ShapeKind::SOSTAR4, 2, 0, 1}}));
        CHECK(has_entries(enumerate_shapes(su_algebra(4, 4)),
                          {{ShapeKind::SO2, 5, 0, 1}}));
    }
}

TEST_CASE("shape record bookkeeping") {
    SECTION("capacity_used, constraint and graded order") {
        for (const auto& t : {su_algebra(3, 3), sp_algebra(3), sostar_algebra(5)}) {
            const auto recs = enumerate_shapes(t);
            long prev_grade = 0;
            for (const auto& rec : recs) {
                CHECK(rec.capacity_used == t.factors[0].rank());
                CHECK(rec.constraint.find("= " + std::to_string(rec.capacity_used)) !=
                      std::string::npos);
                long grade = 0;
                for (const auto& e : rec.entries) grade += e.multiplicity;
                CHECK(grade >= prev_grade);
                prev_grade = grade;
                CHECK(std::is_sorted(rec.entries.begin(), rec.entries.end()));
            }
        }
    }
    SECTION("bounds restrict the largest part") {
        const auto recs = enumerate_shapes(sp_algebra(2), ShapeBounds{1});
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].entries ==
              std::vector<ShapeEntry>{{ShapeKind::SU11_VIA_RHO, 1, 0, 2}});
        CHECK(enumerate_shapes(su_algebra(3, 3), ShapeBounds{2}).size() == 4);
    }
    SECTION("source and regular subalgebra transcription") {
        const auto recs = enumerate_shapes(sp_algebra(2));
        ShapeRecord rec = recs.back();  // graded order: {rho(1)x2} comes last
        REQUIRE(rec.entries == std::vector<ShapeEntry>{{ShapeKind::SU11_VIA_RHO, 1, 0, 2}});
        CHECK(rec.source() == su_algebra(1, 1));
        CHECK(rec.regular_subalgebra() ==
              direct_sum(sp_algebra(1), sp_algebra(1)));
        CHECK(rec.symbolic_hull() == sp_algebra(1));

        ShapeRecord pp;  // su(2,2) identity inside sp(8,R)
        pp.target = sp_algebra(4);
        pp.entries = {{ShapeKind::SU_PP, 2, 0, 1}};
        CHECK(pp.regular_subalgebra() == su_algebra(2, 2));
        CHECK(pp.symbolic_hull() == su_algebra(2, 2));

        ShapeRecord spin5;  // so(2,5) inside so*(12)
        spin5.target = sostar_algebra(6);
        spin5.entries = {{ShapeKind::SU11_VIA_RHO, 1, 0, 1}, {ShapeKind::SO2, 5, 0, 1}};
        CHECK(spin5.regular_subalgebra() ==
              direct_sum(su_algebra(1, 1), sostar_algebra(4)));
        CHECK(spin5.source() == direct_sum(su_algebra(1, 1), so2_algebra(5)));
    }
}

TEST_CASE("errors: unsupported targets and invalid shapes") {
    CHECK_THROWS_AS(enumerate_shapes(so2_algebra(5)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_shapes(direct_sum(su_algebra(1, 1), su_algebra(1, 1))),
                    std::invalid_argument);
    ShapeRecord bad;
    bad.target = sp_algebra(2);
    bad.entries = {{ShapeKind::SU11_VIA_RHO, 1, 0, 1}};  // capacity 1 != 2
    CHECK_THROWS_AS(realize_shape(bad), std::invalid_argument);
    ShapeRecord empty;
    empty.target = sp_algebra(2);
    CHECK_THROWS_AS(realize_shape(empty), std::invalid_argument);
    ShapeRecord wrong_family;  // sp-only entry offered to a so* target
    wrong_family.target = sostar_algebra(4);
    wrong_family.entries = {{ShapeKind::SOSTAR_ODD, 2, 0, 1}};
    CHECK_THROWS_AS(realize_shape(wrong_family), std::invalid_argument);
}

TEST_CASE("realize, certify, recover: full roundtrip on small targets") {
    std::vector<AlgebraDescriptor> targets = {su_algebra(1, 1), su_algebra(2, 2),
                                              su_algebra(3, 3), sp_algebra(2),
                                              sp_algebra(3),    sostar_algebra(4),
                                              sostar_algebra(3), sostar_algebra(5),
                                              su_algebra(1, 2), su_algebra(2, 3)};
    for (const auto& target : targets) {
        for (const auto& rec : enumerate_shapes(target)) {
            INFO(rec.str());
            const Homomorphism rho = realize_shape(rec);
            CHECK(rho.target == rec.target);
            CHECK(rho.source == rec.source());
            CHECK(verify_homomorphism(rho) == 0);
            const auto cert = certify(rho);
            CHECK(cert.tight);
            CHECK(cert.positive);
            const ShapeRecord back = recover_shape(rho);
            CHECK(back.entries == rec.entries);
            CHECK(back.capacity_used == rec.capacity_used);
        }
    }
}

TEST_CASE("hull of a realized shape matches the symbolic hull") {
    std::vector<AlgebraDescriptor> targets = {su_algebra(2, 2), sp_algebra(2),
                                              sostar_algebra(4), su_algebra(1, 2)};
    for (const auto& target : targets) {
        for (const auto& rec : enumerate_shapes(target)) {
            INFO(rec.str());
            const Homomorphism rho = realize_shape(rec);
            const HullResult h = hermitian_hull(rho);
            CHECK(h.hull == rec.symbolic_hull());
            CHECK(h.holomorphic_tight_into_target);
        }
    }
}

TEST_CASE("canonicalize rewrites the small-rank isomorphisms") {
    CHECK(canonicalize(sp_algebra(1)) == su_algebra(1, 1));
    CHECK(canonicalize(so2_algebra(1)) == su_algebra(1, 1));
    CHECK(canonicalize(so2_algebra(2)) == direct_sum(su_algebra(1, 1), su_algebra(1, 1)));
    CHECK(canonicalize(so2_algebra(3)) == sp_algebra(2));
    CHECK(canonicalize(so2_algebra(4)) == su_algebra(2, 2));
    CHECK(canonicalize(so2_algebra(6)) == sostar_algebra(4));
    CHECK(canonicalize(sostar_algebra(3)) == su_algebra(1, 3));

    SECTION("fixed points") {
        for (const auto& t : {su_algebra(1, 1), su_algebra(2, 3), sp_algebra(2),
                              sostar_algebra(4), so2_algebra(5), so2_algebra(7)})
            CHECK(canonicalize(t) == t);
    }
    SECTION("idempotence, including on compound descriptors") {
        AlgebraDescriptor mixed = direct_sum(
            direct_sum(so2_algebra(2), sp_algebra(1)),
            direct_sum(sostar_algebra(3), so2_algebra(6)));
        const auto once = canonicalize(mixed);
        CHECK(canonicalize(once) == once);
        AlgebraDescriptor expect;
        expect.factors = {su_factor(1, 1), su_factor(1, 1), su_factor(1, 1),
                          su_factor(1, 3), sostar_factor(4)};
        CHECK(once == expect);
    }
}

TEST_CASE("make_shape validates hand-written entry lists") {
    SECTION("agrees with every enumerated shape, independently of entry order") {
        for (const auto& target :
             {su_algebra(2, 2), su_algebra(3, 3), su_algebra(2, 4), sp_algebra(3),
              sostar_algebra(4), sostar_algebra(5)}) {
            for (const auto& rec : enumerate_shapes(target)) {
                std::vector<ShapeEntry> reversed(rec.entries.rbegin(), rec.entries.rend());
                const ShapeRecord built = make_shape(target, reversed);
                CHECK(built == rec);
                CHECK(built.capacity_used == rec.capacity_used);
                CHECK(built.constraint == rec.constraint);
            }
        }
    }
    SECTION("duplicate entries merge into one multiplicity") {
        const ShapeRecord merged = make_shape(
            sp_algebra(3),
            {{ShapeKind::SU11_VIA_RHO, 1, 0, 1}, {ShapeKind::SU11_VIA_RHO, 1, 0, 2}});
        REQUIRE(merged.entries.size() == 1);
        CHECK(merged.entries[0].multiplicity == 3);
        const auto all = enumerate_shapes(sp_algebra(3));
        CHECK(std::count(all.begin(), all.end(), merged) == 1);
    }
    SECTION("rejections carry specific reasons") {
        // Capacity mismatch.
        CHECK_THROWS_AS(make_shape(su_algebra(2, 2), {{ShapeKind::SU11_VIA_RHO, 1, 0, 1}}),
                        std::invalid_argument);
        // Alias entries.
        CHECK_THROWS_AS(make_shape(su_algebra(4, 4), {{ShapeKind::SO2, 6, 0, 1}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(su_algebra(2, 2), {{ShapeKind::SU_PP, 1, 0, 2}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(sp_algebra(2), {{ShapeKind::SP, 1, 0, 2}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(su_algebra(2, 2), {{ShapeKind::SOSTAR4, 1, 0, 1}}),
                        std::invalid_argument);
        // Context violations.
        CHECK_THROWS_AS(make_shape(su_algebra(3, 3),
                                   {{ShapeKind::SU_PQ, 1, 2, 1},
                                    {ShapeKind::SU11_VIA_RHO, 2, 0, 1}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(sostar_algebra(4), {{ShapeKind::SOSTAR_ODD, 2, 0, 1}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(sostar_algebra(5),
                                   {{ShapeKind::SOSTAR_ODD, 1, 0, 1},
                                    {ShapeKind::SU_PQ, 1, 2, 1}}),
                        std::invalid_argument);
        // Wrong-family spin residue: so(2,5) spin lands in so*, not sp.
        CHECK_THROWS_AS(make_shape(sp_algebra(2), {{ShapeKind::SO2, 5, 0, 1}}),
                        std::invalid_argument);
        // Side overflow in a non-tube su target.
        CHECK_THROWS_AS(make_shape(su_algebra(1, 3), {{ShapeKind::SU_PQ, 1, 4, 1}}),
                        std::invalid_argument);
        // Bad multiplicity and misused second parameter.
        CHECK_THROWS_AS(make_shape(sp_algebra(2), {{ShapeKind::SU11_VIA_RHO, 1, 0, 0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(sp_algebra(2), {{ShapeKind::SU11_VIA_RHO, 1, 1, 2}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_shape(sp_algebra(2), {}), std::invalid_argument);
    }
}
