#include "skewproj/skewalg.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace skewproj;
using skewproj::testkit::load_catalog;
using skewproj::testkit::Rng;

namespace {

std::string q_text(const ParameterMatrix& omega, std::initializer_list<std::size_t> one_based) {
    std::vector<std::size_t> c;
    for (auto v : one_based) c.push_back(v - 1);
    return render(q_cycle(omega, std::span<const std::size_t>(c)), omega.basis());
}

std::map<std::string, std::string> rendered_triples(const ParameterMatrix& omega) {
    std::map<std::string, std::string> out;
    for (const auto& [t, q] : all_triple_qnumbers(omega)) out[t.label()] = render(q, omega.basis());
    return out;
}

ParameterMatrix ones(std::size_t n) {
    return ParameterMatrix::from_upper({}, n, [](std::size_t, std::size_t) { return GroupElement::one(); });
}

}  // namespace

TEST(ParameterMatrix, RejectsBadTables) {
    GeneratorBasis b = testkit::basis_of({2});
    auto two = GroupElement::power_of(0, 1);
    EXPECT_THROW(ParameterMatrix(b, {{two, two}, {inv(two), GroupElement::one()}}), Error);
    EXPECT_THROW(ParameterMatrix(b, {{GroupElement::one(), two}, {two, GroupElement::one()}}), Error);
    EXPECT_THROW(ParameterMatrix(b, {{GroupElement::one()}}), Error);
}

TEST(QCycle, Examples) {
    auto ex1 = load_catalog("ex1-x");
    auto ex2 = load_catalog("ex2-x");
    EXPECT_EQ(q_text(ex1, {1, 2, 4}), "2");
    EXPECT_EQ(q_text(ones(5), {1, 3, 5, 2}), "1");
    EXPECT_EQ(q_text(ex2, {2, 3, 4}), "4");
    EXPECT_THROW(q_cycle(ex1, {0, 0, 1}), Error);
    EXPECT_THROW(q_cycle(ex1, {0, 4}), Error);
    EXPECT_THROW(q_cycle(ex1, {0}), Error);
}

TEST(QCycle, TripleTables) {
    using M = std::map<std::string, std::string>;
    EXPECT_EQ(rendered_triples(load_catalog("ex2-x")), (M{{"(123)", "1"}, {"(124)", "2"}, {"(134)", "8"}, {"(234)", "4"}}));
    EXPECT_EQ(rendered_triples(load_catalog("ex1-xprime")), (M{{"(123)", "1/2"}, {"(124)", "2"}, {"(134)", "1/2"}, {"(234)", "1/8"}}));
    EXPECT_EQ(rendered_triples(load_catalog("ex1-x")), (M{{"(123)", "1"}, {"(124)", "2"}, {"(134)", "2"}, {"(234)", "1"}}));
    EXPECT_EQ(rendered_triples(ones(4)), (M{{"(123)", "1"}, {"(124)", "1"}, {"(134)", "1"}, {"(234)", "1"}}));
    EXPECT_THROW(all_triple_qnumbers(ones(2)), Error);
}

TEST(CheckIsomorphism, Examples) {
    auto ex2 = load_catalog("ex2-x");
    auto ex2p = load_catalog("ex2-xprime");
    EXPECT_EQ(check_isomorphism(ex2, ex2), identity_permutation(4));
    EXPECT_FALSE(check_isomorphism(ex2, ex2p));
    Permutation s0{2, 0, 3, 1};
    auto found = check_isomorphism(ex2, permuted(ex2, s0));
    ASSERT_TRUE(found);
    EXPECT_TRUE(verify_iso_witness(ex2, permuted(ex2, s0), *found));
    EXPECT_THROW(check_isomorphism(ex2, ones(3)), Error);
}

TEST(CheckGraded, Examples) {
    GeneratorBasis basis;
    auto a = load_catalog("ex2-x", basis);
    auto ap = load_catalog("ex2-xprime", basis);
    auto w = check_graded_equivalence(a, a);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->sigma, identity_permutation(4));
    for (const auto& m : w->m) EXPECT_TRUE(m.is_one());
    EXPECT_FALSE(check_graded_equivalence(a, ap));
    EXPECT_FALSE(check_graded_via_qnumbers(a, ap));
    EXPECT_TRUE(check_graded_via_qnumbers(a, a));
    EXPECT_FALSE(verify_graded_witness(a, ap, GradedWitness{identity_permutation(4), std::vector<GroupElement>(4)}));
}

TEST(CheckGraded, CatalogPairsCarryVerifiedWitnesses) {
    for (const std::string pair : {"graded-pair1", "graded-pair2"}) {
        GeneratorBasis basis;
        auto a = load_catalog(pair + "-a", basis);
        auto b = load_catalog(pair + "-b", basis);
        WitnessFile wf = witness_from_json(Json::parse(find_catalog_entry(pair + "-witness")->json), basis);
        a = a.with_basis(basis);
        b = b.with_basis(basis);
        EXPECT_TRUE(verify_graded_witness(a, b, GradedWitness{*wf.sigma, *wf.m})) << pair;
        auto found = check_graded_equivalence(a, b);
        ASSERT_TRUE(found) << pair;
        EXPECT_TRUE(verify_graded_witness(a, b, *found));
        EXPECT_TRUE(check_graded_via_qnumbers(a, b));
    }
}

TEST(CheckGraded, ScaledCopyOfTable) {
    GeneratorBasis b = testkit::basis_of({2, 3});
    Rng rng(7);
    auto omega = testkit::random_omega(rng, b, 4, 2, 3, true);
    std::vector<GroupElement> m0 = testkit::random_scale(rng, 4, 2, 2, true);
    auto w = check_graded_equivalence(omega, scaled(omega, m0));
    ASSERT_TRUE(w);
    EXPECT_TRUE(verify_graded_witness(omega, scaled(omega, m0), *w));
    EXPECT_EQ(w->sigma, identity_permutation(4));
    EXPECT_TRUE(w->m[0].is_one());
}

TEST(CheckGraded, TwoVariablesAlwaysTwistOfPolynomialRing) {
    GeneratorBasis b;
    GroupElement x = parse_scalar("-5/3*g", b);
    auto omega = ParameterMatrix::from_upper(b, 2, [&](std::size_t, std::size_t) { return x; });
    auto w = check_graded_equivalence(omega, ones(2).with_basis(b));
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->m[0].is_one());
    EXPECT_EQ(w->m[1], x);
    EXPECT_TRUE(check_graded_via_qnumbers(omega, ones(2).with_basis(b)));
}

TEST(Permutations, SearchGuard) {
    EXPECT_THROW(search_permutations(11, [](const Permutation&) { return true; }), Error);
    EXPECT_EQ(inverse(Permutation{2, 0, 1}), (Permutation{1, 2, 0}));
}

// Property tests.

class SkewalgProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SkewalgProperties, CyclicInvarianceAndReversal) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3}, {"g"});
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng() % 5;
        auto omega = testkit::random_omega(rng, b, n, 3, 4, true);
        std::size_t k = 2 + rng() % (n - 1);
        Permutation p = testkit::random_permutation(rng, n);
        std::vector<std::size_t> c(p.begin(), p.begin() + static_cast<long>(k));
        GroupElement q = q_cycle(omega, c);
        for (std::size_t r = 0; r < k; ++r) {
            std::rotate(c.begin(), c.begin() + 1, c.end());
            EXPECT_EQ(q_cycle(omega, c), q);
        }
        std::reverse(c.begin(), c.end());
        EXPECT_EQ(q_cycle(omega, c), inv(q));
    }
}

TEST_P(SkewalgProperties, LongCyclesFactorThroughTriples) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3, 5});
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 4 + rng() % 3;
        auto omega = testkit::random_omega(rng, b, n, 3, 5, true);
        Permutation p = testkit::random_permutation(rng, n);
        std::size_t k = 3 + rng() % (n - 3);
        std::vector<std::size_t> c(p.begin(), p.begin() + static_cast<long>(k));
        std::size_t outside = p[k];
        GroupElement product;
        for (std::size_t t = 0; t < k; ++t) product = mul(product, q_cycle(omega, {outside, c[t], c[(t + 1) % k]}));
        EXPECT_EQ(q_cycle(omega, c), product);
    }
}

TEST_P(SkewalgProperties, DecidersAgreeAndAreSymmetric) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3});
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng() % 4;
        auto omega = testkit::random_omega(rng, b, n, 2, 1, true);
        ParameterMatrix other = omega;
        switch (trial % 3) {
        case 0: other = testkit::random_omega(rng, b, n, 2, 1, true); break;
        case 1:
            other = permuted(scaled(omega, testkit::random_scale(rng, n, 2, 2, true)), testkit::random_permutation(rng, n));
            break;
        default:
            other = permuted(scaled(omega, testkit::random_scale(rng, n, 2, 2, true)), testkit::random_permutation(rng, n));
            if (n >= 2) other = testkit::perturbed(other, 0, 1, GroupElement::power_of(0, 1));
        }
        auto w = check_graded_equivalence(omega, other);
        EXPECT_EQ(w.has_value(), check_graded_via_qnumbers(omega, other));
        EXPECT_EQ(w.has_value(), check_graded_equivalence(other, omega).has_value());
        if (w) { EXPECT_TRUE(verify_graded_witness(omega, other, *w)); }
        if (trial % 3 == 1) { EXPECT_TRUE(w); }
    }
}

TEST_P(SkewalgProperties, IsomorphismImpliesGradedWithUnitScale) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2});
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + rng() % 3;
        auto omega = testkit::random_omega(rng, b, n, 1, 2, true);
        auto other = permuted(omega, testkit::random_permutation(rng, n));
        auto sigma = check_isomorphism(omega, other);
        ASSERT_TRUE(sigma);
        EXPECT_TRUE(verify_iso_witness(omega, other, *sigma));
        EXPECT_TRUE(check_graded_equivalence(omega, other));
        EXPECT_TRUE(verify_graded_witness(omega, other, GradedWitness{*sigma, std::vector<GroupElement>(n)}));
    }
}

TEST_P(SkewalgProperties, RelabelingTransportsWitnesses) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3});
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + rng() % 3;
        auto omega = testkit::random_omega(rng, b, n, 2, 1, true);
        auto other = trial % 2 ? testkit::random_omega(rng, b, n, 2, 1, true)
                               : permuted(scaled(omega, testkit::random_scale(rng, n, 2, 1, false)), testkit::random_permutation(rng, n));
        Permutation s0 = testkit::random_permutation(rng, n);
        auto relabeled = permuted(omega, s0);
        auto w = check_graded_equivalence(omega, other);
        auto w2 = check_graded_equivalence(relabeled, other);
        EXPECT_EQ(w.has_value(), w2.has_value());
        EXPECT_EQ(check_graded_via_qnumbers(omega, other), check_graded_via_qnumbers(relabeled, other));
        EXPECT_EQ(check_isomorphism(omega, other).has_value(), check_isomorphism(relabeled, other).has_value());
        if (w) {
            // (sigma, m) for omega becomes (sigma o s0^-1, m o s0^-1) for s0 . omega.
            Permutation si = inverse(s0);
            GradedWitness moved{Permutation(n), std::vector<GroupElement>(n)};
            for (std::size_t i = 0; i < n; ++i) {
                moved.sigma[i] = w->sigma[si[i]];
                moved.m[i] = w->m[si[i]];
            }
            EXPECT_TRUE(verify_graded_witness(relabeled, other, moved));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SkewalgProperties, ::testing::Values(11u, 12u, 13u));

TEST(Quiver, Counts) {
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
        auto q = quiver_presentation(ones(n));
        EXPECT_EQ(q.vertex_count, n);
        EXPECT_EQ(q.arrows.size(), n * (n - 1));
        EXPECT_EQ(q.relations.size(), n * (n - 1) / 2 * (n - 2));
    }
}

TEST(Quiver, ScalarsAreTheParameters) {
    auto omega = load_catalog("ex1-xprime");
    for (const auto& r : quiver_presentation(omega).relations) EXPECT_EQ(r.scalar, omega.at(r.i - 1, r.j - 1));
}

TEST(Quiver, GoldenFourVariables) {
    auto omega = load_catalog("ex1-xprime");
    std::ifstream in(std::string(SKEWPROJ_GOLDEN_DIR) + "/quiver_ex1-xprime.txt");
    ASSERT_TRUE(in);
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(render_quiver(quiver_presentation(omega), omega.basis()), expected.str());
}
