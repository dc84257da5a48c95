#include "skewproj/exactnum.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace skewproj;
using skewproj::testkit::Rng;

namespace {

GroupElement parse(const std::string& s, GeneratorBasis& b) { return parse_scalar(s, b); }

}  // namespace

TEST(Factorize, SmallAndLarge) {
    EXPECT_EQ(factorize(360), (std::map<std::uint64_t, long long>{{2, 3}, {3, 2}, {5, 1}}));
    EXPECT_EQ(factorize(1), (std::map<std::uint64_t, long long>{}));
    // 2^61 - 1 is prime; the product of two 32-bit primes exercises Pollard rho.
    EXPECT_TRUE(detail::is_prime(2305843009213693951ULL));
    EXPECT_EQ(factorize(4294967291ULL * 4294967279ULL),
              (std::map<std::uint64_t, long long>{{4294967279ULL, 1}, {4294967291ULL, 1}}));
}

TEST(ParseScalar, RationalsFactorOverPrimes) {
    GeneratorBasis b;
    GroupElement x = parse("-3/4", b);
    EXPECT_EQ(x.sign(), -1);
    EXPECT_EQ(render(x, b), "-3/4");
    EXPECT_EQ(render(parse("12/18", b), b), "2/3");
    EXPECT_TRUE(parse("7/7", b).is_one());
    EXPECT_EQ(render(parse("1", b), b), "1");
    EXPECT_EQ(render(parse("-1", b), b), "-1");
}

TEST(ParseScalar, SymbolsAndProducts) {
    GeneratorBasis b;
    GroupElement x = parse("2*g^3*h^-1", b);
    EXPECT_EQ(render(x, b), "2*g^3*h^-1");
    EXPECT_EQ(render(parse("g*g^-1", b), b), "1");
    EXPECT_EQ(render(parse("-g^2", b), b), "-g^2");
    EXPECT_EQ(render(parse(" 3 * x_1 ", b), b), "3*x_1");
    EXPECT_EQ(render(parse("-1*-1", b), b), "1");
}

TEST(ParseScalar, Errors) {
    GeneratorBasis b;
    auto kind_of = [&](const std::string& s) {
        try {
            parse(s, b);
        } catch (const Error& e) {
            return e.kind();
        }
        ADD_FAILURE() << "no error for " << s;
        return ErrorKind::Unsupported;
    };
    EXPECT_EQ(kind_of("0"), ErrorKind::Domain);
    EXPECT_EQ(kind_of("3/0"), ErrorKind::Domain);
    EXPECT_EQ(kind_of("g^1/2"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("1.5"), ErrorKind::Parse);
    EXPECT_EQ(kind_of(""), ErrorKind::Parse);
    EXPECT_EQ(kind_of("2**3"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("2^3"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("99999999999999999999"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("_g"), ErrorKind::Parse);
}

TEST(GroupElement, InverseExamples) {
    GeneratorBasis b;
    EXPECT_EQ(render(inv(parse("2", b)), b), "1/2");
    EXPECT_TRUE(inv(GroupElement::one()).is_one());
    EXPECT_EQ(render(inv(parse("-1/4", b)), b), "-4");
}

TEST(GroupElement, IsOneIsExact) {
    EXPECT_TRUE(GroupElement(1, {0, 0, 0}).is_one());
    EXPECT_FALSE(GroupElement::minus_one().is_one());
    EXPECT_FALSE(GroupElement(1, {0, 1}).is_one());
    EXPECT_EQ(GroupElement(1, {3, 0, 0}), GroupElement(1, {3}));
}

TEST(GroupElement, PowerOverflowIsReported) {
    GroupElement x = GroupElement::power_of(0, INT64_MAX / 2 + 1);
    EXPECT_THROW(mul(x, x), Error);
    EXPECT_THROW(pow(x, 3), Error);
}

TEST(EmbedRational, Examples) {
    GeneratorBasis b;
    EXPECT_EQ(embed_rational(parse("8", b), b, {}), Rational(8));
    EXPECT_EQ(embed_rational(GroupElement::one(), b, {}), Rational(1));
    GroupElement g = parse("-g1", b);
    EXPECT_EQ(embed_rational(g, b, {{"g1", Rational(5)}}), Rational(-5));
    EXPECT_EQ(embed_rational(parse("g1^-2*3", b), b, {{"g1", Rational(2, 3)}}), Rational(27, 4));
}

TEST(EmbedRational, Errors) {
    GeneratorBasis b;
    GroupElement g = parse("g", b);
    EXPECT_THROW(embed_rational(g, b, {}), Error);
    GroupElement two = parse("2", b);
    EXPECT_THROW(embed_rational(two, b, {{"2", Rational(3)}}), Error);
    EXPECT_EQ(embed_rational(two, b, {{"2", Rational(2)}}), Rational(2));
}

TEST(GeneratorBasis, AppendOnly) {
    GeneratorBasis b;
    GroupElement x = parse("6*g", b);
    std::string before = render(x, b);
    parse("5*h*7", b);
    EXPECT_EQ(render(x, b), before);
    EXPECT_THROW(b.intern_prime(9), Error);
}

// Property tests over random elements.

class GroupLaws : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GroupLaws, AbelianGroupAxioms) {
    Rng rng(GetParam());
    for (int trial = 0; trial < 200; ++trial) {
        auto a = testkit::random_element(rng, 4, 6, true);
        auto b = testkit::random_element(rng, 4, 6, true);
        auto c = testkit::random_element(rng, 4, 6, true);
        EXPECT_EQ(mul(a, b), mul(b, a));
        EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
        EXPECT_EQ(inv(inv(a)), a);
        EXPECT_EQ(mul(a, GroupElement::one()), a);
        EXPECT_TRUE(mul(a, inv(a)).is_one());
        EXPECT_EQ(inv(a).sign(), a.sign());
        EXPECT_EQ(pow(a, 3), mul(a, mul(a, a)));
    }
}

TEST_P(GroupLaws, RenderParseRoundTrip) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3, 5}, {"g", "h_2"});
    for (int trial = 0; trial < 300; ++trial) {
        auto a = testkit::random_element(rng, 5, 5, true);
        GeneratorBasis copy = b;
        std::string text = render(a, b);
        EXPECT_EQ(parse_scalar(text, copy), a) << text;
        EXPECT_EQ(copy, b);
    }
}

TEST_P(GroupLaws, EmbedIsHomomorphism) {
    Rng rng(GetParam());
    GeneratorBasis b = testkit::basis_of({2, 3}, {"g", "h"});
    Assignment asg{{"g", Rational(-7, 2)}, {"h", Rational(11)}};
    for (int trial = 0; trial < 200; ++trial) {
        auto a = testkit::random_element(rng, 4, 4, true);
        auto c = testkit::random_element(rng, 4, 4, true);
        EXPECT_EQ(embed_rational(mul(a, c), b, asg), embed_rational(a, b, asg) * embed_rational(c, b, asg));
        EXPECT_EQ(embed_rational(inv(a), b, asg), Rational(1) / embed_rational(a, b, asg));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GroupLaws, ::testing::Values(1u, 2u, 3u));
