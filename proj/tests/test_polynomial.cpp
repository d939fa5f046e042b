#include <gtest/gtest.h>

#include "folcoh/folcoh.hpp"
#include "support/random.hpp"

using namespace folcoh;
using folcoh::testing::Rng;

namespace {

Coords xy(std::size_t n) { return CoordinateSystem::symplectic(n); }
Polynomial P(const std::string& text, const Coords& c) { return parse_polynomial(text, c); }

}  // namespace

TEST(Polynomial, PartialDerivative) {
    auto c = xy(1);
    EXPECT_EQ(P("x1^2 y1", c).partial(0), P("2 x1 y1", c));
}

TEST(Polynomial, DifferenceOfSquares) {
    auto c = xy(1);
    EXPECT_EQ(P("x1 + y1", c) * P("x1 - y1", c), P("x1^2 - y1^2", c));
}

TEST(Polynomial, AdditiveInverseIsEmpty) {
    auto c = xy(2);
    Polynomial p = P("3 x1 y2 - 1/2 x2^3 + 7", c);
    Polynomial zero = p + p * Scalar(-1);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.size(), 0u);
    EXPECT_FALSE(zero.degree().has_value());
}

TEST(Polynomial, CoordinateMismatchIsRejected) {
    auto a = xy(1);
    auto b = xy(2);
    EXPECT_THROW(P("x1", a) + P("x1", b), CoordinateMismatch);
    EXPECT_THROW(P("x1", a) * P("x1", b), CoordinateMismatch);
    EXPECT_EQ(P("x1", a), P("x1", xy(1)));
}

TEST(Polynomial, HomogeneousParts) {
    auto c = xy(2);
    auto parts = P("1 + x1 + x1^2", c).homogeneous_parts();
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].first, 0u);
    EXPECT_EQ(parts[0].second, P("1", c));
    EXPECT_EQ(parts[1].second, P("x1", c));
    EXPECT_EQ(parts[2].second, P("x1^2", c));
    EXPECT_TRUE(Polynomial(c).homogeneous_parts().empty());
    auto mixed = P("x1 y1 + x2", c).homogeneous_parts();
    ASSERT_EQ(mixed.size(), 2u);
    EXPECT_EQ(mixed[0], std::make_pair(Monomial::Exponent{1}, P("x2", c)));
    EXPECT_EQ(mixed[1], std::make_pair(Monomial::Exponent{2}, P("x1 y1", c)));
}

TEST(Polynomial, GradedLexOrderInPrinting) {
    auto c = xy(1);
    EXPECT_EQ(to_string(P("y1^2 + x1 y1 + x1^2 + y1 + 1", c)), "1 + y1 + x1^2 + x1 y1 + y1^2");
    EXPECT_EQ(to_string(P("-x1 + 2", c)), "2 - x1");
    EXPECT_EQ(to_string(P("-x1", c)), "-x1");
    EXPECT_EQ(to_string(Polynomial(c)), "0");
}

TEST(Polynomial, ParserAcceptsVariants) {
    auto c = xy(2);
    EXPECT_EQ(P(" 3/6*x1 * y2^2 ", c), P("1/2 x1 y2^2", c));
    EXPECT_EQ(P("(1+2*I) x1 + (-I) y1", c).coefficient(Monomial(std::vector<Monomial::Exponent>{0, 1, 0, 0})),
              -Scalar::imaginary_unit());
    EXPECT_EQ(P("x1 x1", c), P("x1^2", c));
    EXPECT_THROW(P("x3", c), ParseError);
    EXPECT_THROW(P("x1 +", c), ParseError);
    EXPECT_THROW(P("2 ^ x1", c), ParseError);
}

TEST(Polynomial, ParsePrintRoundTripIsBitExact) {
    Rng rng;
    auto c = xy(3);
    for (int t = 0; t < 300; ++t) {
        Polynomial p = rng.polynomial(c, 6);
        if (rng.coin(0.3)) p = p * Scalar(mpq_class(1, 3), mpq_class(rng.integer(-3, 3)));
        std::string text = to_string(p);
        Polynomial back = P(text, c);
        EXPECT_EQ(back, p) << text;
        EXPECT_EQ(to_string(back), text);
    }
}

TEST(Polynomial, RingAxioms) {
    Rng rng;
    auto c = xy(2);
    for (int t = 0; t < 200; ++t) {
        Polynomial a = rng.polynomial(c, 4), b = rng.polynomial(c, 4), d = rng.polynomial(c, 4);
        EXPECT_EQ((a * b) * d, a * (b * d));
        EXPECT_EQ(a * (b + d), a * b + a * d);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(Polynomial, LeibnizRule) {
    Rng rng;
    auto c = xy(2);
    for (int t = 0; t < 100; ++t) {
        Polynomial a = rng.polynomial(c, 4), b = rng.polynomial(c, 4);
        std::size_t s = rng.index(4);
        EXPECT_EQ((a * b).partial(s), a.partial(s) * b + a * b.partial(s));
    }
}

TEST(Chart, ComplexifyExamples) {
    WilliamsonBasis e({BlockKind::elliptic});
    ComplexChart chart(e);
    Polynomial x1 = P("x1", e.coords());
    EXPECT_EQ(chart.complexify(x1), P("1/2 z1 + 1/2 zb1", chart.coords()));
    EXPECT_EQ(chart.complexify(e.hamiltonian(0)), P("z1 zb1", chart.coords()));
    EXPECT_EQ(chart.realify(P("z1 zb1", chart.coords())), e.hamiltonian(0));
}

TEST(Chart, FocusFocusProductRealifiesToHamiltonians) {
    WilliamsonBasis ff({BlockKind::focus_focus});
    ComplexChart chart(ff);
    Polynomial u_vb = P("u1 vb1", chart.coords());
    Polynomial expected = ff.hamiltonian(0) - ff.hamiltonian(1) * Scalar::imaginary_unit();
    EXPECT_EQ(chart.decomplexify(u_vb), expected);
    EXPECT_EQ(to_string(chart.decomplexify(u_vb)), to_string(P("x1 y1 + x2 y2 + (-I) x1 y2 + (I) x2 y1", ff.coords())));
    EXPECT_THROW(chart.realify(u_vb), PreconditionViolation);
}

TEST(Chart, RoundTripOnRandomRealPolynomials) {
    Rng rng;
    int checked = 0;
    auto types = folcoh::testing::all_types(3);
    while (checked < 1000) {
        for (const auto& basis : types) {
            ComplexChart chart(basis);
            Polynomial p = rng.polynomial(basis.coords(), 8, 5);
            Polynomial c = chart.complexify(p);
            EXPECT_TRUE(chart.is_conjugation_symmetric(c));
            EXPECT_EQ(chart.realify(c), p);
            if (++checked >= 1000) break;
        }
    }
}

TEST(Sigma, VanishingExamples) {
    WilliamsonBasis hh({BlockKind::hyperbolic, BlockKind::hyperbolic});
    auto c = hh.coords();
    EXPECT_TRUE(hh.vanishes_on_sigma(0, P("x1 y1", c)));
    EXPECT_FALSE(hh.vanishes_on_sigma(0, P("1 + x1", c)));
    EXPECT_FALSE(hh.vanishes_on_sigma(0, P("x2", c)));
}

TEST(Sigma, AgreesWithSubstitutionOracle) {
    Rng rng;
    for (const auto& basis : folcoh::testing::all_types(3)) {
        auto c = basis.coords();
        for (int t = 0; t < 40; ++t) {
            Polynomial p = rng.polynomial(c, 4, 4);
            if (rng.coin()) p = p * P(c->name(rng.index(c->size())), c);
            for (std::size_t i = 0; i < basis.n(); ++i) {
                std::vector<Polynomial> images;
                auto slots = basis.block_of(i).slots();
                for (std::size_t s = 0; s < c->size(); ++s) {
                    bool zeroed = std::find(slots.begin(), slots.end(), s) != slots.end();
                    images.push_back(zeroed ? Polynomial(c) : Polynomial::variable(c, s));
                }
                bool oracle = p.substitute(images, c).is_zero();
                EXPECT_EQ(basis.vanishes_on_sigma(i, p), oracle);
            }
        }
    }
}
