#include <gtest/gtest.h>

#include "folcoh/folcoh.hpp"
#include "support/random.hpp"

using namespace folcoh;
using folcoh::testing::Rng;

namespace {

Polynomial P(const std::string& text, const Coords& c) { return parse_polynomial(text, c); }
IndexSet S(std::initializer_list<std::size_t> members) {
    IndexSet s;
    for (auto m : members) s = s.with(m);
    return s;
}

const WilliamsonBasis H({BlockKind::hyperbolic});
const WilliamsonBasis HH({BlockKind::hyperbolic, BlockKind::hyperbolic});

}  // namespace

TEST(IndexSet, SubsetsAndText) {
    auto subsets = IndexSet::subsets(3, 2);
    ASSERT_EQ(subsets.size(), 3u);
    EXPECT_EQ(subsets[0].str(), "1,2");
    EXPECT_EQ(subsets[1].str(), "1,3");
    EXPECT_EQ(subsets[2].str(), "2,3");
    EXPECT_EQ(IndexSet::subsets(3, 0).size(), 1u);
    EXPECT_EQ(S({0, 2}).count_below(1), 1u);
}

TEST(FoliatedComplex, DifferentialExamples) {
    auto c = HH.coords();
    FoliatedKForm basic(HH, 1);
    basic.set(S({0}), HH.hamiltonian(0));
    basic.set(S({1}), HH.hamiltonian(1));
    EXPECT_TRUE(d_foliated(basic).is_zero());

    FoliatedKForm a(HH, 1);
    a.set(S({1}), P("x1 y1 x2", c));
    EXPECT_TRUE(d_foliated(a).component(S({0, 1})).is_zero());

    FoliatedKForm g = FoliatedKForm::function(HH, P("x1", c));
    FoliatedKForm dg = d_foliated(g);
    EXPECT_EQ(dg.component(S({0})), P("-x1", c));
    EXPECT_TRUE(d_foliated(dg).is_zero());

    WilliamsonBasis he({BlockKind::hyperbolic, BlockKind::elliptic});
    FoliatedKForm b(he, 1);
    b.set(S({0}), P("x1 y2", he.coords()));
    b.set(S({1}), P("x2", he.coords()));
    // d b (X1, X2) = X1(x2) - X2(x1 y2) = -2 x1 x2
    EXPECT_EQ(d_foliated(b).component(S({0, 1})), P("-2 x1 x2", he.coords()));
}

TEST(FoliatedComplex, WellDefinedExamples) {
    auto c = HH.coords();
    FoliatedKForm constant(HH, 1);
    constant.set(S({0}), P("1", c));
    auto bad = check_well_defined(constant);
    EXPECT_FALSE(bad);
    EXPECT_EQ(*bad.violation, std::make_pair(S({0}), std::size_t{0}));
    EXPECT_THROW(d_foliated(constant), IllFormedForm);

    FoliatedKForm fine(HH, 1);
    fine.set(S({0}), P("x1", c));
    EXPECT_TRUE(check_well_defined(fine));

    FoliatedKForm top(HH, 2);
    top.set(S({0, 1}), P("x1", c));
    auto v = check_well_defined(top);
    EXPECT_FALSE(v);
    EXPECT_EQ(*v.violation, std::make_pair(S({0, 1}), std::size_t{1}));
}

TEST(FoliatedComplex, LieDerivativeExamples) {
    FoliatedKForm b(H, 1);
    b.set(S({0}), H.hamiltonian(0));
    EXPECT_TRUE(lie_derivative(b, 0).is_zero());
    FoliatedKForm x(H, 1);
    x.set(S({0}), P("x1", H.coords()));
    EXPECT_EQ(lie_derivative(x, 0).component(S({0})), P("-x1", H.coords()));
    FoliatedKForm top(HH, 2);
    top.set(S({0, 1}), HH.hamiltonian(0) * HH.hamiltonian(1));
    EXPECT_TRUE(lie_derivative(top, 0).is_zero());
    EXPECT_TRUE(lie_derivative(top, 1).is_zero());
}

TEST(FoliatedComplex, MatrixExampleHyperbolic) {
    GradedBasis domain(H, 0, 2);
    GradedBasis codomain(H, 1, 2);
    ASSERT_EQ(domain.size(), 3u);
    ASSERT_EQ(codomain.size(), 3u);
    auto c = H.coords();
    EXPECT_EQ(domain.form(0).component(IndexSet{}), P("x1^2", c));
    EXPECT_EQ(domain.form(1).component(IndexSet{}), P("x1 y1", c));
    EXPECT_EQ(domain.form(2).component(IndexSet{}), P("y1^2", c));
    ExactMatrix m = assemble_matrix(0, 2, H);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t col = 0; col < 3; ++col) {
            Scalar expected = r == col ? Scalar(std::array<long, 3>{-2, 0, 2}[r]) : Scalar(0);
            EXPECT_EQ(m.at(r, col), expected);
        }
    EXPECT_EQ(m.rank(), 2u);
}

TEST(FoliatedComplex, TopDegreeHasNoRows) {
    ExactMatrix m = assemble_matrix(2, 4, HH);
    EXPECT_EQ(m.rows(), 0u);
    EXPECT_EQ(m.rank(), 0u);
    EXPECT_EQ(m.cols(), GradedBasis(HH, 2, 4).size());
}

TEST(FoliatedComplex, GradedBasisFiltersSigma) {
    // 1-forms of degree 0 are never admissible; at degree 1 only the block's own coordinates survive
    EXPECT_EQ(GradedBasis(HH, 1, 0).size(), 0u);
    EXPECT_EQ(GradedBasis(HH, 1, 1).size(), 4u);
    WilliamsonBasis ff({BlockKind::focus_focus});
    EXPECT_EQ(GradedBasis(ff, 1, 1).size(), 8u);
    EXPECT_EQ(GradedBasis(ff, 2, 1).size(), 4u);
}

TEST(FoliatedComplex, MatrixAgreesWithDirectDifferential) {
    for (const auto& basis : folcoh::testing::all_types(3)) {
        for (std::size_t k = 0; k < basis.n(); ++k) {
            for (Monomial::Exponent d : {1u, 2u, 3u}) {
                GradedBasis domain(basis, k, d), codomain(basis, k + 1, d);
                ExactMatrix m = assemble_matrix(domain, codomain, basis);
                for (std::size_t col = 0; col < domain.size(); ++col) {
                    FoliatedKForm image = d_foliated(domain.form(col));
                    ASSERT_EQ(codomain.form_from(m.column(col)), image) << basis.type_string();
                    ASSERT_EQ(codomain.coordinates(image), m.column(col));
                }
            }
        }
    }
}

TEST(FoliatedComplex, SquareIsZeroOnRandomForms) {
    Rng rng;
    auto types = folcoh::testing::all_types(3);
    int checked = 0;
    for (int round = 0; checked < 600; ++round) {
        for (const auto& basis : types) {
            std::size_t k = rng.index(basis.n() + 1);
            unsigned d = static_cast<unsigned>(rng.integer(0, 8));
            FoliatedKForm alpha = folcoh::testing::random_form(rng, basis, k, d);
            ASSERT_TRUE(check_well_defined(alpha));
            FoliatedKForm da = d_foliated(alpha);
            ASSERT_TRUE(check_well_defined(da)) << basis.type_string();
            for (const auto& [subset, p] : da.components()) ASSERT_TRUE(p.is_homogeneous() && *p.degree() == d);
            ASSERT_TRUE(d_foliated(da).is_zero()) << basis.type_string();
            ++checked;
        }
    }
}

TEST(FoliatedComplex, LieDerivativeCommutesWithDifferential) {
    Rng rng;
    for (const auto& basis : folcoh::testing::all_types(3)) {
        for (int t = 0; t < 20; ++t) {
            std::size_t k = rng.index(basis.n() + 1);
            FoliatedKForm alpha = folcoh::testing::random_form(rng, basis, k, static_cast<unsigned>(rng.integer(1, 5)));
            for (std::size_t i = 0; i < basis.n(); ++i) {
                EXPECT_EQ(lie_derivative(d_foliated(alpha), i), d_foliated(lie_derivative(alpha, i)));
                if (k > 0) {
                    // Cartan: L_i = d i_i + i_i d
                    EXPECT_EQ(lie_derivative(alpha, i),
                              d_foliated(contract(alpha, i)) + contract(d_foliated(alpha), i));
                }
            }
        }
    }
}

TEST(FoliatedComplex, LeibnizRule) {
    Rng rng;
    for (const auto& basis : folcoh::testing::all_types(3)) {
        for (int t = 0; t < 15; ++t) {
            std::size_t ka = rng.index(basis.n() + 1), kb = rng.index(basis.n() + 1 - ka);
            FoliatedKForm a = folcoh::testing::random_form(rng, basis, ka, static_cast<unsigned>(rng.integer(1, 3)));
            FoliatedKForm b = folcoh::testing::random_form(rng, basis, kb, static_cast<unsigned>(rng.integer(1, 3)));
            FoliatedKForm lhs = d_foliated(wedge(a, b));
            FoliatedKForm rhs = wedge(d_foliated(a), b);
            FoliatedKForm second = wedge(a, d_foliated(b));
            if (ka % 2 == 1) {
                rhs -= second;
            } else {
                rhs += second;
            }
            EXPECT_EQ(lhs, rhs);
        }
    }
}
