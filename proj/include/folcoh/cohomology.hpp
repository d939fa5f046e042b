#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "folcoh/decompose.hpp"
#include "folcoh/foliated_complex.hpp"

namespace folcoh {

/// Cohomology of one (form degree k, polynomial degree d) slice.
struct CohomologySlice {
    std::size_t k = 0;
    Monomial::Exponent d = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_image_from_below = 0;
    std::size_t dim_h = 0;
    std::vector<FoliatedKForm> generators;
    std::optional<std::size_t> oracle_count;  // empty when the type has focus-focus blocks

    bool oracle_matches() const { return !oracle_count || *oracle_count == dim_h; }
};

struct CohomologyReport {
    WilliamsonBasis basis;
    std::vector<CohomologySlice> slices;

    bool has_oracle() const { return basis.focus_focus_count() == 0; }
    bool all_match() const {
        return std::all_of(slices.begin(), slices.end(), [](const auto& s) { return s.oracle_matches(); });
    }
};

class NoOracle : public PreconditionViolation {
public:
    NoOracle() : PreconditionViolation("no oracle for k_f>0") {}
};

namespace detail {

/// Exponent vectors m in N^n with |m| = total.
inline std::vector<std::vector<unsigned>> h_exponents(std::size_t n, unsigned total) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> m(n, 0);
    auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
        if (slot + 1 == n) {
            m[slot] = left;
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m[slot] = e;
            self(self, slot + 1, left - e);
        }
    };
    if (n > 0) rec(rec, 0, total);
    return out;
}

/// h^m vanishes on Sigma_j iff some h of j's block appears in it.
inline bool h_monomial_vanishes_on(const WilliamsonBasis& basis, const std::vector<unsigned>& m, std::size_t j) {
    const Block& b = basis.block_of(j);
    for (std::size_t w = 0; w < b.width(); ++w)
        if (m[b.first + w] > 0) return true;
    return false;
}

}  // namespace detail

/// Combinatorial dimension of the (k, d) slice of cohomology for types
/// without focus-focus blocks: the number of pairs (J, m) with J a k-subset
/// and h^m a monomial in the h's of degree d with m_j >= 1 for j in J.
inline std::size_t oracle_dimension(const WilliamsonBasis& basis, std::size_t k, Monomial::Exponent d) {
    if (basis.focus_focus_count() > 0) throw NoOracle();
    if (k > basis.n() || d % 2 == 1) return 0;
    std::size_t count = 0;
    auto ms = detail::h_exponents(basis.n(), d / 2);
    for (IndexSet subset : IndexSet::subsets(basis.n(), k))
        for (const auto& m : ms) {
            auto members = subset.members();
            if (std::all_of(members.begin(), members.end(), [&](std::size_t j) { return m[j] >= 1; })) ++count;
        }
    return count;
}

/// Forms annihilated by every Lie derivative that span the (k, d) slice of
/// cohomology: component J equal to an h-monomial vanishing on each Sigma_j.
inline std::vector<FoliatedKForm> invariant_generators(const WilliamsonBasis& basis, std::size_t k,
                                                       Monomial::Exponent d) {
    std::vector<FoliatedKForm> out;
    if (k > basis.n() || d % 2 == 1) return out;
    std::vector<Polynomial> hs;
    for (std::size_t i = 0; i < basis.n(); ++i) hs.push_back(basis.hamiltonian(i));
    auto ms = detail::h_exponents(basis.n(), d / 2);
    for (IndexSet subset : IndexSet::subsets(basis.n(), k)) {
        auto members = subset.members();
        for (const auto& m : ms) {
            if (!std::all_of(members.begin(), members.end(),
                             [&](std::size_t j) { return detail::h_monomial_vanishes_on(basis, m, j); }))
                continue;
            Polynomial value = Polynomial::constant(basis.coords(), Scalar(1));
            for (std::size_t i = 0; i < basis.n(); ++i) value *= hs[i].pow(m[i]);
            FoliatedKForm form(basis, k);
            form.set(subset, std::move(value));
            out.push_back(std::move(form));
        }
    }
    return out;
}

/// Computes cohomology slices from exact ranks of the assembled d_F
/// matrices, caching ranks so neighbouring slices share work.
class CohomologyEngine {
public:
    explicit CohomologyEngine(WilliamsonBasis basis) : basis_(std::move(basis)) {}

    const WilliamsonBasis& basis() const noexcept { return basis_; }

    /// Rank of d_F : (k, d) -> (k+1, d).
    std::size_t rank(std::size_t k, Monomial::Exponent d) {
        auto key = std::make_pair(k, d);
        auto it = ranks_.find(key);
        if (it != ranks_.end()) return it->second;
        std::size_t r = k >= basis_.n() ? 0 : assemble_matrix(k, d, basis_).rank();
        ranks_.emplace(key, r);
        return r;
    }

    std::size_t dimension(std::size_t k, Monomial::Exponent d) {
        auto key = std::make_pair(k, d);
        auto it = dims_.find(key);
        if (it != dims_.end()) return it->second;
        std::size_t dim = GradedBasis(basis_, k, d).size();
        dims_.emplace(key, dim);
        return dim;
    }

    CohomologySlice slice(std::size_t k, Monomial::Exponent d) {
        if (k > basis_.n()) throw IndexOutOfRange("form degree", k, basis_.n() + 1);
        CohomologySlice s;
        s.k = k;
        s.d = d;
        s.dim_kernel = dimension(k, d) - rank(k, d);
        s.dim_image_from_below = k == 0 ? 0 : rank(k - 1, d);
        s.dim_h = s.dim_kernel - s.dim_image_from_below;
        s.generators = invariant_generators(basis_, k, d);
        if (basis_.focus_focus_count() == 0) s.oracle_count = oracle_dimension(basis_, k, d);
        return s;
    }

    CohomologyReport report(std::size_t k_min, std::size_t k_max, Monomial::Exponent d_min,
                            Monomial::Exponent d_max) {
        CohomologyReport out{basis_, {}};
        for (std::size_t k = k_min; k <= std::min(k_max, basis_.n()); ++k)
            for (auto d = d_min; d <= d_max; ++d) out.slices.push_back(slice(k, d));
        return out;
    }

private:
    WilliamsonBasis basis_;
    std::map<std::pair<std::size_t, Monomial::Exponent>, std::size_t> ranks_;
    std::map<std::pair<std::size_t, Monomial::Exponent>, std::size_t> dims_;
};

inline CohomologySlice cohomology(const WilliamsonBasis& basis, std::size_t k, Monomial::Exponent d) {
    return CohomologyEngine(basis).slice(k, d);
}

/// Raised when an operation needs a closed form; carries d_F(alpha).
class NotClosed : public PreconditionViolation {
public:
    explicit NotClosed(std::string what) : PreconditionViolation(std::move(what)) {}
};

template <class Form>
class NotClosedForm : public NotClosed {
public:
    explicit NotClosedForm(Form residual) : NotClosed("form is not closed"), residual_(std::move(residual)) {}
    const Form& residual() const noexcept { return residual_; }

private:
    Form residual_;
};

/// alpha = beta + d_F(zeta) with every Lie derivative of beta zero.
struct NormalFormSplit {
    FoliatedKForm beta;
    FoliatedKForm zeta;
};

/// Splits a closed k-form (k >= 1) by iterating the field decompositions in
/// order X_1, ..., X_n:
///   beta = P_1 ... P_n alpha,   zeta = sum_j i_j Q_j P_1 ... P_{j-1} alpha,
/// with P_j the kernel projection and Q_j the eigen-inverse along X_j, and
/// i_j contraction with the j-th generator.  Because the X_j commute,
/// d zeta = sum_j (1 - P_j) P_1 ... P_{j-1} alpha = alpha - beta.
inline NormalFormSplit normal_form_split(const FoliatedKForm& alpha) {
    const auto& basis = alpha.frame();
    if (alpha.degree() == 0) throw Error("normal form split needs a form of degree >= 1");
    FoliatedKForm residual = d_foliated(alpha);
    if (!residual.is_zero()) throw NotClosedForm<FoliatedKForm>(std::move(residual));

    ComplexChart chart(basis);
    std::map<IndexSet, Polynomial> current;
    for (const auto& [subset, p] : alpha.components()) current.emplace(subset, chart.complexify(p));

    // zeta accumulated in the chart, indexed by (k-1)-subsets
    std::map<IndexSet, Polynomial> zeta_chart;
    for (std::size_t j = 0; j < basis.n(); ++j) {
        for (auto& [subset, p] : current) {
            auto [kernel, potential] = split_along_field(chart, j, p);
            if (subset.contains(j) && !potential.is_zero()) {
                IndexSet rest = subset.without(j);
                auto [it, inserted] = zeta_chart.try_emplace(rest, chart.coords());
                if (rest.count_below(j) % 2 == 1) {
                    it->second -= potential;
                } else {
                    it->second += potential;
                }
            }
            p = std::move(kernel);
        }
    }

    NormalFormSplit out{FoliatedKForm(basis, alpha.degree()), FoliatedKForm(basis, alpha.degree() - 1)};
    for (const auto& [subset, p] : current) out.beta.set(subset, chart.realify(p));
    for (const auto& [subset, p] : zeta_chart) out.zeta.set(subset, chart.realify(p));
    if (!(out.beta + d_foliated(out.zeta) == alpha))
        throw VerificationFailure("normal form split does not reconstruct its input");
    return out;
}

struct ExactnessResult {
    bool exact = false;
    std::optional<FoliatedKForm> primitive;
};

/// Decides exactness of a closed k-form (k >= 1) by solving d_F zeta = alpha
/// in every homogeneous degree with exact linear algebra.
inline ExactnessResult is_exact(const FoliatedKForm& alpha) {
    const auto& basis = alpha.frame();
    if (alpha.degree() == 0) throw Error("exactness test needs a form of degree >= 1");
    FoliatedKForm residual = d_foliated(alpha);
    if (!residual.is_zero()) throw NotClosedForm<FoliatedKForm>(std::move(residual));

    std::map<Monomial::Exponent, FoliatedKForm> by_degree;
    for (const auto& [subset, p] : alpha.components())
        for (auto& [d, part] : p.homogeneous_parts()) {
            auto [it, inserted] = by_degree.try_emplace(d, basis, alpha.degree());
            it->second.set(subset, std::move(part));
        }

    FoliatedKForm primitive(basis, alpha.degree() - 1);
    for (const auto& [d, part] : by_degree) {
        GradedBasis domain(basis, alpha.degree() - 1, d);
        GradedBasis codomain(basis, alpha.degree(), d);
        ExactMatrix matrix = assemble_matrix(domain, codomain, basis);
        auto x = matrix.solve(codomain.coordinates(part));
        if (!x) return {false, std::nullopt};
        primitive += domain.form_from(*x);
    }
    return {true, std::move(primitive)};
}

}  // namespace folcoh
