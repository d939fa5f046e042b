#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "folcoh/exact_matrix.hpp"
#include "folcoh/form.hpp"
#include "folcoh/williamson.hpp"

namespace folcoh {

/// Foliated k-form on the singular foliation spanned by a Williamson basis.
/// Well-defined forms satisfy: component J vanishes on Sigma_j for all j in J.
using FoliatedKForm = KForm<WilliamsonBasis>;

struct WellDefinedness {
    bool ok = true;
    std::optional<std::pair<IndexSet, std::size_t>> violation;  // (J, j)

    explicit operator bool() const { return ok; }
};

inline WellDefinedness check_well_defined(const FoliatedKForm& alpha) {
    for (const auto& [subset, p] : alpha.components())
        for (auto j : subset.members())
            if (!alpha.frame().vanishes_on_sigma(j, p)) return {false, std::make_pair(subset, j)};
    return {};
}

class IllFormedForm : public PreconditionViolation {
public:
    IllFormedForm(IndexSet subset, std::size_t j)
        : PreconditionViolation("component " + subset.str() + " does not vanish on Sigma_" + std::to_string(j + 1)),
          subset_(subset),
          field_(j) {}

    IndexSet subset() const noexcept { return subset_; }
    std::size_t field() const noexcept { return field_; }

private:
    IndexSet subset_;
    std::size_t field_;
};

inline void require_well_defined(const FoliatedKForm& alpha) {
    auto check = check_well_defined(alpha);
    if (!check) throw IllFormedForm(check.violation->first, check.violation->second);
}

/// d_F on the singular complex.  Rejects ill-formed input.
inline FoliatedKForm d_foliated(const FoliatedKForm& alpha) {
    require_well_defined(alpha);
    return exterior_derivative(alpha);
}

/// Every exponent vector of total degree d in `vars` variables, in
/// ascending graded-lex order (x1^d first).
inline std::vector<Monomial> monomials_of_degree(std::size_t vars, Monomial::Exponent d) {
    std::vector<Monomial> out;
    if (vars == 0) {
        if (d == 0) out.emplace_back(0);
        return out;
    }
    Monomial m(vars);
    auto rec = [&](auto&& self, std::size_t slot, Monomial::Exponent left) -> void {
        if (slot + 1 == vars) {
            m[slot] = left;
            out.push_back(m);
            return;
        }
        for (Monomial::Exponent e = left + 1; e-- > 0;) {
            m[slot] = e;
            self(self, slot + 1, left - e);
        }
        m[slot] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// One element of a graded basis: a single subset carrying a single monomial.
struct ElementaryForm {
    IndexSet subset;
    Monomial monomial;

    friend bool operator==(const ElementaryForm&, const ElementaryForm&) = default;
};

/// Ordered basis of the homogeneous-degree-d slice of admissible k-forms.
class GradedBasis {
public:
    GradedBasis(const WilliamsonBasis& basis, std::size_t k, Monomial::Exponent d)
        : basis_(basis), k_(k), d_(d) {
        if (k > basis.n()) return;  // zero space
        auto monomials = monomials_of_degree(2 * basis.n(), d);
        for (IndexSet subset : IndexSet::subsets(basis.n(), k)) {
            std::vector<std::vector<std::size_t>> sigma_slots;
            for (auto j : subset.members()) sigma_slots.push_back(basis.block_of(j).slots());
            for (const auto& m : monomials) {
                bool admissible = std::all_of(sigma_slots.begin(), sigma_slots.end(), [&](const auto& slots) {
                    return std::any_of(slots.begin(), slots.end(), [&](std::size_t s) { return m[s] > 0; });
                });
                if (!admissible) continue;
                index_.emplace(key(subset, m), elements_.size());
                elements_.push_back({subset, m});
            }
        }
    }

    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t form_degree() const noexcept { return k_; }
    Monomial::Exponent poly_degree() const noexcept { return d_; }
    const std::vector<ElementaryForm>& elements() const noexcept { return elements_; }
    const ElementaryForm& operator[](std::size_t i) const { return elements_.at(i); }

    FoliatedKForm form(std::size_t i) const {
        const auto& e = elements_.at(i);
        FoliatedKForm out(basis_, k_);
        out.set(e.subset, Polynomial::term(basis_.coords(), e.monomial, Scalar(1)));
        return out;
    }

    std::optional<std::size_t> index_of(IndexSet subset, const Monomial& m) const {
        auto it = index_.find(key(subset, m));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Coordinates of a degree-k form whose components are homogeneous of
    /// degree d and admissible; throws if the form leaves the slice.
    SparseVector coordinates(const FoliatedKForm& alpha) const {
        if (alpha.degree() != k_) throw Error("form degree does not match graded basis");
        SparseVector out;
        for (const auto& [subset, p] : alpha.components())
            for (const auto& [m, c] : p.terms()) {
                auto idx = index_of(subset, m);
                if (!idx) throw Error("form component " + subset.str() + " leaves the graded slice");
                out[*idx] = c;
            }
        return out;
    }

    FoliatedKForm form_from(const SparseVector& coords) const {
        FoliatedKForm out(basis_, k_);
        for (const auto& [i, c] : coords) {
            const auto& e = elements_.at(i);
            out.add(e.subset, Polynomial::term(basis_.coords(), e.monomial, c));
        }
        return out;
    }

private:
    using Key = std::pair<std::uint32_t, std::vector<Monomial::Exponent>>;
    static Key key(IndexSet subset, const Monomial& m) {
        return {subset.bits(), {m.exponents().begin(), m.exponents().end()}};
    }

    WilliamsonBasis basis_;
    std::size_t k_;
    Monomial::Exponent d_;
    std::vector<ElementaryForm> elements_;
    std::map<Key, std::size_t> index_;
};

inline GradedBasis basis_forms(std::size_t k, Monomial::Exponent d, const WilliamsonBasis& basis) {
    return GradedBasis(basis, k, d);
}

/// Matrix of d_F : (k, d) -> (k+1, d) in the two graded bases.
inline ExactMatrix assemble_matrix(const GradedBasis& domain, const GradedBasis& codomain,
                                   const WilliamsonBasis& basis) {
    ExactMatrix matrix(codomain.size(), domain.size());
    const std::size_t n = basis.n();
    for (std::size_t col = 0; col < domain.size(); ++col) {
        const auto& e = domain[col];
        Polynomial p = Polynomial::term(basis.coords(), e.monomial, Scalar(1));
        for (std::size_t j = 0; j < n; ++j) {
            if (e.subset.contains(j)) continue;
            Polynomial image = basis.apply(j, p);
            bool negate = e.subset.count_below(j) % 2 == 1;
            IndexSet target = e.subset.with(j);
            for (const auto& [m, c] : image.terms()) {
                auto row = codomain.index_of(target, m);
                if (!row) throw VerificationFailure("d_F left the admissible slice");
                matrix.add(*row, col, negate ? -c : c);
            }
        }
    }
    return matrix;
}

inline ExactMatrix assemble_matrix(std::size_t k, Monomial::Exponent d, const WilliamsonBasis& basis) {
    return assemble_matrix(GradedBasis(basis, k, d), GradedBasis(basis, k + 1, d), basis);
}

}  // namespace folcoh
