#pragma once

#include "folcoh/cohomology.hpp"
#include "folcoh/form.hpp"

namespace folcoh {

/// Regular foliation of R^m by the leaves {p_{n+1}, ..., p_m = const}; the
/// generators are the coordinate fields d/dp_1, ..., d/dp_n.
class RegularModel {
public:
    RegularModel() = default;
    RegularModel(std::size_t m, std::size_t n) : m_(m), n_(n) {
        if (n == 0 || n > m) throw Error("regular model needs 1 <= n <= m");
        coords_ = CoordinateSystem::numbered("p", m);
    }

    std::size_t total() const noexcept { return m_; }
    std::size_t leaf() const noexcept { return n_; }
    const Coords& coords() const noexcept { return coords_; }
    std::size_t generator_count() const noexcept { return n_; }

    Polynomial apply(std::size_t j, const Polynomial& p) const {
        if (j >= n_) throw IndexOutOfRange("leaf direction", j, n_);
        check_coords(p);
        return p.partial(j);
    }

    void check_coords(const Polynomial& p) const {
        if (p.coords() && !same_coords(p.coords(), coords_)) throw CoordinateMismatch();
    }

    /// Degree of a monomial in the leaf coordinates p_1..p_n.
    Monomial::Exponent leaf_degree(const Monomial& m) const {
        Monomial::Exponent d = 0;
        for (std::size_t s = 0; s < n_; ++s) d += m[s];
        return d;
    }

    friend bool operator==(const RegularModel& a, const RegularModel& b) {
        return a.m_ == b.m_ && a.n_ == b.n_;
    }

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    Coords coords_;
};

using RegularFoliatedForm = KForm<RegularModel>;

inline RegularFoliatedForm d_regular(const RegularFoliatedForm& alpha) { return exterior_derivative(alpha); }

/// Pullback of a function along the leaf-collapsing retraction at t = 0:
/// substitutes 0 for p_1, ..., p_n.
inline Polynomial leaf_collapse(const Polynomial& f, const RegularModel& model) {
    std::vector<std::size_t> leaf(model.leaf());
    for (std::size_t s = 0; s < leaf.size(); ++s) leaf[s] = s;
    return f.restrict_to_zero(leaf);
}

/// Homotopy operator for the retraction (t p_1, ..., t p_n, p_{n+1}, ..., p_m):
/// contract with the leafwise radial field sum_j p_j d/dp_j and integrate the
/// scaling pullback in t.  A component monomial of leaf degree l on a
/// k-form picks up the factor int_0^1 t^{l+k-1} dt = 1/(l+k).
inline RegularFoliatedForm homotopy_operator(const RegularFoliatedForm& alpha) {
    const auto& model = alpha.frame();
    const std::size_t k = alpha.degree();
    if (k == 0) throw Error("homotopy operator is defined on forms of degree >= 1");
    RegularFoliatedForm out(model, k - 1);
    for (const auto& [subset, p] : alpha.components()) {
        Polynomial scaled(model.coords());
        for (const auto& [m, c] : p.terms())
            scaled.add_term(m, c / Scalar(static_cast<long>(model.leaf_degree(m) + k)));
        for (auto j : subset.members()) {
            IndexSet rest = subset.without(j);
            Polynomial term = Polynomial::variable(model.coords(), j) * scaled;
            out.add(rest, rest.count_below(j) % 2 == 1 ? -term : term);
        }
    }
    return out;
}

/// alpha - phi_0^*(alpha) - I(d alpha) - d(I(alpha)); identically zero.
/// For functions the last term is absent and phi_0^* substitutes zero for
/// the leaf coordinates; for k >= 1 the pullback phi_0^* vanishes.
inline RegularFoliatedForm homotopy_identity_residual(const RegularFoliatedForm& alpha) {
    const auto& model = alpha.frame();
    RegularFoliatedForm residual = alpha;
    if (alpha.degree() == 0) {
        RegularFoliatedForm collapsed(model, 0);
        collapsed.set(IndexSet{}, leaf_collapse(alpha.component(IndexSet{}), model));
        residual -= collapsed;
    } else {
        residual -= d_regular(homotopy_operator(alpha));
    }
    RegularFoliatedForm d_alpha = d_regular(alpha);
    if (d_alpha.degree() <= model.leaf()) residual -= homotopy_operator(d_alpha);
    return residual;
}

/// Primitive of a closed form of degree >= 1 on the regular model.
inline RegularFoliatedForm primitive_regular(const RegularFoliatedForm& alpha) {
    if (alpha.degree() == 0) throw Error("primitive needs a form of degree >= 1");
    RegularFoliatedForm residual = d_regular(alpha);
    if (!residual.is_zero()) throw NotClosedForm<RegularFoliatedForm>(std::move(residual));
    RegularFoliatedForm primitive = homotopy_operator(alpha);
    if (!(d_regular(primitive) == alpha)) throw VerificationFailure("homotopy primitive does not reproduce its input");
    return primitive;
}

}  // namespace folcoh
