#pragma once

#include <vector>

#include "folcoh/williamson.hpp"

namespace folcoh {

/// Linear change of variables in which every X_i of a Williamson basis acts
/// diagonally on monomials.
///
///   elliptic pair i:        z = x + iy,  zb = x - iy        (slots 2i, 2i+1)
///   hyperbolic pair i:      x, y unchanged
///   focus-focus pairs i,i+1: u = x_i + i x_{i+1}, ub, v = y_i + i y_{i+1}, vb
///                            (slots 2i, 2i+1, 2i+2, 2i+3)
///
/// Chart polynomials live over their own coordinate system (names z1, zb1,
/// u1, ub1, v1, vb1, ...) so they cannot be mixed with real-chart ones.
class ComplexChart {
public:
    explicit ComplexChart(const WilliamsonBasis& basis) : basis_(basis) {
        std::vector<std::string> names(2 * basis.n());
        for (const auto& b : basis.blocks()) {
            auto id = std::to_string(b.first + 1);
            std::size_t s = 2 * b.first;
            switch (b.kind) {
                case BlockKind::elliptic:
                    names[s] = "z" + id;
                    names[s + 1] = "zb" + id;
                    break;
                case BlockKind::hyperbolic:
                    names[s] = "x" + id;
                    names[s + 1] = "y" + id;
                    break;
                case BlockKind::focus_focus:
                    names[s] = "u" + id;
                    names[s + 1] = "ub" + id;
                    names[s + 2] = "v" + id;
                    names[s + 3] = "vb" + id;
                    break;
            }
        }
        chart_coords_ = std::make_shared<const CoordinateSystem>(std::move(names), basis.n());
        build_substitutions();
    }

    const WilliamsonBasis& basis() const noexcept { return basis_; }
    const Coords& coords() const noexcept { return chart_coords_; }

    /// Real-chart polynomial -> chart polynomial.  A ring homomorphism.
    Polynomial complexify(const Polynomial& p) const {
        basis_.check_coords(p);
        return p.substitute(to_chart_, chart_coords_);
    }

    /// Chart polynomial -> real-chart polynomial, Gaussian coefficients allowed.
    Polynomial decomplexify(const Polynomial& p) const {
        check_chart(p);
        return p.substitute(to_real_, basis_.coords());
    }

    /// Inverse of complexify on conjugation-symmetric chart polynomials;
    /// rejects inputs whose real-chart image has a non-real coefficient.
    Polynomial realify(const Polynomial& p) const {
        Polynomial out = decomplexify(p);
        if (!out.is_real())
            throw PreconditionViolation("realify: chart polynomial is not conjugation-symmetric");
        return out;
    }

    /// Complex conjugation expressed in the chart: conjugate coefficients and
    /// swap z <-> zb, u <-> ub, v <-> vb.
    Polynomial conjugate(const Polynomial& p) const {
        check_chart(p);
        Polynomial out(chart_coords_);
        for (const auto& [m, c] : p.terms()) {
            Monomial swapped = m;
            for (const auto& b : basis_.blocks()) {
                std::size_t s = 2 * b.first;
                if (b.kind == BlockKind::elliptic) {
                    std::swap(swapped[s], swapped[s + 1]);
                } else if (b.kind == BlockKind::focus_focus) {
                    std::swap(swapped[s], swapped[s + 1]);
                    std::swap(swapped[s + 2], swapped[s + 3]);
                }
            }
            out.add_term(std::move(swapped), c.conj());
        }
        return out;
    }

    bool is_conjugation_symmetric(const Polynomial& p) const { return conjugate(p) == p; }

    /// The scalar lambda with X_i(m) = lambda * m for a chart monomial m.
    Scalar eigenvalue(std::size_t i, const Monomial& m) const {
        const Block& b = basis_.block_of(i);
        std::size_t s = 2 * b.first;
        auto e = [&](std::size_t k) { return static_cast<long>(m[s + k]); };
        switch (b.kind) {
            case BlockKind::hyperbolic:  // x^a y^b -> b - a
                return Scalar(e(1) - e(0));
            case BlockKind::elliptic:  // z^a zb^b -> 2i(a - b)
                return Scalar(mpq_class(0), mpq_class(2 * (e(0) - e(1))));
            case BlockKind::focus_focus:
                if (i == b.first)  // u^a ub^b v^c vb^d -> -a - b + c + d
                    return Scalar(-e(0) - e(1) + e(2) + e(3));
                return Scalar(mpq_class(0), mpq_class(-e(0) + e(1) - e(2) + e(3)));
        }
        return Scalar();
    }

    /// X_i applied to a chart polynomial by diagonal action.
    Polynomial apply_diagonal(std::size_t i, const Polynomial& p) const {
        check_chart(p);
        Polynomial out(chart_coords_);
        for (const auto& [m, c] : p.terms()) out.add_term(m, c * eigenvalue(i, m));
        return out;
    }

    void check_chart(const Polynomial& p) const {
        if (p.coords() && !same_coords(p.coords(), chart_coords_)) throw CoordinateMismatch();
    }

private:
    void build_substitutions() {
        const auto& real = basis_.coords();
        const std::size_t size = 2 * basis_.n();
        auto cv = [&](std::size_t s) { return Polynomial::variable(chart_coords_, s); };
        auto rv = [&](std::size_t s) { return Polynomial::variable(real, s); };
        const Scalar half = Scalar::rational(1, 2);
        const Scalar i = Scalar::imaginary_unit();
        const Scalar minus_half_i = Scalar(mpq_class(0), mpq_class(-1, 2));  // 1/(2i)
        to_chart_.assign(size, Polynomial());
        to_real_.assign(size, Polynomial());
        for (const auto& b : basis_.blocks()) {
            std::size_t s = 2 * b.first;
            switch (b.kind) {
                case BlockKind::hyperbolic:
                    to_chart_[s] = cv(s);
                    to_chart_[s + 1] = cv(s + 1);
                    to_real_[s] = rv(s);
                    to_real_[s + 1] = rv(s + 1);
                    break;
                case BlockKind::elliptic:
                    // x = (z + zb)/2, y = (z - zb)/(2i)
                    to_chart_[s] = (cv(s) + cv(s + 1)) * half;
                    to_chart_[s + 1] = (cv(s) - cv(s + 1)) * minus_half_i;
                    to_real_[s] = rv(s) + rv(s + 1) * i;
                    to_real_[s + 1] = rv(s) - rv(s + 1) * i;
                    break;
                case BlockKind::focus_focus:
                    // real slots: x_a = s, y_a = s+1, x_{a+1} = s+2, y_{a+1} = s+3
                    // chart slots: u = s, ub = s+1, v = s+2, vb = s+3
                    to_chart_[s] = (cv(s) + cv(s + 1)) * half;               // x_a
                    to_chart_[s + 2] = (cv(s) - cv(s + 1)) * minus_half_i;   // x_{a+1}
                    to_chart_[s + 1] = (cv(s + 2) + cv(s + 3)) * half;       // y_a
                    to_chart_[s + 3] = (cv(s + 2) - cv(s + 3)) * minus_half_i;  // y_{a+1}
                    to_real_[s] = rv(s) + rv(s + 2) * i;          // u
                    to_real_[s + 1] = rv(s) - rv(s + 2) * i;      // ub
                    to_real_[s + 2] = rv(s + 1) + rv(s + 3) * i;  // v
                    to_real_[s + 3] = rv(s + 1) - rv(s + 3) * i;  // vb
                    break;
            }
        }
    }

    WilliamsonBasis basis_;
    Coords chart_coords_;
    std::vector<Polynomial> to_chart_;
    std::vector<Polynomial> to_real_;
};

inline Polynomial complexify(const Polynomial& p, const WilliamsonBasis& basis) {
    return ComplexChart(basis).complexify(p);
}

inline Polynomial realify(const Polynomial& p, const WilliamsonBasis& basis) {
    return ComplexChart(basis).realify(p);
}

inline Scalar eigenvalue(const WilliamsonBasis& basis, std::size_t i, const Monomial& m) {
    return ComplexChart(basis).eigenvalue(i, m);
}

}  // namespace folcoh
