#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "folcoh/chart.hpp"

namespace folcoh {

/// g = obstruction + X_i(potential).
struct LinearPdeSolution {
    Polynomial potential;
    Polynomial obstruction;
};

/// f = kernel_part + X_i(potential), X_i(kernel_part) = 0.
struct DecompositionResult {
    Polynomial kernel_part;
    Polynomial potential;
    std::size_t field = 0;
};

/// Chart-level splitting of a chart polynomial along X_i: the part on
/// zero-eigenvalue monomials and the eigen-inverse of the rest.  Every
/// solver in the engine is built from this one step.
inline std::pair<Polynomial, Polynomial> split_along_field(const ComplexChart& chart, std::size_t i,
                                                           const Polynomial& chart_poly) {
    chart.check_chart(chart_poly);
    Polynomial kernel(chart.coords());
    Polynomial potential(chart.coords());
    for (const auto& [m, c] : chart_poly.terms()) {
        Scalar lambda = chart.eigenvalue(i, m);
        if (lambda.is_zero()) {
            kernel.add_term(m, c);
        } else {
            potential.add_term(m, c / lambda);
        }
    }
    return {std::move(kernel), std::move(potential)};
}

namespace detail {

inline Polynomial back_to_real(const ComplexChart& chart, const Polynomial& chart_poly, bool real_input) {
    return real_input ? chart.realify(chart_poly) : chart.decomplexify(chart_poly);
}

}  // namespace detail

/// Solves X_i(F) = g up to the obstruction: the component of g on the
/// kernel of X_i, which no F can reach.
inline LinearPdeSolution solve_linear_pde(const WilliamsonBasis& basis, std::size_t i, const Polynomial& g) {
    ComplexChart chart(basis);
    auto [kernel, potential] = split_along_field(chart, i, chart.complexify(g));
    bool real = g.is_real();
    return {detail::back_to_real(chart, potential, real), detail::back_to_real(chart, kernel, real)};
}

/// f = f_i + X_i(F_i) with X_i(f_i) = 0 and F_i in the canonical gauge
/// (no component along ker X_i).  For polynomials the kernel part is unique.
/// Because every X_j is diagonal in the same chart, X_j(f) = 0 forces
/// X_j(f_i) = X_j(F_i) = 0, and vanishing on any Sigma_j carries over to
/// both outputs.
inline DecompositionResult decompose(const WilliamsonBasis& basis, std::size_t i, const Polynomial& f) {
    auto solved = solve_linear_pde(basis, i, f);
    return {std::move(solved.obstruction), std::move(solved.potential), i};
}

/// Raised when a polynomial expected in ker X_i is not; carries X_i(f).
class NotInKernel : public PreconditionViolation {
public:
    NotInKernel(std::size_t field, Polynomial residual)
        : PreconditionViolation("polynomial is not annihilated by X_" + std::to_string(field + 1)),
          field_(field),
          residual_(std::move(residual)) {}

    std::size_t field() const noexcept { return field_; }
    const Polynomial& residual() const noexcept { return residual_; }

private:
    std::size_t field_;
    Polynomial residual_;
};

/// A polynomial rewritten so that its dependence on a block's coordinates
/// goes through the block's h-functions.  `reduced` lives over `coords`, in
/// which the block's 2 (or 4) coordinates are replaced by h<i> (or h<i>,
/// h<i+1>); `substitution` maps those coordinates back.
struct KernelDependence {
    Polynomial reduced;
    Coords coords;
    std::vector<Polynomial> substitution;

    /// Re-expands the reduced polynomial in the original coordinates.
    Polynomial expand() const { return reduced.substitute(substitution, substitution.front().coords()); }
};

/// For X_i(f) = 0, writes f = f~(..., h_i, ...).  A focus-focus block is
/// treated jointly: both fields of the pair must annihilate f and the result
/// is a polynomial in (h_i, h_{i+1}).
inline KernelDependence kernel_dependence(const WilliamsonBasis& basis, std::size_t i, const Polynomial& f) {
    const Block& block = basis.block_of(i);
    for (std::size_t j = block.first; j < block.first + block.width(); ++j) {
        if (block.kind != BlockKind::focus_focus && j != i) continue;
        Polynomial residual = basis.apply(j, f);
        if (!residual.is_zero()) throw NotInKernel(j, std::move(residual));
    }

    // Reduced coordinate system: block coordinates replaced by h's.
    const auto& real = basis.coords();
    std::vector<std::string> names;
    std::vector<std::size_t> slot_map(real->size());  // real slot -> reduced slot, for passthrough
    std::vector<std::size_t> h_slots;
    for (std::size_t s = 0; s < real->size(); ++s) {
        std::size_t pair = s / 2;
        if (block.contains(pair)) {
            if (s == 2 * block.first) {
                for (std::size_t w = 0; w < block.width(); ++w) {
                    h_slots.push_back(names.size());
                    names.push_back("h" + std::to_string(block.first + w + 1));
                }
            }
            continue;
        }
        slot_map[s] = names.size();
        names.push_back(real->name(s));
    }
    Coords reduced_coords = std::make_shared<const CoordinateSystem>(std::move(names));

    ComplexChart chart(basis);
    Polynomial chart_f = chart.complexify(f);
    const std::size_t s0 = 2 * block.first;
    const Scalar i_unit = Scalar::imaginary_unit();

    // First collect over the reduced layout with the remaining variables
    // still in chart form, then send those back to real coordinates.
    std::vector<std::string> mixed_names = reduced_coords->names();
    for (std::size_t s = 0; s < real->size(); ++s)
        if (!block.contains(s / 2)) mixed_names[slot_map[s]] = chart.coords()->name(s);
    Coords mixed_coords = std::make_shared<const CoordinateSystem>(std::move(mixed_names));

    auto h = [&](std::size_t w) { return Polynomial::variable(mixed_coords, h_slots[w]); };
    Polynomial mixed(mixed_coords);
    for (const auto& [m, c] : chart_f.terms()) {
        Monomial rest(mixed_coords->size());
        for (std::size_t s = 0; s < m.size(); ++s)
            if (!block.contains(s / 2)) rest[slot_map[s]] = m[s];
        Polynomial factor = Polynomial::term(mixed_coords, rest, c);
        switch (block.kind) {
            case BlockKind::elliptic:  // (z zb)^a = h^a
            case BlockKind::hyperbolic:  // (x y)^a = h^a
                factor = factor * h(0).pow(m[s0]);
                break;
            case BlockKind::focus_focus: {
                // joint kernel: (u vb)^a (ub v)^b with u vb = h_i - i h_{i+1}
                Polynomial u_vb = h(0) - h(1) * i_unit;
                Polynomial ub_v = h(0) + h(1) * i_unit;
                factor = factor * u_vb.pow(m[s0]) * ub_v.pow(m[s0 + 1]);
                break;
            }
        }
        mixed += factor;
    }

    std::vector<Polynomial> relabel;  // real slot -> reduced variable
    for (std::size_t s = 0; s < real->size(); ++s)
        relabel.push_back(block.contains(s / 2) ? Polynomial(reduced_coords)
                                                : Polynomial::variable(reduced_coords, slot_map[s]));
    std::vector<Polynomial> to_reduced(mixed_coords->size(), Polynomial(reduced_coords));
    for (std::size_t w = 0; w < block.width(); ++w) to_reduced[h_slots[w]] = Polynomial::variable(reduced_coords, h_slots[w]);
    for (std::size_t s = 0; s < real->size(); ++s)
        if (!block.contains(s / 2))
            to_reduced[slot_map[s]] =
                chart.decomplexify(Polynomial::variable(chart.coords(), s)).substitute(relabel, reduced_coords);
    Polynomial reduced = mixed.substitute(to_reduced, reduced_coords);

    std::vector<Polynomial> substitution;
    for (std::size_t s = 0; s < reduced_coords->size(); ++s) substitution.emplace_back(real);
    for (std::size_t s = 0; s < real->size(); ++s)
        if (!block.contains(s / 2)) substitution[slot_map[s]] = Polynomial::variable(real, s);
    for (std::size_t w = 0; w < block.width(); ++w)
        substitution[h_slots[w]] = basis.hamiltonian(block.first + w);
    return {std::move(reduced), std::move(reduced_coords), std::move(substitution)};
}

/// 1-cochain (g_1, ..., g_r), r <= n, of the deformation complex; g_j pairs
/// with X_j.
struct DeformationCochain {
    WilliamsonBasis basis;
    std::vector<Polynomial> components;
};

struct CocycleCheck {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;  // first (i, j), i < j
    Polynomial residual;                                             // X_i(g_j) - X_j(g_i)

    explicit operator bool() const { return ok; }
};

inline CocycleCheck cocycle_check(const DeformationCochain& c) {
    const std::size_t r = c.components.size();
    if (r > c.basis.n()) throw IndexOutOfRange("cochain length", r, c.basis.n() + 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            Polynomial residual = c.basis.apply(i, c.components[j]) - c.basis.apply(j, c.components[i]);
            if (!residual.is_zero()) return {false, std::make_pair(i, j), std::move(residual)};
        }
    return {};
}

class NotCocycle : public PreconditionViolation {
public:
    NotCocycle(std::size_t i, std::size_t j, Polynomial residual)
        : PreconditionViolation("cochain violates X_" + std::to_string(i + 1) + "(g_" + std::to_string(j + 1) +
                                ") = X_" + std::to_string(j + 1) + "(g_" + std::to_string(i + 1) + ")"),
          pair_(i, j),
          residual_(std::move(residual)) {}

    std::pair<std::size_t, std::size_t> pair() const noexcept { return pair_; }
    const Polynomial& residual() const noexcept { return residual_; }

private:
    std::pair<std::size_t, std::size_t> pair_;
    Polynomial residual_;
};

/// g_i = f_i + X_i(G) with X_j(f_i) = 0 for all i, j.
struct DeformationSolution {
    Polynomial potential;
    std::vector<Polynomial> basic_parts;
};

/// Solves the cocycle by iterated decomposition: G = sum_i Q_i P_1 ... P_{i-1} g_i
/// where P_j / Q_j are the kernel projection / eigen-inverse along X_j.
/// G has no component along the joint kernel of X_1..X_r, and f_i is the
/// joint-kernel part of g_i, so the result does not depend on the order in
/// which fields are processed.
inline DeformationSolution solve_deformation(const DeformationCochain& c, std::span<const std::size_t> order = {}) {
    auto check = cocycle_check(c);
    if (!check) throw NotCocycle(check.violation->first, check.violation->second, std::move(check.residual));

    const std::size_t r = c.components.size();
    std::vector<std::size_t> fields(order.begin(), order.end());
    if (fields.empty()) {
        for (std::size_t i = 0; i < r; ++i) fields.push_back(i);
    } else {
        std::vector<std::size_t> sorted = fields;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted.size() != r || sorted[i] != i) throw Error("field order must list every cochain component once");
    }

    ComplexChart chart(c.basis);
    Polynomial potential(chart.coords());
    std::vector<std::size_t> done;
    bool real = true;
    for (std::size_t i : fields) {
        real = real && c.components.at(i).is_real();
        Polynomial remaining = chart.complexify(c.components[i]);
        for (std::size_t j : done) remaining = split_along_field(chart, j, remaining).first;
        potential += split_along_field(chart, i, remaining).second;
        done.push_back(i);
    }

    DeformationSolution out{detail::back_to_real(chart, potential, real), {}};
    for (std::size_t i = 0; i < r; ++i) out.basic_parts.push_back(c.components[i] - c.basis.apply(i, out.potential));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (!c.basis.apply(j, out.basic_parts[i]).is_zero())
                throw VerificationFailure("deformation solution: basic part not annihilated");
    return out;
}

}  // namespace folcoh
