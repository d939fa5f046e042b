#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "folcoh/polynomial.hpp"

namespace folcoh {

enum class BlockKind { elliptic, hyperbolic, focus_focus };

inline std::string block_code(BlockKind kind) {
    switch (kind) {
        case BlockKind::elliptic: return "e";
        case BlockKind::hyperbolic: return "h";
        case BlockKind::focus_focus: return "ff";
    }
    return "?";
}

/// One singularity block.  A focus-focus block occupies the two consecutive
/// symplectic pairs `first` and `first + 1`.
struct Block {
    BlockKind kind;
    std::size_t first;

    std::size_t width() const { return kind == BlockKind::focus_focus ? 2 : 1; }
    bool contains(std::size_t pair) const { return pair >= first && pair < first + width(); }

    /// Coordinate slots of the block (2 or 4 of them).
    std::vector<std::size_t> slots() const {
        std::vector<std::size_t> out;
        for (std::size_t s = 2 * first; s < 2 * (first + width()); ++s) out.push_back(s);
        return out;
    }

    friend bool operator==(const Block&, const Block&) = default;
};

/// First-order linear differential operator  sum_k c_k * coord[m_k] d/d coord[d_k].
struct LinearVectorField {
    struct Entry {
        Scalar coefficient;
        std::size_t multiplier;
        std::size_t derivative;
    };
    std::vector<Entry> entries;

    Polynomial operator()(const Polynomial& p) const {
        Polynomial out(p.coords());
        for (const auto& e : entries) out.add_shifted(p, e.multiplier, e.derivative, e.coefficient);
        return out;
    }
};

/// A Williamson basis h_1, ..., h_n of a Cartan subalgebra of quadratic forms
/// on R^{2n} with the Darboux form sum dx_i ^ dy_i, together with the
/// Hamiltonian vector fields X_i of the h_i.  Field and pair indices are
/// zero-based in this API.
class WilliamsonBasis {
public:
    WilliamsonBasis() = default;

    /// Blocks are laid out positionally: "e" and "h" take one pair, "ff"
    /// takes the next two.
    explicit WilliamsonBasis(const std::vector<BlockKind>& kinds) {
        std::size_t pair = 0;
        for (auto kind : kinds) {
            blocks_.push_back({kind, pair});
            pair += blocks_.back().width();
            switch (kind) {
                case BlockKind::elliptic: ++ke_; break;
                case BlockKind::hyperbolic: ++kh_; break;
                case BlockKind::focus_focus: ++kf_; break;
            }
        }
        n_ = pair;
        coords_ = CoordinateSystem::symplectic(n_);
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (std::size_t w = 0; w < blocks_[b].width(); ++w) block_index_.push_back(b);
        for (std::size_t i = 0; i < n_; ++i) fields_.push_back(build_field(i));
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t elliptic_count() const noexcept { return ke_; }
    std::size_t hyperbolic_count() const noexcept { return kh_; }
    std::size_t focus_focus_count() const noexcept { return kf_; }
    const Coords& coords() const noexcept { return coords_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    const Block& block_of(std::size_t i) const {
        check_index(i);
        return blocks_[block_index_[i]];
    }

    std::vector<BlockKind> kinds() const {
        std::vector<BlockKind> out;
        for (const auto& b : blocks_) out.push_back(b.kind);
        return out;
    }

    std::string type_string() const {
        std::string out;
        for (const auto& b : blocks_) out += (out.empty() ? "" : ",") + block_code(b.kind);
        return out;
    }

    /// h_i as an exact quadratic polynomial.
    Polynomial hamiltonian(std::size_t i) const {
        const Block& b = block_of(i);
        auto x = [&](std::size_t pair) { return Polynomial::variable(coords_, 2 * pair); };
        auto y = [&](std::size_t pair) { return Polynomial::variable(coords_, 2 * pair + 1); };
        switch (b.kind) {
            case BlockKind::elliptic: return x(i) * x(i) + y(i) * y(i);
            case BlockKind::hyperbolic: return x(i) * y(i);
            case BlockKind::focus_focus: {
                std::size_t a = b.first;
                if (i == a) return x(a) * y(a) + x(a + 1) * y(a + 1);
                return x(a) * y(a + 1) - x(a + 1) * y(a);
            }
        }
        return Polynomial(coords_);
    }

    /// X_i in the real chart, written out as the literal differential operator.
    const LinearVectorField& field(std::size_t i) const {
        check_index(i);
        return fields_[i];
    }

    /// X_i(p).
    Polynomial apply(std::size_t i, const Polynomial& p) const {
        check_coords(p);
        return field(i)(p);
    }

    /// Generator count of the foliation (used by the generic form machinery).
    std::size_t generator_count() const noexcept { return n_; }

    /// True iff p vanishes on Sigma_i, the zero set of X_i.  For a
    /// focus-focus field this is the common zero set of the pair.
    bool vanishes_on_sigma(std::size_t i, const Polynomial& p) const {
        check_coords(p);
        auto slots = block_of(i).slots();
        return p.vanishes_on(slots);
    }

    void check_coords(const Polynomial& p) const {
        if (p.coords() && !same_coords(p.coords(), coords_)) throw CoordinateMismatch();
    }

    friend bool operator==(const WilliamsonBasis& a, const WilliamsonBasis& b) {
        return a.blocks_ == b.blocks_;
    }

private:
    void check_index(std::size_t i) const {
        if (i >= n_) throw IndexOutOfRange("field", i, n_);
    }

    LinearVectorField build_field(std::size_t i) const {
        const Block& b = blocks_[block_index_[i]];
        auto xs = [](std::size_t pair) { return 2 * pair; };
        auto ys = [](std::size_t pair) { return 2 * pair + 1; };
        LinearVectorField f;
        auto add = [&](long c, std::size_t mult, std::size_t der) {
            f.entries.push_back({Scalar(c), mult, der});
        };
        switch (b.kind) {
            case BlockKind::elliptic:  // 2(-y d/dx + x d/dy)
                add(-2, ys(i), xs(i));
                add(2, xs(i), ys(i));
                break;
            case BlockKind::hyperbolic:  // -x d/dx + y d/dy
                add(-1, xs(i), xs(i));
                add(1, ys(i), ys(i));
                break;
            case BlockKind::focus_focus: {
                std::size_t a = b.first;
                if (i == a) {
                    add(-1, xs(a), xs(a));
                    add(1, ys(a), ys(a));
                    add(-1, xs(a + 1), xs(a + 1));
                    add(1, ys(a + 1), ys(a + 1));
                } else {
                    add(1, xs(a + 1), xs(a));
                    add(1, ys(a + 1), ys(a));
                    add(-1, xs(a), xs(a + 1));
                    add(-1, ys(a), ys(a + 1));
                }
                break;
            }
        }
        return f;
    }

    std::vector<Block> blocks_;
    std::vector<std::size_t> block_index_;
    std::vector<LinearVectorField> fields_;
    Coords coords_;
    std::size_t n_ = 0, ke_ = 0, kh_ = 0, kf_ = 0;
};

/// {f, g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i) for the Darboux form.
inline Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
    if (!same_coords(f.coords(), g.coords())) throw CoordinateMismatch();
    const auto& coords = f.coords();
    if (!coords || coords->pairs() * 2 != coords->size())
        throw Error("Poisson bracket needs a symplectic coordinate system");
    Polynomial out(coords);
    for (std::size_t i = 0; i < coords->pairs(); ++i) {
        out += f.partial(2 * i) * g.partial(2 * i + 1);
        out -= f.partial(2 * i + 1) * g.partial(2 * i);
    }
    return out;
}

}  // namespace folcoh
