#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folcoh/errors.hpp"
#include "folcoh/scalar.hpp"

namespace folcoh {

/// Ordered, named coordinates.  Symplectic systems come in pairs
/// (x1, y1, ..., xn, yn) with x_i at slot 2i and y_i at slot 2i+1.
class CoordinateSystem {
public:
    explicit CoordinateSystem(std::vector<std::string> names, std::size_t pairs = 0)
        : names_(std::move(names)), pairs_(pairs) {}

    /// The 2n Darboux coordinates x1, y1, ..., xn, yn.
    static std::shared_ptr<const CoordinateSystem> symplectic(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) {
            names.push_back("x" + std::to_string(i));
            names.push_back("y" + std::to_string(i));
        }
        return std::make_shared<const CoordinateSystem>(std::move(names), n);
    }

    /// Coordinates p1, ..., pm.
    static std::shared_ptr<const CoordinateSystem> numbered(const std::string& stem, std::size_t m) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= m; ++i) names.push_back(stem + std::to_string(i));
        return std::make_shared<const CoordinateSystem>(std::move(names));
    }

    std::size_t size() const noexcept { return names_.size(); }
    std::size_t pairs() const noexcept { return pairs_; }
    const std::string& name(std::size_t slot) const { return names_.at(slot); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    friend bool operator==(const CoordinateSystem&, const CoordinateSystem&) = default;

private:
    std::vector<std::string> names_;
    std::size_t pairs_ = 0;
};

using Coords = std::shared_ptr<const CoordinateSystem>;

inline bool same_coords(const Coords& a, const Coords& b) {
    return a == b || (a && b && *a == *b);
}

/// Exponent vector over a coordinate system.
class Monomial {
public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t size) : exps_(size, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t slot) const { return exps_[slot]; }
    Exponent& operator[](std::size_t slot) { return exps_[slot]; }
    std::span<const Exponent> exponents() const noexcept { return exps_; }

    Exponent degree() const { return std::accumulate(exps_.begin(), exps_.end(), Exponent{0}); }

    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    Monomial& operator*=(const Monomial& o) {
        for (std::size_t s = 0; s < exps_.size(); ++s) exps_[s] += o.exps_[s];
        return *this;
    }
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Exponent> exps_;
};

/// Graded lexicographic order: total degree first, then the exponent vector
/// compared lexicographically with x1 > y1 > x2 > ...  Ascending iteration
/// therefore lists 1, x1, y1, x2, ..., x1^2, x1 y1, ...
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.degree();
        auto db = b.degree();
        if (da != db) return da < db;
        auto ea = a.exponents();
        auto eb = b.exponents();
        return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
    }
};

/// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
/// No zero coefficient is ever stored; the zero polynomial has no terms and
/// no degree.
class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar, GradedLex>;

    Polynomial() = default;
    explicit Polynomial(Coords coords) : coords_(std::move(coords)) {}

    static Polynomial constant(Coords coords, const Scalar& c) {
        Polynomial p(std::move(coords));
        p.add_term(Monomial(p.nvars()), c);
        return p;
    }

    static Polynomial variable(Coords coords, std::size_t slot) {
        Polynomial p(std::move(coords));
        if (slot >= p.nvars()) throw IndexOutOfRange("coordinate", slot, p.nvars());
        Monomial m(p.nvars());
        m[slot] = 1;
        p.add_term(std::move(m), Scalar(1));
        return p;
    }

    static Polynomial term(Coords coords, Monomial m, const Scalar& c) {
        Polynomial p(std::move(coords));
        if (m.size() != p.nvars()) throw CoordinateMismatch();
        p.add_term(std::move(m), c);
        return p;
    }

    const Coords& coords() const noexcept { return coords_; }
    std::size_t nvars() const { return coords_ ? coords_->size() : 0; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Largest total degree of a term; nullopt for the zero polynomial.
    std::optional<Monomial::Exponent> degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first.degree();
    }

    /// Smallest total degree of a term; nullopt for the zero polynomial.
    std::optional<Monomial::Exponent> min_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.degree();
    }

    bool is_homogeneous() const {
        return terms_.empty() || *degree() == *min_degree();
    }

    bool is_real() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.second.is_real(); });
    }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// Accumulates c * m, dropping the entry if it cancels.
    void add_term(Monomial m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt_coords(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt_coords(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const { return *this * Scalar(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.coords_ ? a.coords_ : b.coords_);
        if (a.coords_ && b.coords_ && !same_coords(a.coords_, b.coords_)) throw CoordinateMismatch();
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned e) const {
        Polynomial out = constant(coords_, Scalar(1));
        for (unsigned i = 0; i < e; ++i) out *= *this;
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return same_coords(a.coords_, b.coords_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Formal partial derivative with respect to the coordinate at `slot`.
    Polynomial partial(std::size_t slot) const {
        if (slot >= nvars()) throw IndexOutOfRange("coordinate", slot, nvars());
        Polynomial out(coords_);
        for (const auto& [m, c] : terms_) {
            if (m[slot] == 0) continue;
            Monomial d = m;
            d[slot] -= 1;
            out.add_term(std::move(d), c * Scalar(static_cast<long>(m[slot])));
        }
        return out;
    }

    /// The operator  coord[multiplier] * d/d coord[derivative], applied
    /// termwise without building intermediate polynomials.
    void add_shifted(const Polynomial& p, std::size_t multiplier, std::size_t derivative,
                     const Scalar& factor) {
        adopt_coords(p);
        for (const auto& [m, c] : p.terms_) {
            if (m[derivative] == 0) continue;
            Monomial d = m;
            d[derivative] -= 1;
            d[multiplier] += 1;
            add_term(std::move(d), c * factor * Scalar(static_cast<long>(m[derivative])));
        }
    }

    Polynomial conj() const {
        Polynomial out(coords_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
        return out;
    }

    /// Homogeneous components in increasing degree; empty for zero.
    std::vector<std::pair<Monomial::Exponent, Polynomial>> homogeneous_parts() const {
        std::vector<std::pair<Monomial::Exponent, Polynomial>> parts;
        for (const auto& [m, c] : terms_) {
            auto d = m.degree();
            if (parts.empty() || parts.back().first != d) parts.emplace_back(d, Polynomial(coords_));
            parts.back().second.terms_.emplace_hint(parts.back().second.terms_.end(), m, c);
        }
        return parts;
    }

    Polynomial homogeneous_part(Monomial::Exponent d) const {
        return filter([d](const Monomial& m) { return m.degree() == d; });
    }

    /// Drops every term of total degree above `max_degree`.
    Polynomial truncated(Monomial::Exponent max_degree) const {
        return filter([max_degree](const Monomial& m) { return m.degree() <= max_degree; });
    }

    template <class Pred>
    Polynomial filter(Pred keep) const {
        Polynomial out(coords_);
        for (const auto& [m, c] : terms_)
            if (keep(m)) out.terms_.emplace_hint(out.terms_.end(), m, c);
        return out;
    }

    /// Ring homomorphism sending coordinate s to images[s] (a polynomial over
    /// `target`).  Powers of the images are cached per coordinate.
    Polynomial substitute(std::span<const Polynomial> images, const Coords& target) const {
        if (images.size() != nvars()) throw CoordinateMismatch();
        std::vector<std::vector<Polynomial>> powers(nvars());
        auto power = [&](std::size_t s, Monomial::Exponent e) -> const Polynomial& {
            auto& cache = powers[s];
            if (cache.empty()) cache.push_back(constant(target, Scalar(1)));
            while (cache.size() <= e) cache.push_back(cache.back() * images[s]);
            return cache[e];
        };
        Polynomial out(target);
        for (const auto& [m, c] : terms_) {
            Polynomial t = constant(target, c);
            for (std::size_t s = 0; s < nvars(); ++s)
                if (m[s] != 0) t = t * power(s, m[s]);
            out += t;
        }
        return out;
    }

    /// True iff every term has positive degree in at least one of `slots`,
    /// i.e. the polynomial vanishes on the common zero set of those coordinates.
    bool vanishes_on(std::span<const std::size_t> slots) const {
        for (const auto& [m, c] : terms_) {
            bool hit = false;
            for (auto s : slots) {
                if (s >= nvars()) throw IndexOutOfRange("coordinate", s, nvars());
                hit = hit || m[s] > 0;
            }
            if (!hit) return false;
        }
        return true;
    }

    /// Substitutes zero for the given coordinates.
    Polynomial restrict_to_zero(std::span<const std::size_t> slots) const {
        return filter([&](const Monomial& m) {
            return std::all_of(slots.begin(), slots.end(), [&](std::size_t s) { return m[s] == 0; });
        });
    }

private:
    void adopt_coords(const Polynomial& o) {
        if (!coords_) {
            coords_ = o.coords_;
        } else if (o.coords_ && !same_coords(coords_, o.coords_)) {
            throw CoordinateMismatch();
        }
    }

    Coords coords_;
    Terms terms_;
};

}  // namespace folcoh
