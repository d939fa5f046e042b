#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "folcoh/polynomial.hpp"

namespace folcoh {

/// Subset of generator indices {0, ..., 31}, iterated in increasing order.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}
    IndexSet(std::initializer_list<std::size_t> indices) {
        for (auto i : indices) bits_ |= bit(i);
    }

    std::uint32_t bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    bool empty() const noexcept { return bits_ == 0; }
    bool contains(std::size_t i) const noexcept { return (bits_ & bit(i)) != 0; }

    IndexSet with(std::size_t i) const { return IndexSet(bits_ | bit(i)); }
    IndexSet without(std::size_t i) const { return IndexSet(bits_ & ~bit(i)); }

    /// Number of members strictly below i.
    std::size_t count_below(std::size_t i) const {
        return static_cast<std::size_t>(std::popcount(bits_ & (bit(i) - 1)));
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    /// One-based, comma-joined: {0, 2} -> "1,3".
    std::string str() const {
        std::string out;
        for (auto i : members()) out += (out.empty() ? "" : ",") + std::to_string(i + 1);
        return out;
    }

    /// All k-subsets of {0, ..., n-1}, in increasing lexicographic order of
    /// their member lists.
    static std::vector<IndexSet> subsets(std::size_t n, std::size_t k) {
        std::vector<IndexSet> out;
        if (k > n) return out;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            IndexSet s;
            for (auto i : idx) s = s.with(i);
            out.push_back(s);
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    }

    friend bool operator==(IndexSet a, IndexSet b) { return a.bits_ == b.bits_; }
    friend bool operator<(IndexSet a, IndexSet b) { return a.members() < b.members(); }

private:
    static constexpr std::uint32_t bit(std::size_t i) { return std::uint32_t{1} << i; }

    std::uint32_t bits_ = 0;
};

/// A foliated k-form stored by its values on wedges of the frame's
/// generators: component J holds alpha(Y_{j1}, ..., Y_{jk}) for j1 < ... < jk.
/// Absent subsets are zero.
///
/// Frame must provide generator_count(), coords(), check_coords(p) and
/// apply(j, p) (the action of the j-th generator); the generators are
/// assumed to commute, so no bracket terms appear in the differential.
template <class Frame>
class KForm {
public:
    using Components = std::map<IndexSet, Polynomial>;

    KForm() = default;
    /// Degrees above the generator count are allowed; such forms are zero.
    KForm(Frame frame, std::size_t degree) : frame_(std::move(frame)), degree_(degree) {}

    static KForm function(Frame frame, Polynomial f) {
        KForm out(std::move(frame), 0);
        out.set(IndexSet{}, std::move(f));
        return out;
    }

    const Frame& frame() const noexcept { return frame_; }
    std::size_t degree() const noexcept { return degree_; }
    const Components& components() const noexcept { return components_; }
    bool is_zero() const noexcept { return components_.empty(); }

    Polynomial component(IndexSet j) const {
        auto it = components_.find(j);
        return it == components_.end() ? Polynomial(frame_.coords()) : it->second;
    }

    void set(IndexSet j, Polynomial p) {
        check_subset(j);
        frame_.check_coords(p);
        if (p.is_zero()) {
            components_.erase(j);
        } else {
            components_[j] = std::move(p);
        }
    }

    void add(IndexSet j, const Polynomial& p) {
        if (p.is_zero()) return;
        check_subset(j);
        auto it = components_.find(j);
        if (it == components_.end()) {
            set(j, p);
            return;
        }
        it->second += p;
        if (it->second.is_zero()) components_.erase(it);
    }

    KForm& operator+=(const KForm& o) {
        check_compatible(o);
        for (const auto& [j, p] : o.components_) add(j, p);
        return *this;
    }
    KForm& operator-=(const KForm& o) {
        check_compatible(o);
        for (const auto& [j, p] : o.components_) add(j, -p);
        return *this;
    }
    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator-(KForm a, const KForm& b) { return a -= b; }

    /// Multiplies every component by a function.
    KForm times(const Polynomial& f) const {
        KForm out(frame_, degree_);
        for (const auto& [j, p] : components_) out.set(j, p * f);
        return out;
    }

    template <class Fn>
    KForm map_components(Fn fn) const {
        KForm out(frame_, degree_);
        for (const auto& [j, p] : components_) out.set(j, fn(j, p));
        return out;
    }

    friend bool operator==(const KForm& a, const KForm& b) {
        if (a.degree_ != b.degree_) return false;
        if (a.components_.size() != b.components_.size()) return false;
        for (const auto& [j, p] : a.components_)
            if (b.component(j) != p) return false;
        return true;
    }

    void check_compatible(const KForm& o) const {
        if (o.degree_ != degree_) throw Error("form degree mismatch");
        if (!(o.frame_ == frame_)) throw CoordinateMismatch();
    }

private:
    void check_subset(IndexSet j) const {
        if (j.size() != degree_) throw Error("component subset " + j.str() + " has wrong size for degree " +
                                             std::to_string(degree_));
        for (auto i : j.members())
            if (i >= frame_.generator_count()) throw IndexOutOfRange("generator", i, frame_.generator_count());
    }

    Frame frame_;
    std::size_t degree_ = 0;
    Components components_;
};

/// Foliated exterior derivative for commuting generators:
///   (d alpha)[J'] = sum_{j in J'} (-1)^{#(J' below j)} Y_j(alpha[J' \ j]).
template <class Frame>
KForm<Frame> exterior_derivative(const KForm<Frame>& alpha) {
    const auto& frame = alpha.frame();
    const std::size_t n = frame.generator_count();
    KForm<Frame> out(frame, alpha.degree() + 1);
    for (const auto& [subset, p] : alpha.components()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (subset.contains(j)) continue;
            Polynomial term = frame.apply(j, p);
            if (subset.count_below(j) % 2 == 1) term = -term;
            out.add(subset.with(j), term);
        }
    }
    return out;
}

/// Contraction with the j-th generator: (i_j alpha)[K] = (-1)^{#(K below j)} alpha[K + j].
template <class Frame>
KForm<Frame> contract(const KForm<Frame>& alpha, std::size_t j) {
    if (alpha.degree() == 0) throw Error("cannot contract a function");
    KForm<Frame> out(alpha.frame(), alpha.degree() - 1);
    for (const auto& [subset, p] : alpha.components()) {
        if (!subset.contains(j)) continue;
        IndexSet rest = subset.without(j);
        out.add(rest, rest.count_below(j) % 2 == 1 ? -p : p);
    }
    return out;
}

/// Wedge product: e_A ^ e_B = (-1)^{#{(a, b) : a > b}} e_{A u B} for disjoint A, B.
template <class Frame>
KForm<Frame> wedge(const KForm<Frame>& a, const KForm<Frame>& b) {
    if (!(a.frame() == b.frame())) throw CoordinateMismatch();
    const std::size_t degree = a.degree() + b.degree();
    KForm<Frame> out(a.frame(), degree);
    for (const auto& [sa, pa] : a.components()) {
        for (const auto& [sb, pb] : b.components()) {
            if ((sa.bits() & sb.bits()) != 0) continue;
            std::size_t inversions = 0;
            for (auto j : sb.members()) inversions += sa.size() - sa.count_below(j);
            Polynomial prod = pa * pb;
            out.add(IndexSet(sa.bits() | sb.bits()), inversions % 2 == 1 ? -prod : prod);
        }
    }
    return out;
}

/// Componentwise action of the i-th generator; for commuting generators this
/// is the Lie derivative along it.
template <class Frame>
KForm<Frame> lie_derivative(const KForm<Frame>& alpha, std::size_t i) {
    return alpha.map_components([&](IndexSet, const Polynomial& p) { return alpha.frame().apply(i, p); });
}

}  // namespace folcoh
