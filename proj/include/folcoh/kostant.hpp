#pragma once

#include "folcoh/regular_homotopy.hpp"

namespace folcoh {

/// Polynomial known modulo terms of degree > order.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(Polynomial poly, unsigned order) : poly_(poly.truncated(order)), order_(order) {}

    static TruncatedSeries one(const Coords& coords, unsigned order) {
        return {Polynomial::constant(coords, Scalar(1)), order};
    }

    const Polynomial& polynomial() const noexcept { return poly_; }
    unsigned order() const noexcept { return order_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check(o);
        poly_ += o.poly_;
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check(b);
        return {a.poly_ * b.poly_, a.order_};
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const Scalar& s) { return {a.poly_ * s, a.order_}; }

    /// exp(-f) mod degree > order, for f without constant term.
    static TruncatedSeries exp_negative(const Polynomial& f, unsigned order) {
        if (!f.is_zero() && *f.min_degree() == 0)
            throw Error("truncated exponential needs f(0) = 0");
        TruncatedSeries minus_f(-f, order);
        TruncatedSeries term = one(f.coords(), order);
        TruncatedSeries sum = term;
        // (-f)^j has degree >= j, so terms beyond j = order vanish
        for (unsigned j = 1; j <= order; ++j) {
            term = term * minus_f * Scalar(mpq_class(1, j));
            if (term.poly_.is_zero()) break;
            sum += term;
        }
        return sum;
    }

    /// Equality modulo terms of degree > order.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order_ == b.order_ && a.poly_ == b.poly_;
    }

private:
    void check(const TruncatedSeries& o) const {
        if (o.order_ != order_) throw Error("truncation order mismatch");
    }

    Polynomial poly_;
    unsigned order_ = 0;
};

/// Weighted truncation of a form: a term with polynomial degree e on a
/// k-form has weight e + k (each leaf differential counts once).  d_F
/// preserves this weight and wedging with a 1-form raises it, so
/// computations modulo weight > order are consistent.
inline RegularFoliatedForm truncate_weighted(const RegularFoliatedForm& form, unsigned order) {
    const std::size_t k = form.degree();
    return form.map_components([&](IndexSet, const Polynomial& p) {
        return k > order ? Polynomial(p.coords()) : p.truncated(static_cast<Monomial::Exponent>(order - k));
    });
}

/// nabla s = alpha (x) s in the fixed trivialization s.
class ConnectionPotential {
public:
    explicit ConnectionPotential(RegularFoliatedForm alpha) : alpha_(std::move(alpha)) {
        if (alpha_.degree() != 1) throw Error("connection potential must be a 1-form");
        RegularFoliatedForm residual = d_regular(alpha_);
        if (!residual.is_zero()) throw NotClosedForm<RegularFoliatedForm>(std::move(residual));
    }

    const RegularFoliatedForm& alpha() const noexcept { return alpha_; }
    const RegularModel& model() const noexcept { return alpha_.frame(); }

private:
    RegularFoliatedForm alpha_;
};

/// form (x) (coefficient * s).
struct TwistedForm {
    RegularFoliatedForm form;
    TruncatedSeries coefficient;

    unsigned order() const { return coefficient.order(); }

    /// The form with the coefficient multiplied in, modulo weight > order.
    RegularFoliatedForm expanded() const { return truncate_weighted(form.times(coefficient.polynomial()), order()); }
};

/// d^nabla(w (x) s) = d_F(w) (x) s + (-1)^k w ^ alpha (x) s, modulo weight > order.
/// The result carries coefficient 1.
inline TwistedForm d_nabla(const TwistedForm& eta, const ConnectionPotential& pot, unsigned order) {
    if (eta.order() != order) throw Error("truncation order mismatch");
    if (!(eta.form.frame() == pot.model())) throw CoordinateMismatch();
    RegularFoliatedForm w = eta.expanded();
    RegularFoliatedForm twist = wedge(w, pot.alpha());
    RegularFoliatedForm out = d_regular(w);
    if (w.degree() % 2 == 1) {
        out -= twist;
    } else {
        out += twist;
    }
    return {truncate_weighted(out, order), TruncatedSeries::one(pot.model().coords(), order)};
}

/// Flat section r = exp(-f) s with d_F f = alpha, returned as its
/// coefficient relative to s modulo degree > order.
inline TruncatedSeries flat_section(const ConnectionPotential& pot, unsigned order) {
    Polynomial f = primitive_regular(pot.alpha()).component(IndexSet{});
    return TruncatedSeries::exp_negative(f, order);
}

/// nabla r for r = coefficient * s, modulo weight > order.  Zero for a flat section.
inline RegularFoliatedForm flatness_residual(const TruncatedSeries& coefficient, const ConnectionPotential& pot) {
    RegularFoliatedForm section = RegularFoliatedForm::function(pot.model(), coefficient.polynomial());
    return d_nabla({section, TruncatedSeries::one(pot.model().coords(), coefficient.order())}, pot,
                   coefficient.order())
        .form;
}

}  // namespace folcoh
