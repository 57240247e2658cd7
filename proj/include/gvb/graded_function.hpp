#pragma once

#include "gvb/model.hpp"
#include "gvb/scalar.hpp"

#include <compare>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace gvb {

/// A jet coordinate s^A_Lambda: field id plus unordered multi-index.
struct JetVar {
    int field = 0;
    MultiIndex mi;

    std::strong_ordering operator<=>(const JetVar&) const = default;
    bool operator==(const JetVar&) const = default;
};

/// Bigraded commutation law: transposing adjacent homogeneous elements of
/// form degrees (da, db) and parities (pa, pb) multiplies by
/// (-1)^(da*db + pa*pb). Merge routines are parameterized on the rule so
/// tests can run the engine against a deliberately broken convention.
struct GradedSignRule {
    static int swap_sign(int deg_a, Parity pa, int deg_b, Parity pb) {
        const int e = deg_a * deg_b + static_cast<int>(pa) * static_cast<int>(pb);
        return (e % 2 != 0) ? -1 : 1;
    }
};

/// Product of distinct odd jet variables in canonical order.
using OddWord = std::vector<JetVar>;

namespace detail {

/// Merges two strictly increasing odd words. Returns the sign collected
/// from the transpositions, or 0 if a generator repeats (square-zero).
template <typename Rule>
int merge_odd_words(const OddWord& a, const OddWord& b, OddWord& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    int sign = 1;
    const int cross = Rule::swap_sign(0, Parity::Odd, 0, Parity::Odd);
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size()) { out.push_back(a[ia++]); continue; }
        if (ia == a.size()) { out.push_back(b[ib++]); continue; }
        if (a[ia] == b[ib]) return 0;
        if (a[ia] < b[ib]) {
            out.push_back(a[ia++]);
        } else {
            // b[ib] moves left across the remaining elements of a.
            if ((a.size() - ia) % 2 == 1 && cross == -1) sign = -sign;
            out.push_back(b[ib++]);
        }
    }
    return sign;
}

}  // namespace detail

/// Canonical element of the ring of graded functions: a sum of terms
/// (commutative scalar coefficient) * (odd monomial). Zero iff the term
/// list is empty, so equality and the zero test are exact.
class GradedFunction {
  public:
    struct Term {
        OddWord odd;
        ScalarPoly coeff;
    };

    GradedFunction() = default;

    static GradedFunction zero(const Model& m = {}) {
        GradedFunction f;
        f.model_ = m;
        return f;
    }

    static GradedFunction constant(Rational r, const Model& m = {}) {
        return from_scalar(ScalarPoly::constant(std::move(r)), m);
    }

    static GradedFunction from_scalar(ScalarPoly p, const Model& m) {
        GradedFunction f;
        f.model_ = m;
        if (!p.is_zero()) f.terms_.push_back({{}, std::move(p)});
        return f;
    }

    /// The coordinate function x^lambda.
    static GradedFunction coord(const Model& m, int lambda) {
        m.check_coord(lambda);
        return from_scalar(ScalarPoly::atom(Atom::coord(lambda)), m);
    }

    /// The jet variable s^A_Lambda of either parity.
    static GradedFunction jet(const Model& m, int field, MultiIndex mi) {
        m.check_order(mi);
        if (m.field_parity(field) == Parity::Even)
            return from_scalar(ScalarPoly::atom(Atom::jet_var(field, std::move(mi))), m);
        GradedFunction f;
        f.model_ = m;
        f.terms_.push_back({{JetVar{field, std::move(mi)}}, ScalarPoly::one()});
        return f;
    }

    const Model& model() const { return model_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    const Rational* as_constant() const {
        static const Rational kZero{0};
        if (terms_.empty()) return &kZero;
        if (terms_.size() == 1 && terms_[0].odd.empty())
            return terms_[0].coeff.as_constant();
        return nullptr;
    }

    /// True if every term is free of odd generators.
    bool is_scalar() const {
        for (const auto& t : terms_)
            if (!t.odd.empty()) return false;
        return true;
    }

    ScalarPoly scalar_part() const {
        for (const auto& t : terms_)
            if (t.odd.empty()) return t.coeff;
        return {};
    }

    /// Parity if homogeneous, nullopt otherwise. Zero counts as even.
    std::optional<Parity> homogeneous_parity() const {
        std::optional<Parity> p;
        for (const auto& t : terms_) {
            Parity tp = static_cast<Parity>(t.odd.size() % 2);
            if (!p) p = tp;
            else if (*p != tp) return std::nullopt;
        }
        return p ? p : std::optional<Parity>(Parity::Even);
    }

    /// The homogeneous component of the given parity.
    GradedFunction parity_part(Parity p) const {
        GradedFunction out;
        out.model_ = model_;
        for (const auto& t : terms_)
            if (static_cast<int>(t.odd.size() % 2) == static_cast<int>(p))
                out.terms_.push_back(t);
        return out;
    }

    GradedFunction operator-() const {
        GradedFunction out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    friend GradedFunction operator+(const GradedFunction& a, const GradedFunction& b) {
        GradedFunction out;
        out.model_ = merge_models(a.model_, b.model_);
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end()) { out.terms_.push_back(*ia++); continue; }
            if (ia == a.terms_.end()) { out.terms_.push_back(*ib++); continue; }
            if (ia->odd < ib->odd) { out.terms_.push_back(*ia++); }
            else if (ib->odd < ia->odd) { out.terms_.push_back(*ib++); }
            else {
                ScalarPoly s = ia->coeff + ib->coeff;
                if (!s.is_zero()) out.terms_.push_back({ia->odd, std::move(s)});
                ++ia; ++ib;
            }
        }
        return out;
    }

    friend GradedFunction operator-(const GradedFunction& a, const GradedFunction& b) {
        return a + (-b);
    }

    friend GradedFunction operator*(const GradedFunction& a, const GradedFunction& b) {
        return multiply_rule<GradedSignRule>(a, b);
    }

    friend GradedFunction operator*(const Rational& r, const GradedFunction& f) {
        if (r == 0) return zero(f.model_);
        GradedFunction out = f;
        for (auto& t : out.terms_) t.coeff = r * t.coeff;
        return out;
    }

    template <typename Rule>
    static GradedFunction multiply_rule(const GradedFunction& a, const GradedFunction& b) {
        GradedFunction out;
        out.model_ = merge_models(a.model_, b.model_);
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                // Scalar coefficients commute with everything; only the odd
                // words exchange. tb.coeff crosses ta.odd at degree 0 with
                // even parity, so no sign from that move.
                OddWord merged;
                const int sign = detail::merge_odd_words<Rule>(ta.odd, tb.odd, merged);
                if (sign == 0) continue;
                ScalarPoly c = ta.coeff * tb.coeff;
                if (sign < 0) c = -c;
                if (c.is_zero()) continue;
                GradedFunction piece;
                piece.model_ = out.model_;
                piece.terms_.push_back({std::move(merged), std::move(c)});
                out = out + piece;
            }
        }
        return out;
    }

    GradedFunction pow(unsigned e) const {
        GradedFunction acc = constant(Rational{1}, model_);
        for (unsigned i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const GradedFunction& other) const {
        if (terms_.size() != other.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].odd != other.terms_[i].odd) return false;
            if (!(terms_[i].coeff == other.terms_[i].coeff)) return false;
        }
        return true;
    }

    /// Constructs directly from terms; sorts and collapses but trusts odd
    /// words to be individually canonical.
    static GradedFunction from_terms(const Model& m, std::vector<Term> terms) {
        GradedFunction out;
        out.model_ = m;
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.odd < b.odd; });
        for (auto& t : terms) {
            if (t.coeff.is_zero()) continue;
            if (!out.terms_.empty() && out.terms_.back().odd == t.odd) {
                out.terms_.back().coeff = out.terms_.back().coeff + t.coeff;
                if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
            } else {
                out.terms_.push_back(std::move(t));
            }
        }
        return out;
    }

  private:
    Model model_;
    std::vector<Term> terms_;
};

namespace detail {

/// d(poly)/d(var) for var a Coord or Jet atom, with the chain rule through
/// registered function symbols.
inline ScalarPoly scalar_derivative(const ScalarPoly& poly, const Atom& var,
                                    const Model& model) {
    ScalarPoly out;
    for (const auto& term : poly.terms()) {
        for (std::size_t k = 0; k < term.mono.size(); ++k) {
            const auto& [atom, exp] = term.mono[k];
            ScalarPoly datom;
            switch (atom.kind) {
                case AtomKind::Coord:
                case AtomKind::Jet:
                    if (compare(atom, var) == 0) datom = ScalarPoly::one();
                    break;
                case AtomKind::Func: {
                    ScalarPoly darg = scalar_derivative(*atom.arg, var, model);
                    if (darg.is_zero()) break;
                    const ScalarPoly fprime = substitute_placeholder(
                        model.function(atom.index).derivative, *atom.arg);
                    datom = fprime * darg;
                    break;
                }
                case AtomKind::Placeholder:
                    break;
            }
            if (datom.is_zero()) continue;
            ScalarPoly rest = ScalarPoly::constant(term.coeff * Rational{exp});
            for (std::size_t j = 0; j < term.mono.size(); ++j) {
                const auto& [a2, e2] = term.mono[j];
                const int e = (j == k) ? e2 - 1 : e2;
                if (e > 0) rest = rest * ScalarPoly::atom(a2).pow(static_cast<unsigned>(e));
            }
            out = out + rest * datom;
        }
    }
    return out;
}

inline void collect_jets(const ScalarPoly& poly, std::set<JetVar>& out) {
    for (const auto& term : poly.terms()) {
        for (const auto& [atom, exp] : term.mono) {
            if (atom.kind == AtomKind::Jet)
                out.insert(JetVar{atom.index, atom.jet});
            else if (atom.kind == AtomKind::Func)
                collect_jets(*atom.arg, out);
        }
    }
}

}  // namespace detail

/// All jet variables (either parity) occurring in f.
inline std::set<JetVar> jet_variables(const GradedFunction& f) {
    std::set<JetVar> out;
    for (const auto& term : f.terms()) {
        detail::collect_jets(term.coeff, out);
        for (const auto& v : term.odd) out.insert(v);
    }
    return out;
}

inline int jet_order(const GradedFunction& f) {
    int r = 0;
    for (const auto& v : jet_variables(f)) r = std::max(r, static_cast<int>(v.mi.order()));
    return r;
}

/// Left partial derivative with respect to the single jet coordinate
/// s^A_Lambda. Removing the j-th generator of an odd monomial (0-based)
/// contributes the interior-product sign (-1)^j.
inline GradedFunction left_jet_partial(const GradedFunction& f, int field,
                                       const MultiIndex& mi) {
    if (f.is_zero()) return f;
    const Model& m = f.model();
    std::vector<GradedFunction::Term> terms;
    if (m.field_parity(field) == Parity::Even) {
        const Atom var = Atom::jet_var(field, mi);
        for (const auto& t : f.terms()) {
            ScalarPoly d = detail::scalar_derivative(t.coeff, var, m);
            if (!d.is_zero()) terms.push_back({t.odd, std::move(d)});
        }
    } else {
        const JetVar var{field, mi};
        for (const auto& t : f.terms()) {
            for (std::size_t j = 0; j < t.odd.size(); ++j) {
                if (t.odd[j] != var) continue;
                OddWord rest = t.odd;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                ScalarPoly c = (j % 2 == 0) ? t.coeff : -t.coeff;
                terms.push_back({std::move(rest), std::move(c)});
                break;  // generators are distinct within a word
            }
        }
    }
    return GradedFunction::from_terms(m, std::move(terms));
}

/// Derivative with respect to explicit x^lambda dependence only; jet
/// variables are treated as constants.
inline GradedFunction base_partial(const GradedFunction& f, int lambda) {
    if (f.is_zero()) return f;
    const Model& m = f.model();
    m.check_coord(lambda);
    const Atom var = Atom::coord(lambda);
    std::vector<GradedFunction::Term> terms;
    for (const auto& t : f.terms()) {
        ScalarPoly d = detail::scalar_derivative(t.coeff, var, m);
        if (!d.is_zero()) terms.push_back({t.odd, std::move(d)});
    }
    return GradedFunction::from_terms(m, std::move(terms));
}

}  // namespace gvb
