#pragma once

#include "gvb/errors.hpp"
#include "gvb/multi_index.hpp"
#include "gvb/rational.hpp"

#include <compare>
#include <memory>
#include <utility>
#include <vector>

namespace gvb {

class ScalarPoly;

enum class AtomKind { Coord, Jet, Func, Placeholder };

/// One commuting indeterminate of the coefficient ring: a base coordinate
/// x^lambda, an even jet variable s^i_Lambda, or a unary function symbol
/// applied to a scalar argument. Placeholder is the formal argument used
/// inside registered derivative rules.
struct Atom {
    AtomKind kind = AtomKind::Coord;
    int index = 0;                          // coordinate, field id, or function id
    MultiIndex jet;                         // Jet only
    std::shared_ptr<const ScalarPoly> arg;  // Func only

    static Atom coord(int lambda) { return Atom{AtomKind::Coord, lambda, {}, nullptr}; }
    static Atom jet_var(int field, MultiIndex mi) {
        return Atom{AtomKind::Jet, field, std::move(mi), nullptr};
    }
    static Atom func(int fn, ScalarPoly argument);
    static Atom placeholder() { return Atom{AtomKind::Placeholder, 0, {}, nullptr}; }
};

std::strong_ordering compare(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

/// Product of atom powers, sorted by atom; exponents >= 1.
using Monomial = std::vector<std::pair<Atom, int>>;

std::strong_ordering compare(const Monomial& a, const Monomial& b);

/// Canonical multivariate polynomial with rational coefficients: terms
/// sorted by monomial, one term per monomial, no zero coefficients.
/// Equality is structural and therefore decides semantic equality.
class ScalarPoly {
  public:
    struct Term {
        Rational coeff;
        Monomial mono;
    };

    ScalarPoly() = default;

    static ScalarPoly zero() { return {}; }
    static ScalarPoly constant(Rational r) {
        ScalarPoly p;
        if (r != 0) p.terms_.push_back({std::move(r), {}});
        return p;
    }
    static ScalarPoly one() { return constant(Rational{1}); }
    static ScalarPoly atom(Atom a) {
        ScalarPoly p;
        p.terms_.push_back({Rational{1}, {{std::move(a), 1}}});
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Non-null iff the polynomial is a rational constant (including zero).
    const Rational* as_constant() const {
        static const Rational kZero{0};
        if (terms_.empty()) return &kZero;
        if (terms_.size() == 1 && terms_[0].mono.empty()) return &terms_[0].coeff;
        return nullptr;
    }

    ScalarPoly operator-() const {
        ScalarPoly out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    friend ScalarPoly operator+(const ScalarPoly& a, const ScalarPoly& b) {
        ScalarPoly out;
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end()) { out.terms_.push_back(*ia++); continue; }
            if (ia == a.terms_.end()) { out.terms_.push_back(*ib++); continue; }
            auto c = compare(ia->mono, ib->mono);
            if (c < 0) { out.terms_.push_back(*ia++); }
            else if (c > 0) { out.terms_.push_back(*ib++); }
            else {
                Rational s = ia->coeff + ib->coeff;
                if (s != 0) out.terms_.push_back({std::move(s), ia->mono});
                ++ia; ++ib;
            }
        }
        return out;
    }

    friend ScalarPoly operator-(const ScalarPoly& a, const ScalarPoly& b) {
        return a + (-b);
    }

    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
        ScalarPoly out;
        for (const auto& ta : a.terms_) {
            ScalarPoly row;
            row.terms_.reserve(b.terms_.size());
            for (const auto& tb : b.terms_) {
                row.terms_.push_back({ta.coeff * tb.coeff,
                                      multiply_monomials(ta.mono, tb.mono)});
            }
            std::sort(row.terms_.begin(), row.terms_.end(),
                      [](const Term& x, const Term& y) { return compare(x.mono, y.mono) < 0; });
            row.collapse();
            out = out + row;
        }
        return out;
    }

    friend ScalarPoly operator*(const Rational& r, const ScalarPoly& p) {
        if (r == 0) return {};
        ScalarPoly out = p;
        for (auto& t : out.terms_) t.coeff *= r;
        return out;
    }

    ScalarPoly pow(unsigned e) const {
        ScalarPoly acc = one();
        for (unsigned i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const ScalarPoly& other) const {
        return compare_poly(*this, other) == 0;
    }

    friend std::strong_ordering compare_poly(const ScalarPoly& a, const ScalarPoly& b) {
        const std::size_t na = a.terms_.size(), nb = b.terms_.size();
        for (std::size_t i = 0; i < na && i < nb; ++i) {
            if (auto c = compare(a.terms_[i].mono, b.terms_[i].mono); c != 0) return c;
            if (a.terms_[i].coeff < b.terms_[i].coeff) return std::strong_ordering::less;
            if (b.terms_[i].coeff < a.terms_[i].coeff) return std::strong_ordering::greater;
        }
        return na <=> nb;
    }

    /// Applies fn to every atom in the polynomial (recursing through
    /// function-symbol arguments is the visitor's responsibility).
    template <typename Fn>
    void visit_atoms(Fn&& fn) const {
        for (const auto& t : terms_)
            for (const auto& [a, e] : t.mono) fn(a);
    }

    static Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
        Monomial out;
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            if (ib == b.end()) { out.push_back(*ia++); continue; }
            if (ia == a.end()) { out.push_back(*ib++); continue; }
            auto c = compare(ia->first, ib->first);
            if (c < 0) out.push_back(*ia++);
            else if (c > 0) out.push_back(*ib++);
            else { out.push_back({ia->first, ia->second + ib->second}); ++ia; ++ib; }
        }
        return out;
    }

  private:
    void collapse() {
        std::vector<Term> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && compare(merged.back().mono, t.mono) == 0) {
                merged.back().coeff += t.coeff;
                if (merged.back().coeff == 0) merged.pop_back();
            } else if (t.coeff != 0) {
                merged.push_back(std::move(t));
            }
        }
        terms_ = std::move(merged);
    }

    std::vector<Term> terms_;
};

inline Atom Atom::func(int fn, ScalarPoly argument) {
    return Atom{AtomKind::Func, fn, {},
                std::make_shared<const ScalarPoly>(std::move(argument))};
}

inline std::strong_ordering compare(const Atom& a, const Atom& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    switch (a.kind) {
        case AtomKind::Coord:
            return a.index <=> b.index;
        case AtomKind::Jet:
            if (auto c = a.index <=> b.index; c != 0) return c;
            return a.jet <=> b.jet;
        case AtomKind::Func:
            if (auto c = a.index <=> b.index; c != 0) return c;
            return compare_poly(*a.arg, *b.arg);
        case AtomKind::Placeholder:
            return std::strong_ordering::equal;
    }
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare(const Monomial& a, const Monomial& b) {
    const std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0; i < na && i < nb; ++i) {
        if (auto c = compare(a[i].first, b[i].first); c != 0) return c;
        if (auto c = a[i].second <=> b[i].second; c != 0) return c;
    }
    return na <=> nb;
}

/// Replaces every Placeholder atom (recursively, through function-symbol
/// arguments) with the given scalar. Used to instantiate derivative rules.
inline ScalarPoly substitute_placeholder(const ScalarPoly& poly,
                                         const ScalarPoly& value) {
    ScalarPoly out;
    for (const auto& term : poly.terms()) {
        ScalarPoly factor = ScalarPoly::constant(term.coeff);
        for (const auto& [atom, exp] : term.mono) {
            ScalarPoly base;
            switch (atom.kind) {
                case AtomKind::Placeholder:
                    base = value;
                    break;
                case AtomKind::Func:
                    base = ScalarPoly::atom(
                        Atom::func(atom.index, substitute_placeholder(*atom.arg, value)));
                    break;
                default:
                    base = ScalarPoly::atom(atom);
                    break;
            }
            factor = factor * base.pow(static_cast<unsigned>(exp));
        }
        out = out + factor;
    }
    return out;
}

}  // namespace gvb
