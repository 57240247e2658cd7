#pragma once

#include "gvb/graded_function.hpp"

#include <compare>
#include <map>
#include <utility>
#include <vector>

namespace gvb {

/// One generator of the contact basis: dx^lambda or theta^A_Lambda.
struct FormGen {
    bool is_theta = false;
    int index = 0;  // lambda for dx, field id for theta
    MultiIndex jet; // theta only

    static FormGen dx(int lambda) { return {false, lambda, {}}; }
    static FormGen theta(int field, MultiIndex mi) {
        return {true, field, std::move(mi)};
    }

    Parity parity(const Model& m) const {
        return is_theta ? m.field_parity(index) : Parity::Even;
    }

    std::strong_ordering operator<=>(const FormGen&) const = default;
    bool operator==(const FormGen&) const = default;
};

/// Canonical wedge word: dx generators first with strictly increasing
/// index, then theta generators in canonical jet order. A theta of an odd
/// field commutes with itself and may repeat; every other generator
/// squares to zero.
struct WedgeWord {
    std::vector<FormGen> gens;

    int contact_degree() const {
        int k = 0;
        for (const auto& g : gens) k += g.is_theta ? 1 : 0;
        return k;
    }
    int horizontal_degree() const {
        return static_cast<int>(gens.size()) - contact_degree();
    }
    int odd_theta_count(const Model& m) const {
        int k = 0;
        for (const auto& g : gens)
            if (g.is_theta && m.field_parity(g.index) == Parity::Odd) ++k;
        return k;
    }

    std::strong_ordering operator<=>(const WedgeWord&) const = default;
    bool operator==(const WedgeWord&) const = default;
};

namespace detail {

/// Sorts a concatenated wedge word into canonical order, accumulating the
/// transposition signs of the given rule. Returns 0 if the word vanishes
/// (a repeated generator whose self-swap sign is -1).
template <typename Rule>
int normalize_word(std::vector<FormGen>& gens, const Model& m) {
    int sign = 1;
    // Insertion sort; words are tiny. Equal elements never transpose.
    for (std::size_t i = 1; i < gens.size(); ++i) {
        FormGen g = gens[i];
        const Parity pg = g.parity(m);
        std::size_t j = i;
        while (j > 0 && g < gens[j - 1]) {
            sign *= Rule::swap_sign(1, gens[j - 1].parity(m), 1, pg);
            gens[j] = gens[j - 1];
            --j;
        }
        gens[j] = g;
    }
    for (std::size_t i = 1; i < gens.size(); ++i) {
        if (gens[i] == gens[i - 1] &&
            Rule::swap_sign(1, gens[i].parity(m), 1, gens[i].parity(m)) == -1)
            return 0;
    }
    return sign;
}

}  // namespace detail

/// Bigraded exterior form over the contact basis {dx^lambda,
/// theta^A_Lambda}, stored as a canonical sum of (graded-function
/// coefficient) * (wedge word) terms with the coefficient on the left.
class GradedForm {
  public:
    struct Term {
        WedgeWord word;
        GradedFunction coeff;
    };

    GradedForm() = default;

    static GradedForm zero(const Model& m = {}) {
        GradedForm f;
        f.model_ = m;
        return f;
    }

    static GradedForm from_function(GradedFunction f) {
        GradedForm out;
        out.model_ = f.model();
        if (!f.is_zero()) out.terms_.push_back({{}, std::move(f)});
        return out;
    }

    static GradedForm dx(const Model& m, int lambda) {
        m.check_coord(lambda);
        return single(m, {FormGen::dx(lambda)});
    }

    static GradedForm theta(const Model& m, int field, MultiIndex mi = {}) {
        m.check_order(mi);
        if (field < 0 || field >= m.field_count())
            throw DomainError("unknown field id");
        return single(m, {FormGen::theta(field, std::move(mi))});
    }

    /// The horizontal volume form dx^0 ^ ... ^ dx^{n-1}.
    static GradedForm omega(const Model& m) {
        std::vector<FormGen> gens;
        for (int l = 0; l < m.dim(); ++l) gens.push_back(FormGen::dx(l));
        return single(m, std::move(gens));
    }

    const Model& model() const { return model_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GradedForm operator-() const {
        GradedForm out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    friend GradedForm operator+(const GradedForm& a, const GradedForm& b) {
        GradedForm out;
        out.model_ = merge_models(a.model_, b.model_);
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end()) { out.terms_.push_back(*ia++); continue; }
            if (ia == a.terms_.end()) { out.terms_.push_back(*ib++); continue; }
            if (ia->word < ib->word) { out.terms_.push_back(*ia++); }
            else if (ib->word < ia->word) { out.terms_.push_back(*ib++); }
            else {
                GradedFunction s = ia->coeff + ib->coeff;
                if (!s.is_zero()) out.terms_.push_back({ia->word, std::move(s)});
                ++ia; ++ib;
            }
        }
        return out;
    }

    friend GradedForm operator-(const GradedForm& a, const GradedForm& b) {
        return a + (-b);
    }

    friend GradedForm operator*(const Rational& r, const GradedForm& f) {
        if (r == 0) return zero(f.model_);
        GradedForm out = f;
        for (auto& t : out.terms_) t.coeff = r * t.coeff;
        return out;
    }

    bool operator==(const GradedForm& other) const {
        if (terms_.size() != other.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].word != other.terms_[i].word) return false;
            if (!(terms_[i].coeff == other.terms_[i].coeff)) return false;
        }
        return true;
    }

    /// Builds from raw terms, canonicalizing words with the true sign rule.
    static GradedForm from_terms(const Model& m, std::vector<Term> raw) {
        GradedForm out = zero(m);
        for (auto& t : raw) {
            GradedForm piece = zero(m);
            int sign = detail::normalize_word<GradedSignRule>(t.word.gens, m);
            if (sign == 0 || t.coeff.is_zero()) continue;
            GradedFunction c = (sign < 0) ? -t.coeff : t.coeff;
            piece.terms_.push_back({std::move(t.word), std::move(c)});
            out = out + piece;
        }
        return out;
    }

  private:
    static GradedForm single(const Model& m, std::vector<FormGen> gens) {
        GradedForm f;
        f.model_ = m;
        f.terms_.push_back({WedgeWord{std::move(gens)},
                            GradedFunction::constant(Rational{1}, m)});
        return f;
    }

    Model model_;
    std::vector<Term> terms_;
};

/// Graded wedge product under an arbitrary sign rule; the public wedge and
/// operator* use the bigraded rule.
template <typename Rule>
GradedForm wedge_rule(const GradedForm& a, const GradedForm& b) {
    const Model& m = merge_models(a.model(), b.model());
    std::vector<GradedForm::Term> raw;
    for (const auto& ta : a.terms()) {
        // Sign collected when a degree-0 odd factor crosses the left word.
        int cross = 1;
        for (const auto& g : ta.word.gens)
            cross *= Rule::swap_sign(0, Parity::Odd, 1, g.parity(m));
        for (const auto& tb : b.terms()) {
            GradedFunction coeff_b = tb.coeff;
            if (cross == -1)
                coeff_b = coeff_b.parity_part(Parity::Even) -
                          coeff_b.parity_part(Parity::Odd);
            GradedFunction c =
                GradedFunction::multiply_rule<Rule>(ta.coeff, coeff_b);
            if (c.is_zero()) continue;
            std::vector<FormGen> gens = ta.word.gens;
            gens.insert(gens.end(), tb.word.gens.begin(), tb.word.gens.end());
            const int sign = detail::normalize_word<Rule>(gens, m);
            if (sign == 0) continue;
            if (sign < 0) c = -c;
            raw.push_back({WedgeWord{std::move(gens)}, std::move(c)});
        }
    }
    // Words already canonical under Rule; combine like terms.
    GradedForm out = GradedForm::zero(m);
    for (auto& t : raw)
        out = out + GradedForm::from_terms(m, {std::move(t)});
    return out;
}

inline GradedForm wedge(const GradedForm& a, const GradedForm& b) {
    return wedge_rule<GradedSignRule>(a, b);
}

inline GradedForm operator*(const GradedForm& a, const GradedForm& b) {
    return wedge(a, b);
}

inline GradedForm operator*(const GradedFunction& f, const GradedForm& a) {
    return wedge(GradedForm::from_function(f), a);
}

inline GradedForm operator*(const GradedForm& a, const GradedFunction& f) {
    return wedge(a, GradedForm::from_function(f));
}

/// The (k, m) piece of a form.
inline GradedForm bidegree_piece(const GradedForm& f, int contact, int horizontal) {
    std::vector<GradedForm::Term> terms;
    for (const auto& t : f.terms())
        if (t.word.contact_degree() == contact &&
            t.word.horizontal_degree() == horizontal)
            terms.push_back(t);
    return GradedForm::from_terms(f.model(), std::move(terms));
}

/// Projector onto contact degree k.
inline GradedForm h_contact(const GradedForm& f, int contact) {
    std::vector<GradedForm::Term> terms;
    for (const auto& t : f.terms())
        if (t.word.contact_degree() == contact) terms.push_back(t);
    return GradedForm::from_terms(f.model(), std::move(terms));
}

/// Projector onto horizontal degree m.
inline GradedForm h_horizontal(const GradedForm& f, int horizontal) {
    std::vector<GradedForm::Term> terms;
    for (const auto& t : f.terms())
        if (t.word.horizontal_degree() == horizontal) terms.push_back(t);
    return GradedForm::from_terms(f.model(), std::move(terms));
}

/// Canonical bidegree decomposition; the pieces sum to the input.
inline std::map<std::pair<int, int>, GradedForm> contact_decompose(const GradedForm& f) {
    std::map<std::pair<int, int>, std::vector<GradedForm::Term>> buckets;
    for (const auto& t : f.terms())
        buckets[{t.word.contact_degree(), t.word.horizontal_degree()}].push_back(t);
    std::map<std::pair<int, int>, GradedForm> out;
    for (auto& [km, terms] : buckets)
        out.emplace(km, GradedForm::from_terms(f.model(), std::move(terms)));
    return out;
}

struct GradingEntry {
    int degree = 0;
    Parity parity = Parity::Even;
    int contact = 0;
    int horizontal = 0;

    bool operator==(const GradingEntry&) const = default;
};

/// Form degree, Grassmann parity and bidegree of each homogeneous piece.
inline std::vector<GradingEntry> grading(const GradedForm& f) {
    const Model& m = f.model();
    std::map<std::pair<std::pair<int, int>, int>, bool> seen;
    for (const auto& t : f.terms()) {
        const int k = t.word.contact_degree();
        const int h = t.word.horizontal_degree();
        const int odd_thetas = t.word.odd_theta_count(m);
        for (Parity p : {Parity::Even, Parity::Odd}) {
            if (t.coeff.parity_part(p).is_zero()) continue;
            const int parity = (static_cast<int>(p) + odd_thetas) % 2;
            seen[{{k, h}, parity}] = true;
        }
    }
    std::vector<GradingEntry> out;
    for (const auto& [key, _] : seen) {
        const auto& [kh, parity] = key;
        out.push_back({kh.first + kh.second, static_cast<Parity>(parity),
                       kh.first, kh.second});
    }
    return out;
}

/// Max jet order over coefficient functions and theta generators.
inline int jet_order(const GradedForm& f) {
    int r = 0;
    for (const auto& t : f.terms()) {
        r = std::max(r, jet_order(t.coeff));
        for (const auto& g : t.word.gens)
            if (g.is_theta) r = std::max(r, static_cast<int>(g.jet.order()));
    }
    return r;
}

/// All theta generators (field, multi-index) present in the form.
inline std::set<JetVar> theta_generators(const GradedForm& f) {
    std::set<JetVar> out;
    for (const auto& t : f.terms())
        for (const auto& g : t.word.gens)
            if (g.is_theta) out.insert(JetVar{g.index, g.jet});
    return out;
}

}  // namespace gvb
