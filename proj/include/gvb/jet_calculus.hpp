#pragma once

#include "gvb/graded_form.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace gvb {

/// Total derivative d_lambda f = del_lambda f + sum s^A_{lambda+Lambda}
/// del^Lambda_A f over the jet variables occurring in f. Raises the jet
/// order by at most one; exceeding the model's cap is an error.
inline GradedFunction total_derivative(const GradedFunction& f, int lambda) {
    if (f.is_zero()) return f;
    const Model& m = f.model();
    m.check_coord(lambda);
    GradedFunction out = base_partial(f, lambda);
    for (const auto& v : jet_variables(f)) {
        GradedFunction part = left_jet_partial(f, v.field, v.mi);
        if (part.is_zero()) continue;
        out = out + GradedFunction::jet(m, v.field, v.mi.merged(lambda)) * part;
    }
    return out;
}

/// d_Lambda as the composition of total derivatives; total derivatives
/// commute, so the evaluation order (ascending) is immaterial.
inline GradedFunction iterated_total_derivative(const GradedFunction& f,
                                                const MultiIndex& mi) {
    GradedFunction out = f;
    for (int lambda : mi.indices()) out = total_derivative(out, lambda);
    return out;
}

/// Total derivative extended to forms as the even derivation with
/// d_lambda(dx^mu) = 0 and d_lambda(theta^A_Lambda) = theta^A_{lambda+Lambda}.
inline GradedForm total_derivative(const GradedForm& form, int lambda) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    m.check_coord(lambda);
    GradedForm out = GradedForm::zero(m);
    for (const auto& t : form.terms()) {
        out = out + GradedForm::from_terms(
                        m, {{t.word, total_derivative(t.coeff, lambda)}});
        for (std::size_t j = 0; j < t.word.gens.size(); ++j) {
            const FormGen& g = t.word.gens[j];
            if (!g.is_theta) continue;
            m.check_order(g.jet.merged(lambda));
            WedgeWord w = t.word;
            w.gens[j] = FormGen::theta(g.index, g.jet.merged(lambda));
            out = out + GradedForm::from_terms(m, {{std::move(w), t.coeff}});
        }
    }
    return out;
}

inline GradedForm iterated_total_derivative(const GradedForm& form,
                                            const MultiIndex& mi) {
    GradedForm out = form;
    for (int lambda : mi.indices()) out = total_derivative(out, lambda);
    return out;
}

namespace detail {

/// The one-form ds^A_Lambda expanded in the contact basis:
/// theta^A_Lambda + s^A_{lambda+Lambda} dx^lambda.
inline GradedForm ds_expansion(const Model& m, int field, const MultiIndex& mi) {
    GradedForm out = GradedForm::theta(m, field, mi);
    for (int lambda = 0; lambda < m.dim(); ++lambda)
        out = out + GradedFunction::jet(m, field, mi.merged(lambda)) *
                        GradedForm::dx(m, lambda);
    return out;
}

inline GradedForm word_form(const Model& m, std::vector<FormGen> gens) {
    return GradedForm::from_terms(
        m, {{WedgeWord{std::move(gens)}, GradedFunction::constant(Rational{1}, m)}});
}

}  // namespace detail

/// Graded exterior differential of a function, expanded in the contact
/// basis via ds^A_Lambda = theta^A_Lambda + s^A_{lambda+Lambda} dx^lambda.
inline GradedForm exterior_d(const GradedFunction& f) {
    if (f.is_zero()) return GradedForm::zero(f.model());
    const Model& m = f.model();
    GradedForm out = GradedForm::zero(m);
    for (int lambda = 0; lambda < m.dim(); ++lambda) {
        GradedFunction p = base_partial(f, lambda);
        if (!p.is_zero()) out = out + wedge(GradedForm::dx(m, lambda),
                                            GradedForm::from_function(p));
    }
    for (const auto& v : jet_variables(f)) {
        GradedFunction p = left_jet_partial(f, v.field, v.mi);
        if (!p.is_zero())
            out = out + wedge(detail::ds_expansion(m, v.field, v.mi),
                              GradedForm::from_function(p));
    }
    return out;
}

/// Graded exterior differential, independent of the d_H/d_V splitting.
/// Satisfies d(a^b) = da^b + (-1)^{|a|} a^db and d(d(.)) = 0.
inline GradedForm exterior_d(const GradedForm& form) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    GradedForm out = GradedForm::zero(m);
    for (const auto& t : form.terms()) {
        out = out + wedge(exterior_d(t.coeff), detail::word_form(m, t.word.gens));
        for (std::size_t j = 0; j < t.word.gens.size(); ++j) {
            const FormGen& g = t.word.gens[j];
            if (!g.is_theta) continue;  // d(dx) = 0
            // d(theta^A_Lambda) = dx^lambda ^ theta^A_{lambda+Lambda}
            GradedForm dg = GradedForm::zero(m);
            for (int lambda = 0; lambda < m.dim(); ++lambda) {
                m.check_order(g.jet.merged(lambda));
                dg = dg + wedge(GradedForm::dx(m, lambda),
                                GradedForm::theta(m, g.index, g.jet.merged(lambda)));
            }
            std::vector<FormGen> prefix(t.word.gens.begin(),
                                        t.word.gens.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<FormGen> suffix(t.word.gens.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                                        t.word.gens.end());
            GradedForm piece = wedge(GradedForm::from_function(t.coeff),
                                     detail::word_form(m, std::move(prefix)));
            piece = wedge(piece, dg);
            piece = wedge(piece, detail::word_form(m, std::move(suffix)));
            if (j % 2 == 1) piece = -piece;
            out = out + piece;
        }
    }
    return out;
}

/// Horizontal differential d_H(phi) = dx^lambda ^ d_lambda(phi).
inline GradedForm horizontal_d(const GradedForm& form) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    GradedForm out = GradedForm::zero(m);
    for (int lambda = 0; lambda < m.dim(); ++lambda)
        out = out + wedge(GradedForm::dx(m, lambda), total_derivative(form, lambda));
    return out;
}

inline GradedForm horizontal_d(const GradedFunction& f) {
    return horizontal_d(GradedForm::from_function(f));
}

/// Vertical differential: on coefficients, sum of theta^A_Lambda ^
/// del^Lambda_A f; contact-basis generators are d_V-closed.
inline GradedForm vertical_d(const GradedForm& form) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    GradedForm out = GradedForm::zero(m);
    for (const auto& t : form.terms()) {
        GradedForm df = GradedForm::zero(m);
        for (const auto& v : jet_variables(t.coeff)) {
            GradedFunction p = left_jet_partial(t.coeff, v.field, v.mi);
            if (!p.is_zero())
                df = df + wedge(GradedForm::theta(m, v.field, v.mi),
                                GradedForm::from_function(p));
        }
        if (!df.is_zero())
            out = out + wedge(df, detail::word_form(m, t.word.gens));
    }
    return out;
}

inline GradedForm vertical_d(const GradedFunction& f) {
    return vertical_d(GradedForm::from_function(f));
}

/// A contact graded derivation: horizontal components theta^lambda against
/// d_lambda plus vertical generators theta^A whose higher jet coefficients
/// are the total derivatives d_Lambda theta^A, computed on demand.
class ContactDerivation {
  public:
    ContactDerivation() = default;

    const Model& model() const { return model_; }
    Parity parity() const { return parity_; }

    const std::map<int, GradedFunction>& horizontal_components() const {
        return horizontal_;
    }
    const std::map<int, GradedFunction>& vertical_components() const {
        return vertical_;
    }

    GradedFunction horizontal(int lambda) const {
        auto it = horizontal_.find(lambda);
        return it == horizontal_.end() ? GradedFunction::zero(model_) : it->second;
    }
    GradedFunction vertical(int field) const {
        auto it = vertical_.find(field);
        return it == vertical_.end() ? GradedFunction::zero(model_) : it->second;
    }

    /// Coefficient on del^Lambda_A: d_Lambda theta^A.
    GradedFunction prolongation(int field, const MultiIndex& mi) const {
        return iterated_total_derivative(vertical(field), mi);
    }

    bool is_vertical() const { return horizontal_.empty(); }
    bool is_zero() const { return horizontal_.empty() && vertical_.empty(); }

    ContactDerivation vertical_part() const {
        ContactDerivation out;
        out.model_ = model_;
        out.parity_ = parity_;
        out.vertical_ = vertical_;
        return out;
    }

    ContactDerivation horizontal_part() const {
        ContactDerivation out;
        out.model_ = model_;
        out.parity_ = parity_;
        out.horizontal_ = horizontal_;
        return out;
    }

    friend ContactDerivation prolong(const Model& m,
                                     std::map<int, GradedFunction> horizontal,
                                     std::map<int, GradedFunction> vertical);

  private:
    Model model_;
    Parity parity_ = Parity::Even;
    std::map<int, GradedFunction> horizontal_;
    std::map<int, GradedFunction> vertical_;
};

/// Builds the contact derivation with the given horizontal components
/// (indexed by lambda) and vertical generators (indexed by field id).
/// Coefficients must be homogeneous with mutually consistent parities:
/// [theta^lambda] = [theta] and [theta^A] = [A] + [theta].
inline ContactDerivation prolong(const Model& m,
                                 std::map<int, GradedFunction> horizontal,
                                 std::map<int, GradedFunction> vertical) {
    ContactDerivation out;
    out.model_ = m;
    std::optional<Parity> p;
    auto note_slot = [&](const GradedFunction& g, Parity slot_offset,
                         const std::string& what) {
        if (g.is_zero()) return;
        auto gp = g.homogeneous_parity();
        if (!gp) throw DomainError("derivation coefficient for " + what +
                                   " is not parity-homogeneous");
        const Parity implied = *gp + slot_offset;
        if (!p) p = implied;
        else if (*p != implied)
            throw DomainError("derivation coefficient parities are inconsistent at " + what);
    };
    for (auto& [lambda, g] : horizontal) {
        m.check_coord(lambda);
        note_slot(g, Parity::Even, "dx" + std::to_string(lambda));
        if (!g.is_zero()) out.horizontal_.emplace(lambda, std::move(g));
    }
    for (auto& [field, g] : vertical) {
        if (field < 0 || field >= m.field_count()) throw DomainError("unknown field id");
        // [theta^A] = [A] + [theta]  =>  [theta] = [theta^A] + [A]
        note_slot(g, m.field_parity(field), m.field(field).name);
        if (!g.is_zero()) out.vertical_.emplace(field, std::move(g));
    }
    out.parity_ = p.value_or(Parity::Even);
    return out;
}

namespace detail {

/// Interior product of a degree (-1) graded derivation given by its values
/// on the contact-basis generators, extended by
/// D(a^b) = Da^b + (-1)^{|a| + [a][D]} a^Db.
inline GradedForm contract(
    const GradedForm& form, Parity d_parity,
    const std::function<GradedFunction(int)>& dx_value,
    const std::function<GradedFunction(int, const MultiIndex&)>& theta_value) {
    const Model& m = form.model();
    GradedForm out = GradedForm::zero(m);
    for (const auto& t : form.terms()) {
        // D annihilates 0-forms, so only the word contributes; the
        // coefficient crosses D with sign (-1)^{[f][D]}.
        GradedFunction f_adj = t.coeff;
        if (d_parity == Parity::Odd)
            f_adj = f_adj.parity_part(Parity::Even) - f_adj.parity_part(Parity::Odd);
        int sign = 1;
        for (std::size_t j = 0; j < t.word.gens.size(); ++j) {
            const FormGen& g = t.word.gens[j];
            GradedFunction val = g.is_theta ? theta_value(g.index, g.jet)
                                            : dx_value(g.index);
            if (!val.is_zero()) {
                std::vector<FormGen> prefix(t.word.gens.begin(),
                                            t.word.gens.begin() + static_cast<std::ptrdiff_t>(j));
                std::vector<FormGen> suffix(t.word.gens.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                                            t.word.gens.end());
                GradedForm piece = wedge(GradedForm::from_function(
                                             sign < 0 ? -f_adj : f_adj),
                                         word_form(m, std::move(prefix)));
                piece = wedge(piece, GradedForm::from_function(val));
                piece = wedge(piece, word_form(m, std::move(suffix)));
                out = out + piece;
            }
            // Crossing g: (-1)^{1 + [g][D]}.
            const int e = 1 + static_cast<int>(g.parity(m)) * static_cast<int>(d_parity);
            if (e % 2 != 0) sign = -sign;
        }
    }
    return out;
}

}  // namespace detail

/// Interior product theta -| phi: pairs theta^lambda with dx^lambda and
/// d_Lambda theta^A with theta^A_Lambda; lowers form degree by one.
inline GradedForm interior_product(const ContactDerivation& d, const GradedForm& form) {
    if (form.is_zero() || d.is_zero()) return GradedForm::zero(form.model());
    merge_models(d.model(), form.model());
    return detail::contract(
        form, d.parity(),
        [&](int lambda) { return d.horizontal(lambda); },
        [&](int field, const MultiIndex& mi) { return d.prolongation(field, mi); });
}

/// Contraction with the basis derivation del^Lambda_A (dual to ds^A_Lambda).
inline GradedForm jet_contraction(const GradedForm& form, int field,
                                  const MultiIndex& mi) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    return detail::contract(
        form, m.field_parity(field),
        [&](int) { return GradedFunction::zero(m); },
        [&](int f2, const MultiIndex& mi2) {
            return (f2 == field && mi2 == mi)
                       ? GradedFunction::constant(Rational{1}, m)
                       : GradedFunction::zero(m);
        });
}

/// Lie derivative via the Cartan formula L_theta = theta -| d + d (theta -|).
inline GradedForm lie_derivative(const ContactDerivation& d, const GradedForm& form) {
    return interior_product(d, exterior_d(form)) +
           exterior_d(interior_product(d, form));
}

}  // namespace gvb
