#pragma once

#include "gvb/jet_calculus.hpp"

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace gvb {

/// A graded Lagrangian L = density * omega, a (0, n) form.
class Lagrangian {
  public:
    Lagrangian() = default;
    Lagrangian(Model m, GradedFunction density)
        : model_(std::move(m)), density_(std::move(density)) {
        merge_models(model_, density_.model());
    }

    const Model& model() const { return model_; }
    const GradedFunction& density() const { return density_; }

    GradedForm as_form() const {
        return wedge(GradedForm::from_function(density_), GradedForm::omega(model_));
    }

    /// Extracts the density of a purely horizontal top-degree form.
    static Lagrangian from_top_form(const GradedForm& form) {
        const Model& m = form.model();
        GradedFunction density = GradedFunction::zero(m);
        for (const auto& t : form.terms()) {
            if (t.word.contact_degree() != 0 ||
                t.word.horizontal_degree() != m.dim())
                throw DomainError("Lagrangian form must have bidegree (0, n)");
            density = density + t.coeff;
        }
        return Lagrangian(m, std::move(density));
    }

  private:
    Model model_;
    GradedFunction density_;
};

/// Element of E_1: the density variation sum theta^A ^ E_A omega, stored by
/// its components E_A per field.
class DensityVariation {
  public:
    DensityVariation() = default;
    DensityVariation(Model m, std::map<int, GradedFunction> components)
        : model_(std::move(m)), components_(std::move(components)) {}

    const Model& model() const { return model_; }
    const std::map<int, GradedFunction>& components() const { return components_; }

    GradedFunction component(int field) const {
        auto it = components_.find(field);
        return it == components_.end() ? GradedFunction::zero(model_) : it->second;
    }

    bool is_zero() const {
        for (const auto& [f, g] : components_)
            if (!g.is_zero()) return false;
        return true;
    }

    GradedForm as_form() const {
        GradedForm out = GradedForm::zero(model_);
        const GradedForm vol = GradedForm::omega(model_);
        for (const auto& [field, e] : components_) {
            if (e.is_zero()) continue;
            out = out + wedge(GradedForm::theta(model_, field),
                              wedge(GradedForm::from_function(e), vol));
        }
        return out;
    }

    bool operator==(const DensityVariation& other) const {
        for (int f = 0; f < model_.field_count(); ++f)
            if (!(component(f) == other.component(f))) return false;
        return true;
    }

  private:
    Model model_;
    std::map<int, GradedFunction> components_;
};

/// The contracted volume form omega_lambda = d_lambda -| omega.
inline GradedForm omega_contracted(const Model& m, int lambda) {
    ContactDerivation d_l =
        prolong(m, {{lambda, GradedFunction::constant(Rational{1}, m)}}, {});
    return interior_product(d_l, GradedForm::omega(m));
}

/// Lepagean tail Xi = sum theta^A_Sigma ^ F^{(lambda; Sigma)}_A omega_lambda.
/// Keys are (field, Sigma, leading lambda).
class LepageanTail {
  public:
    using Key = std::tuple<int, MultiIndex, int>;

    LepageanTail() = default;
    LepageanTail(Model m, std::map<Key, GradedFunction> coeffs)
        : model_(std::move(m)), coeffs_(std::move(coeffs)) {}

    const Model& model() const { return model_; }
    const std::map<Key, GradedFunction>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    GradedForm as_form() const {
        GradedForm out = GradedForm::zero(model_);
        for (const auto& [key, f] : coeffs_) {
            const auto& [field, sigma, lambda] = key;
            out = out + wedge(GradedForm::theta(model_, field, sigma),
                              wedge(GradedForm::from_function(f),
                                    omega_contracted(model_, lambda)));
        }
        return out;
    }

  private:
    Model model_;
    std::map<Key, GradedFunction> coeffs_;
};

/// rho-bar: sum over fields and distinct multi-indices of
/// (-1)^{|Lambda|} theta^A ^ d_Lambda(del^Lambda_A -| phi). Defined on
/// homogeneous-horizontal-degree-n forms of contact degree >= 1.
inline GradedForm rho_bar(const GradedForm& form) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    for (const auto& t : form.terms()) {
        if (t.word.horizontal_degree() != m.dim() || t.word.contact_degree() < 1)
            throw DomainError("rho_bar requires bidegree (k >= 1, n)");
    }
    GradedForm out = GradedForm::zero(m);
    for (const auto& v : theta_generators(form)) {
        GradedForm inner = jet_contraction(form, v.field, v.mi);
        if (inner.is_zero()) continue;
        inner = iterated_total_derivative(inner, v.mi);
        GradedForm piece = wedge(GradedForm::theta(m, v.field), inner);
        if (v.mi.order() % 2 == 1) piece = -piece;
        out = out + piece;
    }
    return out;
}

/// The projector rho = sum_{k>0} (1/k) rho_bar(h_k(h^n(phi))). Idempotent
/// and vanishing on horizontally exact forms.
inline GradedForm rho(const GradedForm& form) {
    if (form.is_zero()) return form;
    const Model& m = form.model();
    GradedForm out = GradedForm::zero(m);
    for (const auto& [km, piece] : contact_decompose(h_horizontal(form, m.dim()))) {
        const int k = km.first;
        if (k < 1) continue;
        out = out + Rational(1, k) * rho_bar(piece);
    }
    return out;
}

/// Variational operator delta = rho after d.
inline GradedForm variational_delta(const GradedForm& form) {
    return rho(exterior_d(form));
}

/// Euler-Lagrange operator: E_A = sum over distinct unordered Lambda of
/// (-1)^{|Lambda|} d_Lambda(del^Lambda_A density).
inline DensityVariation euler_lagrange(const Lagrangian& lagrangian) {
    const Model& m = lagrangian.model();
    const GradedFunction& density = lagrangian.density();
    std::map<int, GradedFunction> components;
    for (int field = 0; field < m.field_count(); ++field)
        components.emplace(field, GradedFunction::zero(m));
    std::set<JetVar> vars = jet_variables(density);
    for (int field = 0; field < m.field_count(); ++field)
        vars.insert(JetVar{field, MultiIndex{}});
    for (const auto& v : vars) {
        GradedFunction part = left_jet_partial(density, v.field, v.mi);
        if (part.is_zero()) continue;
        part = iterated_total_derivative(part, v.mi);
        if (v.mi.order() % 2 == 1) part = -part;
        components[v.field] = components[v.field] + part;
    }
    return DensityVariation(m, std::move(components));
}

/// Lepagean coefficients in the all-h-zero gauge, built by the descending
/// recursion from the top jet order of the density. With jets keyed by
/// unordered multisets, each undifferentiated index carries the weight
/// mult(lambda, M) / |M|, which reproduces dL = delta L - d_H Xi exactly.
inline LepageanTail lepagean(const Lagrangian& lagrangian) {
    const Model& m = lagrangian.model();
    const GradedFunction& density = lagrangian.density();
    const int top = jet_order(density);
    std::map<std::pair<int, MultiIndex>, GradedFunction> g_coeffs;
    for (int order = top; order >= 1; --order) {
        for (int field = 0; field < m.field_count(); ++field) {
            for (const auto& mi : all_multi_indices(m.dim(), order)) {
                GradedFunction g = left_jet_partial(density, field, mi);
                if (order + 1 <= top) {
                    for (int lambda = 0; lambda < m.dim(); ++lambda) {
                        const MultiIndex up = mi.merged(lambda);
                        auto it = g_coeffs.find({field, up});
                        if (it == g_coeffs.end()) continue;
                        g = g - Rational(up.count(lambda), order + 1) *
                                    total_derivative(it->second, lambda);
                    }
                }
                if (!g.is_zero()) g_coeffs.emplace(std::make_pair(field, mi), std::move(g));
            }
        }
    }
    std::map<LepageanTail::Key, GradedFunction> coeffs;
    for (const auto& [key, g] : g_coeffs) {
        const auto& [field, mi] = key;
        std::set<int> seen;
        for (int lambda : mi.indices()) {
            if (!seen.insert(lambda).second) continue;
            coeffs.emplace(LepageanTail::Key{field, mi.removed(lambda), lambda},
                           Rational(mi.count(lambda),
                                    static_cast<int>(mi.order())) * g);
        }
    }
    return LepageanTail(m, std::move(coeffs));
}

/// Outcome of checking the first variational formula
/// L_theta L = theta_V -| delta L + d_H(h_0(theta -| Xi_L)) + last term.
/// For vertical theta the last term vanishes and the residual must be zero.
struct FirstVariationReport {
    GradedForm lhs;
    GradedForm rhs;
    GradedForm residual;
    bool vertical = false;
};

inline FirstVariationReport first_variational_check(const Lagrangian& lagrangian,
                                                    const ContactDerivation& d) {
    const Model& m = lagrangian.model();
    const GradedForm l_form = lagrangian.as_form();
    FirstVariationReport report;
    report.vertical = d.is_vertical();
    report.lhs = lie_derivative(d, l_form);
    const GradedForm delta_l = euler_lagrange(lagrangian).as_form();
    const GradedForm xi_l = lepagean(lagrangian).as_form() + l_form;
    report.rhs = interior_product(d.vertical_part(), delta_l) +
                 horizontal_d(h_contact(interior_product(d, xi_l), 0));
    if (!report.vertical) {
        // Reading of the ambiguous last term: (d_V(theta_H -| omega)) * density.
        const GradedForm t =
            interior_product(d.horizontal_part(), GradedForm::omega(m));
        report.rhs = report.rhs +
                     wedge(vertical_d(t),
                           GradedForm::from_function(lagrangian.density()));
    }
    report.residual = report.lhs - report.rhs;
    return report;
}

}  // namespace gvb
