#pragma once

#include "gvb/jet_calculus.hpp"
#include "gvb/variational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gvb {

namespace detail {

inline std::string render_jet_name(const Model& m, int field, const MultiIndex& mi) {
    std::string out = m.field(field).name;
    if (!mi.empty()) {
        out += "[";
        for (std::size_t i = 0; i < mi.indices().size(); ++i) {
            if (i) out += " ";
            out += std::to_string(mi.indices()[i]);
        }
        out += "]";
    }
    return out;
}

inline std::string render_atom(const Model& m, const Atom& atom);

inline std::string render_monomial(const Model& m, const Monomial& mono) {
    std::string out;
    for (const auto& [atom, exp] : mono) {
        if (!out.empty()) out += " * ";
        out += render_atom(m, atom);
        if (exp > 1) out += "^" + std::to_string(exp);
    }
    return out;
}

inline std::string render_scalar_sum(const Model& m, const ScalarPoly& poly);

inline std::string render_atom(const Model& m, const Atom& atom) {
    switch (atom.kind) {
        case AtomKind::Coord:
            return "x" + std::to_string(atom.index);
        case AtomKind::Jet:
            return render_jet_name(m, atom.index, atom.jet);
        case AtomKind::Func:
            return m.function(atom.index).name + "(" +
                   render_scalar_sum(m, *atom.arg) + ")";
        case AtomKind::Placeholder:
            return "u";
    }
    return {};
}

/// One flattened summand of a rendered expression.
struct Summand {
    Rational coeff;
    std::vector<std::string> factors;
};

inline std::string join_factors(const Rational& coeff, bool force_coeff,
                                const std::vector<std::string>& factors) {
    std::string out;
    if (force_coeff || coeff != 1 || factors.empty()) out = to_string(coeff);
    for (const auto& f : factors) {
        if (!out.empty()) out += " * ";
        out += f;
    }
    return out;
}

inline std::string join_summands(const std::vector<Summand>& summands) {
    if (summands.empty()) return "0";
    // Leading negatives keep the signed rational ("-1 * y"); later ones
    // join with " - " and elide a unit magnitude.
    std::string out = join_factors(summands[0].coeff, summands[0].coeff < 0,
                                   summands[0].factors);
    for (std::size_t i = 1; i < summands.size(); ++i) {
        const Summand& s = summands[i];
        if (s.coeff < 0)
            out += " - " + join_factors(Rational(-s.coeff), false, s.factors);
        else
            out += " + " + join_factors(s.coeff, false, s.factors);
    }
    return out;
}

inline void append_scalar_summands(const Model& m, const ScalarPoly& poly,
                                   const std::vector<std::string>& suffix,
                                   const Rational& scale,
                                   std::vector<Summand>& out) {
    for (const auto& term : poly.terms()) {
        Summand s;
        s.coeff = term.coeff * scale;
        if (!term.mono.empty()) s.factors.push_back(render_monomial(m, term.mono));
        for (const auto& f : suffix) s.factors.push_back(f);
        out.push_back(std::move(s));
    }
}

inline std::string render_scalar_sum(const Model& m, const ScalarPoly& poly) {
    std::vector<Summand> summands;
    append_scalar_summands(m, poly, {}, Rational{1}, summands);
    return join_summands(summands);
}

inline void append_function_summands(const Model& m, const GradedFunction& f,
                                     const std::vector<std::string>& suffix,
                                     const Rational& scale,
                                     std::vector<Summand>& out) {
    for (const auto& term : f.terms()) {
        std::vector<std::string> tail;
        for (const auto& v : term.odd) tail.push_back(render_jet_name(m, v.field, v.mi));
        tail.insert(tail.end(), suffix.begin(), suffix.end());
        append_scalar_summands(m, term.coeff, tail, scale, out);
    }
}

}  // namespace detail

/// Canonical text rendering in the expression grammar itself; parsing the
/// result reproduces the value exactly.
inline std::string render_text(const GradedFunction& f) {
    std::vector<detail::Summand> summands;
    detail::append_function_summands(f.model(), f, {}, Rational{1}, summands);
    return detail::join_summands(summands);
}

inline std::string render_text(const GradedForm& form) {
    const Model& m = form.model();
    std::vector<detail::Summand> summands;
    for (const auto& t : form.terms()) {
        // Display order: coefficient, thetas, dx's. Stored order keeps dx's
        // first, so moving the k thetas across the m dx's costs (-1)^{k m}.
        std::vector<std::string> word;
        int dx_count = 0, theta_count = 0;
        for (const auto& g : t.word.gens) {
            if (g.is_theta) {
                ++theta_count;
                word.push_back("theta(" + detail::render_jet_name(m, g.index, g.jet) + ")");
            }
        }
        for (const auto& g : t.word.gens) {
            if (!g.is_theta) {
                ++dx_count;
                word.push_back("dx" + std::to_string(g.index));
            }
        }
        const Rational scale =
            (dx_count * theta_count) % 2 != 0 ? Rational{-1} : Rational{1};
        detail::append_function_summands(m, t.coeff, word, scale, summands);
    }
    return detail::join_summands(summands);
}

inline std::string render_text(const DensityVariation& dv) {
    std::string out;
    for (const auto& [field, value] : dv.components()) {
        if (!out.empty()) out += "\n";
        out += "E[" + dv.model().field(field).name + "] = " + render_text(value);
    }
    return out;
}

/// Coefficient listing F[field; lambda; sigma indices] plus the assembled form.
inline std::string render_text(const LepageanTail& tail) {
    std::string out;
    for (const auto& [key, value] : tail.coefficients()) {
        const auto& [field, sigma, lambda] = key;
        if (!out.empty()) out += "\n";
        out += "F[" + tail.model().field(field).name + "; " +
               std::to_string(lambda);
        if (!sigma.empty()) {
            out += ";";
            for (int i : sigma.indices()) out += " " + std::to_string(i);
        }
        out += "] = " + render_text(value);
    }
    if (out.empty()) out = "Xi = 0";
    else out += "\nXi = " + render_text(tail.as_form());
    return out;
}

/// Derivation rendering in the declaration syntax.
inline std::string render_text(const ContactDerivation& d) {
    const Model& m = d.model();
    std::string out;
    if (!d.horizontal_components().empty()) {
        out += "[horiz:";
        bool first = true;
        for (const auto& [lambda, g] : d.horizontal_components()) {
            out += first ? " " : ", ";
            first = false;
            out += std::to_string(lambda) + " -> " + render_text(g);
        }
        out += "]";
    }
    if (!d.vertical_components().empty()) {
        if (!out.empty()) out += " ";
        out += "[vert:";
        bool first = true;
        for (const auto& [field, g] : d.vertical_components()) {
            out += first ? " " : ", ";
            first = false;
            out += m.field(field).name + " -> " + render_text(g);
        }
        out += "]";
    }
    if (out.empty()) out = "[vert:]";
    return out;
}

// ---------------------------------------------------------------------------
// Machine format: one JSON document per value, additive-only schema.

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline nlohmann::json jet_json(const Model& m, int field, const MultiIndex& mi) {
    return {{"field", m.field(field).name}, {"index", mi.indices()}};
}

inline nlohmann::json poly_json(const Model& m, const ScalarPoly& poly);

inline nlohmann::json atom_json(const Model& m, const Atom& atom) {
    switch (atom.kind) {
        case AtomKind::Coord:
            return {{"kind", "coord"}, {"index", atom.index}};
        case AtomKind::Jet:
            return {{"kind", "jet"},
                    {"field", m.field(atom.index).name},
                    {"index", atom.jet.indices()}};
        case AtomKind::Func:
            return {{"kind", "func"},
                    {"name", m.function(atom.index).name},
                    {"arg", poly_json(m, *atom.arg)}};
        case AtomKind::Placeholder:
            return {{"kind", "placeholder"}};
    }
    return {};
}

inline nlohmann::json poly_json(const Model& m, const ScalarPoly& poly) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : poly.terms()) {
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& [atom, exp] : term.mono)
            atoms.push_back({{"atom", atom_json(m, atom)}, {"power", exp}});
        terms.push_back({{"rational", to_string(term.coeff)}, {"atoms", atoms}});
    }
    return terms;
}

inline nlohmann::json function_json(const Model& m, const GradedFunction& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : f.terms()) {
        nlohmann::json odd = nlohmann::json::array();
        for (const auto& v : term.odd) odd.push_back(jet_json(m, v.field, v.mi));
        terms.push_back({{"odd", odd}, {"scalar", poly_json(m, term.coeff)}});
    }
    return terms;
}

inline nlohmann::json model_json(const Model& m) {
    nlohmann::json fields = nlohmann::json::array();
    for (int i = 0; i < m.field_count(); ++i)
        fields.push_back({{"name", m.field(i).name},
                          {"parity", m.field_parity(i) == Parity::Odd ? "odd" : "even"}});
    nlohmann::json functions = nlohmann::json::array();
    for (int i = 0; i < m.function_count(); ++i)
        functions.push_back(m.function(i).name);
    return {{"dim", m.dim()},
            {"fields", fields},
            {"functions", functions},
            {"order_cap", m.order_cap()}};
}

}  // namespace detail

inline nlohmann::json value_json(const GradedForm& form) {
    const Model& m = form.model();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : form.terms()) {
        nlohmann::json dx = nlohmann::json::array();
        nlohmann::json theta = nlohmann::json::array();
        for (const auto& g : t.word.gens) {
            if (g.is_theta) theta.push_back(detail::jet_json(m, g.index, g.jet));
            else dx.push_back(g.index);
        }
        terms.push_back({{"coeff", detail::function_json(m, t.coeff)},
                         {"dx", dx},
                         {"theta", theta}});
    }
    return {{"kind", "form"}, {"terms", terms}};
}

inline nlohmann::json value_json(const GradedFunction& f) {
    return {{"kind", "function"}, {"terms", detail::function_json(f.model(), f)}};
}

inline nlohmann::json value_json(const DensityVariation& dv) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& [field, value] : dv.components())
        comps.push_back({{"field", dv.model().field(field).name},
                         {"value", detail::function_json(dv.model(), value)}});
    return {{"kind", "density_variation"}, {"components", comps}};
}

inline nlohmann::json value_json(const LepageanTail& tail) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [key, value] : tail.coefficients()) {
        const auto& [field, sigma, lambda] = key;
        coeffs.push_back({{"field", tail.model().field(field).name},
                          {"sigma", sigma.indices()},
                          {"lambda", lambda},
                          {"value", detail::function_json(tail.model(), value)}});
    }
    return {{"kind", "lepagean_tail"}, {"coefficients", coeffs}};
}

inline nlohmann::json value_json(const ContactDerivation& d) {
    nlohmann::json horiz = nlohmann::json::array();
    for (const auto& [lambda, g] : d.horizontal_components())
        horiz.push_back({{"lambda", lambda},
                         {"value", detail::function_json(d.model(), g)}});
    nlohmann::json vert = nlohmann::json::array();
    for (const auto& [field, g] : d.vertical_components())
        vert.push_back({{"field", d.model().field(field).name},
                        {"value", detail::function_json(d.model(), g)}});
    return {{"kind", "derivation"}, {"horizontal", horiz}, {"vertical", vert}};
}

/// The machine document {schema_version, model, value}.
template <typename Value>
nlohmann::json machine_document(const Model& m, const Value& value) {
    return {{"schema_version", kSchemaVersion},
            {"model", detail::model_json(m)},
            {"value", value_json(value)}};
}

}  // namespace gvb
