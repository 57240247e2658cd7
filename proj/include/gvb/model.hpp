#pragma once

#include "gvb/errors.hpp"
#include "gvb/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gvb {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

/// A declared field: even fields carry parity-even jet coordinates, odd
/// fields parity-odd ones. Declaration order fixes the canonical
/// generator order used everywhere downstream.
struct FieldRef {
    std::string name;
    Parity parity = Parity::Even;

    bool operator==(const FieldRef&) const = default;
};

/// A registered unary function symbol together with its derivative rule,
/// an expression in the formal Placeholder argument.
struct FunctionDef {
    std::string name;
    ScalarPoly derivative;
};

/// Plain declaration data for a model; validated and frozen by Model.
struct ModelSpec {
    int dim = 1;
    std::vector<FieldRef> fields;        // declaration order, even and odd mixed
    std::vector<FunctionDef> functions;  // beyond the default sin/cos/exp
    int order_cap = 10;
};

namespace detail {
constexpr int kFnSin = 0;
constexpr int kFnCos = 1;
constexpr int kFnExp = 2;
}  // namespace detail

/// Immutable shared context for all expressions: base dimension, field
/// registry, function-symbol registry, jet-order cap. Values built against
/// different Model instances never mix.
class Model {
  public:
    Model() = default;  // null model: context of pure constants

    explicit Model(ModelSpec spec) {
        if (spec.dim < 1) throw DomainError("model dimension must be >= 1");
        if (spec.order_cap < 1) throw DomainError("order cap must be >= 1");
        auto data = std::make_shared<Data>();
        data->dim = spec.dim;
        data->order_cap = spec.order_cap;
        data->fields = std::move(spec.fields);
        for (std::size_t i = 0; i < data->fields.size(); ++i) {
            for (std::size_t j = i + 1; j < data->fields.size(); ++j)
                if (data->fields[i].name == data->fields[j].name)
                    throw DomainError("duplicate field name: " + data->fields[i].name);
        }
        // Default registry, ids fixed so default rules can reference them.
        const ScalarPoly u = ScalarPoly::atom(Atom::placeholder());
        data->functions.push_back({"sin", ScalarPoly::atom(Atom::func(detail::kFnCos, u))});
        data->functions.push_back(
            {"cos", Rational{-1} * ScalarPoly::atom(Atom::func(detail::kFnSin, u))});
        data->functions.push_back({"exp", ScalarPoly::atom(Atom::func(detail::kFnExp, u))});
        for (auto& f : spec.functions) {
            for (const auto& g : data->functions)
                if (g.name == f.name)
                    throw DomainError("duplicate function symbol: " + f.name);
            data->functions.push_back(std::move(f));
        }
        data_ = std::move(data);
    }

    bool is_null() const { return data_ == nullptr; }

    int dim() const { return data()->dim; }
    int order_cap() const { return data()->order_cap; }

    int field_count() const { return static_cast<int>(data()->fields.size()); }
    const FieldRef& field(int id) const { return data()->fields.at(id); }
    Parity field_parity(int id) const { return field(id).parity; }

    std::optional<int> find_field(const std::string& name) const {
        const auto& fs = data()->fields;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (fs[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    int function_count() const { return static_cast<int>(data()->functions.size()); }
    const FunctionDef& function(int id) const { return data()->functions.at(id); }

    std::optional<int> find_function(const std::string& name) const {
        const auto& fs = data()->functions;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (fs[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    std::vector<int> even_fields() const { return fields_of(Parity::Even); }
    std::vector<int> odd_fields() const { return fields_of(Parity::Odd); }

    /// Identity comparison: same frozen model object.
    friend bool same_model(const Model& a, const Model& b) {
        return a.data_ == b.data_;
    }

    /// Reconciles the contexts of two operands; a null model is compatible
    /// with anything.
    friend const Model& merge_models(const Model& a, const Model& b) {
        if (a.is_null()) return b;
        if (b.is_null()) return a;
        if (a.data_ != b.data_) throw DomainError("operands belong to different models");
        return a;
    }

    void check_coord(int lambda) const {
        if (lambda < 0 || lambda >= dim())
            throw DomainError("base index " + std::to_string(lambda) +
                              " out of range for dim " + std::to_string(dim()));
    }

    void check_order(const MultiIndex& mi) const {
        if (static_cast<int>(mi.order()) > order_cap())
            throw OrderCapError("jet order " + std::to_string(mi.order()) +
                                " exceeds order cap " + std::to_string(order_cap()));
        if (mi.max_index() >= dim())
            throw DomainError("base index " + std::to_string(mi.max_index()) +
                              " out of range for dim " + std::to_string(dim()));
    }

  private:
    struct Data {
        int dim = 1;
        int order_cap = 10;
        std::vector<FieldRef> fields;
        std::vector<FunctionDef> functions;
    };

    std::vector<int> fields_of(Parity p) const {
        std::vector<int> out;
        for (int i = 0; i < field_count(); ++i)
            if (field_parity(i) == p) out.push_back(i);
        return out;
    }

    const Data* data() const {
        if (!data_) throw DomainError("operation requires a non-null model");
        return data_.get();
    }

    std::shared_ptr<const Data> data_;
};

}  // namespace gvb
