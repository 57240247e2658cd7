#pragma once

#include "gvb/gvb.hpp"

#include <string>

namespace gvbtest {

using namespace gvb;

/// dim 1, one even field y.
inline Model model_1y() {
    return Model(ModelSpec{1, {{"y", Parity::Even}}, {}, 10});
}

/// dim 1, one odd field c.
inline Model model_1c() {
    return Model(ModelSpec{1, {{"c", Parity::Odd}}, {}, 10});
}

/// dim 1, even y then odd c.
inline Model model_1yc() {
    return Model(ModelSpec{1, {{"y", Parity::Even}, {"c", Parity::Odd}}, {}, 10});
}

/// dim 1, two odd fields c, d.
inline Model model_1cd() {
    return Model(ModelSpec{1, {{"c", Parity::Odd}, {"d", Parity::Odd}}, {}, 10});
}

/// dim 2, even y then odd c.
inline Model model_2yc() {
    return Model(ModelSpec{2, {{"y", Parity::Even}, {"c", Parity::Odd}}, {}, 10});
}

inline GradedFunction gf_const(const Model& m, long long num, long long den = 1) {
    return GradedFunction::constant(Rational(num, den), m);
}

inline GradedFunction jet(const Model& m, const std::string& field,
                          std::initializer_list<int> mi = {}) {
    return GradedFunction::jet(m, *m.find_field(field), MultiIndex(mi));
}

inline GradedForm theta(const Model& m, const std::string& field,
                        std::initializer_list<int> mi = {}) {
    return GradedForm::theta(m, *m.find_field(field), MultiIndex(mi));
}

}  // namespace gvbtest
