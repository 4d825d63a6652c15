#include "dss/elements.hpp"

#include <cmath>

#include "dss/algebra.hpp"

namespace dss {

namespace {

void check_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw NonPositiveValue(std::string(what) + " must be positive and finite");
}

DssModel integrator_gain(double gain, const std::string& state,
                         const std::string& in, const std::string& out) {
    Mat e(1, 1), a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    e << 1.0;
    a << 0.0;
    b << gain;
    c << 1.0;
    d << 0.0;
    return make_dss(e, a, b, c, d, {{state, state, StateKind::Physical}}, {in}, {out});
}

} // namespace

DssModel inductor_admittance(double l) {
    check_positive(l, "inductance");
    return integrator_gain(1.0 / l, "i", "v", "i");
}

DssModel inductor_impedance(double l) {
    check_positive(l, "inductance");
    return inverse(inductor_admittance(l));
}

DssModel capacitor_impedance(double c) {
    check_positive(c, "capacitance");
    return integrator_gain(1.0 / c, "v", "i", "v");
}

DssModel capacitor_admittance(double c) {
    check_positive(c, "capacitance");
    return inverse(capacitor_impedance(c));
}

DssModel resistor(double r, PortRole as) {
    check_positive(r, "resistance");
    Mat d(1, 1);
    d << (as == PortRole::Impedance ? r : 1.0 / r);
    const bool imp = as == PortRole::Impedance;
    return make_dss(Mat(0, 0), Mat(0, 0), Mat(0, 1), Mat(1, 0), d, {},
                    {imp ? "i" : "v"}, {imp ? "v" : "i"});
}

namespace {

DssModel sum_chain(const std::vector<DssModel>& models, const char* what) {
    if (models.empty()) throw EmptyGrid(std::string(what) + " needs at least one element");
    for (const auto& m : models)
        if (m.m() != 1 || m.p() != 1)
            throw DimensionMismatch(std::string(what) + " only combines scalar one-ports");
    DssModel acc = models.front();
    for (size_t i = 1; i < models.size(); ++i) acc = sum(acc, models[i]);
    return acc;
}

} // namespace

DssModel series(const std::vector<DssModel>& impedances) {
    return sum_chain(impedances, "series");
}

DssModel parallel(const std::vector<DssModel>& admittances) {
    return sum_chain(admittances, "parallel");
}

} // namespace dss
