#pragma once

// One-port circuit element primitives as descriptor models, in both
// admittance (v in, i out) and impedance (i in, v out) orientation.
// The impedance of L and the admittance of C are improper; they are built
// as exact inverses and carry a singular E plus one virtual state.

#include <vector>

#include "dss/model.hpp"

namespace dss {

enum class PortRole { Impedance, Admittance };

/// Y_L(s) = 1/(sL). One physical state "i", input "v", output "i".
DssModel inductor_admittance(double l);

/// Z_L(s) = sL, the inverse of the admittance model. Two states, the second
/// virtual ("v"); E = diag(1, 0).
DssModel inductor_impedance(double l);

/// Z_C(s) = 1/(sC). One physical state "v", input "i", output "v".
DssModel capacitor_impedance(double c);

/// Y_C(s) = sC via inverse; virtual state "i".
DssModel capacitor_admittance(double c);

/// Stateless gain: D = [R] as impedance, D = [1/R] as admittance.
DssModel resistor(double r, PortRole as);

/// Chain of scalar impedances: impedances add. The chain's admittance is
/// inverse(series(...)).
DssModel series(const std::vector<DssModel>& impedances);

/// Bank of scalar admittances: admittances add.
DssModel parallel(const std::vector<DssModel>& admittances);

} // namespace dss
