#pragma once

#include "ququart/core/circuit.hpp"
#include "ququart/noise/damping.hpp"
#include "ququart/noise/misclassify.hpp"

namespace ququart {

/// Diagonal density with the given level populations.
QuditDensity thermal_init(const Probabilities& populations);

/// Conditional pi-pulse chain returning level k to |0>:
/// k = 3: X23, X12, X01; k = 2: X12, X01; k = 1: X01; k = 0: empty.
QuditCircuit reset_sequence(KetIndex k);

/// Pi-pulse ladder from |0> up to level n: X01, X12, ... in time order.
QuditCircuit excite_sequence(KetIndex n);

/// Measure, classify through `classifier`, and apply the chain for the
/// classified level; repeated `rounds` times. `pulse_damping` is applied
/// after every pi pulse. The measurement removes coherences.
QuditDensity active_reset(const QuditDensity& rho, int rounds, const AssignmentMatrix& classifier,
                          const DampingSpec& pulse_damping = DampingSpec::none());
QuditDensity active_reset(const QuditDensity& rho, int rounds, const MisclassificationModel& classifier,
                          const DampingSpec& pulse_damping = DampingSpec::none());

}  // namespace ququart
