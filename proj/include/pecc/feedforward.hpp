#pragma once

#include "pecc/homodyne.hpp"
#include "pecc/schmidt_state.hpp"

namespace pecc {

// Phase record of the outcome-conditioned correction.  residual_max_phase is
// the largest phase (radians) left on any populated amplitude after the
// correction, measured against the alternating-sign real model: with
// ϑ_n = arg(d_n (-1)^n), residual = max_n |wrap(ϑ_n − ϑ_0)| over amplitudes
// with |d_n| > 1e-10.  Referencing ϑ_0 makes the figure blind to overall
// phases, which carry no physics.
struct CorrectionRecord {
  double gamma = 0.0;
  double global_phase = 0.0;
  double residual_max_phase = 0.0;
};

struct CorrectionResult {
  SchmidtDiagonalState state;
  CorrectionRecord record;
};

// Multiplies amplitude n by exp(-i(γ(x) n + g)) with the linear-model phase
// tilt γ(x) from the measurement outcome and the outcome-dependent offset
// g = (1/2)(α² sin 2θ − 2√2 x α sin θ).  Amplitude moduli are untouched; the
// residual in the record quantifies how much the exact phases deviate from
// the linear model (it is an honest diagnostic, not fitted away).
CorrectionResult apply_feedforward(const SchmidtDiagonalState& post,
                                   const MeasurementOutcome& outcome,
                                   double alpha, double theta);

// The linear-model prediction for the corrected state: a TMSV-form state at
// λ' = (1+β)λ.  Requires 0 ≤ λ' < 1.
SchmidtDiagonalState ideal_output_state(double lambda, double beta,
                                        const TruncationPolicy& policy = {});

}  // namespace pecc
