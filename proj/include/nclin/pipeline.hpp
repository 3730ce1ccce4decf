#pragma once

#include <optional>
#include <vector>

#include "nclin/fidelity.hpp"
#include "nclin/gwb.hpp"
#include "nclin/instance.hpp"
#include "nclin/sdp.hpp"
#include "nclin/unitary.hpp"

namespace nclin {

enum class RoundingMethod { AnalyticHaar, GwbPhase, GwbPhaseMC };

struct RoundingRun {
  RoundingMethod method = RoundingMethod::AnalyticHaar;
  double expected_value = 0.0;
  double stderr_ = 0.0;  // MC mode only
  std::vector<double> per_constraint;
  std::vector<cd> lambda_per_constraint;
};

// Large-dimension expectation of the Haar-randomized order-k rounding:
// inequation w (1 - int fid_k dDelta_lambda), equation w int fid_k dDelta_lambda,
// with lambda the Gram inner product of the constrained pair.
RoundingRun expected_value_analytic(const CspInstance& inst, const GramSolution& gram);

// Dimension-efficient path: materialized U_{x_i} from the representation,
// exact phase average over zeta via the pair weight measure.
RoundingRun expected_value_gwb_exact(const CspInstance& inst, const GramSolution& gram,
                                     const GwbRep& rep);

// Same path, sampled: random phase zeta, both matrices rounded, the tracial
// objective evaluated on the rounded pair; mean converges to the exact mode.
RoundingRun expected_value_gwb_mc(const CspInstance& inst, const GramSolution& gram,
                                  const GwbRep& rep, int samples, std::uint64_t seed);

// Smooth pipeline on a unitary-relaxation solution given by its inner
// products (shift c folded in by lambda -> w^{-c} lambda):
// equation w (1 - 2/a_k + I/a_k), inequation w (2/a_k - I/a_k),
// I = smooth_integral at the reduced lambda.
RoundingRun expected_value_smooth(const CspInstance& inst,
                                  const std::vector<std::vector<cd>>& lambda_matrix);
RoundingRun expected_value_smooth(const CspInstance& inst, const std::vector<Mat>& operators);

}  // namespace nclin
