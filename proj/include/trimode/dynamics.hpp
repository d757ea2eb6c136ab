#pragma once

#include "trimode/model.hpp"

namespace trimode {

struct StabilityResult {
    bool stable = false;
    double max_real_part = 0;  // rad/s
};

// Hurwitz test with a threshold relative to the spectral radius, so the
// verdict survives unit rescalings of A.
StabilityResult is_stable(const Matrix6& drift);

struct LyapunovSolution {
    Matrix6 value;                 // symmetric steady-state covariance
    bool ill_conditioned = false;  // condition estimate above 1e12
};

// Steady state of A V + V A^T = -D via the symmetric 21-unknown
// vectorization. Throws InvalidParameter for unstable A.
LyapunovSolution solve_lyapunov(const Matrix6& drift, const Matrix6& diffusion);

// Time-domain oracle: integrates dV/dt = A V + V A^T + D from V0 with
// adaptive dopri5 at relative tolerance 1e-9. t = 0 returns V0 exactly.
Matrix6 integrate_covariance(const Matrix6& drift, const Matrix6& diffusion,
                             const Matrix6& initial, double time);

} // namespace trimode
