#pragma once

namespace apomet {

/// Numerical knobs shared by the metric evaluators and the geodesic engine.
struct Config {
    int oracle_resolution = 4096;      ///< boundary samples per supremum scan
    double refine_param_tol = 1e-12;   ///< ternary search stops below this parameter width
    double window_stall_tol = 1e-10;   ///< half-plane window doubling stops when the max moves less
    int max_window_doublings = 20;
    double zero_clamp = 1e-12;         ///< metric values this close to zero snap to exactly zero
    double align_tol = 1e-9;           ///< default |defect| threshold for aligned triples
    double cluster_tol = 1e-7;         ///< value slack for argmax-set membership
};

} // namespace apomet
