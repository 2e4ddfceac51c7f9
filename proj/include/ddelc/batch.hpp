#pragma once

#include <span>
#include <vector>

#include "ddelc/dde.hpp"

namespace ddelc::batch {

/// Worker threads used by the *_parallel kernels (OpenMP). 1 when built
/// without OpenMP.
int max_threads();

/// Caps the OpenMP thread count; n <= 0 restores the runtime default.
void set_threads(int n);

/// Melnikov integral evaluated at every amplitude of `a1_grid` for a fixed
/// delay. Samples are independent, so the parallel kernel assigns whole
/// samples to threads and the result is bit-identical to the serial
/// reference at any thread count.
std::vector<double> melnikov_values(double delay, std::span<const double> a1_grid);
std::vector<double> melnikov_values_serial(double delay, std::span<const double> a1_grid);

/// Integrates every configuration and measures its settled amplitude.
/// Diverged runs yield an AmplitudeEstimate with n_peaks = 0 and
/// converged = false rather than throwing.
std::vector<dde::AmplitudeEstimate> measure_many(std::span<const dde::SimConfig> cfgs,
                                                 double settle_fraction = 0.5);
std::vector<dde::AmplitudeEstimate> measure_many_serial(std::span<const dde::SimConfig> cfgs,
                                                        double settle_fraction = 0.5);

}  // namespace ddelc::batch
