#include "ddelc/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ddelc/melnikov.hpp"

namespace ddelc::batch {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  static const int runtime_default = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : runtime_default);
#else
  (void)n;
#endif
}

namespace {

// Runs f(i) for i in [0, n) across threads. Exceptions may not escape an
// OpenMP region, so the first one is captured and rethrown afterwards.
template <typename F>
void parallel_for(std::ptrdiff_t n, F&& f) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ddelc_batch_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

dde::AmplitudeEstimate measure_one(const dde::SimConfig& cfg, double settle_fraction) {
  const auto traj = dde::integrate(cfg);
  if (traj.diverged()) return {};
  return dde::measure_amplitude(traj, settle_fraction);
}

}  // namespace

std::vector<double> melnikov_values_serial(double delay, std::span<const double> a1_grid) {
  std::vector<double> out(a1_grid.size());
  for (std::size_t i = 0; i < a1_grid.size(); ++i)
    out[i] = mel::melnikov_integral(a1_grid[i], delay);
  return out;
}

std::vector<double> melnikov_values(double delay, std::span<const double> a1_grid) {
  std::vector<double> out(a1_grid.size());
  parallel_for(static_cast<std::ptrdiff_t>(a1_grid.size()),
               [&](std::size_t i) { out[i] = mel::melnikov_integral(a1_grid[i], delay); });
  return out;
}

std::vector<dde::AmplitudeEstimate> measure_many_serial(std::span<const dde::SimConfig> cfgs,
                                                        double settle_fraction) {
  std::vector<dde::AmplitudeEstimate> out(cfgs.size());
  for (std::size_t i = 0; i < cfgs.size(); ++i) out[i] = measure_one(cfgs[i], settle_fraction);
  return out;
}

std::vector<dde::AmplitudeEstimate> measure_many(std::span<const dde::SimConfig> cfgs,
                                                 double settle_fraction) {
  std::vector<dde::AmplitudeEstimate> out(cfgs.size());
  parallel_for(static_cast<std::ptrdiff_t>(cfgs.size()),
               [&](std::size_t i) { out[i] = measure_one(cfgs[i], settle_fraction); });
  return out;
}

}  // namespace ddelc::batch
