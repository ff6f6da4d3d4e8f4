#pragma once

#include <filesystem>
#include <vector>

#include "smsec/config.hpp"
#include "smsec/metrics.hpp"

namespace smsec {

/// Noise variance sigma_b2 = sigma_e2 giving SNR = 10 log10(P / sigma^2).
double noise_variance_for_snr(double power, double snr_db);

/// Runs every (P_M, SNR, method) point of the sweep.
///
/// Channel realization r is drawn from stream (seed, r) and shared by all
/// points; each realization is an independent work item, and results are
/// reduced in realization order, so the output does not depend on `threads`.
/// Records are ordered by P_M, then SNR, then method as listed in the sweep.
std::vector<MetricsRecord> run_sweep(const SystemConfig& cfg, const SweepSpec& sweep,
                                     int threads = 1);

/// Writes results.csv, the per-SNR SR CDF tables and manifest.txt into `dir`.
/// Throws std::runtime_error naming the path when it cannot be written.
void write_outputs(const std::vector<MetricsRecord>& records, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir);

inline constexpr const char* kResultsHeader =
    "method,snr_db,p_m,avg_sr,ber,avg_sjnr_db,n_realizations,n_zfc_infeasible";

const char* version_string();

}  // namespace smsec
