/* experiment.hpp -- batch experiments over random instances: per-n statistics
 * of exact reset thresholds and certificate lengths.
 *
 * Work items fan out across OpenMP threads; per-item results are stored by
 * index and aggregated in order, so the parallel and serial lanes emit
 * byte-identical tables.
 */

#ifndef SYNKIT_EXPERIMENT_HPP_
#define SYNKIT_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "synkit/rational.hpp"

namespace synkit {

enum class ExperimentKind { RandomDfaRt, RandomDecoderRt };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::RandomDfaRt;
    std::size_t n_min = 4;
    std::size_t n_max = 12;
    std::size_t k = 2;         // alphabet for random DFAs
    std::size_t samples = 100; // per n
    std::uint64_t seed = 1;
    bool parallel = true;
};

struct ExperimentRow {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::size_t synchronizing = 0;
    Rat sync_fraction;
    Rat mean_rt;    // over synchronizing instances
    Rat median_rt;
    std::size_t max_rt = 0;
    Rat mean_cert;  // certificate lengths, same instances
    Rat median_cert;
    std::size_t max_cert = 0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Least-squares slope of log(mean_rt) against log(n); descriptive only.
double fit_growth_exponent(const std::vector<ExperimentRow>& rows);

/// Machine-readable table: one `row ...` line per n, then a `fit ...` line.
std::string format_table(const std::vector<ExperimentRow>& rows);

} // namespace synkit

#endif // SYNKIT_EXPERIMENT_HPP_
