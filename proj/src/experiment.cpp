#include "synkit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "synkit/codes.hpp"
#include "synkit/oracle.hpp"
#include "synkit/synthesis.hpp"

namespace synkit {

namespace {

struct Sample {
    bool synchronizing = false;
    std::size_t rt = 0;
    std::size_t cert = 0;
};

Sample run_one(const ExperimentConfig& config, std::size_t n, std::size_t index) {
    const std::uint64_t seed = mix_seed(config.seed, n, index);
    Sample out;
    if (config.kind == ExperimentKind::RandomDfaRt) {
        const Automaton a = gen_random_dfa(n, config.k, seed);
        OracleOptions opts;
        opts.parallel = false; // instances are the unit of parallelism here
        const OracleResult rt = exact_reset_threshold(a, opts);
        out.synchronizing = rt.synchronizing;
        if (rt.synchronizing) {
            out.rt = rt.threshold;
            out.cert = greedy_compression(a).word.size();
        }
    } else {
        const Decoder d = gen_random_decoder(n, seed);
        OracleOptions opts;
        opts.parallel = false;
        const OracleResult rt = exact_reset_threshold(d.automaton, opts);
        out.synchronizing = rt.synchronizing;
        if (rt.synchronizing) {
            out.rt = rt.threshold;
            out.cert = decoder_reset(d).word.size();
        }
    }
    return out;
}

Rat mean_of(const std::vector<std::size_t>& xs) {
    if (xs.empty())
        return Rat(0);
    Rat sum = 0;
    for (const std::size_t x : xs)
        sum += static_cast<long>(x);
    return sum / static_cast<long>(xs.size());
}

Rat median_of(std::vector<std::size_t> xs) {
    if (xs.empty())
        return Rat(0);
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    if (xs.size() % 2)
        return Rat(static_cast<long>(xs[m]));
    return Rat(static_cast<long>(xs[m - 1] + xs[m]), 2);
}

} // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    if (config.n_min > config.n_max)
        throw ValidationError("empty n range");
    std::vector<ExperimentRow> rows;
    for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
        std::vector<Sample> samples(config.samples);
        const auto limit = static_cast<std::int64_t>(config.samples);
        if (config.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (std::int64_t i = 0; i < limit; ++i)
                samples[static_cast<std::size_t>(i)] =
                    run_one(config, n, static_cast<std::size_t>(i));
        } else {
            for (std::int64_t i = 0; i < limit; ++i)
                samples[static_cast<std::size_t>(i)] =
                    run_one(config, n, static_cast<std::size_t>(i));
        }

        ExperimentRow row;
        row.n = n;
        row.samples = config.samples;
        std::vector<std::size_t> rts, certs;
        for (const Sample& s : samples) {
            if (!s.synchronizing)
                continue;
            ++row.synchronizing;
            rts.push_back(s.rt);
            certs.push_back(s.cert);
        }
        row.sync_fraction = config.samples
                                ? Rat(static_cast<long>(row.synchronizing),
                                      static_cast<long>(config.samples))
                                : Rat(0);
        row.mean_rt = mean_of(rts);
        row.median_rt = median_of(rts);
        row.max_rt = rts.empty() ? 0 : *std::max_element(rts.begin(), rts.end());
        row.mean_cert = mean_of(certs);
        row.median_cert = median_of(certs);
        row.max_cert = certs.empty() ? 0 : *std::max_element(certs.begin(), certs.end());
        rows.push_back(std::move(row));
    }
    return rows;
}

double fit_growth_exponent(const std::vector<ExperimentRow>& rows) {
    // least squares on (log n, log mean_rt), skipping empty rows
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const ExperimentRow& row : rows) {
        if (row.synchronizing == 0 || row.mean_rt <= 0)
            continue;
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(static_cast<double>(row.mean_rt));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2)
        return 0.0;
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0)
        return 0.0;
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

std::string format_table(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    for (const ExperimentRow& row : rows) {
        out << "row n=" << row.n << " samples=" << row.samples
            << " synchronizing=" << row.synchronizing
            << " sync_fraction=" << format_rat(row.sync_fraction)
            << " mean_rt=" << format_rat(row.mean_rt)
            << " median_rt=" << format_rat(row.median_rt) << " max_rt=" << row.max_rt
            << " mean_cert=" << format_rat(row.mean_cert)
            << " median_cert=" << format_rat(row.median_cert) << " max_cert=" << row.max_cert
            << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", fit_growth_exponent(rows));
    out << "fit exponent=" << buf << '\n';
    return out.str();
}

} // namespace synkit
