#pragma once

#include "pairy/costs.hpp"
#include "pairy/moments.hpp"
#include "pairy/oracle.hpp"
#include "pairy/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pairy {

LatticePath sample_bridge(int N, Xoshiro256ss& rng);
LatticePath sample_excursion(int N, Xoshiro256ss& rng);
// in-place variants reusing the buffer
void sample_bridge_into(int N, Xoshiro256ss& rng, Steps& out);
void sample_excursion_into(int N, Xoshiro256ss& rng, Steps& out, std::vector<int>& scratch);

struct Histogram {
    std::vector<double> edges;  // bins + 1 edges
    std::vector<std::uint64_t> counts;
};

struct SampleSummary {
    Ensemble ensemble;
    int N;
    std::uint64_t n;
    std::string cost_id;
    double eps;
    double rescale_exponent;
    std::uint64_t seed;
    int chains;
    std::vector<double> moments;  // m_1..m_s (index 0 holds 1)
    std::vector<double> stderrs;
    Histogram histogram;
    std::vector<double> values;  // rescaled samples, only when requested
};

struct ExperimentConfig {
    Ensemble ensemble = Ensemble::excursion;
    int N = 100;
    std::uint64_t n = 10000;
    double eps = 0.0;
    double rescale_exponent = 0.0;
    // the statistic is divided by this after the power law (1 = off)
    double extra_scale = 1.0;
    std::uint64_t seed = 1;
    int bins = 0;        // 0: Freedman-Diaconis
    int s_max = 4;
    int chains = 16;     // fixed; output does not depend on threads
    int threads = 1;
    bool keep_values = false;
};

// Draws n paths; each contributes (A - eps N) / (N^rescale_exponent * extra_scale).
SampleSummary run_experiment(const ExperimentConfig& cfg, const CostFunction& cost);

Histogram freedman_diaconis(const std::vector<double>& xs, int bins = 0);

struct ZScoreReport {
    std::vector<double> z;  // index s, z[0] = 0
    double max_abs;
};
ZScoreReport compare_to_reference(const SampleSummary& summary, const std::vector<double>& reference);

// sup |F_n - F| for a sorted sample
double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf);

std::string summary_json(const SampleSummary& s);
void write_histogram_csv(std::ostream& os, const Histogram& h);

}  // namespace pairy
