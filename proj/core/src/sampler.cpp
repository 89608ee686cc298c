#include "pairy/sampler.hpp"

#include "pairy/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

namespace pairy {

void sample_bridge_into(int N, Xoshiro256ss& rng, Steps& out) {
    out.assign(static_cast<size_t>(2 * N), -1);
    std::fill(out.begin(), out.begin() + N, 1);
    for (size_t i = out.size(); i > 1; --i) {
        size_t j = rng.below(i);
        std::swap(out[i - 1], out[j]);
    }
}

void sample_excursion_into(int N, Xoshiro256ss& rng, Steps& out, std::vector<int>& scratch) {
    // N+1 ups and N downs; the rotation starting after the last minimum of
    // the prefix sums is the unique one staying strictly positive
    const size_t L = static_cast<size_t>(2 * N + 1);
    Steps& w = out;
    w.assign(L, -1);
    std::fill(w.begin(), w.begin() + N + 1, 1);
    for (size_t i = L; i > 1; --i) {
        size_t j = rng.below(i);
        std::swap(w[i - 1], w[j]);
    }
    int h = 0, best = 0;
    size_t arg = 0;
    for (size_t i = 0; i < L - 1; ++i) {
        h += w[i];
        if (h <= best) {
            best = h;
            arg = i + 1;
        }
    }
    scratch.resize(L);
    for (size_t i = 0; i < L; ++i) scratch[i] = w[(arg + i) % L];
    // scratch[0] is the leading up-step
    out.resize(L - 1);
    for (size_t i = 1; i < L; ++i) out[i - 1] = static_cast<std::int8_t>(scratch[i]);
}

LatticePath sample_bridge(int N, Xoshiro256ss& rng) {
    if (N < 1) throw DomainError("sample_bridge needs N >= 1");
    LatticePath p{{}, Ensemble::bridge};
    sample_bridge_into(N, rng, p.steps);
    return p;
}

LatticePath sample_excursion(int N, Xoshiro256ss& rng) {
    if (N < 1) throw DomainError("sample_excursion needs N >= 1");
    LatticePath p{{}, Ensemble::excursion};
    std::vector<int> scratch;
    sample_excursion_into(N, rng, p.steps, scratch);
    return p;
}

Histogram freedman_diaconis(const std::vector<double>& xs, int bins) {
    Histogram h;
    if (xs.empty()) {
        int b = bins > 0 ? bins : 1;
        for (int i = 0; i <= b; ++i) h.edges.push_back(static_cast<double>(i) / b);
        h.counts.assign(static_cast<size_t>(b), 0);
        return h;
    }
    auto [mn_it, mx_it] = std::minmax_element(xs.begin(), xs.end());
    double lo = *mn_it, hi = *mx_it;
    int b = bins;
    if (b <= 0) {
        std::vector<double> tmp = xs;
        auto q = [&](double f) {
            size_t k = static_cast<size_t>(f * (tmp.size() - 1));
            std::nth_element(tmp.begin(), tmp.begin() + k, tmp.end());
            return tmp[k];
        };
        double iqr = q(0.75) - q(0.25);
        double width = 2.0 * iqr / std::cbrt(static_cast<double>(xs.size()));
        b = width > 0 ? static_cast<int>(std::ceil((hi - lo) / width)) : 1;
        b = std::clamp(b, 1, 10000);
    }
    if (hi == lo) hi = lo + 1.0;
    for (int i = 0; i <= b; ++i) h.edges.push_back(lo + (hi - lo) * i / b);
    h.counts.assign(static_cast<size_t>(b), 0);
    for (double x : xs) {
        int k = static_cast<int>((x - lo) / (hi - lo) * b);
        k = std::clamp(k, 0, b - 1);
        ++h.counts[k];
    }
    return h;
}

SampleSummary run_experiment(const ExperimentConfig& cfg, const CostFunction& cost) {
    if (cfg.N < 1) throw DomainError("sampling needs N >= 1");
    if (cfg.chains < 1) throw DomainError("chains must be >= 1");
    SampleSummary sum{cfg.ensemble, cfg.N, cfg.n, cost.id(), cfg.eps, cfg.rescale_exponent, cfg.seed, cfg.chains,
                      {}, {}, {}, {}};
    std::vector<double> w(static_cast<size_t>(cfg.N));
    {
        auto tab = cost.table(cfg.N);
        for (int k = 0; k < cfg.N; ++k) w[k] = tab[k].to_double() - cfg.eps;
    }
    const double denom = std::pow(static_cast<double>(cfg.N), cfg.rescale_exponent) * cfg.extra_scale;

    std::vector<std::vector<double>> per_chain(static_cast<size_t>(cfg.chains));
    std::vector<Xoshiro256ss> rngs;
    {
        Xoshiro256ss base(cfg.seed);
        for (int c = 0; c < cfg.chains; ++c) {
            rngs.push_back(base);
            base.jump();
        }
    }
    auto work = [&](int c) {
        std::uint64_t lo = cfg.n * static_cast<std::uint64_t>(c) / cfg.chains;
        std::uint64_t hi = cfg.n * static_cast<std::uint64_t>(c + 1) / cfg.chains;
        auto& out = per_chain[c];
        out.reserve(hi - lo);
        Steps steps;
        std::vector<int> scratch, sl, st;
        auto& rng = rngs[c];
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (cfg.ensemble == Ensemble::excursion) sample_excursion_into(cfg.N, rng, steps, scratch);
            else sample_bridge_into(cfg.N, rng, steps);
            slice_semilengths_into(steps, sl, st);
            double a = 0;
            for (int m : sl) a += w[m];
            out.push_back(a / denom);
        }
    };
    const int threads = std::max(1, std::min(cfg.threads, cfg.chains));
    if (threads == 1) {
        for (int c = 0; c < cfg.chains; ++c) work(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < cfg.chains; c += threads) work(c);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<double> xs;
    xs.reserve(cfg.n);
    for (auto& v : per_chain) xs.insert(xs.end(), v.begin(), v.end());

    const int S = cfg.s_max;
    sum.moments.assign(static_cast<size_t>(S) + 1, 0.0);
    sum.stderrs.assign(static_cast<size_t>(S) + 1, 0.0);
    sum.moments[0] = cfg.n ? 1.0 : 0.0;
    if (cfg.n > 0) {
        std::vector<long double> s1(static_cast<size_t>(S) + 1, 0.0L), s2(static_cast<size_t>(S) + 1, 0.0L);
        for (double x : xs) {
            long double p = 1.0L;
            for (int s = 1; s <= S; ++s) {
                p *= x;
                s1[s] += p;
                s2[s] += p * p;
            }
        }
        const long double n = static_cast<long double>(cfg.n);
        for (int s = 1; s <= S; ++s) {
            long double mean = s1[s] / n;
            sum.moments[s] = static_cast<double>(mean);
            if (cfg.n > 1) {
                long double var = (s2[s] - n * mean * mean) / (n - 1);
                sum.stderrs[s] = static_cast<double>(std::sqrt(std::max(var, 0.0L) / n));
            }
        }
    }
    sum.histogram = freedman_diaconis(xs, cfg.bins);
    if (cfg.keep_values) sum.values = std::move(xs);
    return sum;
}

ZScoreReport compare_to_reference(const SampleSummary& s, const std::vector<double>& ref) {
    ZScoreReport r{{}, 0.0};
    const size_t n = std::min(ref.size(), s.moments.size());
    r.z.assign(n, 0.0);
    for (size_t k = 1; k < n; ++k) {
        double diff = s.moments[k] - ref[k];
        r.z[k] = s.stderrs[k] > 0 ? diff / s.stderrs[k] : (diff == 0 ? 0.0 : INFINITY);
        r.max_abs = std::max(r.max_abs, std::fabs(r.z[k]));
    }
    return r;
}

double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    return d;
}

std::string summary_json(const SampleSummary& s) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["ensemble"] = to_string(s.ensemble);
    j["N"] = s.N;
    j["n"] = s.n;
    j["cost"] = s.cost_id;
    j["eps"] = s.eps;
    j["rescale_exponent"] = s.rescale_exponent;
    j["seed"] = s.seed;
    j["chains"] = s.chains;
    auto& m = j["moments"] = nlohmann::ordered_json::array();
    for (size_t k = 1; k < s.moments.size(); ++k)
        m.push_back({{"s", k}, {"mean", s.moments[k]}, {"stderr", s.stderrs[k]}});
    j["histogram"] = {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}};
    return j.dump(2);
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "bin_left,bin_right,count\n";
    os.precision(17);
    for (size_t i = 0; i < h.counts.size(); ++i) os << h.edges[i] << ',' << h.edges[i + 1] << ',' << h.counts[i] << '\n';
}

}  // namespace pairy
