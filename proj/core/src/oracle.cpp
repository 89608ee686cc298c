#include "pairy/oracle.hpp"

#include "pairy/errors.hpp"
#include "pairy/extrapolate.hpp"
#include "pairy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace pairy {

LatticePath LatticePath::parse(const std::string& s, Ensemble e) {
    LatticePath p{{}, e};
    for (char c : s) {
        if (c == '+' || c == 'U' || c == 'u') p.steps.push_back(1);
        else if (c == '-' || c == 'D' || c == 'd') p.steps.push_back(-1);
        else if (c == ',' || c == ' ') continue;
        else throw MalformedPath(std::string("unexpected character '") + c + "' in path");
    }
    validate(p);
    return p;
}

std::string LatticePath::str() const {
    std::string s;
    for (auto x : steps) s += x > 0 ? '+' : '-';
    return s;
}

void validate(const LatticePath& path) {
    if (path.steps.size() % 2) throw MalformedPath("path length must be even");
    long h = 0;
    for (auto x : path.steps) {
        if (x != 1 && x != -1) throw MalformedPath("steps must be +1 or -1");
        h += x;
        if (path.ensemble == Ensemble::excursion && h < 0) throw MalformedPath("excursion goes below the axis");
    }
    if (h != 0) throw MalformedPath("path does not return to the axis");
}

void slice_semilengths_into(const Steps& steps, std::vector<int>& out, std::vector<int>& stack) {
    out.clear();
    stack.clear();
    int h = 0;
    int opens = 0;
    for (auto x : steps) {
        bool opening = (h >= 0 && x > 0) || (h <= 0 && x < 0);
        h += x;
        if (opening) {
            stack.push_back(opens);
            ++opens;
        } else {
            int o = stack.back();
            stack.pop_back();
            out.push_back(opens - o - 1);
        }
    }
}

std::vector<int> slice_semilengths(const LatticePath& path) {
    validate(path);
    std::vector<int> out, st;
    slice_semilengths_into(path.steps, out, st);
    return out;
}

Real statistic(const LatticePath& path, const CostFunction& cost, const Real& eps) {
    auto m = slice_semilengths(path);
    Real s(0);
    for (int k : m) s += cost.evaluate(k) - eps;
    return s;
}

Rat statistic_exact(const LatticePath& path, const CostFunction& cost, const Rat& eps) {
    auto m = slice_semilengths(path);
    Rat s(0);
    for (int k : m) s += cost.evaluate_exact(k) - eps;
    return s;
}

namespace {

void gen_paths(Steps& cur, int ups, int downs, int h, bool excursion, const std::function<void(const Steps&)>& fn) {
    if (ups == 0 && downs == 0) {
        fn(cur);
        return;
    }
    if (ups > 0) {
        cur.push_back(1);
        gen_paths(cur, ups - 1, downs, h + 1, excursion, fn);
        cur.pop_back();
    }
    if (downs > 0 && (!excursion || h > 0)) {
        cur.push_back(-1);
        gen_paths(cur, ups, downs - 1, h - 1, excursion, fn);
        cur.pop_back();
    }
}

}  // namespace

void for_each_path(int N, Ensemble e, const std::function<void(const Steps&)>& fn) {
    if (N < 0) throw DomainError("N must be >= 0");
    int cap = e == Ensemble::excursion ? kExcursionEnumCap : kBridgeEnumCap;
    if (N > cap) throw CapExceeded("path enumeration capped at N=" + std::to_string(cap));
    Steps cur;
    cur.reserve(static_cast<size_t>(2 * N));
    gen_paths(cur, N, N, 0, e == Ensemble::excursion, fn);
}

std::vector<LatticePath> enumerate_paths(int N, Ensemble e) {
    std::vector<LatticePath> out;
    for_each_path(N, e, [&](const Steps& s) { out.push_back(LatticePath{s, e}); });
    return out;
}

namespace {

// scalar helpers for the templated DP
inline void fma_acc(Rat& acc, const Rat& a, const Rat& b) { acc += a * b; }
inline void fma_acc(Real& acc, const Real& a, const Real& b) { mul_add(acc, a, b); }
inline void fma_acc(double& acc, double a, double b) { acc = std::fma(a, b, acc); }

template <class T>
T from_int(long v) {
    return T(v);
}

// E[s][N] = e_{s,N} / (2 4^N) for excursions, B[s][N] = b_{s,N} / 4^N
// for bridges, where e_{s,N} = sum over paths of A^s / s!.
template <class T>
void run_dp(const std::vector<T>& w, int n_max, int s_max, std::vector<std::vector<T>>& E,
            std::vector<std::vector<T>>* B) {
    const int S = s_max + 1;
    std::vector<T> inv_fact(S);
    {
        T f = from_int<T>(1);
        for (int k = 0; k < S; ++k) {
            if (k > 0) f = f * from_int<T>(k);
            inv_fact[k] = from_int<T>(1) / f;
        }
    }
    E.assign(S, std::vector<T>(static_cast<size_t>(n_max) + 1, from_int<T>(0)));
    // G[t][m] = sum_{s2+s3=t} E[s2][m] w(m)^s3/s3!
    std::vector<std::vector<T>> G(S, std::vector<T>(static_cast<size_t>(n_max) + 1, from_int<T>(0)));
    std::vector<T> wp(S);
    auto update_g = [&](int m) {
        wp[0] = from_int<T>(1);
        for (int k = 1; k < S; ++k) wp[k] = wp[k - 1] * w[m];
        for (int t = 0; t < S; ++t) {
            T acc = from_int<T>(0);
            for (int s2 = 0; s2 <= t; ++s2) {
                T c = wp[t - s2] * inv_fact[t - s2];
                fma_acc(acc, E[s2][m], c);
            }
            G[t][m] = acc;
        }
    };
    E[0][0] = from_int<T>(1) / from_int<T>(2);
    update_g(0);
    const T half = from_int<T>(1) / from_int<T>(2);
    for (int N = 1; N <= n_max; ++N) {
        for (int s = 0; s < S; ++s) {
            T acc = from_int<T>(0);
            for (int s1 = 0; s1 <= s; ++s1) {
                const auto& e1 = E[s1];
                const auto& g = G[s - s1];
                for (int m = 0; m < N; ++m) fma_acc(acc, e1[N - 1 - m], g[m]);
            }
            E[s][N] = acc * half;
        }
        update_g(N);
    }
    if (B) {
        B->assign(S, std::vector<T>(static_cast<size_t>(n_max) + 1, from_int<T>(0)));
        (*B)[0][0] = from_int<T>(1);
        for (int N = 1; N <= n_max; ++N)
            for (int s = 0; s < S; ++s) {
                T acc = from_int<T>(0);
                for (int s1 = 0; s1 <= s; ++s1) {
                    const auto& b1 = (*B)[s1];
                    const auto& g = G[s - s1];
                    for (int m = 0; m < N; ++m) fma_acc(acc, b1[N - 1 - m], g[m]);
                }
                (*B)[s][N] = acc;
            }
    }
}

template <class T>
std::vector<std::vector<T>> moments_from_dp(Ensemble e, const std::vector<T>& w, int n_max, int s_max) {
    std::vector<std::vector<T>> E, B;
    run_dp<T>(w, n_max, s_max, E, e == Ensemble::bridge ? &B : nullptr);
    const auto& X = e == Ensemble::bridge ? B : E;
    std::vector<std::vector<T>> M(static_cast<size_t>(s_max) + 1,
                                  std::vector<T>(static_cast<size_t>(n_max) + 1, from_int<T>(0)));
    T fact = from_int<T>(1);
    for (int s = 0; s <= s_max; ++s) {
        if (s > 0) fact = fact * from_int<T>(s);
        for (int N = 0; N <= n_max; ++N) M[s][N] = fact * X[s][N] / X[0][N];
    }
    return M;
}

}  // namespace

FiniteNTable exact_moment_dp(Ensemble e, const CostFunction& cost, const Scalar& eps, int n_max, int s_max) {
    if (n_max < 0 || s_max < 0) throw DomainError("n_max and s_max must be >= 0");
    FiniteNTable t{e, cost.id(), "", s_max, n_max, ScalarKind::real, {}, std::nullopt};
    const bool rational = eps.index() == 0 && cost.is_rational();
    if (rational) {
        const Rat& ep = std::get<0>(eps);
        t.eps_str = rat_str(ep);
        auto om = cost.table_exact(n_max + 1);
        std::vector<Rat> w;
        for (auto& v : om) w.push_back(v - ep);
        auto M = moments_from_dp<Rat>(e, w, n_max, s_max);
        for (auto& row : M)
            for (auto& v : row) v.canonicalize();
        t.kind = ScalarKind::rational;
        t.values.resize(M.size());
        for (size_t s = 0; s < M.size(); ++s)
            for (auto& v : M[s]) t.values[s].emplace_back(v);
        t.exact = std::move(M);
        return t;
    }
    Real ep = eps.index() == 0 ? Real(std::get<0>(eps)) : std::get<1>(eps);
    t.eps_str = ep.str(30);
    auto om = cost.table(n_max + 1);
    std::vector<Real> w;
    for (auto& v : om) w.push_back(v - ep);
    t.values = moments_from_dp<Real>(e, w, n_max, s_max);
    return t;
}

std::vector<std::vector<double>> exact_moment_dp_double(Ensemble e, const std::vector<double>& w, int n_max,
                                                        int s_max) {
    return moments_from_dp<double>(e, w, n_max, s_max);
}

std::vector<std::vector<Rat>> brute_force_moments(Ensemble e, const CostFunction& cost, const Rat& eps, int n_max,
                                                  int s_max) {
    std::vector<std::vector<Rat>> M(static_cast<size_t>(s_max) + 1,
                                    std::vector<Rat>(static_cast<size_t>(n_max) + 1, Rat(0)));
    auto om = cost.table_exact(n_max + 1);
    std::vector<int> sl, st;
    for (int N = 0; N <= n_max; ++N) {
        std::vector<Rat> sums(static_cast<size_t>(s_max) + 1, Rat(0));
        long count = 0;
        for_each_path(N, e, [&](const Steps& steps) {
            slice_semilengths_into(steps, sl, st);
            Rat a(0);
            for (int m : sl) a += om[m] - eps;
            Rat pw(1);
            for (int s = 0; s <= s_max; ++s) {
                sums[s] += pw;
                pw *= a;
            }
            ++count;
        });
        for (int s = 0; s <= s_max; ++s) {
            M[s][N] = sums[s] / count;
            M[s][N].canonicalize();
        }
    }
    return M;
}

std::vector<ConvergenceRow> rescaled_convergence(const FiniteNTable& table, const Real& p) {
    auto mbar = rescaled_moments(table.ensemble, p, table.s_max);
    const int nmax = table.n_max;
    // geometric points over the top decade
    std::vector<int> ns;
    for (int j = 8; j >= 0; --j) {
        int n = static_cast<int>(std::lround(nmax * std::pow(10.0, -j / 8.0)));
        if (n >= 1 && (ns.empty() || n > ns.back())) ns.push_back(n);
    }
    std::vector<ConvergenceRow> out;
    for (int s = 0; s <= table.s_max; ++s) {
        ConvergenceRow row{s, mbar[s], ns, {}, 0.0};
        Real ex = Real(s) * (p + 0.5);
        std::vector<double> xs, ys;
        for (int n : ns) {
            Real d = table.at(s, n) / pow(Real(n), ex) - mbar[s];
            if (s == 0) d = Real(0);
            row.deviations.push_back(d);
            if (!d.is_zero()) {
                xs.push_back(n);
                ys.push_back(d.to_double());
            }
        }
        if (xs.size() >= 2) row.fitted_exponent = -loglog_slope(xs, ys);
        else row.fitted_exponent = std::numeric_limits<double>::infinity();
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<int> path_to_tree_hooks(const LatticePath& path) {
    if (path.ensemble != Ensemble::excursion) throw MalformedPath("tree hooks need an excursion");
    validate(path);
    // each up-step creates a child of the current vertex
    std::vector<int> parent{-1}, size{1};
    int cur = 0;
    for (auto x : path.steps) {
        if (x > 0) {
            parent.push_back(cur);
            size.push_back(1);
            cur = static_cast<int>(parent.size()) - 1;
        } else {
            cur = parent[cur];
        }
    }
    for (int v = static_cast<int>(parent.size()) - 1; v >= 1; --v) size[parent[v]] += size[v];
    std::vector<int> hooks(size.begin() + 1, size.end());
    auto slices = slice_semilengths(path);
    std::vector<int> a, b;
    for (int h : hooks) a.push_back(2 * h - 1);
    for (int m : slices) b.push_back(2 * m + 1);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw MismatchError("hook multiset does not match slice lengths for " + path.str());
    return hooks;
}

void write_table_csv(std::ostream& os, const FiniteNTable& t, const Real& p) {
    os << "ensemble,s,N,M_s(N),rescaled\n";
    const bool logc = t.cost_id.rfind("log-shift", 0) == 0;
    for (int s = 0; s <= t.s_max; ++s)
        for (int N = 0; N <= t.n_max; ++N) {
            std::string val = t.exact ? rat_str((*t.exact)[s][N]) : t.values[s][N].str(30);
            std::string resc;
            if (N == 0) {
                resc = s == 0 ? "1" : "";
            } else {
                // N ln N vanishes at N = 1; that row is left unscaled
                Real den = !logc ? pow(Real(N), Real(s) * (p + 0.5))
                           : N > 1 ? pow(Real(N) * log(Real(N)), Real(s) / 2) : Real(1);
                resc = (t.values[s][N] / den).str(30);
            }
            os << to_string(t.ensemble) << ',' << s << ',' << N << ',' << val << ',' << resc << '\n';
        }
}

}  // namespace pairy
