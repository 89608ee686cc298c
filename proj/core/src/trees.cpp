#include "pairy/trees.hpp"

#include "pairy/errors.hpp"
#include "pairy/moments.hpp"
#include "pairy/numerics.hpp"

#include <sstream>

namespace pairy {

TreeShape::TreeShape(std::vector<int> child_counts) : deg_(std::move(child_counts)) {
    const int n = static_cast<int>(deg_.size());
    if (n == 0) throw DomainError("tree needs a root");
    desc_.assign(n, 0);
    parent_.assign(n, -1);
    leaf_idx_.assign(n, -1);
    mask_.assign(n, 0);
    // preorder walk with a stack of (vertex, children left)
    std::vector<std::pair<int, int>> st;
    int next = 1;
    st.emplace_back(0, deg_[0]);
    while (!st.empty()) {
        auto& top = st.back();
        if (top.second == 0) {
            st.pop_back();
            continue;
        }
        --top.second;
        if (next >= n) throw DomainError("invalid child-count sequence");
        int v = next++;
        parent_[v] = top.first;
        st.emplace_back(v, deg_[v]);
    }
    if (next != n) throw DomainError("invalid child-count sequence");
    for (int v = n - 1; v >= 1; --v) desc_[parent_[v]] += desc_[v] + 1;
    for (int v = 0; v < n; ++v)
        if (deg_[v] == 0) {
            leaf_idx_[v] = static_cast<int>(leaves_.size());
            leaves_.push_back(v);
        }
    for (int v = n - 1; v >= 0; --v) {
        if (leaf_idx_[v] >= 0 && leaf_idx_[v] < 32) mask_[v] |= 1u << leaf_idx_[v];
        if (v > 0) mask_[parent_[v]] |= mask_[v];
    }
}

std::string TreeShape::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < deg_.size(); ++i) os << (i ? "," : "") << deg_[i];
    return os.str();
}

namespace {

void gen(std::vector<int>& cur, int remaining_vertices, int open, const std::function<void(const TreeShape&)>& fn) {
    // open = child slots still to fill
    if (open == 0) {
        if (remaining_vertices == 0) fn(TreeShape(cur));
        return;
    }
    // the next vertex fills one slot and opens d new ones
    for (int d = 0; d <= remaining_vertices - 1; ++d) {
        if (open - 1 + d > remaining_vertices - 1) break;
        cur.push_back(d);
        gen(cur, remaining_vertices - 1, open - 1 + d, fn);
        cur.pop_back();
    }
}

}  // namespace

void for_each_tree(int s, const std::function<void(const TreeShape&)>& fn) {
    if (s < 0) throw DomainError("tree size must be >= 0");
    if (s > kTreeCap) throw CapExceeded("tree enumeration capped at s=" + std::to_string(kTreeCap));
    std::vector<int> cur;
    for (int d = 0; d <= s; ++d) {
        if (s == 0 && d > 0) break;
        if (s > 0 && d == 0) continue;
        cur.assign(1, d);
        gen(cur, s, d, fn);
    }
}

std::vector<TreeShape> enumerate_trees(int s) {
    std::vector<TreeShape> out;
    for_each_tree(s, [&](const TreeShape& t) { out.push_back(t); });
    return out;
}

Rat weight_a(int l) {
    if (l < 0) throw DomainError("weight_a needs l >= 0");
    if (l == 0) return Rat(-1, 2);
    return catalan(l - 1);
}

Real weight_b(const Real& k, const Real& p) {
    Real pm = p - 0.5;
    Real num = (k + 1) * pm + k;
    if (num.sign() <= 0 && num.is_integer()) throw PoleError("b(k) pole at k=" + k.str(8) + ", p=" + p.str(8));
    return gamma(num) * rgamma(k * pm + k - 0.5) / 2;
}

namespace {

std::vector<Real> b_table(int s, const Real& p) {
    std::vector<Real> b;
    for (int k = 0; k <= s; ++k) b.push_back(weight_b(Real(k), p));
    return b;
}

Real nu_with(int s, const std::vector<Real>& b, const std::vector<Real>& a) {
    Real total(0);
    for_each_tree(s, [&](const TreeShape& t) {
        Real prod(1);
        for (int v = 0; v < t.vertices(); ++v) prod *= b[t.descendants(v)] * a[t.out_degree(v)];
        total += prod;
    });
    return total;
}

std::vector<Real> a_table(int s) {
    std::vector<Real> a;
    for (int l = 0; l <= s; ++l) a.emplace_back(weight_a(l));
    return a;
}

}  // namespace

Real nu(int s, const Real& p) { return nu_with(s, b_table(s, p), a_table(s)); }

TreeCheckReport check_mu_equals_tree_sum(int s_max, const Real& p, const Real& tol) {
    TreeCheckReport rep{s_max, p, mu_excursion(p, s_max), {}, Real(0)};
    auto b = b_table(s_max, p);
    auto a = a_table(s_max);
    rep.mu_trees.emplace_back(-0.5);
    for (int s = 1; s <= s_max; ++s) {
        Real v = nu_with(s, b, a) / b[s];
        Real dev = abs(v - rep.mu_recursion[s]) / max(abs(rep.mu_recursion[s]), Real(1e-300));
        rep.max_rel_dev = max(rep.max_rel_dev, dev);
        rep.mu_trees.push_back(std::move(v));
    }
    if (rep.max_rel_dev > tol)
        throw MismatchError("tree sum differs from recursion: rel dev " + rep.max_rel_dev.str(6));
    return rep;
}

XYReport check_xy_identity(int order, const Real& p, const Real& tol) {
    if (order > kTreeCap) throw CapExceeded("xy identity capped at order " + std::to_string(kTreeCap));
    XYReport rep{order, p, {}, {}, Real(0), Real(0)};
    auto b = b_table(order, p);
    auto a = a_table(order);
    rep.x.assign(static_cast<size_t>(order) + 1, Real(0));
    rep.y.assign(static_cast<size_t>(order) + 1, Real(0));
    for (int s = 1; s <= order; ++s) {
        rep.x[s] = nu_with(s - 1, b, a);
        rep.y[s] = nu_with(s, b, a) / b[s];
    }
    auto conv = [order](const std::vector<Real>& f, const std::vector<Real>& g) {
        std::vector<Real> h(static_cast<size_t>(order) + 1, Real(0));
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j) mul_add(h[i + j], f[i], g[j]);
        return h;
    };
    auto y2 = conv(rep.y, rep.y);
    // A(X) - A(0) = sum_{l>=1} C_{l-1} X^l
    std::vector<Real> ax(static_cast<size_t>(order) + 1, Real(0));
    std::vector<Real> xp = rep.x;
    for (int l = 1; l <= order; ++l) {
        Real c(catalan(l - 1));
        for (int n = 0; n <= order; ++n) mul_add(ax[n], c, xp[n]);
        xp = conv(xp, rep.x);
    }
    for (int s = 1; s <= order; ++s) {
        Real scale = max(abs(rep.y[s]), Real(1));
        rep.max_dev_xy = max(rep.max_dev_xy, abs(rep.y[s] - rep.x[s] - y2[s]) / scale);
        rep.max_dev_a = max(rep.max_dev_a, abs(ax[s] - rep.y[s]) / scale);
    }
    if (rep.max_dev_xy > tol || rep.max_dev_a > tol)
        throw MismatchError("Y = X + Y^2 fails: dev " + rep.max_dev_xy.str(6) + " / " + rep.max_dev_a.str(6));
    return rep;
}

namespace {

// integrand of one diagram at leaf variables y (indexed by leaf order)
Real diagram_integrand(const TreeShape& t, int s, const std::vector<Real>& y, const Real& xi) {
    const Real half(0.5);
    Real yr(0);
    for (const auto& v : y) yr += v;
    Real val = exp(xi * yr) * rgamma(Real(s) - yr);
    for (int v = 0; v < t.vertices(); ++v) {
        if (t.is_leaf(v)) continue;
        Real yv(0);
        std::uint32_t m = t.leaf_mask(v);
        for (size_t i = 0; i < y.size(); ++i)
            if (m & (1u << i)) yv += y[i];
        val *= Real(weight_a(t.out_degree(v))) * weight_b(Real(t.descendants(v)) - yv, half);
    }
    return val;
}

// mixed derivative d^m/dy_1..dy_m at 0 by a central stencil of step h
Real mixed_derivative(const TreeShape& t, int s, const Real& h, const Real& xi) {
    const int m = static_cast<int>(t.leaves().size());
    Real acc(0);
    std::vector<Real> y(static_cast<size_t>(m));
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        int neg = 0;
        for (int i = 0; i < m; ++i) {
            bool minus = bits & (1u << i);
            y[i] = minus ? -h : h;
            neg += minus;
        }
        Real f = diagram_integrand(t, s, y, xi);
        if (neg % 2) acc -= f;
        else acc += f;
    }
    return acc / pow(2 * h, static_cast<long>(m));
}

}  // namespace

std::vector<DiagramValue> half_point_diagram_values(int s, const Real& fd_step) {
    if (s < 1 || s > 4) throw DomainError("half_point_diagrams supports 1 <= s <= 4");
    if (fd_step.sign() <= 0) throw DomainError("fd_step must be > 0");
    const Real sp = sqrt_pi();
    const Real xi = 2 * ln2() + euler_gamma();
    const Real C = 1 / (8 * sp);
    const Real pref = 8 * sp * Real(factorial(static_cast<unsigned>(s)));
    std::vector<DiagramValue> out;
    for_each_tree(s, [&](const TreeShape& t) {
        const int m = static_cast<int>(t.leaves().size());
        Real d0 = mixed_derivative(t, s, fd_step, xi);
        Real d1 = mixed_derivative(t, s, fd_step / 2, xi);
        Real d2 = mixed_derivative(t, s, fd_step / 4, xi);
        Real r1 = (4 * d1 - d0) / 3;
        Real r2 = (4 * d2 - d1) / 3;
        Real r = (16 * r2 - r1) / 15;
        Real err = abs(r - r2);
        Real scale = max(abs(r), Real(1));
        if (err > scale * Real(1e-6))
            throw DerivativeUnstable("finite-difference levels disagree for tree " + t.str());
        Real coef = pref * pow(-C, static_cast<long>(m));
        out.push_back(DiagramValue{t, coef * r, abs(coef) * err});
    });
    return out;
}

Real half_point_diagrams(int s, const Real& fd_step) {
    Real total(0);
    for (const auto& d : half_point_diagram_values(s, fd_step)) total += d.value;
    return total;
}

}  // namespace pairy
