#pragma once

#include "pairy/real.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pairy {

constexpr int kTreeCap = 12;

// Rooted planar tree, stored as the preorder sequence of child counts.
class TreeShape {
public:
    explicit TreeShape(std::vector<int> child_counts);

    const std::vector<int>& child_counts() const { return deg_; }
    // number of non-root vertices
    int s() const { return static_cast<int>(deg_.size()) - 1; }
    int vertices() const { return static_cast<int>(deg_.size()); }
    int out_degree(int v) const { return deg_[v]; }
    // descendants of v (hook minus one)
    int descendants(int v) const { return desc_[v]; }
    int parent(int v) const { return parent_[v]; }
    bool is_leaf(int v) const { return deg_[v] == 0; }
    // leaves in preorder; leaf_index(v) is -1 for inner vertices
    const std::vector<int>& leaves() const { return leaves_; }
    int leaf_index(int v) const { return leaf_idx_[v]; }
    // bitmask over leaf indices of the leaves below v (v included)
    std::uint32_t leaf_mask(int v) const { return mask_[v]; }

    std::string str() const;

private:
    std::vector<int> deg_, desc_, parent_, leaves_, leaf_idx_;
    std::vector<std::uint32_t> mask_;
};

// All planar trees with s non-root vertices in lexicographic order of the
// child-count sequence. CapExceeded above kTreeCap.
std::vector<TreeShape> enumerate_trees(int s);
void for_each_tree(int s, const std::function<void(const TreeShape&)>& fn);

// a(l) = 4^(l-1) Gamma(l-1/2) / (sqrt(pi) Gamma(l+1)): -1/2, then C_{l-1}
Rat weight_a(int l);
// b(k) = Gamma((k+1)(p-1/2)+k) / (2 Gamma(k(p-1/2)+k-1/2))
Real weight_b(const Real& k, const Real& p);

Real nu(int s, const Real& p);

struct TreeCheckReport {
    int s_max;
    Real p;
    std::vector<Real> mu_recursion;
    std::vector<Real> mu_trees;
    Real max_rel_dev;
};
// mu^(E)_s = nu(s)/b(s) for 1 <= s <= s_max; MismatchError beyond tol
TreeCheckReport check_mu_equals_tree_sum(int s_max, const Real& p, const Real& tol);

struct XYReport {
    int order;
    Real p;
    std::vector<Real> x, y;
    Real max_dev_xy;  // Y - X - Y^2
    Real max_dev_a;   // A(X) - A(0) - Y
};
XYReport check_xy_identity(int order, const Real& p, const Real& tol);

struct DiagramValue {
    TreeShape tree;
    Real value;
    Real error;
};
// Per-tree terms of the p = 1/2 shifted moment expansion, derivatives by
// central differences with Richardson over fd_step, fd_step/2, fd_step/4.
std::vector<DiagramValue> half_point_diagram_values(int s, const Real& fd_step);
Real half_point_diagrams(int s, const Real& fd_step);

}  // namespace pairy
