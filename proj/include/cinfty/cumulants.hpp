#pragma once

#include "cinfty/bar.hpp"
#include "cinfty/partitions.hpp"

#include <memory>

namespace cinfty {

// Bracketing of a k-fold binary product as a planar binary tree.
struct BinaryTree {
    std::shared_ptr<const BinaryTree> left, right;  // both null for a leaf

    bool is_leaf() const { return !left; }
    std::size_t leaves() const { return is_leaf() ? 1 : left->leaves() + right->leaves(); }

    static std::shared_ptr<const BinaryTree> leaf() { return std::make_shared<BinaryTree>(); }
    static std::shared_ptr<const BinaryTree> node(std::shared_ptr<const BinaryTree> l,
                                                  std::shared_ptr<const BinaryTree> r) {
        auto t = std::make_shared<BinaryTree>();
        t->left = std::move(l);
        t->right = std::move(r);
        return t;
    }
    // ((a b) c) d ...
    static std::shared_ptr<const BinaryTree> left_comb(std::size_t k) {
        auto t = leaf();
        for (std::size_t i = 1; i < k; ++i) t = node(t, leaf());
        return t;
    }
    // a (b (c d...))
    static std::shared_ptr<const BinaryTree> right_comb(std::size_t k) {
        auto t = leaf();
        for (std::size_t i = 1; i < k; ++i) t = node(leaf(), t);
        return t;
    }
};

// Folds ordered factors with the degree-0 binary product m2 along the tree.
// No Koszul signs arise: the factors are consumed in their given order.
inline Vector apply_bracketing(const MultilinearMap& m2, const BinaryTree& tree,
                               std::span<const Vector> factors) {
    if (tree.leaves() != factors.size()) {
        throw std::invalid_argument("apply_bracketing: bracketing shape mismatch");
    }
    if (tree.is_leaf()) return factors[0];
    std::size_t nl = tree.left->leaves();
    Vector l = apply_bracketing(m2, *tree.left, factors.subspan(0, nl));
    Vector r = apply_bracketing(m2, *tree.right, factors.subspan(nl));
    return m2.apply({l, r});
}

// Controls how k-fold products are bracketed inside cumulant terms. The
// default (left comb everywhere) is the canonical choice; an override for
// one factor count realizes the "different ways of associating" of the
// C-infinity discussion.
struct BracketingRule {
    std::size_t override_size = 0;  // 0: no override
    std::shared_ptr<const BinaryTree> override_tree;

    std::shared_ptr<const BinaryTree> tree_for(std::size_t k) const {
        if (override_size == k) {
            if (!override_tree || override_tree->leaves() != k) {
                throw std::invalid_argument("bracketing shape mismatch with block size");
            }
            return override_tree;
        }
        return BinaryTree::left_comb(k);
    }
};

// Realization of prod_{b in pi} e(prod_{i in b} a_i) as an arity-n map:
// inputs multiplied in ascending index order inside each block under mA,
// e applied per block, block values multiplied in ascending-minimum order
// under mB, with the Koszul sign of unshuffling the inputs into block
// order. Requires degree-0 e and products, which keeps the realization
// sign-free beyond the unshuffle.
inline MultilinearMap block_product(const MultilinearMap& e, const MultilinearMap& mA,
                                    const MultilinearMap& mB, const Partition& pi,
                                    const BracketingRule& rule = {}) {
    if (e.arity() != 1 || e.degree() != 0) {
        throw std::invalid_argument("block_product: e must be an arity-1 degree-0 map");
    }
    if (mA.arity() != 2 || mA.degree() != 0 || mB.arity() != 2 || mB.degree() != 0) {
        throw std::invalid_argument("block_product: products must have arity 2 and degree 0");
    }
    if (!(*e.source() == *mA.source()) || !(*e.target() == *mB.source())) {
        throw std::invalid_argument("block_product: module mismatch between e and products");
    }
    std::size_t n = pi.n;
    MultilinearMap out(e.source(), e.target(), n, 0);
    const auto& src = *e.source();

    std::vector<std::size_t> perm;  // output position -> input index, 0-based
    perm.reserve(n);
    for (const auto& b : pi.blocks) {
        for (std::size_t el : b) perm.push_back(el - 1);
    }

    for (const auto& tuple : basis_tuples(src, n)) {
        std::vector<int> degrees(n);
        for (std::size_t i = 0; i < n; ++i) degrees[i] = src.degree_of(tuple[i]);
        Scalar sign = koszul_sign(perm, degrees);

        std::vector<Vector> block_values;
        block_values.reserve(pi.block_count());
        bool dead = false;
        for (const auto& b : pi.blocks) {
            std::vector<Vector> factors;
            factors.reserve(b.size());
            for (std::size_t el : b) factors.push_back(Vector::basis(e.source(), tuple[el - 1]));
            Vector prod = apply_bracketing(mA, *rule.tree_for(b.size()),
                                           std::span<const Vector>(factors));
            Vector val = e.apply({prod});
            if (val.is_zero()) {
                dead = true;
                break;
            }
            block_values.push_back(std::move(val));
        }
        if (dead) continue;
        Vector image = apply_bracketing(mB, *rule.tree_for(pi.block_count()),
                                        std::span<const Vector>(block_values));
        image *= sign;
        if (!image.is_zero()) out.add_entry(tuple, image);
    }
    return out;
}

// k_n(a_1,...,a_n) = sum_pi (|pi|-1)!(-1)^{|pi|-1} prod_{b} e(prod_b a_i).
inline MultilinearMap cumulant(const MultilinearMap& e, const MultilinearMap& mA,
                               const MultilinearMap& mB, std::size_t n,
                               const BracketingRule& rule = {}) {
    if (n < 1 || n > 6) throw std::length_error("cumulant: n out of supported range");
    MultilinearMap out(e.source(), e.target(), n, 0);
    for (const auto& pi : enumerate_partitions(n)) {
        out += mobius_coefficient(pi) * block_product(e, mA, mB, pi, rule);
    }
    return out;
}

// Reconstructs the moment e(a_1 ... a_n) as sum_pi prod_b k_{|b|}; all
// k_j have degree 0, so the only signs are the unshuffle Koszul signs.
inline MultilinearMap moments_from_cumulants(const std::vector<MultilinearMap>& cumulants,
                                             const MultilinearMap& mB, std::size_t n) {
    if (n < 1 || n > 6) throw std::length_error("moments_from_cumulants: n out of range");
    if (cumulants.size() < n) {
        throw std::invalid_argument("moments_from_cumulants: need cumulants k_1..k_n");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (cumulants[j].arity() != j + 1 || cumulants[j].degree() != 0) {
            throw std::invalid_argument("moments_from_cumulants: cumulants[j] must be k_{j+1}");
        }
    }
    const ModulePtr& src = cumulants[0].source();
    const ModulePtr& tgt = cumulants[0].target();
    MultilinearMap out(src, tgt, n, 0);
    BracketingRule rule;
    for (const auto& pi : enumerate_partitions(n)) {
        std::vector<std::size_t> perm;
        perm.reserve(n);
        for (const auto& b : pi.blocks) {
            for (std::size_t el : b) perm.push_back(el - 1);
        }
        for (const auto& tuple : basis_tuples(*src, n)) {
            std::vector<int> degrees(n);
            for (std::size_t i = 0; i < n; ++i) degrees[i] = src->degree_of(tuple[i]);
            Scalar sign = koszul_sign(perm, degrees);

            std::vector<Vector> block_values;
            block_values.reserve(pi.block_count());
            bool dead = false;
            for (const auto& b : pi.blocks) {
                std::vector<std::string> word;
                word.reserve(b.size());
                for (std::size_t el : b) word.push_back(tuple[el - 1]);
                Vector val = cumulants[b.size() - 1].value(word);
                if (val.is_zero()) {
                    dead = true;
                    break;
                }
                block_values.push_back(std::move(val));
            }
            if (dead) continue;
            Vector image = apply_bracketing(mB, *rule.tree_for(pi.block_count()),
                                            std::span<const Vector>(block_values));
            image *= sign;
            if (!image.is_zero()) out.add_entry(tuple, image);
        }
    }
    return out;
}

// The direct arity-n moment (a_1,...,a_n) -> e(a_1 ... a_n).
inline MultilinearMap moment(const MultilinearMap& e, const MultilinearMap& mA, std::size_t n) {
    MultilinearMap out(e.source(), e.target(), n, 0);
    BracketingRule rule;
    const auto& src = *e.source();
    for (const auto& tuple : basis_tuples(src, n)) {
        std::vector<Vector> factors;
        factors.reserve(n);
        for (const auto& name : tuple) factors.push_back(Vector::basis(e.source(), name));
        Vector image =
            e.apply({apply_bracketing(mA, *rule.tree_for(n), std::span<const Vector>(factors))});
        if (!image.is_zero()) out.add_entry(tuple, image);
    }
    return out;
}

// k_2 computed by the partition sum must equal the Boolean (interval
// partition) second cumulant e(ab) - e(a)e(b), written out directly.
inline CheckReport boolean_k2_crosscheck(const MultilinearMap& e, const MultilinearMap& mA,
                                         const MultilinearMap& mB) {
    CheckReport report;
    report.check = "boolean_k2_crosscheck";
    report.arity_range = "2";
    MultilinearMap lhs = cumulant(e, mA, mB, 2);
    MultilinearMap rhs(e.source(), e.target(), 2, 0);
    const auto& src = *e.source();
    for (const auto& pair : basis_tuples(src, 2)) {
        Vector a = Vector::basis(e.source(), pair[0]), b = Vector::basis(e.source(), pair[1]);
        Vector v = e.apply({mA.apply({a, b})}) - mB.apply({e.apply({a}), e.apply({b})});
        if (!v.is_zero()) rhs.add_entry(pair, v);
    }
    MultilinearMap diff = lhs - rhs;
    if (!diff.is_zero()) {
        auto w = *diff.first_nonzero_inputs();
        report.fail(w, vector_to_string(diff.value(w)));
    }
    return report;
}

// Cumulant representative for a morphism between (C-infinity) A-infinity
// structures, with every n-fold product realized by the supplied binary
// bracketing of m_2. Different bracketings give homotopic representatives;
// see the second DERIVED example tests for the constructive preimage.
inline MultilinearMap cumulant_upto_homotopy(const AInftyMorphism& P, std::size_t n,
                                             std::shared_ptr<const BinaryTree> bracketing) {
    if (n < 1 || n > 3) throw std::length_error("cumulant_upto_homotopy: n out of range");
    if (!bracketing || bracketing->leaves() != n) {
        throw std::invalid_argument("bracketing shape mismatch with block size");
    }
    BracketingRule rule{n, std::move(bracketing)};
    return cumulant(P.component(1), P.source().operation(2), P.target().operation(2), n, rule);
}

}  // namespace cinfty
