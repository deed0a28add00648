#pragma once

#include "cinfty/multilinear.hpp"
#include "cinfty/report.hpp"

#include <set>
#include <sstream>

namespace cinfty {

inline std::string vector_to_string(const Vector& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, c] : v.coeffs()) {
        if (!first) os << " + ";
        os << scalar_to_string(c) << "*" << name;
        first = false;
    }
    return os.str();
}

struct ChainComplex {
    ModulePtr module;
    MultilinearMap differential;  // arity 1, degree +1

    ChainComplex() = default;
    ChainComplex(ModulePtr m, MultilinearMap d)
        : module(std::move(m)), differential(std::move(d)) {
        if (differential.arity() != 1 || differential.degree() != 1) {
            throw std::invalid_argument("differential must have arity 1 and degree +1");
        }
        if (!(*differential.source() == *module) || !(*differential.target() == *module)) {
            throw std::invalid_argument("differential must be an endomap of the module");
        }
    }
};

inline CheckReport check_complex(const ChainComplex& c) {
    CheckReport report;
    report.check = "d_squared_zero";
    report.arity_range = "1";
    for (const auto& b : c.module->basis()) {
        Vector dd = c.differential.apply({c.differential.apply({Vector::basis(c.module, b.name)})});
        if (!dd.is_zero()) report.fail({b.name}, vector_to_string(dd));
    }
    return report;
}

struct DgcaPresentation {
    ChainComplex complex;
    MultilinearMap product;  // arity 2, degree 0

    DgcaPresentation() = default;
    DgcaPresentation(ChainComplex c, MultilinearMap m)
        : complex(std::move(c)), product(std::move(m)) {
        if (product.arity() != 2 || product.degree() != 0) {
            throw std::invalid_argument("dgca product must have arity 2 and degree 0");
        }
    }

    const ModulePtr& module() const { return complex.module; }
};

inline CheckReport check_dgca(const DgcaPresentation& a) {
    CheckReport report;
    report.check = "dgca_axioms";
    report.arity_range = "2..3";
    const auto& mod = a.module();
    const auto& m = a.product;
    const auto& d = a.complex.differential;

    auto dd = check_complex(a.complex);
    for (auto& v : dd.violations) report.fail(v.inputs, "d^2: " + v.defect);

    for (const auto& pair : basis_tuples(*mod, 2)) {
        Vector x = Vector::basis(mod, pair[0]), y = Vector::basis(mod, pair[1]);
        int dx = mod->degree_of(pair[0]), dy = mod->degree_of(pair[1]);
        // graded commutativity
        Scalar sign = (static_cast<long>(dx) * dy % 2 == 0) ? 1 : -1;
        Vector comm = m.apply({x, y}) - sign * m.apply({y, x});
        if (!comm.is_zero()) report.fail(pair, "commutativity: " + vector_to_string(comm));
        // Leibniz
        Scalar lsign = (dx % 2 == 0) ? 1 : -1;
        Vector leib = d.apply({m.apply({x, y})}) - m.apply({d.apply({x}), y}) -
                      lsign * m.apply({x, d.apply({y})});
        if (!leib.is_zero()) report.fail(pair, "leibniz: " + vector_to_string(leib));
    }
    for (const auto& triple : basis_tuples(*mod, 3)) {
        Vector x = Vector::basis(mod, triple[0]), y = Vector::basis(mod, triple[1]),
               z = Vector::basis(mod, triple[2]);
        Vector assoc = m.apply({m.apply({x, y}), z}) - m.apply({x, m.apply({y, z})});
        if (!assoc.is_zero()) report.fail(triple, "associativity: " + vector_to_string(assoc));
    }
    return report;
}

// A-infinity structure as a family {m_n}, m_n of arity n and degree 2-n,
// with m_1 the differential, stored up to a cut-off arity.
class AInftyStructure {
public:
    AInftyStructure() = default;
    AInftyStructure(ChainComplex complex, std::size_t cutoff)
        : complex_(std::move(complex)), cutoff_(cutoff) {}

    static AInftyStructure from_dgca(const DgcaPresentation& a, std::size_t cutoff = 4) {
        AInftyStructure s(a.complex, cutoff);
        s.set_operation(a.product);
        return s;
    }

    const ChainComplex& complex() const { return complex_; }
    const ModulePtr& module() const { return complex_.module; }
    std::size_t cutoff() const { return cutoff_; }

    void set_operation(const MultilinearMap& m) {
        std::size_t n = m.arity();
        if (n < 2 || n > cutoff_) throw std::invalid_argument("operation arity out of range");
        if (m.degree() != 2 - static_cast<int>(n)) {
            throw std::invalid_argument("m_n must have degree 2-n");
        }
        if (!(*m.source() == *module()) || !(*m.target() == *module())) {
            throw std::invalid_argument("operation module mismatch");
        }
        ops_[n] = m;
    }

    // m_n; m_1 is the differential, higher absent entries are zero.
    MultilinearMap operation(std::size_t n) const {
        if (n == 1) return complex_.differential;
        auto it = ops_.find(n);
        if (it != ops_.end()) return it->second;
        return MultilinearMap::zero(module(), module(), n, 2 - static_cast<int>(n));
    }

    bool has_operation(std::size_t n) const { return n == 1 || ops_.count(n) > 0; }

private:
    ChainComplex complex_;
    std::size_t cutoff_ = 4;
    std::map<std::size_t, MultilinearMap> ops_;
};

// A-infinity morphism {p_n}, p_n of arity n and degree 1-n, p_1 a chain map.
class AInftyMorphism {
public:
    AInftyMorphism() = default;
    AInftyMorphism(AInftyStructure source, AInftyStructure target, std::size_t cutoff)
        : source_(std::move(source)), target_(std::move(target)), cutoff_(cutoff) {}

    const AInftyStructure& source() const { return source_; }
    const AInftyStructure& target() const { return target_; }
    std::size_t cutoff() const { return cutoff_; }

    void set_component(const MultilinearMap& p) {
        std::size_t n = p.arity();
        if (n < 1 || n > cutoff_) throw std::invalid_argument("component arity out of range");
        if (p.degree() != 1 - static_cast<int>(n)) {
            throw std::invalid_argument("p_n must have degree 1-n");
        }
        if (!(*p.source() == *source_.module()) || !(*p.target() == *target_.module())) {
            throw std::invalid_argument("component module mismatch");
        }
        comps_[n] = p;
    }

    MultilinearMap component(std::size_t n) const {
        auto it = comps_.find(n);
        if (it != comps_.end()) return it->second;
        return MultilinearMap::zero(source_.module(), target_.module(), n,
                                    1 - static_cast<int>(n));
    }

    bool has_component(std::size_t n) const { return comps_.count(n) > 0; }

private:
    AInftyStructure source_;
    AInftyStructure target_;
    std::size_t cutoff_ = 4;
    std::map<std::size_t, MultilinearMap> comps_;
};

// All (q,r)-shuffles as permutations in one-line form: entry p holds which
// input sits at output position p (0-based). Count is binomial(q+r, q).
inline std::vector<std::vector<std::size_t>> enumerate_shuffles(std::size_t q, std::size_t r,
                                                                std::size_t bound = 8) {
    if (q < 1 || r < 1) throw std::invalid_argument("enumerate_shuffles: q, r must be >= 1");
    if (q + r > bound) {
        throw std::length_error("enumerate_shuffles: q + r exceeds configured bound");
    }
    std::size_t n = q + r;
    std::vector<std::vector<std::size_t>> out;
    // Choose the positions of the first block; both blocks stay in order.
    std::vector<std::size_t> positions(q);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t from) {
        if (idx == q) {
            std::vector<std::size_t> perm(n);
            std::vector<bool> taken(n, false);
            for (std::size_t i = 0; i < q; ++i) {
                perm[positions[i]] = i;
                taken[positions[i]] = true;
            }
            std::size_t next = q;
            for (std::size_t p = 0; p < n; ++p) {
                if (!taken[p]) perm[p] = next++;
            }
            out.push_back(std::move(perm));
            return;
        }
        for (std::size_t p = from; p < n; ++p) {
            positions[idx] = p;
            rec(idx + 1, p + 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// f applied to the signed sum over (q,r)-shuffles of its inputs. The
// C-infinity condition for f is that this map vanishes identically.
//
// The shuffle sum lives on the suspension: permutation signs are Koszul
// signs in the shifted degrees |a|-1, conjugated back by the suspension
// sign so the identity shuffle contributes +f. Plain-degree signs would
// make a graded-commutative product fail its own (1,1) condition on odd
// elements.
inline MultilinearMap shuffle_defect(const MultilinearMap& f, std::size_t q, std::size_t r) {
    if (f.arity() != q + r) throw std::invalid_argument("shuffle_defect: arity mismatch");
    const auto shuffles = enumerate_shuffles(q, r);
    MultilinearMap defect(f.source(), f.target(), f.arity(), f.degree());
    const auto& module = *f.source();
    auto susp_sign = [&](const std::vector<std::string>& word) {
        long e = 0;
        for (std::size_t j = 0; j + 1 < word.size(); ++j) {
            e += static_cast<long>(word.size() - 1 - j) * (module.degree_of(word[j]) - 1);
        }
        return (e % 2 == 0) ? Scalar(1) : Scalar(-1);
    };
    // Only tuples with some shuffle landing in the support of f can
    // contribute; enumerate those instead of the full tuple domain.
    const std::size_t n = f.arity();
    std::set<std::vector<std::string>> candidates;
    for (const auto& [word, image] : f.entries()) {
        for (const auto& perm : shuffles) {
            std::vector<std::string> tuple(n);
            for (std::size_t p = 0; p < n; ++p) tuple[perm[p]] = word[p];
            candidates.insert(std::move(tuple));
        }
    }
    std::vector<std::string> permuted(n);
    for (const auto& tuple : candidates) {
        std::vector<int> sdegrees(n);
        for (std::size_t i = 0; i < n; ++i) {
            sdegrees[i] = module.degree_of(tuple[i]) - 1;
        }
        Vector acc(f.target());
        for (const auto& perm : shuffles) {
            for (std::size_t p = 0; p < n; ++p) permuted[p] = tuple[perm[p]];
            const Vector* v = f.find_entry(permuted);
            if (!v) continue;
            acc += (koszul_sign(perm, sdegrees) * susp_sign(permuted)) * *v;
        }
        acc *= susp_sign(tuple);
        if (!acc.is_zero()) defect.add_entry(tuple, acc);
    }
    return defect;
}

// Precomposition with the first Eulerian idempotent e_n, the logarithm of
// the identity under shuffle-deconcatenation convolution: for a word of
// length n,
//   e(w) = sum_{k>=1} ((-1)^{k-1}/k) sum_{n=i_1+...+i_k} sh(w_1,...,w_k),
// w cut into consecutive blocks of lengths i_j, sh the signed sum over all
// interleavings keeping each block in order. Signs are Koszul signs in the
// shifted degrees conjugated by the suspension sign, the same convention as
// shuffle_defect. The image of id - e_n is spanned by shuffle sums, so
// f o e_n kills shuffles for any f, and f o e_n = f whenever f already does;
// this is the projection onto maps satisfying the C-infinity condition.
inline MultilinearMap harrison_projection(const MultilinearMap& f) {
    const std::size_t n = f.arity();
    if (n <= 1) return f;
    // (coefficient, permutation) pairs of e_n, independent of degrees
    std::vector<std::pair<Scalar, std::vector<std::size_t>>> terms;
    std::vector<std::size_t> lengths;
    std::function<void(std::size_t)> compositions = [&](std::size_t used) {
        if (used == n) {
            const std::size_t k = lengths.size();
            Scalar base = Scalar((k % 2 == 1) ? 1 : -1) / Scalar(static_cast<long>(k));
            std::vector<std::size_t> starts(k), ptr(k, 0);
            for (std::size_t j = 0, s = 0; j < k; s += lengths[j], ++j) starts[j] = s;
            std::vector<std::size_t> perm;
            std::function<void()> interleave = [&]() {
                if (perm.size() == n) {
                    terms.emplace_back(base, perm);
                    return;
                }
                for (std::size_t j = 0; j < k; ++j) {
                    if (ptr[j] == lengths[j]) continue;
                    perm.push_back(starts[j] + ptr[j]);
                    ++ptr[j];
                    interleave();
                    --ptr[j];
                    perm.pop_back();
                }
            };
            interleave();
            return;
        }
        for (std::size_t len = 1; used + len <= n; ++len) {
            lengths.push_back(len);
            compositions(used + len);
            lengths.pop_back();
        }
    };
    compositions(0);

    const auto& module = *f.source();
    auto susp_sign = [&](const std::vector<std::string>& word) {
        long e = 0;
        for (std::size_t j = 0; j + 1 < word.size(); ++j) {
            e += static_cast<long>(word.size() - 1 - j) * (module.degree_of(word[j]) - 1);
        }
        return (e % 2 == 0) ? Scalar(1) : Scalar(-1);
    };
    // Only permutations of support tuples can contribute; enumerate those
    // instead of the full tuple domain.
    std::set<std::vector<std::string>> candidates;
    for (const auto& [inputs, image] : f.entries()) {
        auto key = inputs;
        std::sort(key.begin(), key.end());
        do {
            candidates.insert(key);
        } while (std::next_permutation(key.begin(), key.end()));
    }
    MultilinearMap out(f.source(), f.target(), n, f.degree());
    std::vector<std::string> permuted(n);
    for (const auto& tuple : candidates) {
        std::vector<int> sdeg(n);
        for (std::size_t i = 0; i < n; ++i) sdeg[i] = module.degree_of(tuple[i]) - 1;
        Vector acc(f.target());
        for (const auto& [coeff, perm] : terms) {
            for (std::size_t p = 0; p < n; ++p) permuted[p] = tuple[perm[p]];
            const Vector* v = f.find_entry(permuted);
            if (!v) continue;
            acc += (coeff * koszul_sign(perm, sdeg) * susp_sign(permuted)) * *v;
        }
        acc *= susp_sign(tuple);
        if (!acc.is_zero()) out.add_entry(tuple, acc);
    }
    return out;
}

// Hom-complex boundary:
//   (hom_boundary f) = d_B o f - (-1)^{|f|} sum_k f o (1 x ... d_A ... x 1)
// with the Koszul sign of moving d_A past the first k-1 inputs.
inline MultilinearMap hom_boundary(const MultilinearMap& f, const MultilinearMap& d_source,
                                   const MultilinearMap& d_target) {
    MultilinearMap out = compose(d_target, f);
    Scalar sign = (f.degree() % 2 == 0) ? -1 : 1;  // -(-1)^{|f|}
    for (std::size_t k = 1; k <= f.arity(); ++k) {
        out += sign * compose_at(f, d_source, k);
    }
    return out;
}

}  // namespace cinfty
