#pragma once

#include "cinfty/structures.hpp"

#include <functional>

namespace cinfty {

// Bar-construction oracle. Operations m_n are pushed to the reduced tensor
// coalgebra on the suspension, where the only sign inputs are the
// suspension sign below and the Koszul sign of moving a degree +1
// coderivation into a word. Stasheff/morphism identities with "correct
// signs" are then the single checkable statement D^2 = 0 / D F = F D.

// Sign of (s^{-1})^{x n} applied to s a_1 x ... x s a_n:
// (-1)^{sum_{j<n} (n-j)(|a_j|-1)}.
inline Scalar suspension_sign(const GradedModule& module,
                              const std::vector<std::string>& word) {
    long exponent = 0;
    std::size_t n = word.size();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        exponent += static_cast<long>(n - 1 - j) * (module.degree_of(word[j]) - 1);
    }
    return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1);
}

// Sparse element of the (truncated) tensor coalgebra: words of basis names
// with rational coefficients, lengths may mix.
struct BarElement {
    std::map<std::vector<std::string>, Scalar> coeffs;

    void add(const std::vector<std::string>& word, const Scalar& c) {
        if (c == 0) return;
        auto it = coeffs.find(word);
        if (it == coeffs.end()) {
            coeffs[word] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }
    bool is_zero() const { return coeffs.empty(); }
};

// b_n = s o m_n o (s^{-1})^{x n}, evaluated on a basis word. Degree +1.
inline Vector bar_operation(const AInftyStructure& a, std::size_t n,
                            const std::vector<std::string>& word) {
    Scalar sign = suspension_sign(*a.module(), word);
    return sign * a.operation(n).value(word);
}

// The codifferential D = sum over positions/arities of 1 x.. b_n ..x 1,
// with the Koszul sign (-1)^{sum of suspended degrees left of the slot}.
inline BarElement bar_differential(const AInftyStructure& a, const BarElement& x) {
    BarElement out;
    const auto& module = *a.module();
    for (const auto& [word, coeff] : x.coeffs) {
        std::size_t len = word.size();
        for (std::size_t start = 0; start < len; ++start) {
            long left = 0;
            for (std::size_t j = 0; j < start; ++j) left += module.degree_of(word[j]) - 1;
            Scalar lsign = (left % 2 == 0) ? 1 : -1;
            for (std::size_t n = 1; n <= len - start && n <= a.cutoff(); ++n) {
                if (!a.has_operation(n)) continue;
                std::vector<std::string> block(word.begin() + start, word.begin() + start + n);
                Vector image = bar_operation(a, n, block);
                if (image.is_zero()) continue;
                for (const auto& [name, c] : image.coeffs()) {
                    std::vector<std::string> result;
                    result.reserve(len - n + 1);
                    result.insert(result.end(), word.begin(), word.begin() + start);
                    result.push_back(name);
                    result.insert(result.end(), word.begin() + start + n, word.end());
                    out.add(result, coeff * lsign * c);
                }
            }
        }
    }
    return out;
}

// D^2 = 0 on all basis words of length <= up_to. Equivalent to the
// Stasheff identities with standard signs.
inline CheckReport check_stasheff(const AInftyStructure& a, std::size_t up_to) {
    CheckReport report;
    report.check = "stasheff";
    report.arity_range = "1.." + std::to_string(up_to);
    if (up_to > a.cutoff()) throw std::invalid_argument("check_stasheff: up_to exceeds cutoff");
    for (std::size_t len = 1; len <= up_to; ++len) {
        for (const auto& word : basis_tuples(*a.module(), len)) {
            BarElement x;
            x.add(word, 1);
            BarElement dd = bar_differential(a, bar_differential(a, x));
            if (!dd.is_zero()) {
                std::ostringstream os;
                for (const auto& [w, c] : dd.coeffs) {
                    os << scalar_to_string(c) << "*(";
                    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
                    os << ") ";
                }
                report.fail(word, os.str());
            }
        }
    }
    return report;
}

inline CheckReport check_cinfty(const AInftyStructure& a, std::size_t up_to) {
    CheckReport report;
    report.check = "cinfty_shuffle";
    report.arity_range = "2.." + std::to_string(up_to);
    for (std::size_t n = 2; n <= up_to; ++n) {
        for (std::size_t q = 1; q < n; ++q) {
            MultilinearMap defect = shuffle_defect(a.operation(n), q, n - q);
            if (!defect.is_zero()) {
                auto witness = defect.first_nonzero_inputs();
                auto inputs = *witness;
                inputs.insert(inputs.begin(),
                              "(q,r)=(" + std::to_string(q) + "," + std::to_string(n - q) + ")");
                report.fail(inputs, vector_to_string(defect.value(*witness)));
            }
        }
    }
    return report;
}

// Coalgebra morphism F = sum over compositions of F_{n_1} x ... x F_{n_k},
// F_n = s o p_n o (s^{-1})^{x n}. All F_n have degree 0, so no Koszul
// signs arise from the tensor factors.
inline BarElement bar_morphism_apply(const AInftyMorphism& p, const BarElement& x) {
    BarElement out;
    const auto& src = *p.source().module();
    for (const auto& [word, coeff] : x.coeffs) {
        std::size_t len = word.size();
        // Enumerate compositions of len recursively, building output words.
        std::vector<std::pair<std::vector<std::string>, Scalar>> partial = {{{}, coeff}};
        std::function<void(std::size_t, std::vector<std::pair<std::vector<std::string>, Scalar>>&)>
            rec = [&](std::size_t pos, std::vector<std::pair<std::vector<std::string>, Scalar>>& acc) {
                if (pos == len) {
                    for (auto& [w, c] : acc) out.add(w, c);
                    return;
                }
                for (std::size_t n = 1; n <= len - pos && n <= p.cutoff(); ++n) {
                    if (n > 1 && !p.has_component(n)) continue;
                    std::vector<std::string> block(word.begin() + pos, word.begin() + pos + n);
                    Vector image = suspension_sign(src, block) * p.component(n).value(block);
                    if (image.is_zero()) continue;
                    std::vector<std::pair<std::vector<std::string>, Scalar>> next;
                    for (const auto& [w, c] : acc) {
                        for (const auto& [name, ic] : image.coeffs()) {
                            auto w2 = w;
                            w2.push_back(name);
                            next.emplace_back(std::move(w2), c * ic);
                        }
                    }
                    rec(pos + n, next);
                }
            };
        rec(0, partial);
    }
    return out;
}

// The same module with every basis degree shifted down by one: the home
// of the suspension, where bar-construction Koszul signs are the plain
// Koszul signs of compose_at / compose_multi.
inline ModulePtr shifted_module(const ModulePtr& m) {
    std::vector<GradedModule::BasisElement> basis;
    basis.reserve(m->dim());
    for (const auto& b : m->basis()) basis.push_back({b.name, b.degree - 1});
    return std::make_shared<GradedModule>(m->name() + "[1]", std::move(basis));
}

// s o f o (s^{-1})^{x n} as a map between the shifted modules: entries are
// conjugated by the suspension sign of the input word. m_n becomes b_n
// (degree +1), morphism components become degree 0.
inline MultilinearMap suspend_map(const MultilinearMap& f, const ModulePtr& shifted_source,
                                  const ModulePtr& shifted_target) {
    MultilinearMap out(shifted_source, shifted_target, f.arity(),
                       f.degree() + static_cast<int>(f.arity()) - 1);
    for (const auto& [word, image] : f.entries()) {
        Scalar sign = suspension_sign(*f.source(), word);
        Vector img(shifted_target);
        for (const auto& [name, c] : image.coeffs()) img.add(name, sign * c);
        out.add_entry(word, img);
    }
    return out;
}

// (D_B F - F D_A) on length-n words, projected to one-letter outputs and
// desuspended: the arity-n morphism identity defect, degree 2-n. Computed
// at the map level in the shifted grading, where the lhs is
// sum_{k, n_1+...+n_k=n} b_k^B o (F_{n_1} x ... x F_{n_k}) with no tensor
// signs (the F's are even), and the rhs is sum over slots of
// F_{n-j+1} o_slot b_j^A with the codifferential's Koszul prefix sign --
// exactly what compose_multi / compose_at produce on the shifted degrees.
inline MultilinearMap morphism_defect(const AInftyMorphism& p, std::size_t n) {
    if (n > p.cutoff()) throw std::invalid_argument("morphism_defect: arity exceeds cutoff");
    const auto& src_mod = p.source().module();
    const auto& tgt_mod = p.target().module();
    ModulePtr sA = shifted_module(src_mod);
    ModulePtr sB = shifted_module(tgt_mod);

    std::vector<MultilinearMap> F;  // F[m-1] = suspended p_m, degree 0
    F.reserve(n);
    for (std::size_t m = 1; m <= n; ++m) F.push_back(suspend_map(p.component(m), sA, sB));

    MultilinearMap defect_s(sA, sB, n, 1);

    // D_B F: one term per composition of n whose outer operation exists
    std::vector<std::size_t> parts;
    std::function<void(std::size_t)> compositions = [&](std::size_t used) {
        if (used == n) {
            std::size_t k = parts.size();
            if (k > 1 && !p.target().has_operation(k)) return;
            for (std::size_t part : parts) {
                if (part > 1 && !p.has_component(part)) return;
            }
            MultilinearMap bk = suspend_map(p.target().operation(k), sB, sB);
            if (k == 1) {
                defect_s += compose(bk, F[parts[0] - 1]);
            } else {
                std::vector<MultilinearMap> blocks;
                blocks.reserve(k);
                for (std::size_t part : parts) blocks.push_back(F[part - 1]);
                defect_s += compose_multi(bk, blocks);
            }
            return;
        }
        for (std::size_t part = 1; used + part <= n && part <= p.cutoff(); ++part) {
            parts.push_back(part);
            compositions(used + part);
            parts.pop_back();
        }
    };
    compositions(0);

    // F D_A: insert each source operation into each slot
    for (std::size_t j = 1; j <= n && j <= p.source().cutoff(); ++j) {
        if (!p.source().has_operation(j)) continue;
        std::size_t m = n - j + 1;
        MultilinearMap bj = suspend_map(p.source().operation(j), sA, sA);
        for (std::size_t slot = 1; slot <= m; ++slot) {
            defect_s -= compose_at(F[m - 1], bj, slot);
        }
    }

    // conjugate back to the plain grading
    MultilinearMap defect(src_mod, tgt_mod, n, 2 - static_cast<int>(n));
    for (const auto& [word, image] : defect_s.entries()) {
        Scalar sign = suspension_sign(*src_mod, word);
        Vector v(tgt_mod);
        for (const auto& [name, c] : image.coeffs()) v.add(name, sign * c);
        defect.add_entry(word, v);
    }
    return defect;
}

inline CheckReport check_morphism(const AInftyMorphism& p, std::size_t up_to) {
    CheckReport report;
    report.check = "ainfty_morphism";
    report.arity_range = "1.." + std::to_string(up_to);
    for (std::size_t n = 1; n <= up_to; ++n) {
        MultilinearMap defect = morphism_defect(p, n);
        if (!defect.is_zero()) {
            auto witness = *defect.first_nonzero_inputs();
            auto inputs = witness;
            inputs.insert(inputs.begin(), "n=" + std::to_string(n));
            report.fail(inputs, vector_to_string(defect.value(witness)));
        }
    }
    return report;
}

inline CheckReport check_cinfty_morphism(const AInftyMorphism& p, std::size_t up_to) {
    CheckReport report;
    report.check = "cinfty_morphism";
    report.arity_range = "1.." + std::to_string(up_to);
    auto base = check_morphism(p, up_to);
    for (auto& v : base.violations) report.fail(v.inputs, "morphism: " + v.defect);
    for (std::size_t n = 2; n <= up_to; ++n) {
        for (std::size_t q = 1; q < n; ++q) {
            MultilinearMap defect = shuffle_defect(p.component(n), q, n - q);
            if (!defect.is_zero()) {
                auto witness = *defect.first_nonzero_inputs();
                auto inputs = witness;
                inputs.insert(inputs.begin(),
                              "(q,r)=(" + std::to_string(q) + "," + std::to_string(n - q) + ")");
                report.fail(inputs, "shuffle: " + vector_to_string(defect.value(witness)));
            }
        }
    }
    return report;
}

}  // namespace cinfty
