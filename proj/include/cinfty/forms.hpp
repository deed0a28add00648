#pragma once

// Polynomial differential forms on standard simplices, with exact rational
// integration, Whitney forms, and simplicial cochain complexes. Forms on
// the k-simplex are written in the interior coordinates t_1..t_k (t_0 and
// dt_0 eliminated via sum t_i = 1, sum dt_i = 0).

#include "cinfty/structures.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace cinfty {

// ---------------------------------------------------------------------------
// simplicial complexes and cochains

struct SimplicialComplex {
    std::size_t num_vertices = 0;
    std::vector<std::vector<std::size_t>> simplices;  // ascending tuples, face-closed

    SimplicialComplex() = default;
    SimplicialComplex(std::size_t nv, std::vector<std::vector<std::size_t>> top) {
        num_vertices = nv;
        std::set<std::vector<std::size_t>> all;
        // close under faces
        std::function<void(const std::vector<std::size_t>&)> add =
            [&](const std::vector<std::size_t>& s) {
                if (!all.insert(s).second) return;
                if (s.size() <= 1) return;
                for (std::size_t skip = 0; skip < s.size(); ++skip) {
                    std::vector<std::size_t> face;
                    for (std::size_t i = 0; i < s.size(); ++i) {
                        if (i != skip) face.push_back(s[i]);
                    }
                    add(face);
                }
            };
        for (auto& s : top) {
            if (!std::is_sorted(s.begin(), s.end())) {
                throw std::invalid_argument("simplex vertices must be ascending");
            }
            for (std::size_t v : s) {
                if (v >= nv) throw std::invalid_argument("simplex vertex out of range");
            }
            add(s);
        }
        simplices.assign(all.begin(), all.end());
        std::sort(simplices.begin(), simplices.end(),
                  [](const auto& a, const auto& b) {
                      return a.size() != b.size() ? a.size() < b.size() : a < b;
                  });
    }

    static std::string simplex_name(const std::vector<std::size_t>& s) {
        static const char* prefix[] = {"v", "e", "f", "c"};
        std::string out = s.size() <= 4 ? prefix[s.size() - 1] : "s";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "_" : "") + std::to_string(s[i]);
        return out;
    }

    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& s : simplices) d = std::max(d, s.size() - 1);
        return d;
    }
};

// Simplicial cochain complex: basis sigma* in degree dim(sigma), with
// (delta f)(tau) = f(boundary tau).
inline ChainComplex cochain_complex(const SimplicialComplex& sc, const std::string& name) {
    std::vector<GradedModule::BasisElement> basis;
    for (const auto& s : sc.simplices) {
        basis.push_back({SimplicialComplex::simplex_name(s), static_cast<int>(s.size()) - 1});
    }
    auto mod = std::make_shared<GradedModule>(name, basis);
    MultilinearMap d(mod, mod, 1, 1);
    for (const auto& s : sc.simplices) {
        Vector image(mod);
        for (const auto& t : sc.simplices) {
            if (t.size() != s.size() + 1) continue;
            // is s a face of t? find the skipped position
            for (std::size_t skip = 0; skip < t.size(); ++skip) {
                std::vector<std::size_t> face;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i != skip) face.push_back(t[i]);
                }
                if (face == s) {
                    image.add(SimplicialComplex::simplex_name(t),
                              (skip % 2 == 0) ? Scalar(1) : Scalar(-1));
                }
            }
        }
        if (!image.is_zero()) d.set_entry({SimplicialComplex::simplex_name(s)}, image);
    }
    return ChainComplex(mod, d);
}

// ---------------------------------------------------------------------------
// polynomial forms on a single standard simplex

// monomial t_1^{a_1}..t_k^{a_k} dt_{i_1}^..^dt_{i_m} (mask bit j-1 <-> dt_j)
struct FormTerm {
    std::vector<unsigned> exps;
    std::uint32_t mask = 0;

    bool operator<(const FormTerm& o) const {
        return std::tie(mask, exps) < std::tie(o.mask, o.exps);
    }
    bool operator==(const FormTerm& o) const { return mask == o.mask && exps == o.exps; }

    unsigned poly_degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }
    unsigned form_degree() const { return static_cast<unsigned>(std::popcount(mask)); }
    unsigned total_degree() const { return poly_degree() + form_degree(); }
};

// polynomial differential form on the standard k-simplex
class PolyForm {
public:
    PolyForm() = default;
    explicit PolyForm(std::size_t k) : k_(k) {}

    std::size_t vars() const { return k_; }
    const std::map<FormTerm, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const FormTerm& t, const Scalar& c) {
        if (c == 0) return;
        if (t.exps.size() != k_) throw std::invalid_argument("form term has wrong variable count");
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_[t] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static PolyForm constant(std::size_t k, const Scalar& c) {
        PolyForm f(k);
        f.add({std::vector<unsigned>(k, 0), 0}, c);
        return f;
    }
    // t_j for 1 <= j <= k
    static PolyForm coordinate(std::size_t k, std::size_t j) {
        PolyForm f(k);
        std::vector<unsigned> e(k, 0);
        e[j - 1] = 1;
        f.add({e, 0}, 1);
        return f;
    }
    // dt_j for 1 <= j <= k
    static PolyForm differential(std::size_t k, std::size_t j) {
        PolyForm f(k);
        f.add({std::vector<unsigned>(k, 0), 1u << (j - 1)}, 1);
        return f;
    }

    PolyForm& operator+=(const PolyForm& o) {
        check_vars(o);
        for (const auto& [t, c] : o.terms_) add(t, c);
        return *this;
    }
    PolyForm& operator-=(const PolyForm& o) {
        check_vars(o);
        for (const auto& [t, c] : o.terms_) add(t, -c);
        return *this;
    }
    PolyForm& operator*=(const Scalar& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [t, c] : terms_) c *= s;
        return *this;
    }
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const Scalar& s, PolyForm f) { return f *= s; }
    bool operator==(const PolyForm& o) const { return k_ == o.k_ && terms_ == o.terms_; }

    // homogeneous form degree, if any
    std::optional<int> form_degree() const {
        std::optional<int> deg;
        for (const auto& [t, c] : terms_) {
            int d = static_cast<int>(t.form_degree());
            if (!deg) {
                deg = d;
            } else if (*deg != d) {
                return std::nullopt;
            }
        }
        return terms_.empty() ? std::optional<int>(0) : deg;
    }

private:
    void check_vars(const PolyForm& o) const {
        if (k_ != o.k_) throw std::invalid_argument("forms on different simplices");
    }
    std::size_t k_ = 0;
    std::map<FormTerm, Scalar> terms_;
};

inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("wedge: different simplices");
    PolyForm out(a.vars());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            if (ta.mask & tb.mask) continue;
            // sign of interleaving dt's of b past later dt's of a
            int swaps = 0;
            for (std::size_t bit = 0; bit < a.vars(); ++bit) {
                if (!(tb.mask >> bit & 1)) continue;
                for (std::size_t abit = bit + 1; abit < a.vars(); ++abit) {
                    if (ta.mask >> abit & 1) ++swaps;
                }
            }
            FormTerm t;
            t.exps.resize(a.vars());
            for (std::size_t i = 0; i < a.vars(); ++i) t.exps[i] = ta.exps[i] + tb.exps[i];
            t.mask = ta.mask | tb.mask;
            out.add(t, (swaps % 2 == 0 ? ca : -ca) * cb);
        }
    }
    return out;
}

inline PolyForm d(const PolyForm& f) {
    PolyForm out(f.vars());
    for (const auto& [t, c] : f.terms()) {
        for (std::size_t j = 0; j < f.vars(); ++j) {
            if (t.exps[j] == 0 || (t.mask >> j & 1)) continue;
            // dt_j wedged in front of the existing dt's
            int before = 0;
            for (std::size_t bit = 0; bit < j; ++bit) {
                if (t.mask >> bit & 1) ++before;
            }
            FormTerm r = t;
            r.exps[j] -= 1;
            r.mask |= 1u << j;
            out.add(r, c * Scalar(t.exps[j]) * ((before % 2 == 0) ? 1 : -1));
        }
    }
    return out;
}

// exact integral of a top-degree form over the standard k-simplex:
// int t_1^{a_1}..t_k^{a_k} dt_1..dt_k = a_1!..a_k! / (k + sum a_i)!
inline Scalar integrate_top(const PolyForm& f) {
    std::size_t k = f.vars();
    std::uint32_t full = k == 0 ? 0 : ((1u << k) - 1);
    Scalar total = 0;
    for (const auto& [t, c] : f.terms()) {
        if (t.mask != full) continue;
        // sign of sorting dt's: stored masks are ascending, so coefficient
        // is already relative to dt_1^..^dt_k
        BigInt num = 1;
        unsigned s = 0;
        for (unsigned a : t.exps) {
            num *= factorial(a);
            s += a;
        }
        total += c * Scalar(num, factorial(static_cast<unsigned>(k) + s));
    }
    return total;
}

// Restriction of a form on the k-simplex with vertex tuple (0..k) to the
// face given by the ascending vertex subset. The face (i_0 < .. < i_m) is
// parameterized by s_1..s_m with t_{i_j} = s_j, t_{i_0} = 1 - sum s_j,
// and the remaining coordinates zero.
inline PolyForm restrict_to_face(const PolyForm& f, const std::vector<std::size_t>& face) {
    std::size_t k = f.vars();
    std::size_t m = face.size() - 1;
    for (std::size_t v : face) {
        if (v > k) throw std::invalid_argument("restrict_to_face: vertex out of range");
    }
    // substitution for each ambient coordinate t_1..t_k (index 1..k):
    // poly part and one-form part in the face coordinates s_1..s_m
    std::vector<PolyForm> sub_poly(k + 1, PolyForm(m));
    std::vector<PolyForm> sub_form(k + 1, PolyForm(m));
    // t_0 handled implicitly: forms are already written without t_0
    for (std::size_t j = 1; j <= m; ++j) {
        if (face[j] >= 1) {
            sub_poly[face[j]] = PolyForm::coordinate(m, j);
            sub_form[face[j]] = PolyForm::differential(m, j);
        }
    }
    if (face[0] >= 1) {
        PolyForm p = PolyForm::constant(m, 1);
        PolyForm w(m);
        for (std::size_t j = 1; j <= m; ++j) {
            p -= PolyForm::coordinate(m, j);
            w -= PolyForm::differential(m, j);
        }
        sub_poly[face[0]] = p;
        sub_form[face[0]] = w;
    }
    PolyForm out(m);
    for (const auto& [t, c] : f.terms()) {
        PolyForm acc = PolyForm::constant(m, c);
        bool dead = false;
        for (std::size_t j = 1; j <= k && !dead; ++j) {
            for (unsigned rep = 0; rep < t.exps[j - 1]; ++rep) {
                acc = wedge(acc, sub_poly[j]);
                if (acc.is_zero()) {
                    dead = true;
                    break;
                }
            }
        }
        for (std::size_t j = 1; j <= k && !dead; ++j) {
            if (t.mask >> (j - 1) & 1) {
                acc = wedge(acc, sub_form[j]);
                if (acc.is_zero()) dead = true;
            }
        }
        if (!dead) out += acc;
    }
    return out;
}

// Exact integral over a face of the ambient simplex (restriction followed
// by the monomial formula; for a vertex this is evaluation).
inline Scalar integrate(const PolyForm& f, const std::vector<std::size_t>& face) {
    auto deg = f.form_degree();
    if (!deg || *deg != static_cast<int>(face.size()) - 1) {
        throw std::invalid_argument("integrate: form degree does not match the face dimension");
    }
    return integrate_top(restrict_to_face(f, face));
}

// Elementary Whitney form of the face (i_0..i_m) inside the k-simplex:
// m! sum_j (-1)^j t_{i_j} dt_{i_0}..(omit j)..dt_{i_m}, with t_0, dt_0
// eliminated.
inline PolyForm whitney(std::size_t k, const std::vector<std::size_t>& face) {
    std::size_t m = face.size() - 1;
    auto coord = [&](std::size_t v) {
        if (v >= 1) return PolyForm::coordinate(k, v);
        PolyForm p = PolyForm::constant(k, 1);
        for (std::size_t j = 1; j <= k; ++j) p -= PolyForm::coordinate(k, j);
        return p;
    };
    auto diff = [&](std::size_t v) {
        if (v >= 1) return PolyForm::differential(k, v);
        PolyForm w(k);
        for (std::size_t j = 1; j <= k; ++j) w -= PolyForm::differential(k, j);
        return w;
    };
    PolyForm out(k);
    for (std::size_t j = 0; j <= m; ++j) {
        PolyForm term = coord(face[j]);
        for (std::size_t l = 0; l <= m; ++l) {
            if (l == j) continue;
            term = wedge(term, diff(face[l]));
        }
        out += (j % 2 == 0 ? Scalar(1) : Scalar(-1)) * term;
    }
    return Scalar(factorial(static_cast<unsigned>(m))) * out;
}

}  // namespace cinfty
