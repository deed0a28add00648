#pragma once

// Finite exact models built from polynomial forms: total-degree truncations
// of the forms on a simplex as honest dgcas, Whitney/integration contractions
// onto simplicial cochains, interval subdivision, and the solver that
// produces the contracting homotopy by exact linear algebra.

#include "cinfty/forms.hpp"
#include "cinfty/linalg.hpp"
#include "cinfty/transfer.hpp"

namespace cinfty {

// ---------------------------------------------------------------------------
// piecewise forms on a simplicial complex (one PolyForm per maximal simplex)

struct PiecewiseForm {
    // keyed by the maximal simplex (ascending vertex tuple)
    std::map<std::vector<std::size_t>, PolyForm> parts;
};

// canonical cochain-module name, so that equal complexes give equal modules
inline std::string cochain_name(const SimplicialComplex& sc) {
    std::string out = "C[";
    for (std::size_t i = 0; i < sc.simplices.size(); ++i) {
        out += (i ? "," : "") + SimplicialComplex::simplex_name(sc.simplices[i]);
    }
    return out + "]";
}

inline ChainComplex cochain_complex(const SimplicialComplex& sc) {
    return cochain_complex(sc, cochain_name(sc));
}

inline std::vector<std::vector<std::size_t>> maximal_simplices(const SimplicialComplex& sc) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : sc.simplices) {
        bool top = true;
        for (const auto& t : sc.simplices) {
            if (t.size() != s.size() + 1) continue;
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                top = false;
                break;
            }
        }
        if (top) out.push_back(s);
    }
    return out;
}

// local vertex labels of a face inside an ambient maximal simplex
inline std::vector<std::size_t> local_face(const std::vector<std::size_t>& ambient,
                                           const std::vector<std::size_t>& face) {
    std::vector<std::size_t> out;
    for (std::size_t v : face) {
        auto it = std::find(ambient.begin(), ambient.end(), v);
        if (it == ambient.end()) throw std::invalid_argument("face not contained in simplex");
        out.push_back(static_cast<std::size_t>(it - ambient.begin()));
    }
    return out;
}

// Whitney form of a face, expressed per maximal simplex (zero away from the
// closed star of the face).
inline PiecewiseForm piecewise_whitney(const SimplicialComplex& sc,
                                       const std::vector<std::size_t>& face) {
    PiecewiseForm out;
    for (const auto& top : maximal_simplices(sc)) {
        std::size_t k = top.size() - 1;
        if (std::includes(top.begin(), top.end(), face.begin(), face.end())) {
            out.parts[top] = whitney(k, local_face(top, face));
        } else {
            out.parts[top] = PolyForm(k);
        }
    }
    return out;
}

// Restrictions of the two parts to every shared face must agree.
inline bool piecewise_compatible(const SimplicialComplex& sc, const PiecewiseForm& f) {
    auto tops = maximal_simplices(sc);
    for (const auto& s : sc.simplices) {
        std::optional<PolyForm> seen;
        for (const auto& top : tops) {
            if (!std::includes(top.begin(), top.end(), s.begin(), s.end())) continue;
            auto it = f.parts.find(top);
            PolyForm restricted = restrict_to_face(
                it == f.parts.end() ? PolyForm(top.size() - 1) : it->second, local_face(top, s));
            if (!seen) {
                seen = restricted;
            } else if (!(*seen == restricted)) {
                return false;
            }
        }
    }
    return true;
}

// I(omega)(sigma) = integral of omega over sigma, as a cochain in the module
// of cochain_complex(sc, ..).
inline Vector integration_map(const SimplicialComplex& sc, const ModulePtr& cochains,
                              const PiecewiseForm& f) {
    auto tops = maximal_simplices(sc);
    Vector out(cochains);
    for (const auto& s : sc.simplices) {
        for (const auto& top : tops) {
            if (!std::includes(top.begin(), top.end(), s.begin(), s.end())) continue;
            auto it = f.parts.find(top);
            if (it == f.parts.end()) continue;
            PolyForm restricted = restrict_to_face(it->second, local_face(top, s));
            out.add(SimplicialComplex::simplex_name(s), integrate_top(restricted));
            break;  // compatibility: any containing maximal simplex gives the same value
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// truncated polynomial forms on a single simplex as a finite dgca

inline std::string form_term_name(std::size_t k, const FormTerm& t) {
    std::vector<std::string> factors;
    for (std::size_t j = 0; j < k; ++j) {
        if (t.exps[j] == 0) continue;
        std::string var = (k == 1) ? "t" : "t" + std::to_string(j + 1);
        factors.push_back(t.exps[j] == 1 ? var : var + "^" + std::to_string(t.exps[j]));
    }
    std::string dts;
    for (std::size_t j = 0; j < k; ++j) {
        if (!(t.mask >> j & 1)) continue;
        std::string var = (k == 1) ? "dt" : "dt" + std::to_string(j + 1);
        dts += dts.empty() ? var : "^" + var;
    }
    if (!dts.empty()) factors.push_back(dts);
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
    return out;
}

// Quotient of the polynomial forms on the k-simplex by the dg-ideal of terms
// of total degree (polynomial degree + form degree) above D. The quotient is
// a finite-dimensional dgca; d preserves total degree, so no differential is
// lost in the truncation.
struct FormsModel {
    std::size_t k = 1;
    unsigned D = 4;
    ModulePtr module;
    DgcaPresentation dgca;
    std::vector<FormTerm> basis_terms;

    const ChainComplex& complex() const { return dgca.complex; }

    Vector to_vector(const PolyForm& f) const {
        Vector out(module);
        for (const auto& [t, c] : f.terms()) {
            if (t.total_degree() > D) continue;  // quotient projection
            out.add(form_term_name(k, t), c);
        }
        return out;
    }

    PolyForm to_form(const Vector& v) const {
        PolyForm out(k);
        for (const auto& [name, c] : v.coeffs()) {
            out.add(basis_terms[module->index_of(name)], c);
        }
        return out;
    }
};

inline FormsModel truncated_forms(std::size_t k, unsigned D, const std::string& name) {
    if (k < 1 || k > 2) throw std::invalid_argument("truncated_forms supports k = 1, 2");
    FormsModel fm;
    fm.k = k;
    fm.D = D;
    // enumerate monomial terms of total degree <= D, graded by form degree
    std::vector<FormTerm> terms;
    std::function<void(std::size_t, FormTerm&)> rec = [&](std::size_t j, FormTerm& t) {
        if (j == k) {
            if (t.total_degree() <= D) terms.push_back(t);
            return;
        }
        for (unsigned a = 0; a <= D; ++a) {
            for (unsigned bit = 0; bit < 2; ++bit) {
                t.exps[j] = a;
                t.mask = bit ? (t.mask | (1u << j)) : (t.mask & ~(1u << j));
                rec(j + 1, t);
            }
        }
        t.exps[j] = 0;
        t.mask &= ~(1u << j);
    };
    FormTerm seed;
    seed.exps.assign(k, 0);
    rec(0, seed);
    std::sort(terms.begin(), terms.end(), [](const FormTerm& a, const FormTerm& b) {
        return std::make_tuple(a.form_degree(), a.total_degree(), a) <
               std::make_tuple(b.form_degree(), b.total_degree(), b);
    });
    std::vector<GradedModule::BasisElement> basis;
    for (const auto& t : terms) {
        basis.push_back({form_term_name(k, t), static_cast<int>(t.form_degree())});
    }
    fm.module = std::make_shared<GradedModule>(name, basis);
    fm.basis_terms = terms;

    MultilinearMap diff(fm.module, fm.module, 1, 1);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        PolyForm f(k);
        f.add(terms[i], 1);
        Vector image = fm.to_vector(d(f));
        if (!image.is_zero()) diff.set_entry({basis[i].name}, image);
    }
    MultilinearMap prod(fm.module, fm.module, 2, 0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            PolyForm a(k), b(k);
            a.add(terms[i], 1);
            b.add(terms[j], 1);
            Vector image = fm.to_vector(wedge(a, b));
            if (!image.is_zero()) prod.set_entry({basis[i].name, basis[j].name}, image);
        }
    }
    fm.dgca = DgcaPresentation(ChainComplex(fm.module, diff), prod);
    return fm;
}

// ---------------------------------------------------------------------------
// homotopy solver: given chain maps i, p with p i = id, find h with
// dh + hd = ip - id by exact linear algebra, then normalize to the side
// conditions h i = 0, p h = 0, h h = 0.

inline MultilinearMap solve_homotopy(const ChainComplex& big, const MultilinearMap& i,
                                     const MultilinearMap& p) {
    const auto& mod = big.module;
    const auto& d = big.differential;
    MultilinearMap ip = compose(i, p);
    const auto& basis = mod->basis();
    // unknown columns: h(b) coefficient on c, with deg c = deg b - 1
    std::vector<std::pair<std::string, std::string>> cols;
    std::map<std::pair<std::string, std::string>, std::size_t> col_index;
    for (const auto& b : basis) {
        for (const auto& c : basis) {
            if (c.degree == b.degree - 1) {
                col_index[{b.name, c.name}] = cols.size();
                cols.push_back({b.name, c.name});
            }
        }
    }
    auto coeff_of = [](const Vector& v, const std::string& n) {
        auto it = v.coeffs().find(n);
        return it == v.coeffs().end() ? Scalar(0) : it->second;
    };
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (const auto& b : basis) {
        Vector db = d.value({b.name});
        Vector target = ip.value({b.name}) - Vector::basis(mod, b.name);
        for (const auto& o : basis) {
            std::vector<Scalar> row(cols.size(), 0);
            bool nonzero = false;
            // d h(b): coefficient on o of d(c) for each unknown h(b)_c
            for (const auto& c : basis) {
                if (c.degree != b.degree - 1) continue;
                Scalar w = coeff_of(d.value({c.name}), o.name);
                if (w != 0) {
                    row[col_index[{b.name, c.name}]] += w;
                    nonzero = true;
                }
            }
            // h d(b): (db)_{b'} h(b')_o
            for (const auto& [bp, w] : db.coeffs()) {
                if (o.degree == mod->degree_of(bp) - 1) {
                    row[col_index[{bp, o.name}]] += w;
                    nonzero = true;
                }
            }
            Scalar t = coeff_of(target, o.name);
            if (!nonzero && t == 0) continue;
            rows.push_back(std::move(row));
            rhs.push_back(t);
        }
    }
    RationalMatrix sys(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) sys.at(r, c) = rows[r][c];
    }
    auto sol = sys.solve(rhs);
    if (!sol) {
        throw std::runtime_error("solve_homotopy: the homotopy equation has no solution");
    }
    MultilinearMap h(mod, mod, 1, -1);
    for (const auto& b : basis) {
        Vector image(mod);
        for (const auto& c : basis) {
            if (c.degree != b.degree - 1) continue;
            Scalar w = (*sol)[col_index[{b.name, c.name}]];
            if (w != 0) image.add(c.name, w);
        }
        if (!image.is_zero()) h.set_entry({b.name}, image);
    }
    return h;
}

// Solve for h and normalize it to satisfy the side conditions; the returned
// contraction has been fully re-checked (construction error otherwise).
inline Contraction make_contraction(const ChainComplex& big, const ChainComplex& small,
                                    const MultilinearMap& i, const MultilinearMap& p) {
    MultilinearMap h = solve_homotopy(big, i, p);
    MultilinearMap annih = MultilinearMap::identity(big.module) - compose(i, p);
    h = compose(compose(annih, h), annih);  // kills h i and p h
    // kills h h; the sign matches the convention dh + hd = ip - id
    h = Scalar(-1) * compose(compose(h, big.differential), h);
    Contraction out(big, small, i, p, h, true);
    auto report = check_contraction(out);
    if (!report.passed) {
        throw std::runtime_error("make_contraction: normalized homotopy failed verification: " +
                                 report.violations.front().defect);
    }
    return out;
}

// ---------------------------------------------------------------------------
// contractions built from the forms models

inline SimplicialComplex full_simplex_complex(std::size_t k) {
    std::vector<std::size_t> top(k + 1);
    std::iota(top.begin(), top.end(), 0);
    return SimplicialComplex(k + 1, {top});
}

// forms on the k-simplex -> simplicial cochains: i = Whitney, p = integration
inline Contraction forms_to_cochains(const FormsModel& fm) {
    SimplicialComplex sc = full_simplex_complex(fm.k);
    ChainComplex cochains = cochain_complex(sc);
    MultilinearMap i(cochains.module, fm.module, 1, 0);
    for (const auto& s : sc.simplices) {
        i.set_entry({SimplicialComplex::simplex_name(s)}, fm.to_vector(whitney(fm.k, s)));
    }
    MultilinearMap p(fm.module, cochains.module, 1, 0);
    for (std::size_t t = 0; t < fm.basis_terms.size(); ++t) {
        PolyForm f(fm.k);
        f.add(fm.basis_terms[t], 1);
        PiecewiseForm pf;
        pf.parts[sc.simplices.back()] = f;  // the unique maximal simplex sorts last
        Vector image = integration_map(sc, cochains.module, pf);
        if (!image.is_zero()) {
            p.set_entry({form_term_name(fm.k, fm.basis_terms[t])}, image);
        }
    }
    return make_contraction(fm.complex(), cochains, i, p);
}

// forms on the k-simplex -> the cohomology of a point
inline Contraction forms_to_point(const FormsModel& fm) {
    auto pt = std::make_shared<GradedModule>(
        "pt", std::vector<GradedModule::BasisElement>{{"u", 0}});
    ChainComplex small(pt, MultilinearMap(pt, pt, 1, 1));
    MultilinearMap i(pt, fm.module, 1, 0);
    i.set_entry({"u"}, fm.to_vector(PolyForm::constant(fm.k, 1)));
    MultilinearMap p(fm.module, pt, 1, 0);
    for (const auto& t : fm.basis_terms) {
        if (t.form_degree() != 0) continue;
        // evaluation at vertex 0 of the simplex
        PolyForm f(fm.k);
        f.add(t, 1);
        Scalar v = integrate_top(restrict_to_face(f, {0}));
        if (v != 0) p.set_entry({form_term_name(fm.k, t)}, v * Vector::basis(pt, "u"));
    }
    return make_contraction(fm.complex(), small, i, p);
}

// forms on the k-simplex -> a point, with p the normalized integral (the
// mean value) of the 0-form part. Unlike evaluation at a vertex this p is
// not multiplicative, so the classical cumulants k_n of the resulting
// morphisms are genuinely nonzero (k_2(t, t) = 1/3 - 1/4 on the interval).
inline Contraction forms_to_point_average(const FormsModel& fm) {
    auto pt = std::make_shared<GradedModule>(
        "pt", std::vector<GradedModule::BasisElement>{{"u", 0}});
    ChainComplex small(pt, MultilinearMap(pt, pt, 1, 1));
    MultilinearMap i(pt, fm.module, 1, 0);
    i.set_entry({"u"}, fm.to_vector(PolyForm::constant(fm.k, 1)));
    MultilinearMap p(fm.module, pt, 1, 0);
    std::vector<std::size_t> top(fm.k + 1);
    std::iota(top.begin(), top.end(), 0);
    auto mean = [&](PolyForm f) {
        for (std::size_t j = 1; j <= fm.k; ++j) f = wedge(f, PolyForm::differential(fm.k, j));
        return integrate(f, top);
    };
    Scalar volume = mean(PolyForm::constant(fm.k, 1));
    for (const auto& t : fm.basis_terms) {
        if (t.form_degree() != 0) continue;
        PolyForm f(fm.k);
        f.add(t, 1);
        Scalar v = mean(f) / volume;
        if (v != 0) p.set_entry({form_term_name(fm.k, t)}, v * Vector::basis(pt, "u"));
    }
    return make_contraction(fm.complex(), small, i, p);
}

// ---------------------------------------------------------------------------
// interval subdivision

// the interval [0,1] cut into n equal subcells: vertices 0..n, edges (j, j+1)
inline SimplicialComplex interval_complex(std::size_t n_cells) {
    std::vector<std::vector<std::size_t>> edges;
    for (std::size_t j = 0; j < n_cells; ++j) edges.push_back({j, j + 1});
    return SimplicialComplex(n_cells + 1, edges);
}

inline SimplicialComplex circle_complex() { return SimplicialComplex(3, {{0, 1}, {1, 2}, {0, 2}}); }

namespace detail {

// univariate polynomial helpers on coefficient vectors (index = power of t)
inline std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline Scalar poly_eval(const std::vector<Scalar>& a, const Scalar& x) {
    Scalar out = 0;
    for (std::size_t i = a.size(); i-- > 0;) out = out * x + a[i];
    return out;
}

// value of a polynomial 0-form on the 1-simplex at parameter x
inline Scalar form1_eval(const PolyForm& f, const Scalar& x) {
    Scalar out = 0;
    for (const auto& [t, c] : f.terms()) {
        if (t.mask != 0) continue;
        Scalar p = 1;
        for (unsigned e = 0; e < t.exps[0]; ++e) p *= x;
        out += c * p;
    }
    return out;
}

// integral of a polynomial 1-form g(t) dt over [alpha, beta]
inline Scalar form1_integrate(const PolyForm& f, const Scalar& alpha, const Scalar& beta) {
    Scalar out = 0;
    for (const auto& [t, c] : f.terms()) {
        if (t.mask != 1) continue;
        unsigned a = t.exps[0] + 1;
        Scalar pb = 1, pa = 1;
        for (unsigned e = 0; e < a; ++e) {
            pb *= beta;
            pa *= alpha;
        }
        out += c * (pb - pa) / Scalar(a);
    }
    return out;
}

inline PolyForm poly_to_form(const std::vector<Scalar>& a) {
    PolyForm out(1);
    for (unsigned i = 0; i < a.size(); ++i) out.add({{i}, 0}, a[i]);
    return out;
}

}  // namespace detail

// forms on the interval -> cochains of the interval cut into n equal cells:
// i sends vertex duals to the Lagrange interpolation polynomials at the cut
// points and edge duals to the matching exact 1-forms; p integrates over the
// subcells. Requires D >= n so the interpolants survive truncation.
inline Contraction forms_to_interval_cochains(const FormsModel& fm, std::size_t n_cells) {
    if (fm.k != 1) throw std::invalid_argument("forms_to_interval_cochains needs the interval model");
    if (fm.D < n_cells) {
        throw std::invalid_argument("truncation bound too small for the interpolation degree");
    }
    SimplicialComplex sc = interval_complex(n_cells);
    ChainComplex cochains = cochain_complex(sc);
    std::vector<Scalar> nodes;
    for (std::size_t j = 0; j <= n_cells; ++j) nodes.push_back(Scalar(j) / Scalar(n_cells));
    // Lagrange basis polynomials L_j
    std::vector<std::vector<Scalar>> lagrange;
    for (std::size_t j = 0; j <= n_cells; ++j) {
        std::vector<Scalar> L = {Scalar(1)};
        for (std::size_t l = 0; l <= n_cells; ++l) {
            if (l == j) continue;
            Scalar den = nodes[j] - nodes[l];
            L = detail::poly_mul(L, {-nodes[l] / den, Scalar(1) / den});
        }
        lagrange.push_back(L);
    }
    MultilinearMap i(cochains.module, fm.module, 1, 0);
    for (std::size_t j = 0; j <= n_cells; ++j) {
        i.set_entry({SimplicialComplex::simplex_name({j})},
                    fm.to_vector(detail::poly_to_form(lagrange[j])));
    }
    for (std::size_t cell = 1; cell <= n_cells; ++cell) {
        // the dual of the cell (cell-1, cell) maps to -d(L_0 + .. + L_{cell-1})
        PolyForm acc(1);
        for (std::size_t j = 0; j < cell; ++j) acc += detail::poly_to_form(lagrange[j]);
        i.set_entry({SimplicialComplex::simplex_name({cell - 1, cell})},
                    Scalar(-1) * fm.to_vector(d(acc)));
    }
    MultilinearMap p(fm.module, cochains.module, 1, 0);
    for (const auto& t : fm.basis_terms) {
        PolyForm f(1);
        f.add(t, 1);
        Vector image(cochains.module);
        if (t.form_degree() == 0) {
            for (std::size_t j = 0; j <= n_cells; ++j) {
                image.add(SimplicialComplex::simplex_name({j}), detail::form1_eval(f, nodes[j]));
            }
        } else {
            for (std::size_t cell = 1; cell <= n_cells; ++cell) {
                image.add(SimplicialComplex::simplex_name({cell - 1, cell}),
                          detail::form1_integrate(f, nodes[cell - 1], nodes[cell]));
            }
        }
        if (!image.is_zero()) p.set_entry({form_term_name(1, t)}, image);
    }
    return make_contraction(fm.complex(), cochains, i, p);
}

// ---------------------------------------------------------------------------
// cochain-level subdivision of one edge of a 1-dimensional complex

struct Subdivision {
    SimplicialComplex coarse, fine;
    std::size_t mid = 0;                     // index of the new vertex in `fine`
    std::vector<std::size_t> vertex_map;     // coarse vertex -> fine vertex
    std::vector<std::size_t> split_edge;     // the subdivided coarse edge (a, b)
    Contraction contraction;                 // fine cochains -> coarse cochains
};

inline Subdivision subdivide_interval(const SimplicialComplex& sc,
                                      const std::vector<std::size_t>& edge) {
    if (sc.dim() != 1) throw std::invalid_argument("subdivide_interval needs a 1-dimensional complex");
    if (std::find(sc.simplices.begin(), sc.simplices.end(), edge) == sc.simplices.end() ||
        edge.size() != 2) {
        throw std::invalid_argument("subdivide_interval: edge not in the complex");
    }
    Subdivision out;
    out.coarse = sc;
    out.split_edge = edge;
    std::size_t a = edge[0], b = edge[1];
    // insert the midpoint as vertex a+1, shifting the later vertices up; this
    // keeps every edge ascending and geometrically oriented
    auto rename = [&](std::size_t v) { return v >= a + 1 ? v + 1 : v; };
    out.mid = a + 1;
    out.vertex_map.resize(sc.num_vertices);
    for (std::size_t v = 0; v < sc.num_vertices; ++v) out.vertex_map[v] = rename(v);
    std::vector<std::vector<std::size_t>> fine_edges;
    for (const auto& e : sc.simplices) {
        if (e.size() != 2) continue;
        if (e == edge) {
            fine_edges.push_back({a, out.mid});
            fine_edges.push_back({out.mid, rename(b)});
        } else {
            std::vector<std::size_t> r = {rename(e[0]), rename(e[1])};
            std::sort(r.begin(), r.end());
            fine_edges.push_back(r);
        }
    }
    out.fine = SimplicialComplex(sc.num_vertices + 1, fine_edges);

    ChainComplex coarse_cochains = cochain_complex(sc);
    ChainComplex fine_cochains = cochain_complex(out.fine);
    auto C = coarse_cochains.module;
    auto F = fine_cochains.module;
    auto cname = SimplicialComplex::simplex_name;
    std::string e1 = cname({a, out.mid});
    std::string e2 = cname({out.mid, rename(b)});
    std::string ec = cname(edge);
    // p sums fine duals over the subcells of each coarse cell
    MultilinearMap p(F, C, 1, 0);
    for (const auto& s : sc.simplices) {
        std::vector<std::size_t> r;
        for (auto v : s) r.push_back(rename(v));
        if (s == edge) continue;
        p.set_entry({cname(r)}, Vector::basis(C, cname(s)));
    }
    p.set_entry({e1}, Vector::basis(C, ec));
    p.set_entry({e2}, Vector::basis(C, ec));
    // i includes; the far endpoint of the split edge also picks up the midpoint
    MultilinearMap i(C, F, 1, 0);
    for (const auto& s : sc.simplices) {
        std::vector<std::size_t> r;
        for (auto v : s) r.push_back(rename(v));
        if (s == edge) {
            i.set_entry({ec}, Vector::basis(F, e1));
        } else if (s == std::vector<std::size_t>{b}) {
            i.set_entry({cname(s)}, Vector::basis(F, cname(r)) + Vector::basis(F, cname({out.mid})));
        } else {
            i.set_entry({cname(s)}, Vector::basis(F, cname(r)));
        }
    }
    MultilinearMap h(F, F, 1, -1);
    h.set_entry({e2}, Vector::basis(F, cname({out.mid})));
    out.contraction = Contraction(fine_cochains, coarse_cochains, i, p, h, true);
    auto report = check_contraction(out.contraction);
    if (!report.passed) {
        throw std::runtime_error("subdivide_interval: contraction failed verification: " +
                                 report.violations.front().defect);
    }
    return out;
}

// Integration of coarse piecewise forms against the cells of a subdivision:
// the two halves of the split edge integrate over [0,1/2] and [1/2,1] of its
// parameterization, and the midpoint evaluates at 1/2. Used to check that
// p composed with fine integration equals coarse integration.
inline Vector subdivided_integration_map(const Subdivision& sub, const ModulePtr& fine_cochains,
                                         const PiecewiseForm& f) {
    Vector out(fine_cochains);
    auto cname = SimplicialComplex::simplex_name;
    std::size_t a = sub.split_edge[0], b = sub.split_edge[1];
    for (const auto& s : sub.coarse.simplices) {
        auto it = [&]() {
            for (const auto& [top, part] : f.parts) {
                if (std::includes(top.begin(), top.end(), s.begin(), s.end())) {
                    return std::optional<PolyForm>(
                        restrict_to_face(part, local_face(top, s)));
                }
            }
            return std::optional<PolyForm>();
        }();
        if (!it) continue;
        std::vector<std::size_t> r;
        for (auto v : s) r.push_back(sub.vertex_map[v]);
        if (s == sub.split_edge) {
            out.add(cname({a, sub.mid}), detail::form1_integrate(*it, 0, Scalar(1, 2)));
            out.add(cname({sub.mid, sub.vertex_map[b]}),
                    detail::form1_integrate(*it, Scalar(1, 2), 1));
        } else {
            out.add(cname(r), integrate_top(*it));
        }
    }
    // the midpoint value comes from the split edge's 0-form restriction
    for (const auto& [top, part] : f.parts) {
        if (top == sub.split_edge) {
            out.add(cname({sub.mid}), detail::form1_eval(part, Scalar(1, 2)));
        }
    }
    return out;
}

}  // namespace cinfty
