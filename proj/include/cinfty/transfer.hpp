#pragma once

#include "cinfty/bar.hpp"
#include "cinfty/linalg.hpp"

#include <memory>
#include <optional>

namespace cinfty {

// Special deformation retract data between a big and a small complex.
struct Contraction {
    ChainComplex big;    // A
    ChainComplex small;  // B
    MultilinearMap i;    // B -> A, degree 0 chain map
    MultilinearMap p;    // A -> B, degree 0 chain map
    MultilinearMap h;    // A -> A, degree -1
    bool side_conditions = false;  // h h = 0, h i = 0, p h = 0 declared

    Contraction() = default;
    Contraction(ChainComplex big_, ChainComplex small_, MultilinearMap i_, MultilinearMap p_,
                MultilinearMap h_, bool side = false)
        : big(std::move(big_)),
          small(std::move(small_)),
          i(std::move(i_)),
          p(std::move(p_)),
          h(std::move(h_)),
          side_conditions(side) {
        if (i.arity() != 1 || i.degree() != 0 || !(*i.source() == *small.module) ||
            !(*i.target() == *big.module)) {
            throw std::invalid_argument("contraction: i must be a degree-0 map B -> A");
        }
        if (p.arity() != 1 || p.degree() != 0 || !(*p.source() == *big.module) ||
            !(*p.target() == *small.module)) {
            throw std::invalid_argument("contraction: p must be a degree-0 map A -> B");
        }
        if (h.arity() != 1 || h.degree() != -1 || !(*h.source() == *big.module) ||
            !(*h.target() == *big.module)) {
            throw std::invalid_argument("contraction: h must be a degree=-1 endomap of A");
        }
    }
};

// p i = id_B; d h + h d = i p - id_A; i, p chain maps; side conditions
// when declared.
inline CheckReport check_contraction(const Contraction& c) {
    CheckReport report;
    report.check = "contraction";
    report.arity_range = "1";
    const auto& dA = c.big.differential;
    const auto& dB = c.small.differential;

    auto sub = check_complex(c.big);
    for (auto& v : sub.violations) report.fail(v.inputs, "dA^2: " + v.defect);
    sub = check_complex(c.small);
    for (auto& v : sub.violations) report.fail(v.inputs, "dB^2: " + v.defect);

    MultilinearMap pi = compose(c.p, c.i);
    MultilinearMap idB = MultilinearMap::identity(c.small.module);
    if (!(pi == idB)) {
        auto w = *(pi - idB).first_nonzero_inputs();
        report.fail(w, "p i - id: " + vector_to_string((pi - idB).value(w)));
    }

    MultilinearMap chain_i = compose(dA, c.i) - compose(c.i, dB);
    if (!chain_i.is_zero()) {
        auto w = *chain_i.first_nonzero_inputs();
        report.fail(w, "i not a chain map: " + vector_to_string(chain_i.value(w)));
    }
    MultilinearMap chain_p = compose(dB, c.p) - compose(c.p, dA);
    if (!chain_p.is_zero()) {
        auto w = *chain_p.first_nonzero_inputs();
        report.fail(w, "p not a chain map: " + vector_to_string(chain_p.value(w)));
    }

    MultilinearMap idA = MultilinearMap::identity(c.big.module);
    MultilinearMap homotopy =
        compose(dA, c.h) + compose(c.h, dA) - compose(c.i, c.p) + idA;
    if (!homotopy.is_zero()) {
        auto w = *homotopy.first_nonzero_inputs();
        report.fail(w, "dh+hd-ip+id: " + vector_to_string(homotopy.value(w)));
    }

    if (c.side_conditions) {
        MultilinearMap hh = compose(c.h, c.h);
        if (!hh.is_zero()) report.fail(*hh.first_nonzero_inputs(), "h h != 0");
        MultilinearMap hi = compose(c.h, c.i);
        if (!hi.is_zero()) report.fail(*hi.first_nonzero_inputs(), "h i != 0");
        MultilinearMap ph = compose(c.p, c.h);
        if (!ph.is_zero()) report.fail(*ph.first_nonzero_inputs(), "p h != 0");
    }
    return report;
}

// Rooted planar tree with ordered leaves; internal vertices have arity >= 2.
struct PlanarTree {
    std::vector<PlanarTree> children;  // empty: leaf

    bool is_leaf() const { return children.empty(); }
    std::size_t leaves() const {
        if (is_leaf()) return 1;
        std::size_t n = 0;
        for (const auto& c : children) n += c.leaves();
        return n;
    }
    bool binary_only() const {
        if (is_leaf()) return true;
        if (children.size() != 2) return false;
        return children[0].binary_only() && children[1].binary_only();
    }
    std::string to_string() const {
        if (is_leaf()) return "*";
        std::string s = "(";
        for (const auto& c : children) s += c.to_string();
        return s + ")";
    }
};

// All rooted planar trees with n ordered leaves, internal arities >= 2.
// Counts are the super-Catalan (little Schroeder) numbers 1, 1, 3, 11, 45.
inline std::vector<PlanarTree> enumerate_trees(std::size_t n) {
    if (n < 2 || n > 5) throw std::length_error("enumerate_trees: leaves out of range");
    std::function<std::vector<PlanarTree>(std::size_t)> gen =
        [&](std::size_t k) -> std::vector<PlanarTree> {
        std::vector<PlanarTree> out;
        if (k == 1) {
            out.push_back(PlanarTree{});
            return out;
        }
        // root arity r >= 2, compositions of k into r parts
        std::vector<std::size_t> parts;
        std::function<void(std::size_t, std::vector<std::vector<PlanarTree>>&)> build =
            [&](std::size_t remaining, std::vector<std::vector<PlanarTree>>& chosen) {
                if (remaining == 0) {
                    if (chosen.size() < 2) return;
                    std::vector<PlanarTree> roots = {PlanarTree{}};
                    // cartesian product over chosen child lists
                    std::vector<PlanarTree> acc = {PlanarTree{}};
                    for (const auto& options : chosen) {
                        std::vector<PlanarTree> next;
                        for (const auto& partial : acc) {
                            for (const auto& opt : options) {
                                PlanarTree t = partial;
                                t.children.push_back(opt);
                                next.push_back(std::move(t));
                            }
                        }
                        acc = std::move(next);
                    }
                    for (auto& t : acc) out.push_back(std::move(t));
                    return;
                }
                for (std::size_t part = 1; part <= remaining; ++part) {
                    if (part == remaining && chosen.empty()) continue;  // arity-1 root
                    chosen.push_back(gen(part));
                    build(remaining - part, chosen);
                    chosen.pop_back();
                }
            };
        std::vector<std::vector<PlanarTree>> chosen;
        build(k, chosen);
        return out;
    };
    return gen(n);
}

// Which tensor extension of h drives the perturbation series.
enum class HomotopyStyle { ip_right, ip_left, symmetrized };

namespace detail {

// Lazy evaluation of the tensor-trick perturbation series. The unperturbed
// complex is (T(sA), tensor differential); the perturbation delta is the
// part of the bar codifferential coming from the operations of arity >= 2;
// the tensor extension of (i, p, h) contracts T(sA) onto T(sB). The series
// delta (h_T delta)^k terminates because delta strictly shortens words.
struct TransferSeries {
    const AInftyStructure& source;  // structure on A (dgca embedded or A-infinity)
    const Contraction& c;
    MultilinearMap ip;  // i o p, cached
    HomotopyStyle style = HomotopyStyle::ip_right;

    TransferSeries(const AInftyStructure& src, const Contraction& con,
                   HomotopyStyle style_ = HomotopyStyle::ip_right)
        : source(src), c(con), ip(compose(con.i, con.p)), style(style_) {
        if (!(*src.module() == *con.big.module)) {
            throw std::invalid_argument("transfer: structure lives on the wrong complex");
        }
    }

    // delta: arity >= 2 part of the bar codifferential on T(sA).
    BarElement delta(const BarElement& x) const {
        BarElement out;
        const auto& module = *source.module();
        for (const auto& [word, coeff] : x.coeffs) {
            std::size_t len = word.size();
            for (std::size_t start = 0; start < len; ++start) {
                long left = 0;
                for (std::size_t j = 0; j < start; ++j) left += module.degree_of(word[j]) - 1;
                Scalar lsign = (left % 2 == 0) ? 1 : -1;
                for (std::size_t n = 2; n <= len - start && n <= source.cutoff(); ++n) {
                    if (!source.has_operation(n)) continue;
                    std::vector<std::string> block(word.begin() + start,
                                                   word.begin() + start + n);
                    Vector image = bar_operation(source, n, block);
                    if (image.is_zero()) continue;
                    for (const auto& [name, ic] : image.coeffs()) {
                        std::vector<std::string> result;
                        result.reserve(len - n + 1);
                        result.insert(result.end(), word.begin(), word.begin() + start);
                        result.push_back(name);
                        result.insert(result.end(), word.begin() + start + n, word.end());
                        out.add(result, coeff * lsign * ic);
                    }
                }
            }
        }
        return out;
    }

    // One-sided tensor-trick homotopy: h in slot j, with identity on one
    // side and (i p) on the other, and the Koszul sign of moving the odd h
    // past the suspended letters before it. `ip_left == false` is the usual
    // 1 x .. x h x (ip) x .. x (ip); `ip_left == true` is the mirror.
    BarElement h_tensor_one_sided(const BarElement& x, bool ip_left) const {
        BarElement out;
        const auto& module = *source.module();
        for (const auto& [word, coeff] : x.coeffs) {
            std::size_t len = word.size();
            long left = 0;
            for (std::size_t j = 0; j < len; ++j) {
                Scalar sign = (left % 2 == 0) ? 1 : -1;
                Vector hv = c.h.value({word[j]});
                left += module.degree_of(word[j]) - 1;
                if (hv.is_zero()) continue;
                // expand the slots that pick up (i p); the others keep their letter
                std::vector<Vector> slots;
                slots.reserve(len);
                bool dead = false;
                for (std::size_t l = 0; l < len && !dead; ++l) {
                    if (l == j) {
                        slots.push_back(hv);
                    } else if ((l < j) == ip_left) {
                        slots.push_back(ip.value({word[l]}));
                        if (slots.back().is_zero()) dead = true;
                    } else {
                        slots.push_back(Vector::basis(source.module(), word[l]));
                    }
                }
                if (dead) continue;
                std::vector<std::string> result(len);
                std::function<void(std::size_t, Scalar)> expand = [&](std::size_t t, Scalar cc) {
                    if (t == slots.size()) {
                        out.add(result, cc);
                        return;
                    }
                    for (const auto& [name, vc] : slots[t].coeffs()) {
                        result[t] = name;
                        expand(t + 1, cc * vc);
                    }
                };
                expand(0, coeff * sign);
            }
        }
        return out;
    }

    BarElement h_tensor(const BarElement& x) const {
        switch (style) {
            case HomotopyStyle::ip_right:
                return h_tensor_one_sided(x, false);
            case HomotopyStyle::ip_left:
                return h_tensor_one_sided(x, true);
            case HomotopyStyle::symmetrized: {
                BarElement a = h_tensor_one_sided(x, false);
                const BarElement b = h_tensor_one_sided(x, true);
                for (const auto& [word, coeff] : b.coeffs) a.add(word, coeff);
                for (auto& [word, coeff] : a.coeffs) coeff /= 2;
                return a;
            }
        }
        throw std::logic_error("unreachable");
    }

    // letterwise application of a degree-0 chain map
    static BarElement letterwise(const MultilinearMap& f, const BarElement& x) {
        BarElement out;
        for (const auto& [word, coeff] : x.coeffs) {
            std::vector<Vector> images;
            images.reserve(word.size());
            bool dead = false;
            for (const auto& name : word) {
                images.push_back(f.value({name}));
                if (images.back().is_zero()) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            std::vector<std::string> result(word.size());
            std::function<void(std::size_t, Scalar)> expand = [&](std::size_t t, Scalar cc) {
                if (t == result.size()) {
                    out.add(result, cc);
                    return;
                }
                for (const auto& [name, vc] : images[t].coeffs()) {
                    result[t] = name;
                    expand(t + 1, cc * vc);
                }
            };
            expand(0, coeff);
        }
        return out;
    }

    static Vector length_one_part(const BarElement& x, const ModulePtr& module) {
        Vector v(module);
        for (const auto& [word, coeff] : x.coeffs) {
            if (word.size() == 1) v.add(word[0], coeff);
        }
        return v;
    }

    // b_n^B(word) for a basis word over B of length n >= 2:
    // length-1 part of p_T delta (h_T delta)^k i_T (word), summed over k.
    Vector transferred_bar_value(const std::vector<std::string>& word) const {
        BarElement x;
        x.add(word, 1);
        BarElement cur = letterwise(c.i, x);
        Vector acc(c.small.module);
        cur = delta(cur);
        while (!cur.is_zero()) {
            acc += length_one_part(letterwise(c.p, cur), c.small.module);
            cur = delta(h_tensor(cur));
        }
        return acc;
    }

    // F_n(word) for a basis word over A of length n >= 2:
    // length-1 part of p_T delta (h_T delta)^k h_T (word), summed over k.
    Vector morphism_bar_value(const std::vector<std::string>& word) const {
        BarElement x;
        x.add(word, 1);
        BarElement cur = delta(h_tensor(x));
        Vector acc(c.small.module);
        while (!cur.is_zero()) {
            acc += length_one_part(letterwise(c.p, cur), c.small.module);
            cur = delta(h_tensor(cur));
        }
        return acc;
    }
};

// f o (1^j x h x (ip)^{n-1-j}) summed over j: precomposition with the
// tensor homotopy h_n, which satisfies d h_n + h_n d = (ip)^n - id on the
// n-fold tensor power (telescoping; no side conditions needed).
inline MultilinearMap precompose_tensor_homotopy(const MultilinearMap& f, const Contraction& c) {
    const std::size_t n = f.arity();
    MultilinearMap id = MultilinearMap::identity(c.big.module);
    MultilinearMap ip = compose(c.i, c.p);
    MultilinearMap out(f.source(), f.target(), n, f.degree() - 1);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<MultilinearMap> inners;
        inners.reserve(n);
        for (std::size_t s = 0; s < n; ++s) {
            inners.push_back(s < j ? id : (s == j ? c.h : ip));
        }
        out += compose_multi(f, inners);
    }
    return out;
}

// Solve hom_boundary(y, d, d) = sigma for y of one degree lower, by exact
// linear algebra over the basis of the complex. Returns nullopt when sigma
// is not a boundary in the hom complex.
inline std::optional<MultilinearMap> solve_hom_equation(const MultilinearMap& sigma,
                                                        const ChainComplex& cx) {
    const auto& module = *cx.module;
    const auto& d = cx.differential;
    const std::size_t n = sigma.arity();
    const int ydeg = sigma.degree() - 1;

    auto coeff_of = [](const Vector& v, const std::string& name) {
        auto it = v.coeffs().find(name);
        return it == v.coeffs().end() ? Scalar(0) : it->second;
    };
    auto tuple_degree = [&](const std::vector<std::string>& t) {
        int s = 0;
        for (const auto& e : t) s += module.degree_of(e);
        return s;
    };

    std::map<std::pair<std::vector<std::string>, std::string>, std::size_t> col;
    auto tuples = basis_tuples(module, n);
    for (const auto& t : tuples) {
        int deg = tuple_degree(t);
        for (const auto& b : module.basis()) {
            if (b.degree == deg + ydeg) col.insert({{t, b.name}, col.size()});
        }
    }

    std::vector<std::map<std::size_t, Scalar>> rows;
    std::vector<Scalar> rhs;
    for (const auto& t : tuples) {
        int deg = tuple_degree(t);
        for (const auto& b : module.basis()) {
            if (b.degree != deg + sigma.degree()) continue;
            std::map<std::size_t, Scalar> row;
            // d o y part
            for (const auto& o : module.basis()) {
                if (o.degree != deg + ydeg) continue;
                Scalar cf = coeff_of(d.value({o.name}), b.name);
                if (cf != 0) row[col.at({t, o.name})] += cf;
            }
            // -(-1)^{|y|} y o (1 x .. d .. x 1) parts
            Scalar outer = (ydeg % 2 == 0) ? -1 : 1;
            long prefix = 0;
            for (std::size_t k = 0; k < n; ++k) {
                Scalar s = outer * ((prefix % 2 == 0) ? 1 : -1);
                for (const auto& [x, cf] : d.value({t[k]}).coeffs()) {
                    auto shifted = t;
                    shifted[k] = x;
                    auto it = col.find({shifted, b.name});
                    if (it != col.end()) row[it->second] += s * cf;
                }
                prefix += module.degree_of(t[k]);
            }
            Scalar target = coeff_of(sigma.value(t), b.name);
            if (row.empty()) {
                if (target != 0) return std::nullopt;
                continue;
            }
            rows.push_back(std::move(row));
            rhs.push_back(target);
        }
    }

    RationalMatrix sys(rows.size(), col.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [cidx, v] : rows[r]) sys.at(r, cidx) = v;
    }
    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    MultilinearMap y(cx.module, cx.module, n, ydeg);
    for (const auto& [key, cidx] : col) {
        if ((*sol)[cidx] != 0) {
            y.add_entry(key.first, (*sol)[cidx] * Vector::basis(cx.module, key.second));
        }
    }
    return y;
}

// Explicit hom-complex preimage of a boundary rho in Hom(A^n, B) along a
// contraction A -> B: the tensor homotopy gives x0 with
//   hom_boundary(x0) = rho - rho o (ip)^n,
// and the leftover small-side class rho o i^n is resolved by exact linear
// algebra on B, which is feasible because B is small.
inline MultilinearMap hom_preimage(const MultilinearMap& rho, const Contraction& c) {
    const std::size_t n = rho.arity();
    Scalar s0 = (rho.degree() % 2 == 0) ? -1 : 1;  // -(-1)^{|rho|}
    MultilinearMap x = s0 * precompose_tensor_homotopy(rho, c);
    MultilinearMap ip = compose(c.i, c.p);
    std::vector<MultilinearMap> ips(n, ip);
    MultilinearMap leftover = compose_multi(rho, ips);
    if (leftover.is_zero()) return x;
    std::vector<MultilinearMap> is(n, c.i);
    auto y = solve_hom_equation(compose_multi(rho, is), c.small);
    if (!y) throw std::runtime_error("hom_preimage: small-side class is not a boundary");
    std::vector<MultilinearMap> ps(n, c.p);
    x += compose_multi(*y, ps);
    return x;
}

}  // namespace detail

// Homotopy transfer of an A-infinity structure along a contraction; the
// result is certified by check_stasheff (and check_cinfty when the source
// is a dgca, flagged by `commutative_source`) before it is returned.
inline AInftyStructure transfer_structure(const AInftyStructure& source, const Contraction& c,
                                          std::size_t up_to, bool commutative_source = false) {
    if (up_to < 2 || up_to > 4) throw std::length_error("transfer_structure: arity out of range");
    detail::TransferSeries series(source, c);
    AInftyStructure out(c.small, up_to);
    const auto& small = *c.small.module;
    const int small_min = small.min_degree();
    const int small_max = small.max_degree();
    for (std::size_t n = 2; n <= up_to; ++n) {
        MultilinearMap m(c.small.module, c.small.module, n, 2 - static_cast<int>(n));
        for (const auto& word : basis_tuples(small, n)) {
            int out_degree = 2 - static_cast<int>(n);
            for (const auto& name : word) out_degree += small.degree_of(name);
            if (out_degree < small_min || out_degree > small_max) continue;
            Vector v = series.transferred_bar_value(word);
            v *= suspension_sign(small, word);
            if (!v.is_zero()) m.add_entry(word, v);
        }
        out.set_operation(m);
    }
    auto stasheff = check_stasheff(out, up_to);
    if (!stasheff.passed) {
        throw std::runtime_error("transfer_structure: Stasheff identities failed: " +
                                 stasheff.violations.front().defect);
    }
    if (commutative_source) {
        auto cinf = check_cinfty(out, up_to);
        if (!cinf.passed) {
            throw std::runtime_error("transfer_structure: shuffle identities failed: " +
                                     cinf.violations.front().defect);
        }
    }
    return out;
}

// The A-infinity morphism P: A -> B with p_1 = c.p extending the transfer;
// certified by morphism_defect = 0 (and the C-infinity shuffle conditions
// when the source is a dgca) before it is returned.
inline AInftyMorphism transfer_morphism(const AInftyStructure& source,
                                        const AInftyStructure& transferred,
                                        const Contraction& c, std::size_t up_to,
                                        bool commutative_source = false) {
    if (up_to < 1 || up_to > 4) throw std::length_error("transfer_morphism: arity out of range");
    detail::TransferSeries series(source, c);
    AInftyMorphism out(source, transferred, up_to);
    out.set_component(c.p);
    const auto& big = *c.big.module;
    const int small_min = c.small.module->min_degree();
    const int small_max = c.small.module->max_degree();
    for (std::size_t n = 2; n <= up_to; ++n) {
        MultilinearMap pn(c.big.module, c.small.module, n, 1 - static_cast<int>(n));
        for (const auto& word : basis_tuples(big, n)) {
            int out_degree = 1 - static_cast<int>(n);
            for (const auto& name : word) out_degree += big.degree_of(name);
            if (out_degree < small_min || out_degree > small_max) continue;
            Vector v = series.morphism_bar_value(word);
            v *= suspension_sign(big, word);
            if (!v.is_zero()) pn.add_entry(word, v);
        }
        if (commutative_source) {
            // The raw series solves the morphism identity but need not kill
            // shuffles. Project onto the shuffle-killing maps with the
            // Eulerian idempotent (the projection commutes with the hom
            // boundary, and every obligation term already kills shuffles, so
            // lower identities survive); then repair the arity-n identity
            // with an explicit preimage, which the projection leaves valid.
            pn = harrison_projection(pn);
            out.set_component(pn);
            MultilinearMap rho = morphism_defect(out, n);
            if (!rho.is_zero()) {
                pn += Scalar(-1) * harrison_projection(detail::hom_preimage(rho, c));
            }
        }
        out.set_component(pn);
    }
    auto rep = check_morphism(out, up_to);
    if (!rep.passed) {
        throw std::runtime_error("transfer_morphism: morphism identities failed: " +
                                 rep.violations.front().defect);
    }
    if (commutative_source) {
        // The shuffle half of check_cinfty_morphism; the morphism half was
        // just verified, so do not recompute it.
        for (std::size_t n = 2; n <= up_to; ++n) {
            for (std::size_t q = 1; q < n; ++q) {
                MultilinearMap defect = shuffle_defect(out.component(n), q, n - q);
                if (!defect.is_zero()) {
                    auto w = *defect.first_nonzero_inputs();
                    throw std::runtime_error("transfer_morphism: shuffle identities failed: " +
                                             vector_to_string(defect.value(w)));
                }
            }
        }
    }
    return out;
}

// outer: Omega -> D, inner: D -> C. Composite contraction Omega -> C with
// i = i_outer o i_inner, p = p_inner o p_outer,
// h = i_outer o h_inner o p_outer + h_outer.
inline Contraction compose_contractions(const Contraction& outer, const Contraction& inner) {
    if (!(*outer.small.module == *inner.big.module)) {
        throw std::invalid_argument("compose_contractions: middle complexes differ");
    }
    MultilinearMap i = compose(outer.i, inner.i);
    MultilinearMap p = compose(inner.p, outer.p);
    MultilinearMap h = compose(compose(outer.i, inner.h), outer.p) + outer.h;
    Contraction out(outer.big, inner.small, i, p, h, false);
    auto rep = check_contraction(out);
    if (!rep.passed) {
        throw std::runtime_error("compose_contractions: homotopy identity failed: " +
                                 rep.violations.front().defect);
    }
    return out;
}

// Transfer through the composite contraction versus transfer-of-transfer
// through the two stages; the maps must agree arity by arity.
inline CheckReport two_stage_agreement(const AInftyStructure& source, const Contraction& outer,
                                       const Contraction& inner, std::size_t up_to,
                                       bool commutative_source = false) {
    if (up_to > 3) throw std::length_error("two_stage_agreement: arity out of range");
    CheckReport report;
    report.check = "two_stage_agreement";
    report.arity_range = "2.." + std::to_string(up_to);
    Contraction composite = compose_contractions(outer, inner);
    AInftyStructure direct = transfer_structure(source, composite, up_to, commutative_source);
    AInftyStructure mid = transfer_structure(source, outer, up_to, commutative_source);
    AInftyStructure staged = transfer_structure(mid, inner, up_to, false);
    for (std::size_t n = 2; n <= up_to; ++n) {
        MultilinearMap diff = direct.operation(n) - staged.operation(n);
        if (!diff.is_zero()) {
            auto w = *diff.first_nonzero_inputs();
            auto inputs = w;
            inputs.insert(inputs.begin(), "n=" + std::to_string(n));
            report.fail(inputs, vector_to_string(diff.value(w)));
        }
    }
    return report;
}

}  // namespace cinfty
