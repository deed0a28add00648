#pragma once

#include "cinfty/cumulants.hpp"
#include "cinfty/linalg.hpp"
#include "cinfty/partitions.hpp"
#include "cinfty/structures.hpp"

#include <numeric>
#include <set>

namespace cinfty {

// A cell of the cumulant cube complex c_n. The inputs 1..n are split into
// disjoint groups; the groups are arranged in an ordered word and the word
// is cut into consecutive runs. A run with groups G_1,...,G_r stands for
// the composite p_r(mu(G_1), ..., mu(G_r)) where mu multiplies the inputs
// of a group; the factors of the different runs are multiplied in the
// target. Constraints: groups inside a run appear in ascending order of
// their minima, and input 1 lives in the first run. Dimension = sum over
// runs of (r - 1): a run of r groups is an (r-1)-cube, interpolating
// between the fully merged evaluation and the fully split product.
struct PartitionCell {
    std::vector<std::vector<std::vector<std::size_t>>> runs;  // runs -> groups -> 1-based inputs

    std::size_t dimension() const {
        std::size_t d = 0;
        for (const auto& r : runs) d += r.size() - 1;
        return d;
    }

    std::size_t inputs() const {
        std::size_t n = 0;
        for (const auto& r : runs) {
            for (const auto& g : r) n += g.size();
        }
        return n;
    }

    std::size_t block_count() const {
        std::size_t k = 0;
        for (const auto& r : runs) k += r.size();
        return k;
    }

    // "p2(12,3)p1(4)": one factor per run, groups as digit strings.
    std::string signature() const {
        std::string out;
        for (const auto& r : runs) {
            out += "p" + std::to_string(r.size()) + "(";
            for (std::size_t g = 0; g < r.size(); ++g) {
                if (g) out += ",";
                for (std::size_t el : r[g]) out += std::to_string(el);
            }
            out += ")";
        }
        return out;
    }

    bool operator<(const PartitionCell& o) const { return runs < o.runs; }
    bool operator==(const PartitionCell& o) const { return runs == o.runs; }
};

// Membership test for c_n: groups partition {1..n}, each group ascending,
// runs nonempty, ascending minima inside every run, input 1 in the first run.
inline bool valid_cell(const PartitionCell& cell, std::size_t n) {
    std::vector<bool> seen(n + 1, false);
    if (cell.runs.empty()) return false;
    for (const auto& run : cell.runs) {
        if (run.empty()) return false;
        std::size_t last_min = 0;
        for (const auto& g : run) {
            if (g.empty() || !std::is_sorted(g.begin(), g.end())) return false;
            if (g.front() <= last_min) return false;
            last_min = g.front();
            for (std::size_t el : g) {
                if (el < 1 || el > n || seen[el]) return false;
                seen[el] = true;
            }
        }
    }
    for (std::size_t el = 1; el <= n; ++el) {
        if (!seen[el]) return false;
    }
    bool anchored = false;
    for (const auto& g : cell.runs.front()) {
        if (g.front() == 1) anchored = true;
    }
    return anchored;
}

// All cells of c_n with dimension <= max_dim, sorted by (dimension,
// signature order). Enumeration: every partition of {1..n}, every ordering
// of its blocks, every cut of the ordering into runs, filtered by the cell
// constraints.
inline std::vector<PartitionCell> enumerate_cells(std::size_t n, std::size_t max_dim) {
    if (n < 2 || n > 6) throw std::length_error("enumerate_cells: n out of supported range");
    std::set<PartitionCell> out;
    for (const auto& pi : enumerate_partitions(n)) {
        std::vector<std::size_t> order(pi.block_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end());
        do {
            std::vector<std::vector<std::size_t>> word;
            word.reserve(order.size());
            for (std::size_t b : order) word.push_back(pi.blocks[b]);
            // cut the word into runs: cuts is a bitmask of gap positions
            std::size_t k = word.size();
            for (std::size_t cuts = 0; cuts < (1u << (k - 1)); ++cuts) {
                PartitionCell cell;
                cell.runs.push_back({word[0]});
                for (std::size_t g = 1; g < k; ++g) {
                    if (cuts & (1u << (g - 1))) {
                        cell.runs.push_back({word[g]});
                    } else {
                        cell.runs.back().push_back(word[g]);
                    }
                }
                if (cell.dimension() <= max_dim && valid_cell(cell, n)) out.insert(cell);
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    std::vector<PartitionCell> cells(out.begin(), out.end());
    std::stable_sort(cells.begin(), cells.end(),
                     [](const PartitionCell& a, const PartitionCell& b) {
                         if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
                         return a < b;
                     });
    return cells;
}

// Signed cellular boundary. Each interface i of a run contributes a merged
// face (groups i, i+1 fused) minus a split face (the run cut between them),
// with the cube sign (-1)^{i-1}, and runs carry the Koszul-style prefix
// sign (-1)^{sum of earlier run dimensions}.
inline std::vector<std::pair<Scalar, PartitionCell>> cell_boundary(const PartitionCell& cell) {
    std::vector<std::pair<Scalar, PartitionCell>> out;
    long prefix = 0;
    for (std::size_t t = 0; t < cell.runs.size(); ++t) {
        const auto& run = cell.runs[t];
        for (std::size_t i = 0; i + 1 < run.size(); ++i) {
            Scalar sign = ((prefix + i) % 2 == 0) ? 1 : -1;
            PartitionCell merged = cell;
            auto& mr = merged.runs[t];
            mr[i].insert(mr[i].end(), mr[i + 1].begin(), mr[i + 1].end());
            std::sort(mr[i].begin(), mr[i].end());
            mr.erase(mr.begin() + i + 1);
            out.emplace_back(sign, std::move(merged));

            PartitionCell split = cell;
            auto& sr = split.runs[t];
            std::vector<std::vector<std::size_t>> tail(sr.begin() + i + 1, sr.end());
            sr.erase(sr.begin() + i + 1, sr.end());
            split.runs.insert(split.runs.begin() + t + 1, std::move(tail));
            out.emplace_back(-sign, std::move(split));
        }
        prefix += static_cast<long>(run.size()) - 1;
    }
    return out;
}

// The refinement graph G_n: vertices are the dimension-0 cells (a partition
// pi contributes one copy per ordering of its blocks with the block of
// input 1 first, (|pi|-1)! copies in total), edges the dimension-1 cells.
// Every edge joins the coarser vertex obtained by merging its run to the
// finer vertex obtained by splitting it.
struct RefinementGraph {
    std::size_t n = 0;
    std::vector<PartitionCell> vertices;
    std::vector<PartitionCell> edges;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints;  // (coarse, fine) vertex index
    std::vector<int> vertex_signs;                               // (-1)^{|pi|-1}
};

inline RefinementGraph build_refinement_graph(std::size_t n) {
    if (n < 2 || n > 6) throw std::length_error("build_refinement_graph: n out of range");
    RefinementGraph g;
    g.n = n;
    for (auto& cell : enumerate_cells(n, 1)) {
        (cell.dimension() == 0 ? g.vertices : g.edges).push_back(cell);
    }
    std::map<PartitionCell, std::size_t> index;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        index[g.vertices[v]] = v;
        g.vertex_signs.push_back(g.vertices[v].block_count() % 2 == 1 ? 1 : -1);
    }
    for (const auto& e : g.edges) {
        std::size_t coarse = 0, fine = 0;
        for (const auto& [coeff, face] : cell_boundary(e)) {
            (coeff > 0 ? coarse : fine) = index.at(face);
        }
        g.endpoints.emplace_back(coarse, fine);
    }
    return g;
}

// Claims of the Lemma: even vertex count, connectivity, and signed vertex
// count zero (the Moebius coefficients of k_n add up to zero).
inline CheckReport check_graph_claims(const RefinementGraph& g) {
    CheckReport report;
    report.check = "refinement_graph_claims";
    report.arity_range = std::to_string(g.n);
    if (g.vertices.size() % 2 != 0) {
        report.fail({"vertex_count"}, std::to_string(g.vertices.size()));
    }
    // connectivity via union-find
    std::vector<std::size_t> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : g.endpoints) parent[find(a)] = find(b);
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) roots.insert(find(v));
    if (roots.size() != 1) {
        report.fail({"connectivity"}, std::to_string(roots.size()) + " components");
    }
    long signed_sum = 0;
    for (int s : g.vertex_signs) signed_sum += s;
    if (signed_sum != 0) report.fail({"signed_vertex_sum"}, std::to_string(signed_sum));
    return report;
}

// The cube complex c_n: all cells up to dimension n-1 with the signed
// incidence matrices. Construction verifies boundary^2 = 0.
struct CubeComplex {
    std::size_t n = 0;
    std::vector<std::vector<PartitionCell>> cells;  // by dimension
    std::vector<RationalMatrix> boundary;           // boundary[d]: C_d -> C_{d-1}, d >= 1

    std::size_t total_cells() const {
        std::size_t t = 0;
        for (const auto& c : cells) t += c.size();
        return t;
    }
};

inline CubeComplex build_cumulant_complex(std::size_t n) {
    if (n < 2 || n > 4) throw std::length_error("build_cumulant_complex: n out of range");
    CubeComplex cx;
    cx.n = n;
    cx.cells.assign(n, {});
    for (auto& cell : enumerate_cells(n, n - 1)) {
        cx.cells[cell.dimension()].push_back(cell);
    }
    std::vector<std::map<PartitionCell, std::size_t>> index(n);
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t i = 0; i < cx.cells[d].size(); ++i) index[d][cx.cells[d][i]] = i;
    }
    cx.boundary.resize(n);
    for (std::size_t d = 1; d < n; ++d) {
        RationalMatrix m(cx.cells[d - 1].size(), cx.cells[d].size());
        for (std::size_t c = 0; c < cx.cells[d].size(); ++c) {
            for (const auto& [coeff, face] : cell_boundary(cx.cells[d][c])) {
                m.at(index[d - 1].at(face), c) += coeff;
            }
        }
        cx.boundary[d] = std::move(m);
    }
    // boundary^2 = 0
    for (std::size_t d = 2; d < n; ++d) {
        const auto& a = cx.boundary[d - 1];
        const auto& b = cx.boundary[d];
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < b.cols(); ++c) {
                Scalar s = 0;
                for (std::size_t k = 0; k < a.cols(); ++k) s += a.at(r, k) * b.at(k, c);
                if (s != 0) {
                    throw std::runtime_error("build_cumulant_complex: boundary^2 != 0 at " +
                                             cx.cells[d][c].signature());
                }
            }
        }
    }
    return cx;
}

// Betti numbers over the rationals: b_d = dim C_d - rank d_d - rank d_{d+1}.
inline std::vector<std::size_t> cellular_homology(const CubeComplex& cx) {
    std::vector<std::size_t> betti;
    std::size_t dims = cx.cells.size();
    auto rank = [&](std::size_t d) -> std::size_t {
        if (d == 0 || d >= dims || cx.boundary[d].rows() == 0 || cx.boundary[d].cols() == 0) {
            return 0;
        }
        return fraction_free_rank(cx.boundary[d]);
    };
    for (std::size_t d = 0; d < dims; ++d) {
        betti.push_back(cx.cells[d].size() - rank(d) - rank(d + 1));
    }
    return betti;
}

namespace detail {

// Left-comb product map of the given arity: a_1 a_2 ... a_k under m.
inline MultilinearMap iterated_product(const MultilinearMap& m, std::size_t arity) {
    MultilinearMap out = MultilinearMap::identity(m.source());
    for (std::size_t k = 2; k <= arity; ++k) out = compose_at(out, m, 1);
    return out;
}

}  // namespace detail

// The composite map a cell stands for, built from a morphism P between a
// dgca source and a dgca-like target: factor p_r(mu(G_1),...,mu(G_r)) per
// run, factors multiplied left-to-right in the target, inputs routed to
// their groups with the Koszul unshuffle sign (the same convention as the
// cumulant realization; a dimension-0 cell realizes its partition term of
// k_n on the nose). `factor_override` substitutes the map used for one
// run (1-based index), which is how shuffle cycles are realized.
inline MultilinearMap realization(const PartitionCell& cell, const AInftyMorphism& P,
                                  std::size_t override_run = 0,
                                  const MultilinearMap* factor_override = nullptr) {
    const std::size_t n = cell.inputs();
    const MultilinearMap mA = P.source().operation(2);
    const MultilinearMap mB = P.target().operation(2);

    // one factor per run
    std::vector<MultilinearMap> factors;
    factors.reserve(cell.runs.size());
    for (std::size_t t = 0; t < cell.runs.size(); ++t) {
        const auto& run = cell.runs[t];
        const MultilinearMap head =
            (factor_override && override_run == t + 1) ? *factor_override
                                                       : P.component(run.size());
        std::vector<MultilinearMap> mus;
        mus.reserve(run.size());
        for (const auto& g : run) mus.push_back(detail::iterated_product(mA, g.size()));
        factors.push_back(compose_multi(head, mus));
    }
    // left fold in the target
    MultilinearMap folded = factors.front();
    for (std::size_t t = 1; t < factors.size(); ++t) {
        folded = compose_multi(mB, {folded, factors[t]});
    }
    // route input i to the slot of its group
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (const auto& run : cell.runs) {
        for (const auto& g : run) {
            for (std::size_t el : g) perm.push_back(el - 1);
        }
    }
    // dimension normalization (-1)^{d(d-1)/2}: the composite of the cube
    // directions is a d-fold desuspension, and this sign makes the cellular
    // boundary match the hom boundary on the nose in every dimension
    const std::size_t d = cell.dimension();
    Scalar dim_sign = ((d * (d - 1) / 2) % 2 == 0) ? 1 : -1;
    MultilinearMap out(folded.source(), folded.target(), n, folded.degree());
    const auto& src = *folded.source();
    for (const auto& tuple : basis_tuples(src, n)) {
        std::vector<int> degrees(n);
        for (std::size_t i = 0; i < n; ++i) degrees[i] = src.degree_of(tuple[i]);
        std::vector<std::string> permuted(n);
        for (std::size_t p = 0; p < n; ++p) permuted[p] = tuple[perm[p]];
        Vector v = folded.value(permuted);
        if (v.is_zero()) continue;
        v *= dim_sign * koszul_sign(perm, degrees);
        out.add_entry(tuple, v);
    }
    return out;
}

// Perfect matchings of G_n as sorted edge-index lists, enumerated
// deterministically (lowest unmatched vertex first, incident edges in
// canonical order), up to `limit` many.
inline std::vector<std::vector<std::size_t>> perfect_matchings(const RefinementGraph& g,
                                                               std::size_t limit) {
    std::vector<std::vector<std::size_t>> incident(g.vertices.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        incident[g.endpoints[e].first].push_back(e);
        incident[g.endpoints[e].second].push_back(e);
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> matched(g.vertices.size(), false);
    std::vector<std::size_t> chosen;
    std::function<void()> rec = [&]() {
        if (out.size() >= limit) return;
        std::size_t v = g.vertices.size();
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            if (!matched[i]) {
                v = i;
                break;
            }
        }
        if (v == g.vertices.size()) {
            auto m = chosen;
            std::sort(m.begin(), m.end());
            out.push_back(std::move(m));
            return;
        }
        for (std::size_t e : incident[v]) {
            std::size_t w = g.endpoints[e].first == v ? g.endpoints[e].second
                                                      : g.endpoints[e].first;
            if (matched[w]) continue;
            matched[v] = matched[w] = true;
            chosen.push_back(e);
            rec();
            chosen.pop_back();
            matched[v] = matched[w] = false;
            if (out.size() >= limit) return;
        }
    };
    rec();
    return out;
}

// The signed edge sum of one pairing: H = sum over matched edges of
// (sign of the coarse endpoint) * realization(edge). Its hom boundary
// telescopes to the signed vertex sum, which is k_n.
inline MultilinearMap nullhomotopy_from_matching(const AInftyMorphism& P,
                                                 const RefinementGraph& g,
                                                 const std::vector<std::size_t>& matching) {
    MultilinearMap out(P.source().module(), P.target().module(), g.n, -1);
    for (std::size_t e : matching) {
        out += Scalar(g.vertex_signs[g.endpoints[e].first]) * realization(g.edges[e], P);
    }
    return out;
}

// H_n with hom_boundary(H_n) = k_n, built from the first perfect matching
// of G_n; the defining equation is re-verified before returning.
inline MultilinearMap nullhomotopy_from_graph(const AInftyMorphism& P, std::size_t n) {
    if (n < 2 || n > 4) throw std::length_error("nullhomotopy_from_graph: n out of range");
    RefinementGraph g = build_refinement_graph(n);
    auto matchings = perfect_matchings(g, 1);
    if (matchings.empty()) {
        throw std::runtime_error("nullhomotopy_from_graph: no perfect matching in G_" +
                                 std::to_string(n));
    }
    MultilinearMap h = nullhomotopy_from_matching(P, g, matchings.front());
    MultilinearMap kn =
        cumulant(P.component(1), P.source().operation(2), P.target().operation(2), n);
    MultilinearMap defect = hom_boundary(h, P.source().complex().differential,
                                         P.target().complex().differential) -
                            kn;
    if (!defect.is_zero()) {
        auto w = *defect.first_nonzero_inputs();
        throw std::runtime_error("nullhomotopy_from_graph: boundary defect " +
                                 vector_to_string(defect.value(w)));
    }
    return h;
}

// G with hom_boundary(G) = H_3 - H_3', the two nullhomotopies coming from
// the first two perfect matchings of G_3. G is found by solving the
// cellular equation (boundary of a 2-chain) = (difference 1-chain) and
// realizing the 2-chain; the defining equation is re-verified.
inline MultilinearMap second_level_homotopy(const AInftyMorphism& P, std::size_t n = 3) {
    if (n != 3) throw std::length_error("second_level_homotopy: only n = 3 is supported");
    RefinementGraph g = build_refinement_graph(n);
    auto matchings = perfect_matchings(g, 2);
    if (matchings.size() < 2) {
        throw std::runtime_error("second_level_homotopy: fewer than two pairings of G_3");
    }
    CubeComplex cx = build_cumulant_complex(n);
    std::vector<Scalar> z(g.edges.size(), 0);
    for (std::size_t e : matchings[0]) z[e] += g.vertex_signs[g.endpoints[e].first];
    for (std::size_t e : matchings[1]) z[e] -= g.vertex_signs[g.endpoints[e].first];
    auto x = cx.boundary[2].solve(z);
    if (!x) {
        throw std::runtime_error("second_level_homotopy: difference chain is not a boundary");
    }
    MultilinearMap out(P.source().module(), P.target().module(), n, -2);
    for (std::size_t c = 0; c < cx.cells[2].size(); ++c) {
        if ((*x)[c] != 0) out += (*x)[c] * realization(cx.cells[2][c], P);
    }
    MultilinearMap diff = nullhomotopy_from_matching(P, g, matchings[0]) -
                          nullhomotopy_from_matching(P, g, matchings[1]);
    MultilinearMap defect = hom_boundary(out, P.source().complex().differential,
                                         P.target().complex().differential) -
                            diff;
    if (!defect.is_zero()) {
        auto w = *defect.first_nonzero_inputs();
        throw std::runtime_error("second_level_homotopy: boundary defect " +
                                 vector_to_string(defect.value(w)));
    }
    return out;
}

// Shuffle cycles: for every cell with a run of j >= 2 groups and every
// (q, r) with q + r = j, the run's p_j is replaced by its (q, r)-shuffle
// defect. The resulting map realizes the shuffle-sum cycle of the cell, and
// must vanish when P is a C-infinity morphism.
struct ShuffleCycle {
    PartitionCell cell;
    std::size_t run = 0;  // 1-based
    std::size_t q = 0, r = 0;
    bool zero = false;
    std::string witness;  // defect on the first violating tuple, if any
};

inline std::vector<ShuffleCycle> shuffle_cycle_report(const CubeComplex& cx,
                                                      const AInftyMorphism& P) {
    std::vector<ShuffleCycle> out;
    for (const auto& layer : cx.cells) {
        for (const auto& cell : layer) {
            for (std::size_t t = 0; t < cell.runs.size(); ++t) {
                std::size_t j = cell.runs[t].size();
                if (j < 2) continue;
                for (std::size_t q = 1; q < j; ++q) {
                    MultilinearMap head = shuffle_defect(P.component(j), q, j - q);
                    MultilinearMap value = realization(cell, P, t + 1, &head);
                    ShuffleCycle entry{cell, t + 1, q, j - q, value.is_zero(), ""};
                    if (!entry.zero) {
                        auto w = *value.first_nonzero_inputs();
                        entry.witness = vector_to_string(value.value(w));
                    }
                    out.push_back(std::move(entry));
                }
            }
        }
    }
    return out;
}

// DOT export of the refinement graph, deterministic ordering.
inline std::string to_dot(const RefinementGraph& g) {
    std::ostringstream os;
    os << "graph G" << g.n << " {\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        os << "  v" << v << " [label=\"" << g.vertices[v].signature() << "\", sign=\""
           << (g.vertex_signs[v] > 0 ? "+" : "-") << "\"];\n";
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        os << "  v" << g.endpoints[e].first << " -- v" << g.endpoints[e].second << " [label=\""
           << g.edges[e].signature() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace cinfty
