#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cinfty/models.hpp"
#include "cinfty/partition_complex.hpp"
#include "cinfty/transfer.hpp"

using namespace cinfty;

namespace {

// forms on the interval contracted onto a point by the mean value; the
// projection is not multiplicative, so every cumulant is in play.
struct AveragingFixture {
    FormsModel fm;
    Contraction c;
    AInftyStructure src;
    AInftyStructure out;
    AInftyMorphism P;
};

const AveragingFixture& averaging_fixture() {
    static const AveragingFixture fx = [] {
        AveragingFixture f{truncated_forms(1, 4, "forms_d1"), {}, {}, {}, {}};
        f.c = forms_to_point_average(f.fm);
        f.src = AInftyStructure::from_dgca(f.fm.dgca, 4);
        f.out = transfer_structure(f.src, f.c, 4, true);
        f.P = transfer_morphism(f.src, f.out, f.c, 4, true);
        return f;
    }();
    return fx;
}

MultilinearMap realization_of_boundary(const PartitionCell& cell, const AInftyMorphism& P) {
    MultilinearMap first = realization(cell, P);
    MultilinearMap sum(first.source(), first.target(), first.arity(), first.degree() + 1);
    for (const auto& [coeff, face] : cell_boundary(cell)) {
        sum += coeff * realization(face, P);
    }
    return sum;
}

}  // namespace

TEST_CASE("refinement graph counts and claims") {
    auto g2 = build_refinement_graph(2);
    CHECK(g2.vertices.size() == 2);
    CHECK(g2.edges.size() == 1);

    auto g3 = build_refinement_graph(3);
    CHECK(g3.vertices.size() == 6);  // 1 + 3 + 2! copies of the singletons
    CHECK(g3.edges.size() == 6);
    // the multiplicity copies really are distinct block orders
    std::set<std::string> sigs;
    for (const auto& v : g3.vertices) sigs.insert(v.signature());
    CHECK(sigs.count("p1(1)p1(2)p1(3)") == 1);
    CHECK(sigs.count("p1(1)p1(3)p1(2)") == 1);
    CHECK(sigs.size() == 6);

    auto g4 = build_refinement_graph(4);
    CHECK(g4.vertices.size() == 26);  // sum over 15 partitions of (|pi|-1)!

    for (std::size_t n = 2; n <= 6; ++n) {
        CHECK(check_graph_claims(build_refinement_graph(n)).passed);
    }
    CHECK_THROWS_AS(build_refinement_graph(7), std::length_error);
}

TEST_CASE("check_graph_claims flags a disconnected mutation") {
    auto g = build_refinement_graph(3);
    // cut the pendant path: remove both edges at the p1(1)p1(3)p1(2) copy
    RefinementGraph mutated = g;
    mutated.edges.clear();
    mutated.endpoints.clear();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.endpoints[e];
        if (g.vertices[a].signature() == "p1(1)p1(3)p1(2)" ||
            g.vertices[b].signature() == "p1(1)p1(3)p1(2)") {
            continue;
        }
        mutated.edges.push_back(g.edges[e]);
        mutated.endpoints.emplace_back(a, b);
    }
    auto report = check_graph_claims(mutated);
    CHECK_FALSE(report.passed);
    bool connectivity = false;
    for (const auto& v : report.violations) {
        if (!v.inputs.empty() && v.inputs.front() == "connectivity") connectivity = true;
    }
    CHECK(connectivity);
}

TEST_CASE("cube complexes: cells, boundary squared, Betti numbers") {
    auto c2 = build_cumulant_complex(2);  // construction verifies boundary^2 = 0
    CHECK(c2.cells[0].size() == 2);
    CHECK(c2.cells[1].size() == 1);
    CHECK(cellular_homology(c2) == std::vector<std::size_t>{1, 0});

    auto c3 = build_cumulant_complex(3);
    CHECK(c3.cells[1].size() == 6);
    CHECK(c3.cells[2].size() == 1);  // the p3 square
    CHECK(c3.cells[2][0].signature() == "p3(1,2,3)");
    CHECK(cellular_homology(c3) == std::vector<std::size_t>{1, 0, 0});

    auto c4 = build_cumulant_complex(4);
    CHECK(c4.cells[2].size() == 13);
    CHECK(c4.cells[3].size() == 1);
    CHECK(cellular_homology(c4) == std::vector<std::size_t>{1, 0, 0, 0});

    // the 1-skeleton is G_n
    for (std::size_t n = 2; n <= 4; ++n) {
        auto g = build_refinement_graph(n);
        auto cx = build_cumulant_complex(n);
        CHECK(cx.cells[0] == g.vertices);
        CHECK(cx.cells[1] == g.edges);
    }
}

TEST_CASE("Betti_0 counts components: disjoint union of two intervals") {
    auto c2 = build_cumulant_complex(2);
    CubeComplex two;
    two.n = 2;
    two.cells = {{}, {}};
    for (int copy = 0; copy < 2; ++copy) {
        for (std::size_t d = 0; d < 2; ++d) {
            for (const auto& cell : c2.cells[d]) two.cells[d].push_back(cell);
        }
    }
    two.boundary.resize(2);
    two.boundary[1] = RationalMatrix(4, 2);
    for (std::size_t copy = 0; copy < 2; ++copy) {
        for (std::size_t r = 0; r < 2; ++r) {
            two.boundary[1].at(copy * 2 + r, copy) = c2.boundary[1].at(r, 0);
        }
    }
    CHECK(cellular_homology(two) == std::vector<std::size_t>{2, 0});
}

TEST_CASE("dimension-0 realizations reproduce the cumulant terms") {
    const auto& fx = averaging_fixture();
    // the mean is not multiplicative: k_2(t, t) = 1/3 - 1/4
    auto k2 = cumulant(fx.P.component(1), fx.src.operation(2), fx.out.operation(2), 2);
    CHECK(k2.value({"t", "t"}) == Scalar(1, 12) * Vector::basis(fx.out.module(), "u"));
    for (std::size_t n = 2; n <= 3; ++n) {
        auto g = build_refinement_graph(n);
        MultilinearMap acc(fx.src.module(), fx.out.module(), n, 0);
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            acc += Scalar(g.vertex_signs[v]) * realization(g.vertices[v], fx.P);
        }
        auto kn = cumulant(fx.P.component(1), fx.src.operation(2), fx.out.operation(2), n);
        CHECK(acc == kn);
    }
}

TEST_CASE("cell realization is a chain map to the hom complex") {
    const auto& fx = averaging_fixture();
    const auto& dA = fx.src.complex().differential;
    const auto& dB = fx.out.complex().differential;
    for (std::size_t n = 2; n <= 3; ++n) {
        auto cx = build_cumulant_complex(n);
        for (std::size_t d = 1; d < cx.cells.size(); ++d) {
            for (const auto& cell : cx.cells[d]) {
                CAPTURE(cell.signature());
                CHECK(realization_of_boundary(cell, fx.P) ==
                      hom_boundary(realization(cell, fx.P), dA, dB));
            }
        }
    }
}

TEST_CASE("nullhomotopy_from_graph: boundary is the cumulant, exactly") {
    const auto& fx = averaging_fixture();
    // construction re-verifies hom_boundary(H_n) = k_n and throws otherwise
    auto h2 = nullhomotopy_from_graph(fx.P, 2);
    CHECK(h2 == fx.P.component(2));  // H_2 is p_2 on the nose
    for (std::size_t n = 3; n <= 4; ++n) {
        auto hn = nullhomotopy_from_graph(fx.P, n);
        CHECK_FALSE(hn.is_zero());
    }
}

TEST_CASE("strict morphisms have zero nullhomotopies") {
    // transfer through the identity contraction: p_1 = id, higher p_n = 0
    const auto& fx = averaging_fixture();
    MultilinearMap id = MultilinearMap::identity(fx.src.module());
    MultilinearMap h(fx.src.module(), fx.src.module(), 1, -1);
    Contraction trivial(fx.src.complex(), fx.src.complex(), id, id, h, true);
    auto out = transfer_structure(fx.src, trivial, 4, true);
    auto P = transfer_morphism(fx.src, out, trivial, 4, true);
    for (std::size_t n = 2; n <= 4; ++n) {
        CHECK(nullhomotopy_from_graph(P, n).is_zero());
    }
}

TEST_CASE("second_level_homotopy links the two pairings of G_3") {
    const auto& fx = averaging_fixture();
    auto g = build_refinement_graph(3);
    auto matchings = perfect_matchings(g, 3);
    CHECK(matchings.size() == 2);  // exactly two pairings of G_3
    auto first = nullhomotopy_from_matching(fx.P, g, matchings[0]);
    auto second = nullhomotopy_from_matching(fx.P, g, matchings[1]);
    CHECK_FALSE((first - second).is_zero());
    auto G = second_level_homotopy(fx.P);  // construction re-verifies
    CHECK_FALSE(G.is_zero());
    CHECK(hom_boundary(G, fx.src.complex().differential, fx.out.complex().differential) ==
          first - second);
}

TEST_CASE("shuffle cycles vanish for C-infinity morphisms") {
    const auto& fx = averaging_fixture();
    for (std::size_t n = 2; n <= 3; ++n) {
        auto rep = shuffle_cycle_report(build_cumulant_complex(n), fx.P);
        CHECK_FALSE(rep.empty());
        for (const auto& e : rep) {
            CAPTURE(e.cell.signature());
            CHECK(e.zero);
        }
    }
}

TEST_CASE("shuffle_cycle_report flags a non-C-infinity morphism") {
    const auto& fx = averaging_fixture();
    AInftyMorphism bad(fx.src, fx.out, 4);
    bad.set_component(fx.P.component(1));
    MultilinearMap q(fx.src.module(), fx.out.module(), 2, -1);
    auto u = Vector::basis(fx.out.module(), "u");
    q.set_entry({"t", "dt"}, u);
    q.set_entry({"dt", "t"}, Scalar(-1) * u);
    bad.set_component(q);
    auto rep = shuffle_cycle_report(build_cumulant_complex(2), bad);
    bool flagged = false;
    for (const auto& e : rep) {
        if (!e.zero) {
            flagged = true;
            CHECK(!e.witness.empty());
        }
    }
    CHECK(flagged);
}

TEST_CASE("DOT export is deterministic and complete") {
    auto g = build_refinement_graph(3);
    std::string dot = to_dot(g);
    CHECK(dot.find("graph G3 {") == 0);
    CHECK(dot.find("p1(123)") != std::string::npos);
    std::size_t edges = 0;
    for (std::size_t pos = dot.find(" -- "); pos != std::string::npos;
         pos = dot.find(" -- ", pos + 1)) {
        ++edges;
    }
    CHECK(edges == 6);
    CHECK(to_dot(g) == dot);
}
