#pragma once

// Shared small fixtures for the test binaries.

#include "cinfty/structures.hpp"
#include "cinfty/transfer.hpp"

#include <random>

namespace cinfty::fixtures {

// Exterior algebra on two degree-1 generators, zero differential.
inline DgcaPresentation exterior_two() {
    auto mod = std::make_shared<GradedModule>(
        "ext2", std::vector<GradedModule::BasisElement>{
                    {"1", 0}, {"x", 1}, {"y", 1}, {"xy", 2}});
    MultilinearMap d(mod, mod, 1, 1);
    MultilinearMap m(mod, mod, 2, 0);
    auto unit = [&](const std::string& n) { return Vector::basis(mod, n); };
    for (const auto& b : mod->basis()) {
        m.set_entry({"1", b.name}, unit(b.name));
        if (b.name != "1") m.set_entry({b.name, "1"}, unit(b.name));
    }
    m.set_entry({"x", "y"}, unit("xy"));
    m.set_entry({"y", "x"}, Scalar(-1) * unit("xy"));
    return DgcaPresentation(ChainComplex(mod, d), m);
}

// Exterior algebra on three degree-1 generators, zero differential.
inline DgcaPresentation exterior_three() {
    std::vector<GradedModule::BasisElement> basis = {{"1", 0},  {"x", 1},  {"y", 1},  {"z", 1},
                                                     {"xy", 2}, {"xz", 2}, {"yz", 2}, {"xyz", 3}};
    auto mod = std::make_shared<GradedModule>("ext3", basis);
    MultilinearMap d(mod, mod, 1, 1);
    MultilinearMap m(mod, mod, 2, 0);
    // Multiply monomials in the letters x < y < z with sign of sorting.
    auto letters = [](const std::string& n) -> std::string { return n == "1" ? "" : n; };
    for (const auto& a : mod->basis()) {
        for (const auto& b : mod->basis()) {
            std::string word = letters(a.name) + letters(b.name);
            std::vector<char> v(word.begin(), word.end());
            int swaps = 0;
            bool dead = false;
            for (std::size_t i = 0; i < v.size() && !dead; ++i) {
                for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
                    if (v[j] > v[j + 1]) {
                        std::swap(v[j], v[j + 1]);
                        ++swaps;
                    }
                }
            }
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                if (v[i] == v[i + 1]) dead = true;
            }
            if (dead) continue;
            std::string out(v.begin(), v.end());
            if (out.empty()) out = "1";
            m.set_entry({a.name, b.name},
                        Scalar(swaps % 2 == 0 ? 1 : -1) * Vector::basis(mod, out));
        }
    }
    return DgcaPresentation(ChainComplex(mod, d), m);
}

// {1, a, b} with da = b; products of two non-unit elements vanish.
inline DgcaPresentation acyclic_line() {
    auto mod = std::make_shared<GradedModule>(
        "line", std::vector<GradedModule::BasisElement>{{"1", 0}, {"a", 0}, {"b", 1}});
    MultilinearMap d(mod, mod, 1, 1);
    d.set_entry({"a"}, Vector::basis(mod, "b"));
    MultilinearMap m(mod, mod, 2, 0);
    for (const auto& x : mod->basis()) {
        m.set_entry({"1", x.name}, Vector::basis(mod, x.name));
        if (x.name != "1") m.set_entry({x.name, "1"}, Vector::basis(mod, x.name));
    }
    return DgcaPresentation(ChainComplex(mod, d), m);
}

// Simplicial cochains of the interval with the cup product: associative,
// not graded-commutative.
inline AInftyStructure cup_interval() {
    auto mod = std::make_shared<GradedModule>(
        "cup", std::vector<GradedModule::BasisElement>{{"v0", 0}, {"v1", 0}, {"e", 1}});
    MultilinearMap d(mod, mod, 1, 1);
    d.set_entry({"v0"}, Scalar(-1) * Vector::basis(mod, "e"));
    d.set_entry({"v1"}, Vector::basis(mod, "e"));
    MultilinearMap m(mod, mod, 2, 0);
    m.set_entry({"v0", "v0"}, Vector::basis(mod, "v0"));
    m.set_entry({"v1", "v1"}, Vector::basis(mod, "v1"));
    m.set_entry({"v0", "e"}, Vector::basis(mod, "e"));
    m.set_entry({"e", "v1"}, Vector::basis(mod, "e"));
    AInftyStructure s(ChainComplex(mod, d), 4);
    s.set_operation(m);
    return s;
}

// Truncated polynomial algebra Q[s]/(s^4), all in degree 0, zero
// differential. Commutative and sign-free: good for symbolic displays.
inline DgcaPresentation poly_trunc() {
    auto mod = std::make_shared<GradedModule>(
        "poly", std::vector<GradedModule::BasisElement>{{"1", 0}, {"s", 0}, {"s2", 0}, {"s3", 0}});
    MultilinearMap d(mod, mod, 1, 1);
    MultilinearMap m(mod, mod, 2, 0);
    auto power = [](const std::string& n) { return n == "1" ? 0 : n == "s" ? 1 : n == "s2" ? 2 : 3; };
    auto name = [](int k) {
        return k == 0 ? std::string("1") : k == 1 ? std::string("s") : "s" + std::to_string(k);
    };
    for (const auto& a : mod->basis()) {
        for (const auto& b : mod->basis()) {
            int k = power(a.name) + power(b.name);
            if (k <= 3) m.set_entry({a.name, b.name}, Vector::basis(mod, name(k)));
        }
    }
    return DgcaPresentation(ChainComplex(mod, d), m);
}

// Simplicial cochains of the interval subdivided at a midpoint w, with the
// front-face/back-face cup product. Associative, not commutative.
inline AInftyStructure cup_subdivided() {
    auto mod = std::make_shared<GradedModule>(
        "cup2", std::vector<GradedModule::BasisElement>{
                    {"v0", 0}, {"w", 0}, {"v1", 0}, {"e1", 1}, {"e2", 1}});
    MultilinearMap d(mod, mod, 1, 1);
    d.set_entry({"v0"}, Scalar(-1) * Vector::basis(mod, "e1"));
    d.set_entry({"w"}, Vector::basis(mod, "e1") - Vector::basis(mod, "e2"));
    d.set_entry({"v1"}, Vector::basis(mod, "e2"));
    MultilinearMap m(mod, mod, 2, 0);
    m.set_entry({"v0", "v0"}, Vector::basis(mod, "v0"));
    m.set_entry({"w", "w"}, Vector::basis(mod, "w"));
    m.set_entry({"v1", "v1"}, Vector::basis(mod, "v1"));
    m.set_entry({"v0", "e1"}, Vector::basis(mod, "e1"));
    m.set_entry({"e1", "w"}, Vector::basis(mod, "e1"));
    m.set_entry({"w", "e2"}, Vector::basis(mod, "e2"));
    m.set_entry({"e2", "v1"}, Vector::basis(mod, "e2"));
    AInftyStructure s(ChainComplex(mod, d), 4);
    s.set_operation(m);
    return s;
}

// Contraction of the acyclic line onto the span of its unit.
inline Contraction contraction_line_to_point() {
    auto line = acyclic_line();
    auto pt = std::make_shared<GradedModule>(
        "pt", std::vector<GradedModule::BasisElement>{{"u", 0}});
    ChainComplex small(pt, MultilinearMap(pt, pt, 1, 1));
    MultilinearMap i(pt, line.module(), 1, 0);
    i.set_entry({"u"}, Vector::basis(line.module(), "1"));
    MultilinearMap p(line.module(), pt, 1, 0);
    p.set_entry({"1"}, Vector::basis(pt, "u"));
    MultilinearMap h(line.module(), line.module(), 1, -1);
    h.set_entry({"b"}, Scalar(-1) * Vector::basis(line.module(), "a"));
    return Contraction(line.complex, small, i, p, h, true);
}

// Contraction of the interval cup cochains onto a point (its cohomology).
inline Contraction contraction_cup_to_point() {
    auto cup = cup_interval();
    auto mod = cup.module();
    auto pt = std::make_shared<GradedModule>(
        "pt", std::vector<GradedModule::BasisElement>{{"u", 0}});
    ChainComplex small(pt, MultilinearMap(pt, pt, 1, 1));
    MultilinearMap i(pt, mod, 1, 0);
    i.set_entry({"u"}, Vector::basis(mod, "v0") + Vector::basis(mod, "v1"));
    MultilinearMap p(mod, pt, 1, 0);
    p.set_entry({"v0"}, Vector::basis(pt, "u"));
    MultilinearMap h(mod, mod, 1, -1);
    h.set_entry({"e"}, Scalar(-1) * Vector::basis(mod, "v1"));
    return Contraction(cup.complex(), small, i, p, h, true);
}

// Contraction of the subdivided-interval cup cochains onto the coarse
// interval cochains: p sums fine duals over subcells, i includes, h flows.
inline Contraction contraction_subdiv_to_coarse() {
    auto fine = cup_subdivided();
    auto coarse = cup_interval();
    auto F = fine.module();
    auto C = coarse.module();
    MultilinearMap i(C, F, 1, 0);
    i.set_entry({"v0"}, Vector::basis(F, "v0"));
    i.set_entry({"v1"}, Vector::basis(F, "v1") + Vector::basis(F, "w"));
    i.set_entry({"e"}, Vector::basis(F, "e1"));
    MultilinearMap p(F, C, 1, 0);
    p.set_entry({"v0"}, Vector::basis(C, "v0"));
    p.set_entry({"v1"}, Vector::basis(C, "v1"));
    p.set_entry({"e1"}, Vector::basis(C, "e"));
    p.set_entry({"e2"}, Vector::basis(C, "e"));
    MultilinearMap h(F, F, 1, -1);
    h.set_entry({"e2"}, Vector::basis(F, "w"));
    return Contraction(fine.complex(), coarse.complex(), i, p, h, true);
}

inline MultilinearMap random_map(const ModulePtr& mod, std::size_t arity, int degree,
                                 std::mt19937& rng) {
    MultilinearMap f(mod, mod, arity, degree);
    std::uniform_int_distribution<int> coin(-2, 2);
    for (const auto& tuple : basis_tuples(*mod, arity)) {
        int want = degree;
        for (const auto& n : tuple) want += mod->degree_of(n);
        Vector image(mod);
        for (const auto& b : mod->basis()) {
            if (b.degree != want) continue;
            image.add(b.name, coin(rng));
        }
        if (!image.is_zero()) f.set_entry(tuple, image);
    }
    return f;
}

}  // namespace cinfty::fixtures
