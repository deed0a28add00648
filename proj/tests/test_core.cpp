#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cinfty/bar.hpp"
#include "cinfty/linalg.hpp"
#include "cinfty/multilinear.hpp"
#include "cinfty/structures.hpp"

#include "fixtures.hpp"

#include <random>

using namespace cinfty;
using namespace cinfty::fixtures;



TEST_CASE("koszul_sign basic examples") {
    CHECK(koszul_sign({1, 0}, {1, 1}) == Scalar(-1));
    CHECK(koszul_sign({0, 1, 2}, {3, 7, 2}) == Scalar(1));
    // cycle placing (a1,a2,a3) as (a3,a1,a2), degrees 1,1,2
    CHECK(koszul_sign({2, 0, 1}, {1, 1, 2}) == Scalar(1));
    CHECK_THROWS_AS(koszul_sign({0, 1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(koszul_sign({0, 0}, {1, 1}), std::invalid_argument);
}

TEST_CASE("koszul_sign cocycle property, brute force k <= 5") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> deg(0, 3);
    for (std::size_t k = 2; k <= 5; ++k) {
        std::vector<std::size_t> sigma(k), tau(k);
        for (std::size_t i = 0; i < k; ++i) sigma[i] = tau[i] = i;
        for (int trial = 0; trial < 40; ++trial) {
            std::shuffle(sigma.begin(), sigma.end(), rng);
            std::shuffle(tau.begin(), tau.end(), rng);
            std::vector<int> degrees(k);
            for (auto& d : degrees) d = deg(rng);
            // composite: first permute by tau, then by sigma
            std::vector<std::size_t> comp(k);
            for (std::size_t i = 0; i < k; ++i) comp[i] = tau[sigma[i]];
            std::vector<int> tau_degrees(k);
            for (std::size_t i = 0; i < k; ++i) tau_degrees[i] = degrees[tau[i]];
            CHECK(koszul_sign(comp, degrees) ==
                  koszul_sign(sigma, tau_degrees) * koszul_sign(tau, degrees));
        }
    }
}

TEST_CASE("tensor_apply Koszul signs") {
    auto mod = std::make_shared<GradedModule>(
        "pq", std::vector<GradedModule::BasisElement>{{"p", 1}, {"q", 2}});
    MultilinearMap d(mod, mod, 1, 1);
    d.set_entry({"p"}, Vector::basis(mod, "q"));
    MultilinearMap id = MultilinearMap::identity(mod);
    Vector p = Vector::basis(mod, "p");

    auto r1 = tensor_apply({id, d}, {p, p});  // (1 x d)(p x p) = -(p x q)
    CHECK(r1.coeffs.size() == 1);
    CHECK(r1.coeffs.at({"p", "q"}) == Scalar(-1));

    auto r2 = tensor_apply({d, id}, {p, p});  // (d x 1)(p x p) = q x p
    CHECK(r2.coeffs.at({"q", "p"}) == Scalar(1));

    auto r3 = tensor_apply({id, id}, {p, p});
    CHECK(r3.coeffs.at({"p", "p"}) == Scalar(1));
}

TEST_CASE("compose_at unfolds and respects identity") {
    auto ext = exterior_two();
    const auto& mod = ext.module();
    const auto& m = ext.product;
    auto mm = compose_at(m, m, 1);
    Vector x = Vector::basis(mod, "x"), y = Vector::basis(mod, "y"),
           one = Vector::basis(mod, "1");
    CHECK(mm.apply({x, y, one}) == m.apply({m.apply({x, y}), one}));
    CHECK(mm.apply({one, x, y}) == m.apply({m.apply({one, x}), y}));

    MultilinearMap id = MultilinearMap::identity(mod);
    CHECK(compose_at(id, m, 1) == m);
    CHECK(compose_at(m, id, 2) == m);
}

TEST_CASE("compose_at is operadically associative on random maps") {
    auto mod = std::make_shared<GradedModule>(
        "r", std::vector<GradedModule::BasisElement>{{"e0", 0}, {"e1", 1}, {"f1", 1}});
    std::mt19937 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_map(mod, 2, 0, rng);
        auto g = random_map(mod, 2, 1, rng);
        auto h = random_map(mod, 1, 1, rng);
        // (f o_1 g) o_1 h == f o_1 (g o_1 h)
        CHECK(compose_at(compose_at(f, g, 1), h, 1) == compose_at(f, compose_at(g, h, 1), 1));
        // disjoint slots commute up to the Koszul sign of swapping g and h
        auto lhs = compose_at(compose_at(f, g, 1), h, 3);
        auto rhs = compose_at(compose_at(f, h, 2), g, 1);
        if (g.degree() % 2 == 0 || h.degree() % 2 == 0) {
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("map arithmetic") {
    auto ext = exterior_two();
    auto f = ext.product;
    auto zero = f - f;
    CHECK(zero.is_zero());
    CHECK(f + Scalar(-1) * f == zero);
    CHECK(map_equal(f, f));
    auto g = Scalar(3) / Scalar(2) * (Scalar(2) / Scalar(3) * f);
    CHECK(g == f);
}

TEST_CASE("check_complex") {
    auto mod = std::make_shared<GradedModule>(
        "c2", std::vector<GradedModule::BasisElement>{{"x", 0}, {"y", 1}});
    MultilinearMap good(mod, mod, 1, 1);
    good.set_entry({"x"}, Vector::basis(mod, "y"));
    CHECK(check_complex(ChainComplex(mod, good)).passed);

    auto mod2 = std::make_shared<GradedModule>(
        "c2b", std::vector<GradedModule::BasisElement>{{"x", 0}, {"y", 1}, {"z", 2}});
    MultilinearMap bad(mod2, mod2, 1, 1);
    bad.set_entry({"x"}, Vector::basis(mod2, "y"));
    bad.set_entry({"y"}, Vector::basis(mod2, "z"));
    auto report = check_complex(ChainComplex(mod2, bad));
    CHECK_FALSE(report.passed);
    CHECK(report.violations.front().inputs == std::vector<std::string>{"x"});
}

TEST_CASE("dgca fixtures satisfy the axioms") {
    CHECK(check_dgca(exterior_two()).passed);
    CHECK(check_dgca(acyclic_line()).passed);
}

TEST_CASE("enumerate_shuffles") {
    CHECK(enumerate_shuffles(1, 1).size() == 2);
    CHECK(enumerate_shuffles(2, 1).size() == 3);
    CHECK(enumerate_shuffles(2, 2).size() == 6);
    CHECK(enumerate_shuffles(3, 2).size() == 10);
    CHECK_THROWS_AS(enumerate_shuffles(5, 4), std::length_error);
    // order preservation within each block
    for (const auto& perm : enumerate_shuffles(3, 2)) {
        std::vector<std::size_t> pos(5);
        for (std::size_t p = 0; p < 5; ++p) pos[perm[p]] = p;
        CHECK(pos[0] < pos[1]);
        CHECK(pos[1] < pos[2]);
        CHECK(pos[3] < pos[4]);
    }
}

TEST_CASE("shuffle_defect detects non-commutativity") {
    auto ext = exterior_two();
    CHECK(shuffle_defect(ext.product, 1, 1).is_zero());

    auto cup = cup_interval();
    auto defect = shuffle_defect(cup.operation(2), 1, 1);
    CHECK_FALSE(defect.is_zero());
    // (1,1) defect is the graded commutator
    CHECK(defect.value({"v0", "e"}) == Vector::basis(cup.module(), "e"));

    auto zero = MultilinearMap::zero(ext.module(), ext.module(), 2, 0);
    CHECK(shuffle_defect(zero, 1, 1).is_zero());
}

TEST_CASE("check_stasheff on dgcas and a non-associative mutation") {
    CHECK(check_stasheff(AInftyStructure::from_dgca(exterior_two()), 4).passed);
    CHECK(check_stasheff(AInftyStructure::from_dgca(acyclic_line()), 4).passed);
    CHECK(check_stasheff(cup_interval(), 4).passed);

    auto mod = std::make_shared<GradedModule>(
        "na", std::vector<GradedModule::BasisElement>{{"e1", 0}, {"e2", 0}, {"e3", 0}});
    MultilinearMap d(mod, mod, 1, 1);
    MultilinearMap m(mod, mod, 2, 0);
    m.set_entry({"e1", "e1"}, Vector::basis(mod, "e2"));
    m.set_entry({"e2", "e1"}, Vector::basis(mod, "e3"));
    AInftyStructure bad(ChainComplex(mod, d), 4);
    bad.set_operation(m);
    auto report = check_stasheff(bad, 3);
    CHECK_FALSE(report.passed);
}

TEST_CASE("check_cinfty") {
    CHECK(check_cinfty(AInftyStructure::from_dgca(exterior_two()), 4).passed);
    CHECK_FALSE(check_cinfty(cup_interval(), 2).passed);
}

TEST_CASE("hom_boundary") {
    auto line = acyclic_line();
    const auto& mod = line.module();
    const auto& d = line.complex.differential;

    // chain map (the identity) has zero boundary
    CHECK(hom_boundary(MultilinearMap::identity(mod), d, d).is_zero());

    // boundary of a boundary vanishes for random arity-2 maps
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_map(mod, 2, 0, rng);
        CHECK(hom_boundary(hom_boundary(f, d, d), d, d).is_zero());
        auto g = random_map(mod, 2, -1, rng);
        CHECK(hom_boundary(hom_boundary(g, d, d), d, d).is_zero());
    }
}

TEST_CASE("morphism_defect for a chain map and a non-multiplicative p1") {
    auto ext = exterior_two();
    auto line = acyclic_line();
    auto src = AInftyStructure::from_dgca(line);
    auto tgt = AInftyStructure::from_dgca(line);

    // p1 = identity is a dgca map: all defects vanish
    AInftyMorphism strict(src, tgt, 4);
    strict.set_component(MultilinearMap::identity(line.module()));
    CHECK(morphism_defect(strict, 1).is_zero());
    CHECK(morphism_defect(strict, 2).is_zero());
    CHECK(check_cinfty_morphism(strict, 3).passed);

    // p1 that kills products but fixes 1, a, b: defect at n=2 is
    // m_B(p1 x p1) - p1 m_A
    MultilinearMap p1(line.module(), line.module(), 1, 0);
    p1.set_entry({"a"}, Vector::basis(line.module(), "a"));
    p1.set_entry({"b"}, Vector::basis(line.module(), "b"));
    AInftyMorphism lossy(src, tgt, 4);
    lossy.set_component(p1);
    CHECK(morphism_defect(lossy, 1).is_zero());
    auto defect = morphism_defect(lossy, 2);
    CHECK_FALSE(defect.is_zero());
    auto expected = compose_multi(line.product, {p1, p1});
    MultilinearMap pm = compose_at(p1, line.product, 1);
    expected -= pm;
    CHECK(defect == expected);
}

TEST_CASE("exact linear algebra") {
    RationalMatrix m(3, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 1) = 1;
    m.at(1, 2) = Scalar(1) / Scalar(3);
    m.at(2, 0) = 2;
    m.at(2, 1) = 4;
    CHECK(m.rank() == 2);
    CHECK(fraction_free_rank(m) == 2);
    CHECK(m.kernel_basis().size() == 1);
    auto x = m.solve({Scalar(1), Scalar(0), Scalar(2)});
    REQUIRE(x.has_value());
    // residual check
    for (std::size_t r = 0; r < 3; ++r) {
        Scalar acc = 0;
        for (std::size_t c = 0; c < 3; ++c) acc += m.at(r, c) * (*x)[c];
        CHECK(acc == (r == 0 ? Scalar(1) : r == 2 ? Scalar(2) : Scalar(0)));
    }
}
