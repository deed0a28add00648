#pragma once

// Canonical JSON serialization for the core objects, plus the simplicial
// complex loader. All emitters use insertion-ordered JSON with sorted
// entries, so re-serializing the same object is byte-identical.

#include "cinfty/cumulants.hpp"
#include "cinfty/partition_complex.hpp"
#include "cinfty/structures.hpp"

#include <json.hpp>

namespace cinfty {

using Json = nlohmann::ordered_json;

inline Json module_to_json(const GradedModule& m) {
    Json basis = Json::array();
    for (const auto& b : m.basis()) {
        basis.push_back(Json{{"name", b.name}, {"degree", b.degree}});
    }
    return Json{{"name", m.name()}, {"basis", basis}};
}

inline Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& [name, c] : v.coeffs()) {
        out.push_back(Json{{"name", name}, {"coeff", scalar_to_string(c)}});
    }
    return out;
}

inline Json map_to_json(const MultilinearMap& f) {
    Json entries = Json::array();
    for (const auto& [inputs, image] : f.entries()) {
        entries.push_back(Json{{"inputs", inputs}, {"output", vector_to_json(image)}});
    }
    return Json{{"source", f.source()->name()},
                {"target", f.target()->name()},
                {"arity", f.arity()},
                {"degree", f.degree()},
                {"entries", entries}};
}

inline Json report_to_json(const CheckReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back(Json{{"inputs", v.inputs}, {"defect_vector", v.defect}});
    }
    return Json{{"check", r.check},
                {"arity_range", r.arity_range},
                {"status", r.passed ? "passed" : "failed"},
                {"violations", violations}};
}

inline Json structure_to_json(const AInftyStructure& a) {
    Json ops = Json::array();
    for (std::size_t n = 1; n <= a.cutoff(); ++n) {
        if (a.has_operation(n)) ops.push_back(map_to_json(a.operation(n)));
    }
    return Json{{"module", module_to_json(*a.module())}, {"m", ops}};
}

inline Json morphism_to_json(const AInftyMorphism& p) {
    Json comps = Json::array();
    for (std::size_t n = 1; n <= p.cutoff(); ++n) {
        if (p.has_component(n)) comps.push_back(map_to_json(p.component(n)));
    }
    return Json{{"source", module_to_json(*p.source().module())},
                {"target", module_to_json(*p.target().module())},
                {"p", comps}};
}

// The symbolic expansion of k_n: one row per partition, with the Mobius
// coefficient (|pi|-1)!(-1)^{|pi|-1} and the term written as a product of
// per-block moments.
inline Json cumulant_expansion_to_json(std::size_t n) {
    Json rows = Json::array();
    for (const auto& pi : enumerate_partitions(n)) {
        std::string term;
        for (const auto& b : pi.blocks) {
            term += "e(";
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (i) term += "*";
                term += "a" + std::to_string(b[i]);
            }
            term += ")";
        }
        rows.push_back(Json{{"partition", pi.to_string()},
                            {"coefficient", scalar_to_string(mobius_coefficient(pi))},
                            {"term_signature", term}});
    }
    return rows;
}

inline Json cube_complex_to_json(const CubeComplex& cx) {
    Json cells = Json::array();
    for (std::size_t d = 0; d < cx.cells.size(); ++d) {
        for (const auto& cell : cx.cells[d]) {
            cells.push_back(Json{{"dim", d}, {"signature", cell.signature()}});
        }
    }
    Json boundary = Json::array();
    for (std::size_t d = 1; d < cx.cells.size(); ++d) {
        for (std::size_t c = 0; c < cx.cells[d].size(); ++c) {
            for (std::size_t r = 0; r < cx.cells[d - 1].size(); ++r) {
                const Scalar& coeff = cx.boundary[d].at(r, c);
                if (coeff == 0) continue;
                boundary.push_back(Json{{"from", cx.cells[d][c].signature()},
                                        {"to", cx.cells[d - 1][r].signature()},
                                        {"coeff", scalar_to_string(coeff)}});
            }
        }
    }
    return Json{{"cells", cells}, {"boundary", boundary}, {"betti", cellular_homology(cx)}};
}

// {vertices: [...], simplices: [[...]]}; faces are closed over
// automatically by the SimplicialComplex constructor.
inline SimplicialComplex simplicial_complex_from_json(const Json& j) {
    if (!j.contains("vertices") || !j.contains("simplices")) {
        throw std::invalid_argument("simplicial complex JSON needs 'vertices' and 'simplices'");
    }
    std::size_t nv = j.at("vertices").size();
    std::vector<std::vector<std::size_t>> top;
    for (const auto& s : j.at("simplices")) {
        top.push_back(s.get<std::vector<std::size_t>>());
    }
    return SimplicialComplex(nv, std::move(top));
}

}  // namespace cinfty
