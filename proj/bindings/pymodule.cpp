// Python bindings for the main operations: building the forms fixtures,
// homotopy transfer with certification, cumulants and their
// nullhomotopies, and the partition-complex reports.

#include "cinfty/cumulants.hpp"
#include "cinfty/models.hpp"
#include "cinfty/partition_complex.hpp"
#include "cinfty/serialize.hpp"
#include "cinfty/transfer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cinfty;

namespace {

FormsModel fixture(const std::string& name, unsigned degree_bound) {
    if (name == "interval") return truncated_forms(1, degree_bound, "forms_d1");
    if (name == "delta2") return truncated_forms(2, degree_bound, "forms_d2");
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

py::dict map_entries(const MultilinearMap& f) {
    py::dict out;
    for (const auto& [inputs, image] : f.entries()) {
        std::string key;
        for (const auto& s : inputs) key += (key.empty() ? "" : ",") + s;
        out[py::str(key)] = vector_to_string(image);
    }
    return out;
}

struct TransferResult {
    AInftyStructure source;
    AInftyStructure transferred;
    AInftyMorphism morphism;
};

TransferResult run_transfer(const std::string& name, unsigned degree_bound, std::size_t arity,
                            const std::string& target) {
    auto fm = fixture(name, degree_bound);
    Contraction c = target == "point_average" ? forms_to_point_average(fm)
                                              : forms_to_cochains(fm);
    auto src = AInftyStructure::from_dgca(fm.dgca, arity);
    auto out = transfer_structure(src, c, arity, true);
    auto P = transfer_morphism(src, out, c, arity, true);
    return {src, out, P};
}

}  // namespace

PYBIND11_MODULE(_cinfty, m) {
    m.doc() = "Exact cumulant nullhomotopies and C-infinity homotopy transfer";

    py::class_<TransferResult>(m, "TransferResult")
        .def("operation", [](const TransferResult& t, std::size_t n) {
            return map_entries(t.transferred.operation(n));
        })
        .def("component", [](const TransferResult& t, std::size_t n) {
            return map_entries(t.morphism.component(n));
        })
        .def("cumulant",
             [](const TransferResult& t, std::size_t n) {
                 return map_entries(cumulant(t.morphism.component(1), t.source.operation(2),
                                             t.transferred.operation(2), n));
             })
        .def("nullhomotopy",
             [](const TransferResult& t, std::size_t n) {
                 return map_entries(nullhomotopy_from_graph(t.morphism, n));
             })
        .def("structure_json",
             [](const TransferResult& t) { return structure_to_json(t.transferred).dump(2); })
        .def("morphism_json",
             [](const TransferResult& t) { return morphism_to_json(t.morphism).dump(2); });

    m.def("transfer", &run_transfer, py::arg("fixture"), py::arg("degree_bound") = 4,
          py::arg("arity") = 4, py::arg("target") = "cochains",
          "Transfer the forms fixture; the result is certified (Stasheff, shuffle, morphism "
          "identities) during construction.");

    m.def("mobius_sum", [](std::size_t n) {
        Scalar sum = 0;
        for (const auto& pi : enumerate_partitions(n)) sum += mobius_coefficient(pi);
        return scalar_to_string(sum);
    });

    m.def("cumulant_expansion",
          [](std::size_t n) { return cumulant_expansion_to_json(n).dump(2); });

    m.def("refinement_graph_dot", [](std::size_t n) { return to_dot(build_refinement_graph(n)); });

    m.def("refinement_graph_claims",
          [](std::size_t n) { return check_graph_claims(build_refinement_graph(n)).passed; });

    m.def("cube_complex_json",
          [](std::size_t n) { return cube_complex_to_json(build_cumulant_complex(n)).dump(2); });

    m.def("betti_numbers",
          [](std::size_t n) { return cellular_homology(build_cumulant_complex(n)); });
}
