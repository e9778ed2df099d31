#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socle/central.hpp"
#include "socle/io.hpp"

namespace py = pybind11;
using namespace socle;

namespace {

// AlgebraPtr is shared_ptr-to-const; wrap it in a value type so pybind11
// does not need a const-aware holder.
struct PyAlgebra {
    AlgebraPtr ptr;
};

ComplexMatrix to_matrix(const std::vector<std::vector<Complex>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<Complex>> from_matrix(const ComplexMatrix& m) {
    std::vector<std::vector<Complex>> rows(m.rows(), std::vector<Complex>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(pysocle, m) {
    m.doc() = "socle structure toolkit bindings";

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def_readwrite("rank_tol", &Tolerance::rank_tol)
        .def_readwrite("cluster_tol", &Tolerance::cluster_tol)
        .def_readwrite("residual_tol", &Tolerance::residual_tol);

    py::class_<PyAlgebra>(m, "Algebra")
        .def_static(
            "blocks",
            [](const std::vector<std::size_t>& sizes, const Tolerance& tol) {
                return PyAlgebra{Algebra::blocks(sizes, tol)};
            },
            py::arg("sizes"), py::arg("tol") = Tolerance{})
        .def_static(
            "structure",
            [](std::size_t dim, const std::vector<Complex>& table,
               const std::vector<Complex>& unit, const Tolerance& tol) {
                StructurePresentation pres;
                pres.dim = dim;
                pres.table = table;
                pres.unit = unit;
                return PyAlgebra{Algebra::structure(std::move(pres), tol)};
            },
            py::arg("dim"), py::arg("table"), py::arg("unit"), py::arg("tol") = Tolerance{})
        .def_property_readonly("dim", [](const PyAlgebra& a) { return a.ptr->dim(); })
        .def_property_readonly("is_blocks", [](const PyAlgebra& a) { return a.ptr->is_blocks(); })
        .def_property_readonly("sizes",
                               [](const PyAlgebra& a) {
                                   if (!a.ptr->is_blocks())
                                       throw DimensionError("structure algebra has no sizes");
                                   return a.ptr->blocks_pres().sizes;
                               })
        .def("unit", [](const PyAlgebra& a) { return a.ptr->unit(); })
        .def("basis_element",
             [](const PyAlgebra& a, std::size_t i) { return a.ptr->basis_element(i); });

    py::class_<Element>(m, "Element")
        .def_static(
            "from_coords",
            [](const PyAlgebra& alg, const std::vector<Complex>& coords) {
                return Element::from_coords(alg.ptr, coords);
            })
        .def_static(
            "from_blocks",
            [](const PyAlgebra& alg, const std::vector<std::vector<std::vector<Complex>>>& bl) {
                std::vector<ComplexMatrix> blocks;
                for (const auto& b : bl) blocks.push_back(to_matrix(b));
                return Element(alg.ptr, std::move(blocks));
            })
        .def("coords", &Element::coords)
        .def("blocks",
             [](const Element& e) {
                 std::vector<std::vector<std::vector<Complex>>> out;
                 for (const auto& b : e.blocks()) out.push_back(from_matrix(b));
                 return out;
             })
        .def("norm", &Element::norm)
        .def("commutator", &Element::commutator)
        .def("__add__", &Element::operator+)
        .def("__sub__", static_cast<Element (Element::*)(const Element&) const>(
                            &Element::operator-))
        .def("__mul__", static_cast<Element (Element::*)(const Element&) const>(
                            &Element::operator*))
        .def("__rmul__", [](const Element& e, Complex s) { return s * e; })
        .def("__neg__", static_cast<Element (Element::*)() const>(&Element::operator-));

    m.def(
        "random_element",
        [](const PyAlgebra& alg, std::uint64_t seed) { return random_element(alg.ptr, seed); },
        py::arg("alg"), py::arg("seed") = 0);

    m.def("spectrum", [](const Element& a) {
        const Spectrum sp = spectrum(a);
        return py::make_tuple(sp.values, sp.counts_are_multiplicities);
    });
    m.def("rank", &rank_of);
    m.def("spectral_rank", &spectral_rank, py::arg("a"), py::arg("samples") = 32,
          py::arg("seed") = 0);
    m.def("trace", &trace);
    m.def("multiplicity", &multiplicity);

    m.def(
        "socle_decompose",
        [](const Element& a, std::uint64_t seed) {
            const Diagonalization d = socle_decompose(a, seed);
            return py::make_tuple(d.u, d.terms);
        },
        py::arg("a"), py::arg("seed") = 0);

    py::class_<WedderburnIso>(m, "WedderburnIso")
        .def_readonly("sizes", &WedderburnIso::sizes)
        .def("map_forward", &WedderburnIso::map_forward)
        .def("map_backward", &WedderburnIso::map_backward)
        .def("target", [](const WedderburnIso& iso) { return PyAlgebra{iso.target()}; });

    m.def(
        "wedderburn_decompose",
        [](const PyAlgebra& alg, std::uint64_t seed) {
            return wedderburn_decompose(alg.ptr, seed);
        },
        py::arg("alg"), py::arg("seed") = 0);

    m.def(
        "in_commutator_space",
        [](const Element& a, std::uint64_t seed) {
            const CommutatorMembership mem = in_commutator_space(a, seed);
            return py::make_tuple(mem.member, mem.traces);
        },
        py::arg("a"), py::arg("seed") = 0);

    m.def(
        "shoda_socle",
        [](const Element& a, std::uint64_t seed) {
            const CommutatorCert cert = shoda_socle(a, seed);
            py::dict out;
            out["x"] = cert.x;
            out["y"] = cert.y;
            out["residual"] = cert.residual;
            out["rank_x"] = cert.rank_x;
            out["rank_y"] = cert.rank_y;
            return out;
        },
        py::arg("a"), py::arg("seed") = 0);

    m.def(
        "equivalence_harness",
        [](const PyAlgebra& alg, std::uint64_t seed) {
            const EquivalenceReport rep = equivalence_harness(alg.ptr, seed);
            py::dict out;
            out["central"] = rep.central.holds;
            out["square_zero"] = rep.square_zero.holds;
            out["corner_rank"] = rep.corner_rank.holds;
            out["commutators_trivial"] = rep.commutators_trivial.holds;
            out["extremal_lower"] = rep.extremal_lower.holds;
            out["extremal_upper"] = rep.extremal_upper.holds;
            out["block_count"] = rep.block_count;
            out["consistent"] = rep.consistent();
            return out;
        },
        py::arg("alg"), py::arg("seed") = 0);

    m.def(
        "gen_instance",
        [](const std::vector<std::size_t>& sizes, std::uint64_t seed, bool scramble) {
            const Instance inst = gen_instance(sizes, seed, scramble, Tolerance{});
            py::dict elems;
            for (const auto& [name, e] : inst.elements) elems[py::str(name)] = e;
            return py::make_tuple(PyAlgebra{inst.algebra}, elems);
        },
        py::arg("sizes"), py::arg("seed") = 0, py::arg("scramble") = false);

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
}
