#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matgeom/errors.hpp"
#include "matgeom/grassmann.hpp"
#include "matgeom/preserver.hpp"
#include "matgeom/witness.hpp"

namespace py = pybind11;
using namespace matgeom;

namespace {

Matrix make_matrix(int q, int rows, int cols, std::vector<int> entries) {
    std::vector<Elem> e;
    for (int v : entries) {
        if (v < 0 || v >= q) throw PreconditionError("matrix entry out of range for GF(" + std::to_string(q) + ")");
        e.push_back(static_cast<Elem>(v));
    }
    return Matrix(Field::make(q), rows, cols, std::move(e));
}

std::vector<int> entries_of(const Matrix& a) { return {a.entries().begin(), a.entries().end()}; }

SpaceSpec space(int q, int m, int n) { return {Field::make(q), m, n}; }

// Field is shared as a pointer to const, which pybind11 cannot hold directly.
struct PyField {
    FieldPtr f;
};

}  // namespace

PYBIND11_MODULE(_matgeom, mod) {
    mod.doc() = "Finite-field matrix geometry";

    auto base_value = PyExc_ValueError;
    py::register_exception<PreconditionError>(mod, "PreconditionError", base_value);
    py::register_exception<SpecMismatch>(mod, "SpecMismatch", base_value);
    py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<ParseError>(mod, "ParseError", base_value);
    py::register_exception<DecomposeError>(mod, "DecomposeError", base_value);

    py::class_<PyField>(mod, "Field")
        .def_static("make", [](int q) { return PyField{Field::make(q)}; }, py::arg("q"))
        .def_property_readonly("p", [](const PyField& f) { return f.f->p(); })
        .def_property_readonly("k", [](const PyField& f) { return f.f->k(); })
        .def_property_readonly("q", [](const PyField& f) { return f.f->q(); })
        .def_property_readonly("modulus", [](const PyField& f) { return f.f->modulus(); })
        .def("add", [](const PyField& f, int a, int b) { return int(f.f->add(Elem(a), Elem(b))); })
        .def("mul", [](const PyField& f, int a, int b) { return int(f.f->mul(Elem(a), Elem(b))); })
        .def("inv", [](const PyField& f, int a) { return int(f.f->inv(Elem(a))); });

    py::class_<Matrix>(mod, "Matrix")
        .def(py::init(&make_matrix), py::arg("q"), py::arg("rows"), py::arg("cols"), py::arg("entries"))
        .def_static("from_index", [](int q, int m, int n, std::uint64_t i) { return matrix_from_index(space(q, m, n), i); })
        .def_property_readonly("q", [](const Matrix& a) { return a.field()->q(); })
        .def_property_readonly("rows", &Matrix::rows)
        .def_property_readonly("cols", &Matrix::cols)
        .def_property_readonly("entries", &entries_of)
        .def("index", [](const Matrix& a) { return matrix_index(a); })
        .def("rank", [](const Matrix& a) { return rank(a); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__repr__", [](const Matrix& a) { return "Matrix(" + to_text(a) + ")"; });

    mod.def("rank", [](const Matrix& a) { return rank(a); });
    mod.def("is_dis", &is_dis);
    mod.def("is_adjacent", &is_adjacent);
    mod.def("count_by_rank", [](int q, int m, int n, int r) { return count_by_rank(space(q, m, n), r); });

    mod.def(
        "adjacency_witness",
        [](const Matrix& a, const Matrix& b) {
            const auto rep = adjacency_witness(a, b);
            return py::make_tuple(rep.R, rep.verified);
        },
        "Returns (R, verified).");
    mod.def("separating_X", &separating_X);
    mod.def("adjacent_via_dis", [](const Matrix& a, const Matrix& b) { return adjacent_via_dis(a, b); });

    py::class_<StandardPreserver>(mod, "StandardPreserver")
        .def_readonly("T", &StandardPreserver::T)
        .def_readonly("S", &StandardPreserver::S)
        .def_readonly("R", &StandardPreserver::R)
        .def_property_readonly("sigma", [](const StandardPreserver& f) { return f.sigma.frobenius_power; })
        .def_readonly("transposed", &StandardPreserver::transposed)
        .def("__call__", [](const StandardPreserver& f, const Matrix& a) { return apply(f, a); })
        .def(py::self == py::self);

    mod.def(
        "random_preserver",
        [](int q, int m, int n, std::uint64_t seed, bool allow_transpose) {
            return random_preserver(space(q, m, n), seed, allow_transpose);
        },
        py::arg("q"), py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("allow_transpose") = true);
    mod.def("compose", &compose);
    mod.def("to_table", [](const StandardPreserver& f) { return to_table(f).image(); });
    mod.def(
        "certify_dis",
        [](int q, int m, int n, std::vector<std::uint32_t> image) {
            const auto cert = certify_dis(MapTable(space(q, m, n), std::move(image)));
            py::object cex = py::none();
            if (cert.counterexample) cex = py::make_tuple(cert.counterexample->first, cert.counterexample->second);
            return py::make_tuple(cert.preserving, cex);
        },
        "Exhaustive check; returns (preserving, counterexample or None).");
    mod.def("decompose", [](int q, int m, int n, std::vector<std::uint32_t> image) {
        return decompose(MapTable(space(q, m, n), std::move(image)));
    });

    py::class_<GrassmannPoint>(mod, "GrassmannPoint")
        .def_property_readonly("basis", &GrassmannPoint::basis)
        .def("at_infinity", [](const GrassmannPoint& u) { return is_at_infinity(u); })
        .def("to_matrix", [](const GrassmannPoint& u) { return to_matrix(u); })
        .def("adjacent", &is_adjacent_points)
        .def("complementary", &is_complementary)
        .def(py::self == py::self);
    mod.def("from_matrix", &from_matrix);
    mod.def("enumerate_points", [](int q, int m, int n) { return enumerate_points({Field::make(q), m, n}); });
    mod.def("grassmann_point_count", [](int q, int m, int n) { return GrassmannSpec{Field::make(q), m, n}.point_count(); });
}
