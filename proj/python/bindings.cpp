#include "sgnmod/elliptic.hpp"
#include "sgnmod/errors.hpp"
#include "sgnmod/modulation.hpp"
#include "sgnmod/scan.hpp"
#include "sgnmod/sgn_solver.hpp"
#include "sgnmod/traveling_wave.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sgnmod;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) {
        throw py::value_error("expected a 1-D array");
    }
    return std::vector<double>(a.data(), a.data() + a.size());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cnoidal waves, Whitham modulation analysis and SGN simulations";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<DegeneratePencilError>(m, "DegeneratePencilError", PyExc_ArithmeticError);

    auto ell = m.def_submodule("elliptic", "complete elliptic integrals (modulus k, not m = k^2)");
    ell.def("ellip_K", &elliptic::ellip_K, py::arg("k"));
    ell.def("ellip_E", &elliptic::ellip_E, py::arg("k"));
    ell.def("ellip_Pi", &elliptic::ellip_Pi, py::arg("n"), py::arg("k"));
    ell.def(
        "ellip_derivatives",
        [](double n, double k) {
            const auto d = elliptic::ellip_derivatives(n, k);
            return py::dict(py::arg("dK_dk") = d.dK_dk, py::arg("dE_dk") = d.dE_dk,
                            py::arg("dPi_dn") = d.dPi_dn, py::arg("dPi_dk") = d.dPi_dk);
        },
        py::arg("n"), py::arg("k"));

    py::class_<RootTriple>(m, "RootTriple")
        .def(py::init([](double h0, double h1, double h2) {
                 RootTriple r{h0, h1, h2};
                 r.validate();
                 return r;
             }),
             py::arg("h0"), py::arg("h1"), py::arg("h2"))
        .def_readonly("h0", &RootTriple::h0)
        .def_readonly("h1", &RootTriple::h1)
        .def_readonly("h2", &RootTriple::h2)
        .def("scaled", &RootTriple::scaled)
        .def("__repr__", [](const RootTriple& r) {
            return "RootTriple(" + std::to_string(r.h0) + ", " + std::to_string(r.h1) + ", " +
                   std::to_string(r.h2) + ")";
        });

    py::class_<WaveConstants>(m, "WaveConstants")
        .def_readonly("g", &WaveConstants::g)
        .def_readonly("m", &WaveConstants::m)
        .def_readonly("i", &WaveConstants::i)
        .def_readonly("epsilon", &WaveConstants::epsilon)
        .def_readonly("I1", &WaveConstants::I1)
        .def_readonly("I2", &WaveConstants::I2)
        .def_readonly("I3", &WaveConstants::I3)
        .def_readonly("sign_m", &WaveConstants::sign_m);

    m.def("constants_from_roots", &constants_from_roots, py::arg("roots"), py::arg("g") = 10.0,
          py::arg("sign_m") = -1);
    m.def("oscillation_rhs", &oscillation_rhs, py::arg("h"), py::arg("constants"));
    m.def("wavelength", &wavelength, py::arg("roots"));
    m.def("averaged_h", &averaged_h, py::arg("roots"));
    m.def("averaged_hinv", &averaged_hinv, py::arg("roots"));
    m.def(
        "average",
        [](const std::function<double(double)>& f, const RootTriple& roots, double tol) {
            return average(f, roots, tol);
        },
        py::arg("f"), py::arg("roots"), py::arg("rel_tol") = 1e-12);

    py::class_<CnoidalWave>(m, "CnoidalWave")
        .def_readonly("roots", &CnoidalWave::roots)
        .def_readonly("constants", &CnoidalWave::constants)
        .def_readonly("alpha", &CnoidalWave::alpha)
        .def_readonly("k", &CnoidalWave::k)
        .def_readonly("L", &CnoidalWave::L)
        .def_readonly("D", &CnoidalWave::D)
        .def(
            "profile",
            [](const CnoidalWave& w, py::array_t<double> xi) {
                return py::vectorize([&w](double x) { return profile(w, x); })(xi);
            },
            py::arg("xi"));

    m.def("make_cnoidal_wave",
          py::overload_cast<const RootTriple&, double, int>(&make_cnoidal_wave), py::arg("roots"),
          py::arg("g") = 10.0, py::arg("sign_m") = -1);

    py::class_<ModulationState>(m, "ModulationState")
        .def(py::init([](double D, double h0, double h1, double h2, double g, int sign_m) {
                 ModulationState s;
                 s.D = D;
                 s.h0 = h0;
                 s.h1 = h1;
                 s.h2 = h2;
                 s.g = g;
                 s.sign_m = sign_m;
                 return s;
             }),
             py::arg("D"), py::arg("h0"), py::arg("h1"), py::arg("h2"), py::arg("g") = 10.0,
             py::arg("sign_m") = -1)
        .def_static("with_mean_velocity", &ModulationState::with_mean_velocity, py::arg("roots"),
                    py::arg("g") = 10.0, py::arg("sign_m") = -1, py::arg("U") = 0.0)
        .def_readwrite("D", &ModulationState::D)
        .def_readonly("h0", &ModulationState::h0)
        .def_readonly("h1", &ModulationState::h1)
        .def_readonly("h2", &ModulationState::h2)
        .def("mean_velocity", &ModulationState::mean_velocity);

    m.def(
        "assemble_AB",
        [](const ModulationState& s) {
            const auto sys = assemble_AB(s);
            return py::make_tuple(sys.A, sys.B, std::vector<double>(sys.charpoly.begin(), sys.charpoly.end()));
        },
        py::arg("state"), "returns (A, B, charpoly coefficients in ascending powers)");

    py::class_<EigenClassification>(m, "EigenClassification")
        .def_readonly("roots", &EigenClassification::roots)
        .def_readonly("all_real", &EigenClassification::all_real)
        .def_readonly("distinct", &EigenClassification::distinct)
        .def_readonly("n_positive", &EigenClassification::n_positive)
        .def_readonly("n_negative", &EigenClassification::n_negative)
        .def_readonly("max_imag", &EigenClassification::max_imag)
        .def_readonly("resultant", &EigenClassification::resultant);

    m.def(
        "characteristic_eigenvalues",
        [](const ModulationState& s) { return characteristic_eigenvalues(assemble_AB(s)); },
        py::arg("state"));

    m.def(
        "scan_region",
        [](double s_min, double s_max, double tau_min, double tau_max, int grid_n, double g, int sign_m,
           unsigned threads) {
            ScanWindow w{s_min, s_max, tau_min, tau_max, grid_n, g, sign_m};
            ScanResult r;
            {
                py::gil_scoped_release release;
                r = scan_region(w, threads);
            }
            const std::size_t n = r.records.size();
            py::array_t<double> s(n), tau(n), res(n), imag(n);
            py::array_t<double> lam({n, std::size_t{4}});
            py::array_t<int> npos(n), nneg(n);
            py::array_t<bool> hyper(n);
            auto lv = lam.mutable_unchecked<2>();
            for (std::size_t j = 0; j < n; ++j) {
                const auto& rec = r.records[j];
                s.mutable_at(j) = rec.s;
                tau.mutable_at(j) = rec.tau;
                res.mutable_at(j) = rec.resultant;
                imag.mutable_at(j) = rec.max_imag;
                for (int c = 0; c < 4; ++c) {
                    lv(j, c) = rec.lambda[c];
                }
                npos.mutable_at(j) = rec.n_positive;
                nneg.mutable_at(j) = rec.n_negative;
                hyper.mutable_at(j) = rec.all_real && rec.distinct;
            }
            py::dict out;
            out["s"] = s;
            out["tau"] = tau;
            out["lambda"] = lam;
            out["max_imag"] = imag;
            out["resultant"] = res;
            out["n_positive"] = npos;
            out["n_negative"] = nneg;
            out["hyperbolic"] = hyper;
            out["failures"] = r.failures();
            out["all_hyperbolic"] = r.all_hyperbolic();
            out["resultant_sign_constant"] = r.resultant_sign_constant();
            out["transitions_per_row"] = r.transitions_per_row();
            return out;
        },
        py::arg("s_min") = 1.001, py::arg("s_max") = 100.0, py::arg("tau_min") = 0.001,
        py::arg("tau_max") = 100.0, py::arg("grid_n") = 50, py::arg("g") = 10.0, py::arg("sign_m") = -1,
        py::arg("threads") = 0u);

    py::enum_<Limiter>(m, "Limiter")
        .value("minmod", Limiter::minmod)
        .value("van_leer", Limiter::van_leer)
        .value("mc", Limiter::mc)
        .value("none", Limiter::none);

    py::class_<WaveTrainConfig>(m, "WaveTrainConfig")
        .def(py::init([](const RootTriple& roots, double g, int sign_m, int N, double a, int cpw) {
                 WaveTrainConfig c{roots, g, sign_m, N, a, cpw};
                 c.validate();
                 return c;
             }),
             py::arg("roots") = RootTriple{1.0, 1.5, 2.0}, py::arg("g") = 10.0, py::arg("sign_m") = -1,
             py::arg("N") = 5, py::arg("a") = 0.0, py::arg("cells_per_wavelength") = 400)
        .def_readonly("roots", &WaveTrainConfig::roots)
        .def_readonly("g", &WaveTrainConfig::g)
        .def_readonly("sign_m", &WaveTrainConfig::sign_m)
        .def_readonly("N", &WaveTrainConfig::N)
        .def_readonly("a", &WaveTrainConfig::a)
        .def_readonly("cells_per_wavelength", &WaveTrainConfig::cells_per_wavelength);

    py::class_<SGNField>(m, "SGNField")
        .def(py::init([](py::array_t<double> h, py::array_t<double> q, double dx, double g) {
                 SGNField f;
                 f.h = from_array(h);
                 f.q = from_array(q);
                 f.dx = dx;
                 f.g = g;
                 f.validate();
                 return f;
             }),
             py::arg("h"), py::arg("q"), py::arg("dx"), py::arg("g") = 10.0)
        .def_property_readonly("h", [](const SGNField& f) { return to_array(f.h); })
        .def_property_readonly("q", [](const SGNField& f) { return to_array(f.q); })
        .def_property_readonly("u", [](const SGNField& f) { return to_array(f.velocity()); })
        .def_property_readonly("x", [](const SGNField& f) {
            std::vector<double> x(f.n_cells());
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = f.x(i);
            }
            return to_array(x);
        })
        .def_readonly("dx", &SGNField::dx)
        .def_readonly("g", &SGNField::g)
        .def_readonly("t", &SGNField::t)
        .def_property_readonly("n_cells", &SGNField::n_cells)
        .def_property_readonly("length", &SGNField::length);

    m.def("init_wavetrain", &init_wavetrain, py::arg("config"));
    m.def("stable_dt", &stable_dt, py::arg("field"), py::arg("cfl") = 0.45);
    m.def("step", &step, py::arg("field"), py::arg("cfl") = 0.45, py::arg("limiter") = Limiter::van_leer);
    m.def(
        "integrate_to",
        [](SGNField field, double t_end, double cfl, Limiter limiter) {
            {
                py::gil_scoped_release release;
                integrate_to(field, t_end, SolverOptions{cfl, limiter});
            }
            return field;
        },
        py::arg("field"), py::arg("t_end"), py::arg("cfl") = 0.45, py::arg("limiter") = Limiter::van_leer,
        "returns a new field advanced to t_end");
    m.def(
        "diagnostics",
        [](const SGNField& f) {
            const auto d = diagnostics(f);
            return py::dict(py::arg("mass") = d.mass, py::arg("momentum") = d.momentum,
                            py::arg("energy") = d.energy);
        },
        py::arg("field"));
    m.def(
        "phase_portrait",
        [](const SGNField& f) {
            const auto pts = phase_portrait(f);
            py::array_t<double> out({pts.size(), std::size_t{2}});
            auto v = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                v(i, 0) = pts[i].h;
                v(i, 1) = pts[i].h_hdot;
            }
            return out;
        },
        py::arg("field"), "(n_cells, 2) array of (h, h*hdot)");
}
