#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "odholo/interferometer.hpp"
#include "odholo/models.hpp"

namespace py = pybind11;
using namespace odholo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "off-diagonal holonomies for noncyclic subspace evolution";

    py::register_exception<Error>(m, "OdholoError");

    // ---- numkernel
    m.def(
        "svd",
        [](const ComplexMatrix& a) {
            SvdResult r = svd(a);
            return py::make_tuple(r.u, r.singular_values, r.v);
        },
        py::arg("m"), "full SVD, M = U diag(s) V^dag");
    m.def(
        "phi_map",
        [](const ComplexMatrix& z, double cutoff) { return phi_map(z, RankTolerance{cutoff}); },
        py::arg("z"), py::arg("relative_cutoff") = 1e-10,
        "polar (partial isometry) factor of a square matrix");
    m.def(
        "numerical_rank",
        [](const ComplexMatrix& a, double cutoff) {
            return numerical_rank(a, RankTolerance{cutoff});
        },
        py::arg("m"), py::arg("relative_cutoff") = 1e-10);
    m.def("is_unitary", &is_unitary, py::arg("m"), py::arg("eps"));

    // ---- subspaces
    py::class_<Frame>(m, "Frame")
        .def(py::init<ComplexMatrix, double>(), py::arg("basis"), py::arg("ortho_tol") = 1e-10)
        .def_property_readonly("basis", &Frame::basis)
        .def_property_readonly("ambient_dim", &Frame::ambient_dim)
        .def_property_readonly("sub_dim", &Frame::sub_dim);
    m.def("projector", &projector, py::arg("frame"));

    py::class_<Decomposition>(m, "Decomposition")
        .def(py::init<std::vector<Frame>, double>(), py::arg("frames"),
             py::arg("ortho_tol") = 1e-10)
        .def_property_readonly("eta", &Decomposition::eta)
        .def_property_readonly("ambient_dim", &Decomposition::ambient_dim)
        .def_property_readonly("dims", &Decomposition::dims)
        .def("frame", &Decomposition::frame, py::arg("l"));

    py::class_<CurveFamily>(m, "CurveFamily")
        .def_property_readonly("grid", &CurveFamily::grid)
        .def_property_readonly("eta", &CurveFamily::eta)
        .def_property_readonly("ambient_dim", &CurveFamily::ambient_dim)
        .def_property_readonly("dims", &CurveFamily::dims)
        .def_property_readonly("smoothness_constant", &CurveFamily::smoothness_constant)
        .def("sample", &CurveFamily::sample, py::arg("j"))
        .def("is_cyclic", &CurveFamily::is_cyclic, py::arg("tol") = 1e-10)
        .def("refined", &CurveFamily::refined, py::arg("factor"));

    m.def("uniform_grid", &uniform_grid, py::arg("segments"));
    m.def("random_unitary_curve", &random_unitary_curve, py::arg("dims"), py::arg("grid"),
          py::arg("seed"), py::arg("cyclic") = false);

    // ---- holonomy
    py::enum_<HolonomyStatus>(m, "HolonomyStatus")
        .value("undefined", HolonomyStatus::undefined)
        .value("partial", HolonomyStatus::partial)
        .value("full", HolonomyStatus::full);

    py::class_<SigmaTable>(m, "SigmaTable")
        .def_property_readonly("eta", &SigmaTable::eta)
        .def_property_readonly("dims", &SigmaTable::dims)
        .def_property_readonly("s_tot", &SigmaTable::s_tot)
        .def("block", &SigmaTable::block, py::arg("k"), py::arg("l"))
        .def("unitarity_defect", &SigmaTable::unitarity_defect);

    m.def(
        "build_sigma_table",
        [](const CurveFamily& c, double unitarity_tol) {
            return build_sigma_table(c, TransportScheme::automatic, unitarity_tol);
        },
        py::arg("curve"), py::arg("unitarity_tol") = 1e-6);
    m.def("gamma_product", &gamma_product, py::arg("table"), py::arg("seq"));

    py::class_<HolonomyResult>(m, "HolonomyResult")
        .def_readonly("seq", &HolonomyResult::seq)
        .def_readonly("gamma", &HolonomyResult::gamma)
        .def_readonly("holonomy", &HolonomyResult::holonomy)
        .def_readonly("rank", &HolonomyResult::rank)
        .def_readonly("singular_values", &HolonomyResult::singular_values)
        .def_readonly("status", &HolonomyResult::status);

    m.def(
        "holonomy_of_order",
        [](const SigmaTable& t, const std::vector<std::size_t>& seq, double rank_rel,
           double zero_abs) {
            return holonomy_of_order(t, seq, HolonomyTolerance{rank_rel, zero_abs});
        },
        py::arg("table"), py::arg("seq"), py::arg("rank_rel") = 1e-10,
        py::arg("zero_abs") = 1e-8);
    m.def("enumerate_strict_sequences", &enumerate_strict_sequences, py::arg("eta"),
          py::arg("kappa"));

    // ---- models
    py::class_<TripodPath>(m, "TripodPath")
        .def_static("linear", &TripodPath::linear, py::arg("theta1"), py::arg("phi1"),
                    py::arg("omega") = 1.0)
        .def_static("fourier", &TripodPath::fourier, py::arg("theta_coeffs"),
                    py::arg("phi_coeffs"), py::arg("omega") = 1.0)
        .def_static("random_smooth", &TripodPath::random_smooth, py::arg("seed"),
                    py::arg("omega") = 1.0)
        .def("theta", &TripodPath::theta)
        .def("phi", &TripodPath::phi)
        .def_property_readonly("theta1", &TripodPath::theta1)
        .def_property_readonly("phi1", &TripodPath::phi1)
        .def_property_readonly("omega", &TripodPath::omega);

    m.def("tripod_hamiltonian", &tripod_hamiltonian, py::arg("path"), py::arg("s"));
    m.def("tripod_frames", &tripod_frames, py::arg("path"), py::arg("s"));
    m.def("tripod_curve", &tripod_curve, py::arg("path"), py::arg("grid"));
    m.def("tripod_z", &tripod_z, py::arg("path"));

    py::class_<TripodOracleEntry>(m, "TripodOracleEntry")
        .def_readonly("label", &TripodOracleEntry::label)
        .def_readonly("seq", &TripodOracleEntry::seq)
        .def_readonly("gamma", &TripodOracleEntry::gamma)
        .def_readonly("holonomy", &TripodOracleEntry::holonomy)
        .def_readonly("rank", &TripodOracleEntry::rank)
        .def_readonly("status", &TripodOracleEntry::status);

    py::class_<TripodOracle>(m, "TripodOracle")
        .def_readonly("z", &TripodOracle::z)
        .def_readonly("theta1", &TripodOracle::theta1)
        .def_readonly("phi1", &TripodOracle::phi1)
        .def_readonly("entries", &TripodOracle::entries)
        .def("entry", py::overload_cast<const std::string&>(&TripodOracle::entry, py::const_),
             py::arg("label"), py::return_value_policy::reference_internal);

    m.def(
        "tripod_oracle",
        [](const TripodPath& p, double rank_rel, double zero_abs) {
            return tripod_oracle(p, HolonomyTolerance{rank_rel, zero_abs});
        },
        py::arg("path"), py::arg("rank_rel") = 1e-6, py::arg("zero_abs") = 1e-6);

    // ---- interferometer
    py::enum_<Strategy>(m, "Strategy")
        .value("adiabatic", Strategy::adiabatic)
        .value("filtering", Strategy::filtering)
        .value("nonadiabatic", Strategy::nonadiabatic);

    py::class_<ProtocolResult>(m, "ProtocolResult")
        .def_readonly("p", &ProtocolResult::p)
        .def_readonly("p_closed_form", &ProtocolResult::p_closed_form)
        .def_readonly("p_ideal", &ProtocolResult::p_ideal)
        .def_readonly("cross_check_error", &ProtocolResult::cross_check_error)
        .def_readonly("post_selection_weight", &ProtocolResult::post_selection_weight);

    py::class_<ExtractResult>(m, "ExtractResult")
        .def_readonly("v_star", &ExtractResult::v_star)
        .def_readonly("v_star_block", &ExtractResult::v_star_block)
        .def_readonly("p_max", &ExtractResult::p_max)
        .def_readonly("dynamical_phase", &ExtractResult::dynamical_phase)
        .def_readonly("rank", &ExtractResult::rank)
        .def_readonly("holonomy_undefined", &ExtractResult::holonomy_undefined)
        .def_readonly("unique_on_support", &ExtractResult::unique_on_support);

    // keep the python surface to the filtering protocol, which needs no
    // callables crossing the language boundary
    m.def(
        "run_filtering_protocol",
        [](const CurveFamily& curve, const std::vector<std::size_t>& seq, std::size_t segments,
           const ComplexMatrix& v) {
            ProtocolSpec spec;
            spec.strategy = Strategy::filtering;
            spec.curve = curve;
            spec.seq = seq;
            spec.filtering_segments = segments;
            spec.v = v;
            return run_protocol(spec);
        },
        py::arg("curve"), py::arg("seq"), py::arg("segments"), py::arg("v"));
    m.def(
        "extract_filtering_holonomy",
        [](const CurveFamily& curve, const std::vector<std::size_t>& seq) {
            ProtocolSpec spec;
            spec.strategy = Strategy::filtering;
            spec.curve = curve;
            spec.seq = seq;
            spec.filtering_segments = 1;
            return extract_holonomy(spec);
        },
        py::arg("curve"), py::arg("seq"));
    m.def("random_admissible_v", &random_admissible_v, py::arg("decomposition"), py::arg("seed"));
}
