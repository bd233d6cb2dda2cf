#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/density_io.hpp"
#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"
#include "fermidiscord/lmg.hpp"

namespace py = pybind11;
using namespace fermidiscord;

namespace {

OrbitalLabel label(py::tuple t) {
  if (t.size() != 2) throw InvalidInput("orbital label must be (sigma, m)");
  return {t[0].cast<int>(), t[1].cast<int>()};
}

Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidInput("state vector has zero norm");
  const Eigen::VectorXcd v = psi / n;
  return v * v.adjoint();
}

int mode_count_for(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw InvalidInput("dimension is not a power of two");
  return n;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fermionic orbital discord: two-orbital states, mean-field and exact models";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<TwoOrbitalRDM>(m, "TwoOrbitalRDM")
      .def(py::init<double, double, double, double, Complex, Complex>(), py::arg("rho1"),
           py::arg("rho2"), py::arg("rho3"), py::arg("rho4"), py::arg("alpha") = Complex{},
           py::arg("gamma_off") = Complex{})
      .def_property_readonly("populations", &TwoOrbitalRDM::populations)
      .def_property_readonly("alpha", &TwoOrbitalRDM::alpha)
      .def_property_readonly("gamma_off", &TwoOrbitalRDM::gamma_off)
      .def("matrix", &TwoOrbitalRDM::matrix)
      .def("eigenvalues", [](const TwoOrbitalRDM& r) { return eigenvalues(r); });

  m.def("discord", &discord, py::arg("rdm"));
  m.def("mutual_information", &mutual_information, py::arg("rdm"));
  m.def("classical_correlation", &classical_correlation, py::arg("rdm"));
  m.def("entropy", py::overload_cast<const TwoOrbitalRDM&>(&entropy), py::arg("rdm"));

  py::class_<DensitySet>(m, "DensitySet")
      .def_readonly("omega", &DensitySet::omega)
      .def_readonly("gamma", &DensitySet::gamma)
      .def_readonly("kappa", &DensitySet::kappa)
      .def_readonly("two_body_diag", &DensitySet::two_body_diag)
      .def("to_json", [](const DensitySet& d) { return density_to_json(d); });

  m.def("make_density_set", &make_density_set, py::arg("gamma"), py::arg("kappa"),
        py::arg("two_body_diag"));
  m.def("parse_density_json", &parse_density_json, py::arg("text"));
  m.def("assemble_rdm", &assemble_rdm, py::arg("densities"), py::arg("i"), py::arg("j"));
  m.def("all_pairs_discord", &all_pairs_discord, py::arg("densities"), py::arg("threads") = 0);
  m.def("qp_vacuum_two_body", &qp_vacuum_two_body, py::arg("gamma"), py::arg("kappa"));
  m.def(
      "natural_orbitals",
      [](const Eigen::MatrixXcd& gamma) {
        const auto no = natural_orbitals(gamma);
        return py::make_tuple(no.p, no.basis);
      },
      py::arg("gamma"));

  py::class_<AgassiModelSpec>(m, "AgassiModelSpec")
      .def(py::init([](int omega, double chi, double sigma, double epsilon) {
             AgassiModelSpec s;
             s.omega = omega;
             s.chi = chi;
             s.sigma = sigma;
             s.epsilon = epsilon;
             s.validate();
             return s;
           }),
           py::arg("omega") = 20, py::arg("chi") = 0.0, py::arg("sigma") = 0.0,
           py::arg("epsilon") = 1.0)
      .def_readonly("omega", &AgassiModelSpec::omega)
      .def_readonly("chi", &AgassiModelSpec::chi)
      .def_readonly("sigma", &AgassiModelSpec::sigma)
      .def_readonly("epsilon", &AgassiModelSpec::epsilon)
      .def("sigma0", &AgassiModelSpec::sigma0);

  m.def(
      "classify_phase",
      [](const AgassiModelSpec& s) {
        const auto p = classify_phase(s);
        return py::make_tuple(to_string(p.phase), p.phi, p.alpha);
      },
      py::arg("spec"), "Returns (phase, phi, alpha).");
  m.def("hfb_densities", &hfb_densities, py::arg("spec"));
  m.def("discord_h", &discord_h, py::arg("x"));
  m.def(
      "discord_pair",
      [](const AgassiModelSpec& s, py::tuple a, py::tuple b) {
        return discord_pair(s, label(a), label(b));
      },
      py::arg("spec"), py::arg("a"), py::arg("b"));
  m.def(
      "discord_pair_closed_form",
      [](const AgassiModelSpec& s, py::tuple a, py::tuple b) {
        return discord_pair_closed_form(s, label(a), label(b));
      },
      py::arg("spec"), py::arg("a"), py::arg("b"));
  m.def(
      "scan_grid",
      [](int omega, const std::string& chi, const std::string& sigma, const std::string& pair,
         int threads) {
        const auto rows = scan_grid(omega, GridRange::parse(chi), GridRange::parse(sigma),
                                    parse_pair_kind(pair), threads);
        py::list out;
        for (const auto& r : rows)
          out.append(py::make_tuple(r.chi, r.sigma, to_string(r.phase), r.discord,
                                    r.mutual_info));
        return out;
      },
      py::arg("omega"), py::arg("chi"), py::arg("sigma"), py::arg("pair") = "updown",
      py::arg("threads") = 0, "Rows (chi, sigma, phase, discord, mutual_info).");

  m.def(
      "lmg_ground_state_energy", [](int n, double chi) { return ground_state(n, chi).energy; },
      py::arg("n"), py::arg("chi"));
  m.def(
      "discord_exact_gs_hf_pair",
      [](int n, double chi) {
        const auto p = discord_exact_gs_hf_pair(n, chi);
        return py::make_tuple(p.d, p.discord);
      },
      py::arg("n"), py::arg("chi"), "Returns (d, discord).");
  m.def("discord_hf_gs_hamiltonian_pair", &discord_hf_gs_hamiltonian_pair, py::arg("chi"));
  m.def(
      "exact_curve",
      [](const std::vector<int>& ns, const std::vector<double>& chis, int threads) {
        py::list out;
        for (const auto& p : exact_curve(ns, chis, threads))
          out.append(py::make_tuple(p.n, p.chi, p.d, p.discord));
        return out;
      },
      py::arg("ns"), py::arg("chis"), py::arg("threads") = 0);

  py::class_<OracleReport>(m, "OracleReport")
      .def_readonly("model", &OracleReport::model)
      .def_readonly("omega", &OracleReport::omega)
      .def_readonly("energy", &OracleReport::energy)
      .def_readonly("max_offdiag_gamma", &OracleReport::max_offdiag_gamma)
      .def_readonly("max_kappa", &OracleReport::max_kappa)
      .def_readonly("max_pair_discord", &OracleReport::max_pair_discord)
      .def_readonly("quasispin_energy", &OracleReport::quasispin_energy)
      .def_readonly("hf_discord_fock", &OracleReport::hf_discord_fock)
      .def_readonly("hf_discord_quasispin", &OracleReport::hf_discord_quasispin)
      .def_readonly("passed", &OracleReport::pass)
      .def("to_json", [](const OracleReport& r) { return to_json(r); });
  m.def("verify_agassi", &verify_agassi, py::arg("spec"));
  m.def("verify_lmg", &verify_lmg, py::arg("n"), py::arg("chi"));

  m.def(
      "multipartite_discord",
      [](const Eigen::MatrixXcd& state, const std::vector<int>& ordering) {
        // A column vector of 2^n amplitudes or a 2^n x 2^n density matrix,
        // indexed by occupation bitstring.
        const Eigen::MatrixXcd rho = state.cols() == 1 ? pure_density(state.col(0)) : state;
        const int n = mode_count_for(rho.rows());
        const auto r = multipartite_discord(rho, n, ordering);
        py::dict out;
        out["discord"] = r.discord;
        out["total_correlation"] = r.total_correlation;
        out["classical_correlation"] = r.classical_correlation;
        out["entropy"] = r.entropy;
        return out;
      },
      py::arg("state"), py::arg("ordering") = std::vector<int>{});
}
