#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wp/certify.hpp"
#include "wp/genprob.hpp"
#include "wp/lattice.hpp"
#include "wp/tower.hpp"

namespace py = pybind11;

namespace {

wp::PermGroup make_group(int degree, const std::vector<std::string>& cycles) {
  std::vector<wp::Permutation> gens;
  for (const auto& c : cycles) gens.push_back(wp::Permutation::from_cycles(c, degree));
  return wp::PermGroup(degree, std::move(gens));
}

std::string pk_exact(const wp::PermGroup& g, unsigned k) {
  wp::GroupTable t = wp::GroupTable::from_perm_group(g);
  auto lat = wp::SubgroupLattice::build(t, t.size());
  return wp::rat_to_string(lat.pk_mobius(k));
}

std::string zeta_value(const wp::PermGroup& g, unsigned s) {
  wp::GroupTable t = wp::GroupTable::from_perm_group(g);
  auto lat = wp::SubgroupLattice::build(t, t.size());
  return wp::rat_to_string(wp::zeta_all_maximal(lat, s).total);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iterated wreath product toolkit";

  py::register_exception<wp::input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<wp::cap_error>(m, "CapError", PyExc_RuntimeError);

  py::class_<wp::PermGroup>(m, "PermGroup")
      .def(py::init(&make_group), py::arg("degree"), py::arg("generators"))
      .def_property_readonly("degree", &wp::PermGroup::degree)
      .def_property_readonly("order", [](const wp::PermGroup& g) { return g.order().str(); })
      .def("is_perfect", &wp::PermGroup::is_perfect)
      .def("orbits", &wp::PermGroup::orbits)
      .def("contains", [](const wp::PermGroup& g, const std::string& cycles) {
        return g.contains(wp::Permutation::from_cycles(cycles, g.degree()));
      });

  m.def("pk_exact", &pk_exact, py::arg("group"), py::arg("k"),
        "Exact generation probability p_k as a 'num/den' string.");
  m.def(
      "pk_montecarlo",
      [](const wp::PermGroup& g, unsigned k, std::uint64_t samples, std::uint64_t seed) {
        wp::PkResult r = wp::pk_montecarlo(g, k, samples, seed);
        py::dict d;
        d["value"] = wp::rat_to_string(r.value);
        d["low"] = wp::rat_to_string(r.low);
        d["high"] = wp::rat_to_string(r.high);
        d["samples"] = r.samples;
        d["successes"] = r.successes;
        return d;
      },
      py::arg("group"), py::arg("k"), py::arg("samples"), py::arg("seed") = 1);
  m.def("zeta", &zeta_value, py::arg("group"), py::arg("s"),
        "zeta over all maximal classes, as a 'num/den' string.");
  m.def(
      "decide",
      [](const wp::PermGroup& g) {
        wp::Verdict v = wp::decide(wp::TowerSpec::make(g), 64);
        py::dict d;
        d["finitely_generated"] = v.yes;
        d["reasons"] = v.reasons;
        return d;
      },
      py::arg("group"), "Finite generation criterion for the tower over the group.");
  m.def(
      "tower_order",
      [](const wp::PermGroup& g, int n) {
        return wp::build_level(wp::TowerSpec::make(g), n).order().str();
      },
      py::arg("group"), py::arg("n"), "Order of tower level n as a decimal string.");
}
