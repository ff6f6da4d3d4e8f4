#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "smsec/harness.hpp"
#include "smsec/numerics.hpp"

namespace py = pybind11;
using namespace smsec;

PYBIND11_MODULE(_smsec, m) {
  m.doc() = "Secure spatial modulation with a full-duplex active eavesdropper";
  m.attr("__version__") = version_string();

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ZfcInfeasible>(m, "ZfcInfeasible", PyExc_RuntimeError);
  py::register_exception<numerics::NumericsError>(m, "NumericsError", PyExc_ArithmeticError);

  py::enum_<Method>(m, "Method")
      .value("MaxRP", Method::MaxRP)
      .value("MaxWFRP", Method::MaxWFRP)
      .value("MaxRPZFC", Method::MaxRPZFC)
      .value("MaxSJNR", Method::MaxSJNR)
      .def("__str__", [](Method x) { return std::string(to_string(x)); });

  py::enum_<AnMode>(m, "AnMode").value("NullSpace", AnMode::NullSpace).value("Random", AnMode::Random);
  py::enum_<Side>(m, "Side").value("Bob", Side::Bob).value("Mallory", Side::Mallory);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static(
          "derive",
          [](std::uint64_t seed, const std::vector<std::uint64_t>& path) { return Rng::derive(seed, path); },
          py::arg("seed"), py::arg("path"))
      .def("normal", &Rng::normal)
      .def("uniform", &Rng::uniform);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("n_tx", &SystemConfig::n_tx)
      .def_readwrite("n_active", &SystemConfig::n_active)
      .def_readwrite("n_bob", &SystemConfig::n_bob)
      .def_readwrite("n_mallory", &SystemConfig::n_mallory)
      .def_readwrite("power", &SystemConfig::power)
      .def_readwrite("mallory_power", &SystemConfig::mallory_power)
      .def_readwrite("beta", &SystemConfig::beta)
      .def_readwrite("sigma_a2", &SystemConfig::sigma_a2)
      .def_readwrite("sigma_m2", &SystemConfig::sigma_m2)
      .def_readwrite("sigma_b2", &SystemConfig::sigma_b2)
      .def_readwrite("sigma_e2", &SystemConfig::sigma_e2)
      .def_readwrite("order", &SystemConfig::order)
      .def_readwrite("seed", &SystemConfig::seed)
      .def("validate", &SystemConfig::validate)
      .def("bits_per_use", &SystemConfig::bits_per_use);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def(py::init<>())
      .def_readwrite("h", &ChannelSet::h)
      .def_readwrite("g", &ChannelSet::g)
      .def_readwrite("f", &ChannelSet::f)
      .def_readwrite("mself", &ChannelSet::mself)
      .def_readwrite("t", &ChannelSet::t)
      .def_readwrite("selected", &ChannelSet::selected)
      .def_readwrite("p_an", &ChannelSet::p_an)
      .def_readwrite("u_er", &ChannelSet::u_er)
      .def_readwrite("p_jm", &ChannelSet::p_jm)
      .def_readonly("self_interference_fallback", &ChannelSet::self_interference_fallback);

  m.def("draw_channel_set", &draw_channel_set, py::arg("cfg"), py::arg("mode") = AnMode::NullSpace,
        py::arg("rng"));

  py::class_<CodebookEntry>(m, "CodebookEntry")
      .def_readonly("label", &CodebookEntry::label)
      .def_readonly("antenna", &CodebookEntry::antenna)
      .def_readonly("symbol_index", &CodebookEntry::symbol_index)
      .def_readonly("symbol", &CodebookEntry::symbol);

  py::class_<TxCodebook>(m, "TxCodebook")
      .def(py::init<int, int>(), py::arg("n_active"), py::arg("order"))
      .def("__len__", &TxCodebook::size)
      .def("__getitem__", [](const TxCodebook& c, std::size_t i) {
        if (i >= c.size()) throw py::index_error();
        return c[i];
      })
      .def("vector", &TxCodebook::vector)
      .def_property_readonly("bits_per_use", &TxCodebook::bits_per_use);
  m.def("build_codebook", &build_codebook, py::arg("n_active"), py::arg("order"));

  py::class_<Beamformer>(m, "Beamformer")
      .def_readonly("method", &Beamformer::method)
      .def_readonly("u_br", &Beamformer::u_br)
      .def_readonly("objective", &Beamformer::objective)
      .def_readonly("whitening", &Beamformer::whitening);
  m.def("design", &design, py::arg("method"), py::arg("channels"), py::arg("cfg"));
  m.def("max_rp", &max_rp);
  m.def("max_wfrp", &max_wfrp);
  m.def("max_rp_zfc", &max_rp_zfc);
  m.def("max_sjnr", &max_sjnr);

  m.def("sjnr", &sjnr, py::arg("u"), py::arg("channels"), py::arg("cfg"));
  m.def("noise_cov_bob", &noise_cov_bob);
  m.def(
      "mutual_info_mc",
      [](const CVector& u, Side side, const ChannelSet& cs, const SystemConfig& cfg, const TxCodebook& cb,
         int n_noise, Rng& rng) { return mutual_info_mc(u, side, cs, cfg, cb, n_noise, rng); },
      py::arg("u"), py::arg("side"), py::arg("channels"), py::arg("cfg"), py::arg("codebook"),
      py::arg("n_noise"), py::arg("rng"));
  m.def("flop_estimate", &flop_estimate, py::arg("method"), py::arg("n_bob"));
  m.def("noise_variance_for_snr", &noise_variance_for_snr);

  m.def("whitening_matrix", &numerics::whitening_matrix);
  m.def("null_space_basis", [](const CMatrix& a) { return numerics::null_space_basis(a).columns; });
  m.def("gen_max_eigvec", [](const CMatrix& a, const CMatrix& b) {
    auto p = numerics::gen_max_eigvec(a, b);
    return py::make_tuple(p.value, p.vector);
  });

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("snr_grid_db", &SweepSpec::snr_grid_db)
      .def_readwrite("p_m_list", &SweepSpec::p_m_list)
      .def_readwrite("methods", &SweepSpec::methods)
      .def_readwrite("n_channel_realizations", &SweepSpec::n_channel_realizations)
      .def_readwrite("n_noise", &SweepSpec::n_noise)
      .def_readwrite("n_ber_trials", &SweepSpec::n_ber_trials)
      .def_readwrite("an_mode", &SweepSpec::an_mode)
      .def_readwrite("output_dir", &SweepSpec::output_dir);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("system", &ExperimentConfig::system)
      .def_readwrite("sweep", &ExperimentConfig::sweep);
  m.def("parse_config", [](const std::string& text) { return parse_config(text); });
  m.def("emit_config", &emit_config);

  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def_readonly("method", &MetricsRecord::method)
      .def_readonly("snr_db", &MetricsRecord::snr_db)
      .def_readonly("p_m", &MetricsRecord::p_m)
      .def_readonly("avg_sr", &MetricsRecord::avg_sr)
      .def_readonly("sr_stderr", &MetricsRecord::sr_stderr)
      .def_readonly("ber", &MetricsRecord::ber)
      .def_readonly("avg_sjnr_db", &MetricsRecord::avg_sjnr_db)
      .def_readonly("sr_samples", &MetricsRecord::sr_samples)
      .def_readonly("n_realizations", &MetricsRecord::n_realizations)
      .def_readonly("n_zfc_infeasible", &MetricsRecord::n_zfc_infeasible);

  m.def(
      "run_sweep",
      [](const SystemConfig& cfg, const SweepSpec& sweep, int threads) {
        py::gil_scoped_release release;
        return run_sweep(cfg, sweep, threads);
      },
      py::arg("cfg"), py::arg("sweep"), py::arg("threads") = 1);
  m.def("write_outputs", &write_outputs, py::arg("records"), py::arg("cfg"), py::arg("dir"));
}
