// Python bindings for the core operations: charge sequences, partition DPs,
// bond observables, free-energy estimators/bounds, the di-block joint law,
// and the undirected-walk experiments.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcp/charges.hpp"
#include "qcp/diblock.hpp"
#include "qcp/free_energy.hpp"
#include "qcp/observables.hpp"
#include "qcp/oracle.hpp"
#include "qcp/partition.hpp"
#include "qcp/rng.hpp"
#include "qcp/selfcheck.hpp"
#include "qcp/undirected.hpp"
#include "qcp/version.hpp"

namespace py = pybind11;
using namespace qcp;

PYBIND11_MODULE(_qcp, m) {
    m.doc() = "quenched charged-polymer numerics";
    m.attr("__version__") = version;

    // ------- charges -------
    py::enum_<ChargeDist>(m, "ChargeDist")
        .value("binary", ChargeDist::binary)
        .value("gaussian", ChargeDist::gaussian)
        .value("diblock", ChargeDist::diblock)
        .value("tilted_binary", ChargeDist::tilted_binary)
        .value("tilted_gaussian", ChargeDist::tilted_gaussian);

    py::class_<ChargeSequence>(m, "ChargeSequence")
        .def_readonly("dist", &ChargeSequence::dist)
        .def_readonly("omega", &ChargeSequence::omega)
        .def_readonly("integer_valued", &ChargeSequence::integer_valued)
        .def_property_readonly("n", &ChargeSequence::n)
        .def("interval_charge", &ChargeSequence::interval_charge)
        .def("interval_sumsq", &ChargeSequence::interval_sumsq);

    m.def("make_binary", &make_binary, py::arg("n"), py::arg("seed"));
    m.def("make_gaussian", &make_gaussian, py::arg("n"), py::arg("seed"));
    m.def("make_diblock", &make_diblock, py::arg("half_n"));
    m.def("make_tilted", &make_tilted, py::arg("n"), py::arg("delta"), py::arg("seed"),
          py::arg("base"));
    m.def("make_from_values", &make_from_values, py::arg("omega"));
    m.def("subsequence", &subsequence, py::arg("cs"), py::arg("a"), py::arg("b"));
    m.def("substream_seed", &substream_seed, py::arg("master"), py::arg("index"));

    // ------- partition DPs and the enumeration oracle -------
    py::enum_<Convention>(m, "Convention")
        .value("original", Convention::original)
        .value("bar", Convention::bar);

    m.def("prefix_log_partition", &prefix_log_partition, py::arg("cs"), py::arg("beta"));
    m.def("suffix_log_partition", &suffix_log_partition, py::arg("cs"), py::arg("beta"));
    m.def("bar_prefix_log_partition", &bar_prefix_log_partition, py::arg("cs"),
          py::arg("beta_bar"));
    m.def("log_partition_bar", &log_partition_bar, py::arg("cs"), py::arg("beta_bar"));
    m.def("wsaw_log_partition", &wsaw_log_partition, py::arg("beta_bar"), py::arg("n"));
    m.def("oracle_log_partition", &oracle_log_partition, py::arg("cs"), py::arg("beta"),
          py::arg("convention"));

    // ------- observables -------
    py::class_<BondProfile>(m, "BondProfile")
        .def_readonly("beta", &BondProfile::beta)
        .def_readonly("p", &BondProfile::p);
    m.def("bond_profile", &bond_profile, py::arg("cs"), py::arg("beta"));
    m.def("empirical_cdf", &empirical_cdf, py::arg("profile"), py::arg("p"));
    m.def("high_temp_slope", &high_temp_slope, py::arg("cs"), py::arg("i"));
    m.def("dgh2_bound", &dgh2_bound, py::arg("beta"));

    py::class_<EnergyMoments>(m, "EnergyMoments")
        .def_readonly("mean", &EnergyMoments::mean)
        .def_readonly("variance", &EnergyMoments::variance);
    m.def("energy_mean_var", &energy_mean_var, py::arg("cs"), py::arg("beta_bar"));

    // ------- free energy -------
    py::class_<McFeResult>(m, "McFeResult")
        .def_readonly("mean", &McFeResult::mean)
        .def_readonly("std_error", &McFeResult::std_error)
        .def_readonly("mean_abs_end_charge", &McFeResult::mean_abs_end_charge);

    m.def("finite_fe", &finite_fe, py::arg("cs"), py::arg("beta_bar"));
    m.def("mc_quenched_fe", &mc_quenched_fe, py::arg("n"), py::arg("beta_bar"),
          py::arg("samples"), py::arg("seed"), py::arg("dist"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("exact_avg_fe", &exact_avg_fe, py::arg("n"), py::arg("beta_bar"));

    py::enum_<AnnealedDist>(m, "AnnealedDist")
        .value("binary", AnnealedDist::binary)
        .value("gaussian", AnnealedDist::gaussian);
    m.def("g_beta", &g_beta, py::arg("ell"), py::arg("beta"), py::arg("dist"));
    m.def("annealed_fe", &annealed_fe, py::arg("beta"), py::arg("dist"));
    m.def("mean_zbar_renewal", &mean_zbar_renewal, py::arg("n"), py::arg("beta"),
          py::arg("dist"));
    m.def("mean_zbar_exhaustive", &mean_zbar_exhaustive, py::arg("n"), py::arg("beta"));

    m.def("wsaw_fe", &wsaw_fe, py::arg("beta"));
    m.def("s_of_beta", &s_of_beta, py::arg("beta"));
    m.def("beta0", &beta0);
    m.def("eta", &eta, py::arg("u"));
    m.def("variational_lb", &variational_lb, py::arg("beta"));

    py::class_<QuIdentity>(m, "QuIdentity")
        .def_readonly("computed", &QuIdentity::computed)
        .def_readonly("closed_form", &QuIdentity::closed_form);
    py::class_<QuWordMoments>(m, "QuWordMoments")
        .def_readonly("beyond", &QuWordMoments::beyond)
        .def_readonly("at", &QuWordMoments::at)
        .def_readonly("pair", &QuWordMoments::pair);
    m.def("qu_word_moments", &qu_word_moments, py::arg("u"), py::arg("phi"), py::arg("i"),
          py::arg("j"));
    m.def("qu_marginal", &qu_marginal, py::arg("u"), py::arg("ell"));

    m.def("cubic_root_z0", &cubic_root_z0, py::arg("u1"), py::arg("u2"));
    m.def("ann_series_to_cubic", &ann_series_to_cubic, py::arg("c1"), py::arg("c2"),
          py::arg("z"));
    m.def("fourth_moment", &fourth_moment, py::arg("ell"));
    m.def("high_temp_coeff", &high_temp_coeff, py::arg("n"));

    // ------- di-block joint law -------
    py::class_<DiblockJoint>(m, "DiblockJoint")
        .def_readonly("half_n", &DiblockJoint::half_n)
        .def_readonly("beta_bar", &DiblockJoint::beta_bar)
        .def_readonly("log_weight", &DiblockJoint::log_weight)
        .def_readonly("log_norm", &DiblockJoint::log_norm)
        .def("prob", &DiblockJoint::prob, py::arg("i"), py::arg("j"));
    m.def("diblock_joint", &diblock_joint, py::arg("half_n"), py::arg("beta_bar"));
    m.def("diblock_tail", &diblock_tail, py::arg("joint"), py::arg("M"));

    py::class_<DiblockMarginalCheck>(m, "DiblockMarginalCheck")
        .def_readonly("max_ratio_i", &DiblockMarginalCheck::max_ratio_i)
        .def_readonly("max_ratio_j", &DiblockMarginalCheck::max_ratio_j);
    m.def("diblock_marginal_check", &diblock_marginal_check, py::arg("joint"));

    py::class_<DiblockBondCheck>(m, "DiblockBondCheck")
        .def_readonly("all_hold", &DiblockBondCheck::all_hold)
        .def_readonly("max_ratio", &DiblockBondCheck::max_ratio);
    m.def("diblock_bond_check", &diblock_bond_check, py::arg("half_n"), py::arg("beta_bar"));

    // ------- undirected walks -------
    py::class_<UndirectedStats>(m, "UndirectedStats")
        .def_readonly("hbar", &UndirectedStats::hbar)
        .def_readonly("range", &UndirectedStats::range)
        .def_readonly("once_visited", &UndirectedStats::once_visited)
        .def_readonly("end_e1", &UndirectedStats::end_e1);
    m.def("undirected_path_stats", &undirected_path_stats, py::arg("steps"), py::arg("d"),
          py::arg("cs"));
    m.def("undirected_hamiltonian", &undirected_hamiltonian, py::arg("steps"), py::arg("d"),
          py::arg("cs"));

    py::class_<UndirectedEnumeration>(m, "UndirectedEnumeration")
        .def_readonly("log_zbar", &UndirectedEnumeration::log_zbar)
        .def_readonly("prob_small_range", &UndirectedEnumeration::prob_small_range)
        .def_readonly("mean_speed_given_pos", &UndirectedEnumeration::mean_speed_given_pos)
        .def_readonly("min_range_energy_margin",
                      &UndirectedEnumeration::min_range_energy_margin)
        .def_readonly("min_once_margin", &UndirectedEnumeration::min_once_margin)
        .def_readonly("elementary_lb", &UndirectedEnumeration::elementary_lb)
        .def_readonly("eq2_margin", &UndirectedEnumeration::eq2_margin);
    m.def("enumerate_undirected", &enumerate_undirected, py::arg("cs"), py::arg("beta"),
          py::arg("d"), py::arg("c") = 0.5);

    py::class_<BallisticCondition>(m, "BallisticCondition")
        .def_readonly("holds", &BallisticCondition::holds)
        .def_readonly("margin", &BallisticCondition::margin);
    m.def("ballistic_condition", &ballistic_condition, py::arg("delta"), py::arg("beta"),
          py::arg("dist"));

    py::class_<UndirectedMcResult>(m, "UndirectedMcResult")
        .def_readonly("prob_small_range", &UndirectedMcResult::prob_small_range)
        .def_readonly("prob_small_range_stderr",
                      &UndirectedMcResult::prob_small_range_stderr)
        .def_readonly("once_fraction_mean", &UndirectedMcResult::once_fraction_mean)
        .def_readonly("ess", &UndirectedMcResult::ess)
        .def_readonly("reliable", &UndirectedMcResult::reliable)
        .def_readonly("range_ineq_ok", &UndirectedMcResult::range_ineq_ok)
        .def_readonly("once_ineq_ok", &UndirectedMcResult::once_ineq_ok);
    m.def("mc_undirected", &mc_undirected, py::arg("n"), py::arg("beta"), py::arg("delta"),
          py::arg("d"), py::arg("samples"), py::arg("seed"), py::arg("c1") = 0.5,
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

    // ------- self-test -------
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("value", &CheckResult::value)
        .def_readonly("detail", &CheckResult::detail);
    m.def(
        "run_selfchecks",
        [](int threads) { return run_selfchecks(threads, nullptr); },
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
}
