#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hawkesim/acceptance.hpp"
#include "hawkesim/config.hpp"
#include "hawkesim/errors.hpp"
#include "hawkesim/experiments.hpp"
#include "hawkesim/gchp.hpp"
#include "hawkesim/hawkes.hpp"
#include "hawkesim/markov.hpp"
#include "hawkesim/merton_finance.hpp"
#include "hawkesim/merton_insurance.hpp"
#include "hawkesim/stats.hpp"

namespace py = pybind11;
using namespace hawkesim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hawkes-driven compound processes, diffusion limits and Merton strategies";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NonErgodicChain>(m, "NonErgodicChain", PyExc_ValueError);
  py::register_exception<SolveFailure>(m, "SolveFailure", PyExc_ArithmeticError);
  py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
  py::register_exception<DegenerateChain>(m, "DegenerateChain", PyExc_ValueError);
  py::register_exception<SigmaBarZero>(m, "SigmaBarZero", PyExc_ArithmeticError);
  py::register_exception<ZeroVolatility>(m, "ZeroVolatility", PyExc_ArithmeticError);

  py::class_<ExcitationKernel>(m, "ExcitationKernel")
      .def_static("zero", &ExcitationKernel::zero)
      .def_static("exponential", &ExcitationKernel::exponential, py::arg("alpha"), py::arg("beta"))
      .def_property_readonly("is_zero", &ExcitationKernel::is_zero)
      .def_property_readonly("alpha", &ExcitationKernel::alpha)
      .def_property_readonly("beta", &ExcitationKernel::beta)
      .def("value", &ExcitationKernel::value, py::arg("t"));

  m.def("branching_ratio", &branching_ratio, py::arg("kernel"));

  py::class_<HawkesParams>(m, "HawkesParams")
      .def(py::init<double, ExcitationKernel>(), py::arg("lambda0"), py::arg("kernel"))
      .def_readonly("lambda0", &HawkesParams::lambda0)
      .def_readonly("kernel", &HawkesParams::kernel);

  py::class_<EventPath>(m, "EventPath")
      .def(py::init<double, std::vector<double>>(), py::arg("horizon"), py::arg("times"))
      .def_property_readonly("horizon", &EventPath::horizon)
      .def_property_readonly("times", &EventPath::times)
      .def_property_readonly("count", &EventPath::count);

  m.def("intensity_at", &intensity_at, py::arg("params"), py::arg("history"), py::arg("t"));
  m.def("simulate_hawkes", &simulate_hawkes, py::arg("params"), py::arg("horizon"), py::arg("seed"));
  m.def("lln_statistic_hp", &lln_statistic_hp, py::arg("path"));
  m.def("fclt_statistic_hp", &fclt_statistic_hp, py::arg("path"), py::arg("params"));

  py::class_<MarkovChainSpec>(m, "MarkovChainSpec")
      .def(py::init<std::vector<std::vector<double>>, std::vector<double>>(), py::arg("transition"),
           py::arg("marks"))
      .def_property_readonly("n", &MarkovChainSpec::n)
      .def("prob", &MarkovChainSpec::prob, py::arg("from_state"), py::arg("to_state"))
      .def("mark", &MarkovChainSpec::mark, py::arg("state"))
      .def_property_readonly("marks", &MarkovChainSpec::marks);

  m.def("is_ergodic", &is_ergodic, py::arg("chain"));
  m.def(
      "stationary_distribution",
      [](const MarkovChainSpec& chain) { return stationary_distribution(chain).pi; },
      py::arg("chain"));
  m.def(
      "simulate_chain",
      [](const MarkovChainSpec& chain, int n_steps, int initial_state, std::uint64_t seed) {
        return simulate_chain(chain, n_steps, initial_state, seed);
      },
      py::arg("chain"), py::arg("n_steps"), py::arg("initial_state"), py::arg("seed"));

  py::class_<GCHPModel>(m, "GCHPModel")
      .def(py::init<HawkesParams, MarkovChainSpec, double, std::optional<int>>(), py::arg("hawkes"),
           py::arg("chain"), py::arg("s0"), py::arg("initial_state") = std::nullopt)
      .def_readonly("hawkes", &GCHPModel::hawkes)
      .def_readonly("chain", &GCHPModel::chain)
      .def_readonly("s0", &GCHPModel::s0);

  py::class_<MarkedEventPath>(m, "MarkedEventPath")
      .def_readonly("horizon", &MarkedEventPath::horizon)
      .def_readonly("s0", &MarkedEventPath::s0)
      .def_readonly("times", &MarkedEventPath::times)
      .def_readonly("states", &MarkedEventPath::states)
      .def_readonly("marks", &MarkedEventPath::marks)
      .def_readonly("cumulative", &MarkedEventPath::cumulative)
      .def("terminal", &MarkedEventPath::terminal);

  py::class_<DiffusionParams>(m, "DiffusionParams")
      .def_readonly("a_star", &DiffusionParams::a_star)
      .def_readonly("sigma", &DiffusionParams::sigma)
      .def_readonly("sigma_star", &DiffusionParams::sigma_star)
      .def_readonly("sigma_bar", &DiffusionParams::sigma_bar)
      .def_readonly("drift", &DiffusionParams::drift)
      .def_readonly("mu_hat", &DiffusionParams::mu_hat)
      .def_readonly("lambda0", &DiffusionParams::lambda0);

  py::class_<TwoStateParams>(m, "TwoStateParams")
      .def_readonly("a_star", &TwoStateParams::a_star)
      .def_readonly("sigma_sq", &TwoStateParams::sigma_sq);

  m.def("sigma_squared", &sigma_squared, py::arg("chain"));
  m.def("diffusion_params", &diffusion_params, py::arg("model"));
  m.def("two_state_params", &two_state_params, py::arg("delta"), py::arg("p"), py::arg("p_prime"));
  m.def("simulate_gchp", &simulate_gchp, py::arg("model"), py::arg("horizon"), py::arg("seed"));
  m.def("fclt_statistic_gchp", &fclt_statistic_gchp, py::arg("path"), py::arg("params"));

  py::class_<SampledPath>(m, "SampledPath")
      .def_readonly("times", &SampledPath::times)
      .def_readonly("values", &SampledPath::values);

  m.def("approximate_diffusion_path", &approximate_diffusion_path, py::arg("params"), py::arg("s0"),
        py::arg("horizon"), py::arg("dt"), py::arg("seed"));

  py::class_<FinanceMarket>(m, "FinanceMarket")
      .def(py::init<double, GCHPModel, double, double>(), py::arg("r"), py::arg("model"), py::arg("x0"),
           py::arg("b0") = 1.0)
      .def_readonly("r", &FinanceMarket::r)
      .def_readonly("params", &FinanceMarket::params)
      .def_readonly("x0", &FinanceMarket::x0)
      .def_readonly("b0", &FinanceMarket::b0)
      .def_property_readonly("mu_e", &FinanceMarket::mu_e);

  py::class_<FinanceStrategy>(m, "FinanceStrategy").def_readonly("pi_star", &FinanceStrategy::pi_star);

  py::class_<GridPoint>(m, "GridPoint")
      .def_readonly("pi", &GridPoint::pi)
      .def_readonly("utility_mc", &GridPoint::utility_mc)
      .def_readonly("utility_analytic", &GridPoint::utility_analytic)
      .def_readonly("std_error", &GridPoint::std_error);

  py::class_<GridSearchResult>(m, "GridSearchResult")
      .def_readonly("best_pi", &GridSearchResult::best_pi)
      .def_readonly("points", &GridSearchResult::points);

  m.def("optimal_fraction_finance", &optimal_fraction_finance, py::arg("params"), py::arg("r"));
  m.def("expected_log_utility", &expected_log_utility, py::arg("market"), py::arg("pi"),
        py::arg("horizon"));
  m.def("simulate_wealth", &simulate_wealth, py::arg("market"), py::arg("pi"), py::arg("horizon"),
        py::arg("n_steps"), py::arg("seed"));
  m.def("grid_search_optimal_pi", &grid_search_optimal_pi, py::arg("market"), py::arg("pi_grid"),
        py::arg("horizon"), py::arg("n_paths"), py::arg("seed"));

  py::class_<InsuranceModel>(m, "InsuranceModel")
      .def(py::init<double, double, GCHPModel, double, double, double>(), py::arg("u"), py::arg("c"),
           py::arg("claims"), py::arg("asset_drift"), py::arg("asset_vol"), py::arg("r"))
      .def_readonly("u", &InsuranceModel::u)
      .def_readonly("c", &InsuranceModel::c)
      .def_readonly("asset_drift", &InsuranceModel::asset_drift)
      .def_readonly("asset_vol", &InsuranceModel::asset_vol)
      .def_readonly("r", &InsuranceModel::r)
      .def_readonly("claims_params", &InsuranceModel::claims_params)
      .def("safety_loading_margin", &InsuranceModel::safety_loading_margin);

  py::class_<InsuranceSolution>(m, "InsuranceSolution")
      .def_readonly("theta", &InsuranceSolution::theta)
      .def_readonly("p", &InsuranceSolution::p)
      .def_readonly("p_constraint_ok", &InsuranceSolution::p_constraint_ok)
      .def_readonly("pi", &InsuranceSolution::pi);

  py::class_<GeneratorCoefficients>(m, "GeneratorCoefficients")
      .def_readonly("first_order", &GeneratorCoefficients::first_order)
      .def_readonly("second_order", &GeneratorCoefficients::second_order);

  py::class_<SurplusPath>(m, "SurplusPath")
      .def_readonly("times", &SurplusPath::times)
      .def_readonly("values", &SurplusPath::values)
      .def_readonly("ruined", &SurplusPath::ruined)
      .def_readonly("ruin_time", &SurplusPath::ruin_time);

  py::enum_<SurplusMode>(m, "SurplusMode")
      .value("diffusion", SurplusMode::diffusion)
      .value("jump", SurplusMode::jump);

  py::class_<RuinEstimate>(m, "RuinEstimate")
      .def_readonly("probability", &RuinEstimate::probability)
      .def_readonly("std_error", &RuinEstimate::std_error)
      .def_readonly("n_paths", &RuinEstimate::n_paths);

  m.def("theta", &theta, py::arg("model"));
  m.def("solve_p", &solve_p, py::arg("model"));
  m.def("optimal_fraction_insurance", &optimal_fraction_insurance, py::arg("model"));
  m.def("poisson_optimal_fraction", &poisson_optimal_fraction, py::arg("lambda0"), py::arg("mean"),
        py::arg("second_moment"), py::arg("c"), py::arg("u"), py::arg("r"), py::arg("a"), py::arg("b"));
  m.def("generator_coefficients", &generator_coefficients, py::arg("model"), py::arg("pi"), py::arg("x"));
  m.def("hjb_first_order_check", &hjb_first_order_check, py::arg("model"), py::arg("solution"));
  m.def("simulate_surplus_diffusion", &simulate_surplus_diffusion, py::arg("model"), py::arg("pi"),
        py::arg("horizon"), py::arg("n_steps"), py::arg("seed"));
  m.def(
      "simulate_surplus_jump",
      [](const InsuranceModel& model, double pi, double horizon, int n_steps, std::uint64_t seed) {
        return simulate_surplus_jump(model, pi, horizon, n_steps, seed);
      },
      py::arg("model"), py::arg("pi"), py::arg("horizon"), py::arg("n_steps"), py::arg("seed"));
  m.def("ruin_probability_mc", &ruin_probability_mc, py::arg("model"), py::arg("pi"), py::arg("horizon"),
        py::arg("n_paths"), py::arg("n_steps"), py::arg("seed"), py::arg("mode"));

  py::class_<NormalityReport>(m, "NormalityReport")
      .def_readonly("n", &NormalityReport::n)
      .def_readonly("ks", &NormalityReport::ks)
      .def_readonly("ks_critical", &NormalityReport::ks_critical)
      .def_readonly("mean", &NormalityReport::mean)
      .def_readonly("variance", &NormalityReport::variance)
      .def_readonly("pass_", &NormalityReport::pass);

  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("ks_statistic", &ks_statistic, py::arg("sample"));
  m.def("ks_critical_value", &ks_critical_value, py::arg("level"), py::arg("n"));
  m.def("normality_check", &normality_check, py::arg("sample"), py::arg("level"));

  m.def(
      "run_experiment",
      [](const std::string& config_text) { return run_experiment(parse_config(config_text)).json; },
      py::arg("config_text"), "Run the experiment described by a config document, returns report JSON.");

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("pass_", &CriterionResult::pass)
      .def_readonly("details", &CriterionResult::details);

  m.def("run_acceptance", &run_acceptance, py::arg("quick"));
}
