#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zd/equilibrium.hpp"
#include "zd/mixing.hpp"
#include "zd/model.hpp"
#include "zd/planner.hpp"
#include "zd/simulate.hpp"
#include "zd/transient.hpp"

namespace py = pybind11;
using namespace zd;

PYBIND11_MODULE(zealotdyn, m) {
    m.doc() = "Voter model with zealots on a complete graph: transient and "
              "stationary analysis, mixing times, simulation, and zealot-"
              "injection planning.";

    py::class_<StateSpace>(m, "StateSpace")
        .def_readonly("lo", &StateSpace::lo)
        .def_readonly("hi", &StateSpace::hi)
        .def("__len__", &StateSpace::size)
        .def("contains", &StateSpace::contains, py::arg("k"))
        .def("__repr__", [](const StateSpace& s) {
            return "StateSpace(lo=" + std::to_string(s.lo) +
                   ", hi=" + std::to_string(s.hi) + ")";
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def_readonly("n", &ModelParams::n)
        .def_readonly("z0", &ModelParams::z0)
        .def_readonly("z1", &ModelParams::z1)
        .def_readonly("n1", &ModelParams::n1)
        .def("space", &ModelParams::space)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(n=" + std::to_string(p.n) + ", z0=" + std::to_string(p.z0) +
                   ", z1=" + std::to_string(p.z1) + ", n1=" + std::to_string(p.n1) + ")";
        });

    py::class_<Rates>(m, "Rates")
        .def_readonly("down", &Rates::down)
        .def_readonly("stay", &Rates::stay)
        .def_readonly("up", &Rates::up);

    py::class_<RateMatrix>(m, "RateMatrix")
        .def_readonly("space", &RateMatrix::space)
        .def_readonly("down", &RateMatrix::down)
        .def_readonly("up", &RateMatrix::up)
        .def_readonly("diag", &RateMatrix::diag);

    py::class_<Distribution>(m, "Distribution")
        .def_readonly("space", &Distribution::space)
        .def_readonly("probs", &Distribution::probs)
        .def("prob_at", &Distribution::prob_at, py::arg("k"))
        .def("mean", [](const Distribution& d) { return mean(d); })
        .def("__len__", [](const Distribution& d) { return d.probs.size(); });

    py::class_<TrajectoryEvent>(m, "TrajectoryEvent")
        .def_readonly("time", &TrajectoryEvent::time)
        .def_readonly("state", &TrajectoryEvent::state);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("events", &Trajectory::events)
        .def_readonly("seed", &Trajectory::seed)
        .def("state_at", [](const Trajectory& t, double at) { return state_at(t, at); },
             py::arg("t"))
        .def("__len__", [](const Trajectory& t) { return t.events.size(); });

    py::class_<EnsembleStats>(m, "EnsembleStats")
        .def_readonly("snapshot_times", &EnsembleStats::snapshot_times)
        .def_readonly("empirical_dists", &EnsembleStats::empirical_dists)
        .def_readonly("mean", &EnsembleStats::mean)
        .def_readonly("stddev", &EnsembleStats::stddev)
        .def_readonly("m", &EnsembleStats::m);

    py::class_<MixingResult>(m, "MixingResult")
        .def_readonly("t_mix", &MixingResult::t_mix)
        .def_readonly("eps", &MixingResult::eps)
        .def_readonly("t_low", &MixingResult::t_low)
        .def_readonly("t_high", &MixingResult::t_high)
        .def_readonly("evaluations", &MixingResult::evaluations);

    py::enum_<SimLevel>(m, "SimLevel")
        .value("agent", SimLevel::agent)
        .value("aggregate", SimLevel::aggregate);

    py::enum_<PlanMode>(m, "PlanMode")
        .value("inject", PlanMode::inject)
        .value("convert", PlanMode::convert);

    py::class_<PlanRequest>(m, "PlanRequest")
        .def(py::init([](long long z0, double lambda, double alpha,
                         std::optional<double> z_max, PlanMode mode, long long n) {
                 PlanRequest req;
                 req.n = n;
                 req.z0 = z0;
                 req.lambda = lambda;
                 req.alpha = alpha;
                 req.z_max = z_max;
                 req.mode = mode;
                 return req;
             }),
             py::arg("z0"), py::arg("lambda_"), py::arg("alpha") = 0.0,
             py::arg("z_max") = std::nullopt, py::arg("mode") = PlanMode::inject,
             py::arg("n") = 100)
        .def_readwrite("n", &PlanRequest::n)
        .def_readwrite("z0", &PlanRequest::z0)
        .def_readwrite("lambda_", &PlanRequest::lambda)
        .def_readwrite("alpha", &PlanRequest::alpha)
        .def_readwrite("z_max", &PlanRequest::z_max)
        .def_readwrite("mode", &PlanRequest::mode);

    py::class_<PlanOutcome>(m, "PlanOutcome")
        .def_readonly("z1_star_real", &PlanOutcome::z1_star_real)
        .def_readonly("z1_star", &PlanOutcome::z1_star)
        .def_readonly("feasible_exact", &PlanOutcome::feasible_exact)
        .def_readonly("discriminant", &PlanOutcome::discriminant)
        .def_readonly("achieved_lambda", &PlanOutcome::achieved_lambda)
        .def_readonly("capped", &PlanOutcome::capped)
        .def_readonly("unbounded", &PlanOutcome::unbounded);

    m.def("new_model", &new_model, py::arg("n"), py::arg("z0"), py::arg("z1"),
          py::arg("n1"), "Validated model parameters.");
    m.def("transition_rates", &transition_rates, py::arg("p"), py::arg("k"));
    m.def("rate_matrix", &rate_matrix, py::arg("p"));

    m.def("transient_distribution", &transient_distribution, py::arg("p"), py::arg("t"),
          py::arg("tol") = 1e-10,
          "Distribution of the opinion-1 count at time t (uniformization).");
    m.def("propagate", &propagate, py::arg("p"), py::arg("init"), py::arg("t"),
          py::arg("tol") = 1e-10);
    m.def("expected_opinion1", &expected_opinion1, py::arg("p"), py::arg("t"),
          py::arg("tol") = 1e-10);
    m.def("mean_closed_form", &mean_closed_form, py::arg("p"), py::arg("t"));

    m.def("stationary_distribution", &stationary_distribution, py::arg("p"));
    m.def("equilibrium_expectation", &equilibrium_expectation, py::arg("p"));

    m.def("total_variation", &total_variation, py::arg("mu"), py::arg("nu"));
    m.def("mixing_time",
          py::overload_cast<const ModelParams&, double, double>(&mixing_time),
          py::arg("p"), py::arg("eps") = 1e-2, py::arg("t_resolution") = 0.05);

    m.def("simulate_agents",
          [](const ModelParams& p, double horizon, std::uint64_t seed) {
              return simulate_agents(p, horizon, seed);
          },
          py::arg("p"), py::arg("horizon"), py::arg("seed"));
    m.def("simulate_aggregate", &simulate_aggregate, py::arg("p"), py::arg("horizon"),
          py::arg("seed"));
    m.def("run_ensemble", &run_ensemble, py::arg("p"), py::arg("m"),
          py::arg("snapshot_times"), py::arg("base_seed"),
          py::arg("level") = SimLevel::agent, py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("confidence_interval", &confidence_interval, py::arg("stats"),
          py::arg("phi") = 1.96);
    m.def("replica_seed", &replica_seed, py::arg("base_seed"), py::arg("counter"));

    m.def("equilibrium_opinion", &equilibrium_opinion, py::arg("z0"), py::arg("z1"),
          py::arg("alpha") = 0.0);
    m.def("optimal_injection", &optimal_injection, py::arg("req"));
    m.def("conversion_feasible", &conversion_feasible, py::arg("n"), py::arg("z0"),
          py::arg("lambda_"), py::arg("alpha") = 0.0);
    m.def("max_alpha_for_conversion", &max_alpha_for_conversion, py::arg("n"),
          py::arg("z0"), py::arg("lambda_"), py::arg("alpha_min") = 0.01);
    m.def("round_zealots", &round_zealots, py::arg("z1_real"), py::arg("z0"),
          py::arg("lambda_"), py::arg("alpha") = 0.0);
}
