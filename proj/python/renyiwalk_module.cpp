#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/free_solver.hpp"
#include "renyiwalk/renyi.hpp"
#include "renyiwalk/sws_solver.hpp"
#include "renyiwalk/tilting.hpp"
#include "renyiwalk/walkspec.hpp"

namespace py = pybind11;
namespace rw = renyiwalk;

namespace {

rw::AlphaParam to_alpha(const py::object& a) {
    if (py::isinstance<py::str>(a)) return rw::AlphaParam::parse(a.cast<std::string>());
    const double v = a.cast<double>();
    if (std::isinf(v)) return rw::AlphaParam::infinity();
    if (v == 0.0) return rw::AlphaParam::zero();
    if (v == 1.0) return rw::AlphaParam::one();
    return rw::AlphaParam::finite(v);
}

rw::FiniteDistribution to_dist(const std::vector<double>& probs) {
    return rw::FiniteDistribution::from_probabilities(probs);
}

py::dict series_to_dict(const rw::EntropySeries& s) {
    py::list n, H, H_over_n, cesaro;
    for (const auto& r : s.records) {
        n.append(r.n);
        H.append(r.H);
        H_over_n.append(r.H_over_n);
        cesaro.append(r.cesaro);
    }
    py::dict out;
    out["alpha"] = s.alpha.str();
    out["n"] = n;
    out["H"] = H;
    out["H_over_n"] = H_over_n;
    out["cesaro"] = cesaro;
    out["fekete_upper"] = s.fekete_upper;
    out["cesaro_estimate"] = s.cesaro_estimate;
    out["truncated"] = s.truncated;
    out["method"] = std::string(rw::method_name(s.method));
    return out;
}

rw::SeriesMethod to_method(const std::string& name, const rw::Walk& walk) {
    if (name == "auto") return walk.default_method();
    return rw::parse_method(name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Renyi entropies of random walks on groups";

    m.def(
        "renyi_entropy",
        [](const std::vector<double>& probs, const py::object& alpha) {
            return rw::renyi_entropy(to_dist(probs), to_alpha(alpha));
        },
        py::arg("probs"), py::arg("alpha"),
        "H_alpha of a probability vector, in nats.");

    m.def(
        "cumulant",
        [](const std::vector<double>& probs, double t) {
            return rw::cumulant(to_dist(probs), t);
        },
        py::arg("probs"), py::arg("t"),
        "Cumulant generating function of the log-likelihood, K(t) = log sum p^(1-t).");

    m.def(
        "free_h_closed",
        [](int d, const py::object& alpha) {
            return rw::free_h_closed(d, to_alpha(alpha)).value;
        },
        py::arg("d"), py::arg("alpha"),
        "Asymptotic Renyi entropy of the simple random walk on the free group F_d.");

    m.def(
        "sws_h_closed",
        [](const py::object& alpha) { return rw::sws_h_closed(to_alpha(alpha)).value; },
        py::arg("alpha"),
        "Asymptotic Renyi entropy of the switch-walk-switch walk on Z_2 wr Z.");

    m.def(
        "free_renyi_exact",
        [](int d, int n, const py::object& alpha) {
            return rw::free_renyi_exact(d, n, to_alpha(alpha));
        },
        py::arg("d"), py::arg("n"), py::arg("alpha"),
        "Exact H_alpha(mu^(n)) for the free-group SRW.");

    m.def(
        "sws_renyi_exact",
        [](int n, const py::object& alpha, double beta) {
            return rw::sws_renyi_exact(n, to_alpha(alpha), beta);
        },
        py::arg("n"), py::arg("alpha"), py::arg("beta") = 0.0,
        "Exact H_alpha(mu_beta^(n)) for the (possibly drifting) SWS walk.");

    m.def("sws_max_atom", &rw::sws_max_atom, py::arg("n"), py::arg("beta") = 0.0,
          "Largest atom of mu_beta^(n).");

    m.def(
        "distance_distribution",
        [](int d, int n) {
            const rw::DistVector law = rw::distance_distribution(d, n);
            std::vector<double> out(law.size());
            for (int k = law.k_min; k <= law.n; ++k)
                out[static_cast<std::size_t>(k - law.k_min)] = law.prob_at(k);
            return out;
        },
        py::arg("d"), py::arg("n"),
        "Law of the distance chain D_n as a probability vector over 0..n.");

    m.def(
        "coupling_check",
        [](int d, int n) {
            const rw::CouplingReport r = rw::coupling_check(d, n);
            py::dict out;
            out["ok"] = r.ok;
            out["min_ratio"] = r.min_ratio;
            out["max_ratio"] = r.max_ratio;
            out["violated_k"] = r.violated_k;
            return out;
        },
        py::arg("d"), py::arg("n"),
        "Checks (1/n) P[E_n=k] <= P[D_n=k] <= 2 P[E_n=k] exactly.");

    py::class_<rw::Walk>(m, "Walk")
        .def_static(
            "free_srw",
            [](int d) { return rw::Walk::free_srw(d, rw::WeightMode::LogFloat); },
            py::arg("d"))
        .def_static(
            "sws", [](double beta) { return rw::Walk::sws(beta, rw::WeightMode::LogFloat); },
            py::arg("beta") = 0.0)
        .def_static(
            "from_spec_file",
            [](const std::string& path) {
                return rw::build_walk(rw::parse_walk_spec_file(path));
            },
            py::arg("path"))
        .def(
            "tilt",
            [](const rw::Walk& w, double t) {
                if (w.builtin == rw::Walk::Builtin::Sws)
                    return rw::Walk::sws(std::tanh(t + std::atanh(w.sws_beta)),
                                         rw::WeightMode::LogFloat);
                return rw::Walk::custom(rw::tilt(w.step, t).measure);
            },
            py::arg("t"))
        .def(
            "entropy_series",
            [](const rw::Walk& w, const py::object& alpha, int n_max,
               const std::string& method) {
                return series_to_dict(rw::entropy_series(w, to_alpha(alpha), n_max,
                                                         to_method(method, w)));
            },
            py::arg("alpha"), py::arg("n_max"), py::arg("method") = "auto")
        .def(
            "min_entropy_series",
            [](const rw::Walk& w, int n_max, const std::string& method) {
                const auto est =
                    rw::min_entropy_series(w, n_max, to_method(method, w));
                py::list n, value;
                for (const auto& r : est.records) {
                    n.append(r.n);
                    value.append(r.value);
                }
                py::dict out;
                out["n"] = n;
                out["value"] = value;
                out["limit_estimate"] = est.limit_estimate;
                out["identity_shortcut"] = est.identity_shortcut;
                return out;
            },
            py::arg("n_max"), py::arg("method") = "auto")
        .def(
            "profile",
            [](const rw::Walk& w, const std::vector<py::object>& alphas, int n_max,
               const std::string& method) {
                std::vector<rw::AlphaParam> grid;
                grid.reserve(alphas.size());
                for (const auto& a : alphas) grid.push_back(to_alpha(a));
                const auto rows =
                    rw::profile_estimate(w, grid, n_max, to_method(method, w));
                py::list out;
                for (const auto& r : rows) {
                    py::dict row;
                    row["alpha"] = r.alpha.str();
                    row["fekete_upper"] = r.fekete_upper;
                    row["cesaro_estimate"] = r.cesaro_estimate;
                    row["closed_form"] =
                        r.closed_form ? py::object(py::float_(*r.closed_form))
                                      : py::object(py::none());
                    out.append(std::move(row));
                }
                return out;
            },
            py::arg("alphas"), py::arg("n_max"), py::arg("method") = "auto")
        .def_property_readonly("symmetric", &rw::Walk::symmetric);
}
