// Python bindings for the storyflux core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "storyflux/cdf.h"
#include "storyflux/config.h"
#include "storyflux/error.h"
#include "storyflux/gibbs.h"
#include "storyflux/hawkes.h"
#include "storyflux/influence.h"
#include "storyflux/louvain.h"
#include "storyflux/pipeline.h"
#include "storyflux/trust.h"
#include "storyflux/truststats.h"
#include "storyflux/url.h"

namespace py = pybind11;
using namespace storyflux;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> from_matrix(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

HawkesModel make_model(std::vector<double> background, const std::vector<std::vector<double>>& w,
                       double mu, double tau, double dt_max) {
  return HawkesModel::uniform_impulse(std::move(background), to_matrix(w), mu, tau, dt_max);
}

EventSeq make_seq(const std::vector<std::pair<double, std::uint32_t>>& events, double horizon,
                  std::size_t processes) {
  EventSeq seq;
  for (const auto& [t, k] : events) seq.events.push_back({t, k});
  seq.horizon = horizon;
  seq.processes = processes;
  seq.normalize();
  return seq;
}

std::vector<std::pair<double, std::uint32_t>> seq_events(const EventSeq& seq) {
  std::vector<std::pair<double, std::uint32_t>> out;
  out.reserve(seq.events.size());
  for (const auto& e : seq.events) out.emplace_back(e.time, e.process);
  return out;
}

py::object influence_to_py(const InfluenceMatrix& m) {
  py::list rows;
  for (std::size_t s = 0; s < m.size; ++s) {
    py::list row;
    for (std::size_t d = 0; d < m.size; ++d) {
      const auto& c = m.at(s, d);
      if (c) row.append(py::make_tuple(c->mean, c->lo90, c->hi90));
      else row.append(py::none());
    }
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_storyflux, m) {
  m.doc() = "News story clustering and cross-community Hawkes influence";

  static py::exception<Error> error(m, "StoryfluxError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("kind") = std::string(error_kind_name(e.kind()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.def("canonicalize_url", [](const std::string& raw) { return canonicalize_url(raw).render(); },
        py::arg("url"), "Canonical host+path form of a URL");
  m.def("trust_label",
        [](double score, double cutoff) {
          return trust_label(score, cutoff) == Trust::Trustworthy ? "trustworthy" : "untrustworthy";
        },
        py::arg("score"), py::arg("cutoff") = kDefaultTrustCutoff);

  m.def("chi2_test",
        [](const ContingencyTable& table) {
          auto r = chi2_test(table);
          return py::make_tuple(r.statistic, r.dof, r.p_value);
        },
        py::arg("table"), "Pearson chi-square test: (statistic, dof, p_value)");

  m.def("empirical_cdf",
        [](std::vector<double> samples) {
          auto c = empirical_cdf(std::move(samples));
          return py::make_tuple(c.points, c.median);
        },
        py::arg("samples"));

  m.def("modularity",
        [](std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges,
           const std::vector<int>& assignment) {
          std::vector<WeightedEdge> w;
          for (const auto& [a, b, x] : edges) w.push_back({a, b, x});
          return modularity(WeightedGraph(n, w), assignment);
        },
        py::arg("n_nodes"), py::arg("edges"), py::arg("assignment"));

  m.def("louvain",
        [](std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges,
           std::uint64_t seed, bool shuffle) {
          std::vector<WeightedEdge> w;
          for (const auto& [a, b, x] : edges) w.push_back({a, b, x});
          auto p = louvain(WeightedGraph(n, w), LouvainOptions{seed, shuffle, 1e-12});
          py::dict out;
          out["assignment"] = p.assignment;
          out["n_communities"] = p.n_communities;
          out["modularity"] = p.modularity;
          out["level_modularity"] = p.level_modularity;
          return out;
        },
        py::arg("n_nodes"), py::arg("edges"), py::arg("seed") = 0, py::arg("shuffle") = false);

  m.def("impulse_density", &impulse_density, py::arg("delay"), py::arg("mu"), py::arg("tau"),
        py::arg("dt_max"));
  m.def("spectral_radius",
        [](const std::vector<std::vector<double>>& w) { return spectral_radius(to_matrix(w)); },
        py::arg("weights"));

  m.def("simulate",
        [](std::vector<double> background, const std::vector<std::vector<double>>& weights,
           double mu, double tau, double dt_max, double horizon, std::uint64_t seed) {
          auto model = make_model(std::move(background), weights, mu, tau, dt_max);
          return seq_events(simulate(model, horizon, seed));
        },
        py::arg("background"), py::arg("weights"), py::arg("mu") = 0.0, py::arg("tau") = 1.0,
        py::arg("dt_max") = 24.0, py::arg("horizon"), py::arg("seed"),
        "Simulate a Hawkes process; returns sorted (time, process) pairs");

  m.def("log_likelihood",
        [](std::vector<double> background, const std::vector<std::vector<double>>& weights,
           double mu, double tau, double dt_max,
           const std::vector<std::pair<double, std::uint32_t>>& events, double horizon) {
          const std::size_t k = background.size();
          auto model = make_model(std::move(background), weights, mu, tau, dt_max);
          return log_likelihood(model, make_seq(events, horizon, k));
        },
        py::arg("background"), py::arg("weights"), py::arg("mu") = 0.0, py::arg("tau") = 1.0,
        py::arg("dt_max") = 24.0, py::arg("events"), py::arg("horizon"));

  m.def("fit",
        [](const std::vector<std::pair<double, std::uint32_t>>& events, double horizon,
           std::size_t processes, int n_iters, int n_burnin, std::uint64_t seed, double dt_max) {
          FitOptions opt;
          opt.n_iters = n_iters;
          opt.n_burnin = n_burnin;
          opt.seed = seed;
          opt.dt_max = dt_max;
          PosteriorSamples samples;
          {
            py::gil_scoped_release release;
            samples = fit(make_seq(events, horizon, processes), HawkesPriors{}, opt);
          }
          py::list draws;
          for (const auto& d : samples.draws) {
            py::dict draw;
            draw["background"] = d.model.background;
            draw["weights"] = from_matrix(d.model.weights);
            draw["parent_counts"] = from_matrix(d.parent_counts);
            draws.append(draw);
          }
          auto raw = influence_raw(samples);
          py::dict out;
          out["draws"] = draws;
          out["event_counts"] = samples.event_counts;
          out["log_likelihood_trace"] = samples.log_likelihood_trace;
          out["influence_raw"] = influence_to_py(raw);
          out["influence_normalized"] =
              influence_to_py(influence_normalized(raw, samples.event_counts));
          return out;
        },
        py::arg("events"), py::arg("horizon"), py::arg("processes"), py::arg("n_iters") = 500,
        py::arg("n_burnin") = 200, py::arg("seed") = 0, py::arg("dt_max") = 24.0,
        "Gibbs posterior for a Hawkes process with influence summaries");

  auto stage = [](auto fn) {
    return [fn](const std::filesystem::path& config_path, py::dict overrides) {
      auto config = PipelineConfig::load(config_path);
      for (auto item : overrides)
        config.set(py::str(item.first).cast<std::string>(), py::str(item.second).cast<std::string>(),
                   std::filesystem::current_path());
      config.validate();
      pipeline::StageOutcome outcome;
      {
        py::gil_scoped_release release;
        outcome = fn(config);
      }
      return outcome.warnings;
    };
  };
  m.def("ingest", stage(pipeline::cmd_ingest), py::arg("config"), py::arg("overrides") = py::dict());
  m.def("cluster", stage(pipeline::cmd_cluster), py::arg("config"), py::arg("overrides") = py::dict());
  m.def("fit_stories", stage(pipeline::cmd_fit), py::arg("config"), py::arg("overrides") = py::dict());
  m.def("report", stage(pipeline::cmd_report), py::arg("config"), py::arg("overrides") = py::dict());
  m.def("run", stage(pipeline::run_all), py::arg("config"), py::arg("overrides") = py::dict(),
        "Run every pipeline stage; returns warnings");
  m.def("bundle_files", &pipeline::required_bundle_files);
}
