#include "storyflux/gibbs.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "storyflux/error.h"

namespace storyflux {

void HawkesPriors::validate() const {
  for (double v : {background_shape, background_rate, weight_shape, weight_rate, kappa0,
                   tau_shape, tau_rate}) {
    if (!(v > 0.0) || std::isinf(v)) {
      throw Error(ErrorKind::InvalidPriors, "prior parameters must be positive and finite");
    }
  }
  if (!std::isfinite(mu0)) throw Error(ErrorKind::InvalidPriors, "mu0 must be finite");
}

namespace {

// Candidate parents of each event: a contiguous index range of strictly
// earlier events closer than dt_max, with their logit delays and Jacobians.
struct CandidateTable {
  std::vector<std::size_t> begin;  // per event, index into the flat arrays
  std::vector<std::size_t> first_parent;
  std::vector<double> logit_delay;
  std::vector<double> log_jacobian;
};

CandidateTable build_candidates(const EventSeq& seq, double dt_max) {
  const auto& ev = seq.events;
  CandidateTable table;
  table.begin.reserve(ev.size() + 1);
  table.first_parent.reserve(ev.size());
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t n = 0; n < ev.size(); ++n) {
    const double t = ev[n].time;
    while (ev[lo].time <= t - dt_max) ++lo;
    while (ev[hi].time < t) ++hi;
    table.begin.push_back(table.logit_delay.size());
    table.first_parent.push_back(lo);
    for (std::size_t m = lo; m < hi; ++m) {
      const double delay = t - ev[m].time;
      const double u = delay / dt_max;
      table.logit_delay.push_back(std::log(u) - std::log1p(-u));
      table.log_jacobian.push_back(std::log(dt_max) - std::log(delay) - std::log(dt_max - delay));
    }
  }
  table.begin.push_back(table.logit_delay.size());
  return table;
}

double sample_gamma(std::mt19937_64& rng, double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(rng);
}

}  // namespace

PosteriorSamples fit(const EventSeq& seq, const HawkesPriors& priors, const FitOptions& options) {
  priors.validate();
  if (seq.events.empty()) throw Error(ErrorKind::EmptyEvents, "no events to fit");
  if (seq.processes == 0) throw Error(ErrorKind::InvalidArgument, "K must be >= 1");
  if (options.n_iters <= 0 || options.n_burnin < 0 || options.n_burnin >= options.n_iters) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= n_burnin < n_iters");
  }
  if (!(options.dt_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt_max must be > 0");

  const std::size_t k = seq.processes;
  const auto& ev = seq.events;
  const std::size_t n_events = ev.size();
  const double horizon = seq.horizon;
  for (std::size_t n = 0; n < n_events; ++n) {
    if (!(ev[n].time >= 0.0) || !(ev[n].time < horizon) || ev[n].process >= k ||
        (n > 0 && ev[n].time < ev[n - 1].time)) {
      throw Error(ErrorKind::EventOutsideWindow, "events must be sorted within [0, horizon)");
    }
  }

  PosteriorSamples samples;
  samples.event_counts = seq.counts();
  const auto& counts = samples.event_counts;

  HawkesModel model;
  if (options.fixed_model) {
    model = *options.fixed_model;
    model.validate();
    if (model.size() != k) throw Error(ErrorKind::InvalidArgument, "fixed model has wrong K");
  } else {
    model.dt_max = options.dt_max;
    model.background.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
      model.background[p] = counts[p] > 0 ? static_cast<double>(counts[p]) / horizon
                                          : priors.background_shape / priors.background_rate;
    }
    model.weights = Matrix(k, k, priors.weight_shape / priors.weight_rate);
    model.impulse_mu = Matrix(k, k, priors.mu0);
    model.impulse_tau = Matrix(k, k, priors.tau_shape / priors.tau_rate);
  }
  const CandidateTable cand = build_candidates(seq, model.dt_max);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  // parent[n] = index of the parent event, or n_events for background.
  std::vector<std::size_t> parent(n_events, n_events);
  std::vector<double> weight_buf;

  for (int iter = 0; iter < options.n_iters; ++iter) {
    // Parent step.
    Matrix log_norm(k, k);
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t d = 0; d < k; ++d) {
        log_norm(s, d) = 0.5 * std::log(model.impulse_tau(s, d) / (2.0 * std::numbers::pi));
      }
    }
    double ll_events = 0;
    for (std::size_t n = 0; n < n_events; ++n) {
      const std::uint32_t d = ev[n].process;
      const std::size_t b = cand.begin[n];
      const std::size_t e = cand.begin[n + 1];
      weight_buf.resize(e - b + 1);
      double total = model.background[d];
      weight_buf[0] = total;
      for (std::size_t j = b; j < e; ++j) {
        const std::uint32_t s = ev[cand.first_parent[n] + (j - b)].process;
        const double z = cand.logit_delay[j] - model.impulse_mu(s, d);
        const double w = model.weights(s, d) *
                         std::exp(cand.log_jacobian[j] + log_norm(s, d) -
                                  0.5 * model.impulse_tau(s, d) * z * z);
        total += w;
        weight_buf[j - b + 1] = total;
      }
      if (!(total > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "event with zero intensity under the model");
      }
      ll_events += std::log(total);
      const double r = uniform(rng) * total;
      std::size_t pick = static_cast<std::size_t>(
          std::upper_bound(weight_buf.begin(), weight_buf.end(), r) - weight_buf.begin());
      pick = std::min(pick, weight_buf.size() - 1);
      // Zero-weight slots share their cumulative value with the previous
      // slot, so upper_bound never lands on one.
      parent[n] = pick == 0 ? n_events : cand.first_parent[n] + (pick - 1);
    }

    Matrix parent_counts(k, k);
    std::vector<std::size_t> background_counts(k, 0);
    for (std::size_t n = 0; n < n_events; ++n) {
      if (parent[n] == n_events) {
        ++background_counts[ev[n].process];
      } else {
        parent_counts(ev[parent[n]].process, ev[n].process) += 1.0;
      }
    }

    if (options.trace_log_likelihood) {
      double compensator = 0;
      for (double bg : model.background) compensator += bg * horizon;
      for (const auto& event : ev) {
        for (std::size_t d = 0; d < k; ++d) {
          compensator += model.weights(event.process, d) *
                         impulse_cdf(horizon - event.time, model.impulse_mu(event.process, d),
                                     model.impulse_tau(event.process, d), model.dt_max);
        }
      }
      samples.log_likelihood_trace.push_back(ll_events - compensator);
    }

    if (!options.fixed_model) {
      // Background rates and weights.
      for (std::size_t p = 0; p < k; ++p) {
        model.background[p] = sample_gamma(rng, priors.background_shape + background_counts[p],
                                           priors.background_rate + horizon);
      }
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t d = 0; d < k; ++d) {
          model.weights(s, d) = sample_gamma(rng, priors.weight_shape + parent_counts(s, d),
                                             priors.weight_rate + counts[s]);
        }
      }

      // Impulse parameters from the attributed logit delays.
      Matrix sum(k, k), sum_sq(k, k), n_pairs(k, k);
      for (std::size_t n = 0; n < n_events; ++n) {
        if (parent[n] == n_events) continue;
        const std::size_t m = parent[n];
        const std::size_t j = cand.begin[n] + (m - cand.first_parent[n]);
        const double x = cand.logit_delay[j];
        const std::uint32_t s = ev[m].process;
        const std::uint32_t d = ev[n].process;
        sum(s, d) += x;
        sum_sq(s, d) += x * x;
        n_pairs(s, d) += 1.0;
      }
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t d = 0; d < k; ++d) {
          const double cnt = n_pairs(s, d);
          const double mean = cnt > 0 ? sum(s, d) / cnt : 0.0;
          const double scatter = cnt > 0 ? std::max(0.0, sum_sq(s, d) - cnt * mean * mean) : 0.0;
          const double kappa_n = priors.kappa0 + cnt;
          const double mu_n = (priors.kappa0 * priors.mu0 + cnt * mean) / kappa_n;
          const double shape_n = priors.tau_shape + 0.5 * cnt;
          const double rate_n = priors.tau_rate + 0.5 * scatter +
                                priors.kappa0 * cnt * (mean - priors.mu0) * (mean - priors.mu0) /
                                    (2.0 * kappa_n);
          const double tau = sample_gamma(rng, shape_n, rate_n);
          model.impulse_tau(s, d) = tau;
          model.impulse_mu(s, d) = mu_n + normal(rng) / std::sqrt(kappa_n * tau);
        }
      }
    }

    if (iter >= options.n_burnin) {
      samples.draws.push_back({model, std::move(parent_counts), std::move(background_counts)});
    }
  }
  return samples;
}

}  // namespace storyflux
