#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "storyflux/hawkes.h"

namespace storyflux {

// Conjugate priors. Gamma parameters are shape/rate; the impulse prior is
// Normal-Gamma(mu0, kappa0, tau_shape, tau_rate) on (mu, tau) of
// logit(delay / dt_max).
struct HawkesPriors {
  double background_shape = 1.0;
  double background_rate = 1.0;
  double weight_shape = 1.0;
  double weight_rate = 2.0;
  double mu0 = 0.0;
  double kappa0 = 1.0;
  double tau_shape = 2.0;
  double tau_rate = 2.0;

  // Throws Error(InvalidPriors) unless every parameter is positive (mu0 finite).
  void validate() const;
};

struct FitOptions {
  int n_iters = 500;
  int n_burnin = 200;
  std::uint64_t seed = 0;
  double dt_max = 24.0;
  // When set, parameters stay at this model and only parents are sampled.
  std::optional<HawkesModel> fixed_model;
  bool trace_log_likelihood = true;
};

struct PosteriorDraw {
  HawkesModel model;
  // parent_counts(s, d): events on d whose sampled parent lies on s.
  Matrix parent_counts;
  std::vector<std::size_t> background_counts;
};

struct PosteriorSamples {
  std::vector<PosteriorDraw> draws;          // after burn-in
  std::vector<std::size_t> event_counts;     // N_k
  std::vector<double> log_likelihood_trace;  // one entry per iteration
};

// Gibbs sampler alternating parent assignment, background/weight updates
// and impulse updates. Events sharing a timestamp never parent each other.
// Throws Error(EmptyEvents) and Error(InvalidPriors).
PosteriorSamples fit(const EventSeq& seq, const HawkesPriors& priors, const FitOptions& options);

}  // namespace storyflux
