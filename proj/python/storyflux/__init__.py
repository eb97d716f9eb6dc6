"""News story clustering and cross-community Hawkes influence."""

from ._storyflux import (
    StoryfluxError,
    bundle_files,
    canonicalize_url,
    chi2_test,
    cluster,
    empirical_cdf,
    fit,
    fit_stories,
    impulse_density,
    ingest,
    log_likelihood,
    louvain,
    modularity,
    report,
    run,
    simulate,
    spectral_radius,
    trust_label,
)

__all__ = [
    "StoryfluxError",
    "bundle_files",
    "canonicalize_url",
    "chi2_test",
    "cluster",
    "empirical_cdf",
    "fit",
    "fit_stories",
    "impulse_density",
    "ingest",
    "log_likelihood",
    "louvain",
    "modularity",
    "report",
    "run",
    "simulate",
    "spectral_radius",
    "trust_label",
]
