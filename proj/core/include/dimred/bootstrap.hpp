#pragma once

#include <cstdint>

#include "dimred/cmatrix.hpp"
#include "dimred/spectrum.hpp"

namespace dimred::subspace {

// Nonparametric bootstrap over a gradient sample set: each replicate
// resamples the records with replacement, re-estimates C, and re-solves the
// eigenproblem.  Reports per-eigenvalue envelopes/percentiles and, for each
// candidate dimension n, the distance of the replicate subspace to the
// full-sample subspace.  Replicate r draws from the independent stream
// (seed, kBootstrapBase + r), so results do not depend on worker count.
BootstrapSummary bootstrap_spectrum(const GradientSampleSet& samples,
                                    int replicates, std::uint64_t seed,
                                    int threads = 0);

}  // namespace dimred::subspace
