#pragma once

#include <filesystem>
#include <string>

#include "dimred/cmatrix.hpp"
#include "dimred/parameter_space.hpp"

namespace dimred::ingest {

// Sample files are CSV with a JSON header carried in leading '#' comment
// lines: format_version, m, ordered parameter names, physical bounds, the
// coordinate convention ("normalized_log" or "physical"), model name, and an
// optional provenance string.  Data columns are x1..xm, f, g1..gm.  In
// normalized_log files x is xi in [-1,1]^m and g is d f / d xi; in physical
// files x is the physical point and g the physical partials, converted on
// load with the chain rule d f / d xi_i = g_i * x_i * (log_u_i - log_l_i)/2.
// Doubles are rendered shortest-round-trip, so save/load is lossless.

struct LoadedSamples {
  subspace::GradientSampleSet samples;  // always normalized_log coordinates
  models::ParameterSpace space;         // rebuilt from the header bounds
  std::string convention;               // convention found in the file
  std::string model;
};

LoadedSamples load_samples(const std::filesystem::path& path);

// As above, then verifies the header names/bounds match `expected` exactly.
subspace::GradientSampleSet load_samples(const std::filesystem::path& path,
                                         const models::ParameterSpace& expected);

// Snapshot writer (normalized_log convention).  Refuses to overwrite: sample
// files are immutable once written.
void save_samples(const subspace::GradientSampleSet& samples,
                  const models::ParameterSpace& space,
                  const std::filesystem::path& path);

}  // namespace dimred::ingest
