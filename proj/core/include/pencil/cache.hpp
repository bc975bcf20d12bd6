#pragma once

#include <optional>
#include <string>

#include "pencil/nodal_set.hpp"
#include "pencil/pencil_problem.hpp"
#include "pencil/spectrum.hpp"

namespace pencil {

/// Text caches keyed by the problem digest.  Files are written to a temporary
/// name and renamed into place, so concurrent readers never see partial data.
/// A stored sweep deeper than the request is truncated on load.

std::optional<Spectrum> load_spectrum(const std::string& dir, const std::string& digest,
                                      int n_max);
void save_spectrum(const std::string& dir, const std::string& digest, const Spectrum& spec);

std::optional<NodalSet> load_nodes(const std::string& dir, const std::string& digest, int n_max);
void save_nodes(const std::string& dir, const std::string& digest, const NodalSet& set,
                int n_max);

/// Load-or-compute wrappers.  An empty dir disables caching.
Spectrum cached_spectrum(const PencilProblem& prob, int n_max, const std::string& dir,
                         int workers = 1);

/// Zeros for every level 1..n_max (levels without interior zeros are absent),
/// alongside the spectrum that produced them.
NodalSet cached_nodal_set(const PencilProblem& prob, int n_max, const std::string& dir,
                          int workers = 1, Spectrum* spectrum_out = nullptr);

}  // namespace pencil
