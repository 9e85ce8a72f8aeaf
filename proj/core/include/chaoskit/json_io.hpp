#pragma once

#include <string>

#include "chaoskit/bsde.hpp"
#include "chaoskit/ergodicity.hpp"
#include "chaoskit/grid_kernel.hpp"
#include "chaoskit/group.hpp"
#include "chaoskit/levy_model.hpp"

namespace chaoskit::json_io {

// JSON forms (ConfigError on malformed input):
//   DyadicMap   {"level": d, "perm": [..]}
//   GroupSpec   {"generators": [..], "closure_cap": n}
//   LevyModel   {"sigma": s, "atoms": [{"x": xj, "lambda": lj}, ..]}
//   GridKernel  {"n":, "level":, "atom_count":,
//                "entries": [{"cells": [..], "atoms": [..], "value": v}, ..]}
//   ChaosVector {"constant":, "level":, "atom_count":, "kernels": [..]}
//   Generator   {"a": [..], "b": [[..]..], "c": [..], "drivers": [[..]..]}

std::string to_json(const DyadicMap& g);
DyadicMap dyadic_map_from_json(const std::string& text);

std::string to_json(const GroupSpec& spec);
GroupSpec group_from_json(const std::string& text);

std::string to_json(const LevyModel& model);
LevyModel model_from_json(const std::string& text);

std::string to_json(const GridKernel& f);
GridKernel kernel_from_json(const std::string& text);

std::string to_json(const ChaosVector& cv);
ChaosVector chaos_vector_from_json(const std::string& text);

std::string to_json(const AffineGenerator& gen);
AffineGenerator generator_from_json(const std::string& text);

std::string to_json(const ErgodicityCertificate& cert);

/// Stable content hash of a kernel (degree, level and sorted entries), used
/// by CLI reports to reference kernels.
std::string kernel_content_hash(const GridKernel& f);

/// FNV-1a hash of arbitrary text (canonical config hashing).
std::string text_hash(const std::string& text);

}  // namespace chaoskit::json_io
