#pragma once

// JSON density files.
//
//   {
//     "omega": 4,
//     "gamma": [[[re, im], ...], ...],        // omega x omega
//     "kappa": [[[re, im], ...], ...],        // omega x omega
//     "two_body_diag": [[x, ...], ...],       // optional, omega x omega
//     "quasiparticle_vacuum": true            // optional, alternative to the above
//   }
//
// Exactly one of "two_body_diag" or "quasiparticle_vacuum": true must be given.

#include <iosfwd>
#include <string>

#include "fermidiscord/densities.hpp"

namespace fermidiscord {

/// Parses, symmetrizes and validates. Schema errors throw InvalidInput with
/// the offending JSON path in the message.
DensitySet parse_density_json(const std::string& text);
DensitySet read_density_file(const std::string& path);

/// Serializes with an explicit two_body_diag. Doubles are written
/// round-trippably.
std::string density_to_json(const DensitySet& d);

}  // namespace fermidiscord
