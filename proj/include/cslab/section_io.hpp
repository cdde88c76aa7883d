#pragma once

#include <string>

#include <json.hpp>

#include "cslab/sections.hpp"

namespace cslab {

// Section file format (JSON):
// {
//   "basis": "hermite" | "fock" | "extended",
//   "rank": r, "level": {"k": .., "s": ..}, "tau": [tau1, tau2],
//   "degree": N, ["beta_degree": Nb,]
//   "coeffs": [{"index": [..], "re": .., "im": ..}, ...]
// }
nlohmann::ordered_json section_to_json(const Section& s);
Section section_from_json(const nlohmann::json& j);

Section read_section_file(const std::string& path);
void write_section_file(const Section& s, const std::string& path);

// CSV rows: z1re, z1im, ..., value_re, value_im
void write_values_csv(const std::string& path, const std::vector<CVec>& zs,
                      const CVec& values);

// atomic write: temp file in the same directory, then rename
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace cslab
