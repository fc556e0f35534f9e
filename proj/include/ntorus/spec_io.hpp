#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ntorus/designs.hpp"
#include "ntorus/immersion.hpp"
#include "ntorus/verify.hpp"

namespace ntorus {

struct ImmersionSpec {
  std::string type;  // fourier, clifford or gromov (integer frame matrix)
  FourierImmersion immersion;
  std::optional<FrameMatrix> design;  // gromov specs only
};

// Immersion spec JSON:
//   {"type": "fourier", "n", "q", "scale", "translate", "terms": [{"k", "a", "b"}]}
//   {"type": "clifford", "m"} and {"type": "gromov", "B"}, both with
//   optional "scale" and "translate".
// Throws ParseError naming the offending field.
ImmersionSpec parse_immersion_spec(std::string_view text);
ImmersionSpec parse_immersion_json(const nlohmann::json& doc);
ImmersionSpec load_immersion_spec(const std::string& path);

// Fourier-type spec reproducing the immersion exactly.
nlohmann::json immersion_to_json(const FourierImmersion& imm);
nlohmann::json subtorus_spec_json(const FrameMatrix& B);

// m lines of n integers; blank lines and '#' comments are ignored.
FrameMatrix parse_frame_matrix(std::string_view text);
FrameMatrix load_frame_matrix(const std::string& path);

nlohmann::json to_json(const DesignReport& report);
nlohmann::json to_json(const CheckReport& report);

// Throws ParseError when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace ntorus
