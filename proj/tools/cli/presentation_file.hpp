#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "repwitness/homology.hpp"
#include "repwitness/liegrp.hpp"
#include "repwitness/words.hpp"

namespace repwitness::cli {

/// A file could not be read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PresentationFile {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::vector<std::string> gammas;
  std::vector<std::array<double, 4>> targets;
  std::optional<std::vector<int>> eta;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;

  bool operator==(const PresentationFile&) const = default;
};

/// Line-oriented format:
///   generators: x1 x2
///   relator: [x1,x2]
///   gamma: x1
///   target: 0 0 1 0
///   eta: 1 0
///   seed: 7
///   budget: 200
/// '#' starts a comment. Throws ParseError (position = line number).
PresentationFile parse_presentation_text(std::string_view text);

/// {"generators": [...], "relators": [...], "gammas": [...], "targets": [[w,x,y,z], ...],
///  "eta": [...], "seed": n, "budget": n}
PresentationFile parse_presentation_json(std::string_view text);

/// Dispatches on the extension: ".json" is structured, anything else is text.
/// Throws IoError when the file cannot be read.
PresentationFile load_presentation(const std::filesystem::path& path);

std::string to_text(const PresentationFile& f);

struct CompiledPresentation {
  Presentation presentation;
  std::vector<Word> gammas;
  std::vector<Quat> targets;
};

/// Parses every word against the generator names and checks section
/// consistency (unique names, unit targets aligned with gammas, eta length).
CompiledPresentation compile(const PresentationFile& f, const ParseOptions& options = {});

}  // namespace repwitness::cli
