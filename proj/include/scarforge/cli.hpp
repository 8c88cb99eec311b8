#pragma once

#include "scarforge/contrastive.hpp"
#include "scarforge/scar_synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scarforge::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kInvariantViolation = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// key=value config: lambda, s1, s2, b1, b2, seed, and
/// rho_<extent> = min,max with <extent> in sub_endocardial, mid_myocardial,
/// epicardial, transmural. '#' starts a comment.
SynthConfig parse_config(std::string_view text, SynthConfig base = {});
SynthConfig load_config(const std::filesystem::path& path, SynthConfig base = {});

/// "dim p" header followed by one whitespace-separated vector per line.
std::vector<Embedding> parse_embedding_table(std::string_view text);

} // namespace scarforge::cli
