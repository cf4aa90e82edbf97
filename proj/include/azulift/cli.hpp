#pragma once

#include "azulift/lift.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace azulift::cli {

enum Exit : int { kOk = 0, kSemantic = 1, kParse = 2, kSearch = 3 };

/// Parse errors map to 2, search exhaustion to 3, everything else to 1.
[[nodiscard]] int exit_code(const Error& e);

struct LiftOptions {
    std::string out;                // certificate path; default <input>.cert.json
    std::optional<int> trunc;       // overrides the scenario's N
    std::optional<uint64_t> seed;   // overrides AZULIFT_SEED and the scenario's rng_seed
    bool quiet = false;
};

/// Seed precedence: --seed, then AZULIFT_SEED, then the file.
void apply_overrides(LiftScenario& sc, const LiftOptions& opt);

int cmd_symbols(const std::string& a, const std::string& b, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_lift(const std::string& path, const LiftOptions& opt, std::ostream& out, std::ostream& err);
/// Every *.json scenario in `dir`, in name order, one certificate each into `out_dir`.
/// Returns the largest exit code.
int cmd_lift_batch(const std::string& dir, const std::string& out_dir, const LiftOptions& opt, std::ostream& out,
                   std::ostream& err);
int cmd_verify(const std::string& path, bool json, std::ostream& out, std::ostream& err);
int cmd_solve_norm(const std::string& field, const std::string& n, const std::string& b, std::ostream& out,
                   std::ostream& err);
int cmd_find_slot(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace azulift::cli
