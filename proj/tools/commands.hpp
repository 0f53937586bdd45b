#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sweepchi/domain.hpp"
#include "sweepchi/sweep.hpp"
#include "sweepchi/tolerances.hpp"

namespace sweepchi::cli {

enum class Format { Human, Json, Csv };

/// Exit statuses of every command.
enum Exit : int {
    kOk = 0,
    kInputError = 1,
    kGenericityExhausted = 2,
    kNonIntegral = 3,
    kDisagreement = 4,
};

struct RunConfig {
    std::string scene;                  // catalog name or scene file
    std::string direction = "random";   // "x,y,z", "x,y" or "random"
    std::uint64_t seed = 0;
    Format format = Format::Human;
    SweepOptions sweep;
    int directions = 20;                // validate: number of random directions
    int cells = 512;                    // validate: cell complex resolution
    int order = 32;                     // validate: Gauss-Bonnet quadrature order
};

/// A file path when such a file exists, otherwise a catalog name.
[[nodiscard]] Scene resolve_scene(const std::string& ref);

/// Parses "x,y,z" or "x,y" (z = 0); "random" draws uniformly on the sphere.
[[nodiscard]] Direction parse_direction(const std::string& text, Rng& rng);

int cmd_chi(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_census(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_catalog(Format format, std::ostream& out);

/// Full command line (argv[0] included) to exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sweepchi::cli
