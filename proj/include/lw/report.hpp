#pragma once

#include <cstdint>
#include <string>

namespace lw {

/// Outcome of one inequality evaluation, normalized so that ratio >= 1
/// means the statement holds (bound side over easy side for "<=",
/// flipped for ">=").
struct VerificationReport {
    std::string statement;
    int variant = 0;
    double lhs = 0.0;      // the side the theorem bounds
    double rhs = 0.0;      // constant * product side
    double ratio = 0.0;    // >=-normalized
    double constant = 0.0; // full constant used (BL factor included)
    double mc_sigma = 0.0; // nonzero when a side was Monte-Carlo estimated
    bool degenerate = false;
    std::uint64_t inputs_digest = 0;
    std::string notes;
};

} // namespace lw
