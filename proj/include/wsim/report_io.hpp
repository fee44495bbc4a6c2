#pragma once

#include <string>
#include <vector>

#include "wsim/analysis.hpp"

namespace wsim {

/// Round-trip-exact decimal rendering (up to 17 significant digits).
std::string format_double(double v);

/// Standalone POVM verification result.
struct PovmReport {
    ChannelParams params;
    DiscriminationParams disc;
    PovmValidation set_a;
    PovmValidation set_b;
};

// JSON and CSV are byte-stable for identical inputs; the table renderings
// are human-oriented and carry no stability guarantee.

std::string report_json(const ProtocolReport& r);
std::string report_csv(const ProtocolReport& r);
std::string report_table(const ProtocolReport& r, const std::vector<Check>& checks,
                         bool color);

std::string sweep_json(const std::vector<ProtocolReport>& reports);
std::string sweep_csv(const std::vector<ProtocolReport>& reports);
std::string sweep_table(const std::vector<ProtocolReport>& reports, bool color);

std::string povm_report_json(const PovmReport& r);
std::string povm_report_csv(const PovmReport& r);
std::string povm_report_table(const PovmReport& r, bool color);

}  // namespace wsim
