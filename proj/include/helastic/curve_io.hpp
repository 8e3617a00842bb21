#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "helastic/curve.hpp"

namespace helastic {

/// Decimal with 17 significant digits, the exchange format for every number we write.
std::string format_real(double v);

/// JSON: array of [y1, y2] pairs, one row per sample, closing segment implied.
std::string serialize_curve_json(const DiscreteCurve& c);
DiscreteCurve parse_curve_json(std::string_view text);

/// CSV: header "y1,y2" then one row per sample.
std::string serialize_curve_csv(const DiscreteCurve& c);
DiscreteCurve parse_curve_csv(std::string_view text);

/// Dispatches on extension (.json or .csv). Throws std::runtime_error on I/O
/// failure and ContractError on malformed content.
DiscreteCurve read_curve(const std::filesystem::path& path);
void write_curve(const DiscreteCurve& c, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace helastic
