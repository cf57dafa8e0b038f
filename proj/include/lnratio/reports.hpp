#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lnratio/analysis.hpp"
#include "lnratio/densities.hpp"
#include "lnratio/opmon.hpp"
#include "lnratio/representations.hpp"

namespace lnratio {

using Json = nlohmann::ordered_json;

/// Keys: rep, points[{z_re, z_im, lhs_re, lhs_im, rhs_re, rhs_im, abs_res, rel_res, quad_err}],
/// max_rel_res, pass.
Json to_json(const ResidualReport& r);
/// Keys: property, fn, grid, max_order, pass, worst_violation, witness {x, k, value}
/// (plus y for half-plane checks; null when the check passed).
Json to_json(const PropertyReport& r);
/// The sigma discrepancy report: both candidates against the oracle on the calibration grid.
Json to_json(const SigmaCalibration& c);
Json to_json(const DegreeBracket& b);
/// Summary report plus per-trial results.
Json to_json(const OperatorMonotoneReport& r);
Json to_json(const TruncatedSplit& s);

/// Writes text to a file; throws std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace lnratio
