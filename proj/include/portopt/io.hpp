#pragma once

#include <string>

#include "portopt/frontier.hpp"

namespace portopt {

/// Frontier CSV schema: header `risk,return,lambda,assets,weights`; one row
/// per point; `assets` and `weights` are `;`-separated lists of the held
/// assets (empty when the point carries no portfolio); `lambda` is empty
/// for exact-frontier rows. Floats are printed with 17 significant digits
/// so values round-trip exactly and identical runs produce identical bytes.
///
/// All writers are atomic: content goes to `<path>.tmp` and is renamed into
/// place only on success, so failures leave no partial artifact.
void write_frontier_csv(const Frontier& frontier, const std::string& path);

/// Parses a frontier CSV written by write_frontier_csv. Header or field
/// violations throw SchemaMismatch naming the offending column and line.
Frontier read_frontier_csv(const std::string& path);

/// Report CSV schema: header `metric,value` followed by rows median_error,
/// mean_error, risk_error, return_error, time_seconds.
void write_report_csv(const DeviationReport& report, const std::string& path);

/// Self-contained scatter/line SVG of one frontier (risk on x, return on
/// y), with an optional second frontier overlaid as points for comparison.
void write_frontier_svg(const Frontier& line, const Frontier* scatter,
                        const std::string& title, const std::string& path);

}  // namespace portopt
