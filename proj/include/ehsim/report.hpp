#pragma once

#include "ehsim/sim.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace ehsim
{

/// Column order of the CSV time series. Stable.
inline constexpr std::string_view csv_header = "t,x,xd,xerr,v,PL,u,uhat,d,dhat,e,Ps";

/// One row per control sample, 12 significant digits, LF line endings.
void write_csv(std::ostream &os, const SimResult &result);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const SimResult &result, const std::filesystem::path &path);

/// Reads back a stream produced by write_csv.
std::vector<SimRow> read_csv(std::istream &is);

/// Metrics table for standard output.
void summarize(std::ostream &os, const SimResult &result, double wall_seconds);

} // namespace ehsim
