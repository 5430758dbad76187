#include "ehsim/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ehsim
{

namespace
{

constexpr std::array<double SimRow::*, 12> columns{
    &SimRow::t,  &SimRow::x, &SimRow::xd,   &SimRow::xerr, &SimRow::v, &SimRow::PL,
    &SimRow::u,  &SimRow::uhat, &SimRow::d, &SimRow::dhat, &SimRow::e, &SimRow::Ps,
};

void append_number(std::string &line, double value)
{
    std::array<char, 40> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                         std::chars_format::general, 12);
    line.append(buf.data(), end);
}

} // namespace

void write_csv(std::ostream &os, const SimResult &result)
{
    os << csv_header << '\n';
    std::string line;
    for (const auto &row : result.rows) {
        line.clear();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) {
                line += ',';
            }
            append_number(line, row.*columns[c]);
        }
        line += '\n';
        os << line;
    }
}

void write_csv(const SimResult &result, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_csv(out, result);
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::vector<SimRow> read_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != csv_header) {
        throw std::runtime_error("unexpected CSV header");
    }
    std::vector<SimRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        SimRow row;
        const char *cursor = line.data();
        const char *end = line.data() + line.size();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto [next, ec] = std::from_chars(cursor, end, row.*columns[c]);
            if (ec != std::errc{}) {
                throw std::runtime_error("malformed CSV row " + std::to_string(rows.size() + 1));
            }
            cursor = next;
            if (c + 1 < columns.size()) {
                if (cursor == end || *cursor != ',') {
                    throw std::runtime_error("malformed CSV row " + std::to_string(rows.size() + 1));
                }
                ++cursor;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void summarize(std::ostream &os, const SimResult &result, double wall_seconds)
{
    const auto &m = result.metrics;
    const auto &mon = m.monitor;
    char buf[160];
    const auto line = [&](const char *label, double value) {
        std::snprintf(buf, sizeof buf, "  %-44s %.6g\n", label, value);
        os << buf;
    };
    const auto count = [&](const char *label, std::size_t value, std::size_t of) {
        std::snprintf(buf, sizeof buf, "  %-44s %zu / %zu\n", label, value, of);
        os << buf;
    };
    os << "scenario: " << to_string(result.scenario.supply_mode) << " Ps, "
       << result.scenario.duration << " s"
       << (result.scenario.freeze_adaptation ? ", adaptation frozen" : "") << '\n';
    line("RMS xerr, first quarter [m]", m.rms_xerr_first_quarter);
    line("RMS xerr, final quarter [m]", m.rms_xerr_final_quarter);
    line("max |xerr| after transient [m]", m.max_abs_xerr_post_transient);
    line("mean |dhat - d|, first quarter [V]", m.mean_abs_dhat_err_first_quarter);
    line("mean |dhat - d|, final quarter [V]", m.mean_abs_dhat_err_final_quarter);
    line("e^2 non-increasing share after transient", m.e2_nonincreasing_fraction);
    count("monitor: RMS(e) window growth", mon.window_violations, mon.windows_checked);
    count("monitor: final mean |e| above threshold", mon.final_error_violations, 1);
    count("monitor: sgn(dhat) mismatch, final window", mon.sign_violations, mon.sign_samples);
    line("wall-clock time [s]", wall_seconds);
}

} // namespace ehsim
