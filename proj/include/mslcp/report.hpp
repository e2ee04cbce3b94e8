#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>

#include "mslcp/app.hpp"
#include "mslcp/instance.hpp"
#include "mslcp/lbbd.hpp"
#include "mslcp/shift.hpp"

namespace mslcp {

inline constexpr int kReportFormatVersion = 1;
inline constexpr int kGanttMinutesPerChar = 5;

// "2h", "30m", "45s", "1500ms" or a plain number of seconds. Throws
// InputError for anything else and for nonpositive values.
std::chrono::duration<double> parse_duration(std::string_view text);

// Minutes from the horizon start as "d<day> HH:MM".
std::string format_clock(int minutes);

// Convergence log columns, in order.
std::string convergence_header();
std::string convergence_row(const IterationRecord& rec);

// Append-only CSV; every row is flushed so that an interrupted run leaves a
// parseable prefix.
class ConvergenceLog {
public:
    explicit ConvergenceLog(const std::filesystem::path& path);
    void append(const IterationRecord& rec);

private:
    std::ofstream out_;
};

// One line per job: label, then one character per kGanttMinutesPerChar
// minutes from the earliest release to the latest deadline. '.' marks the
// job's window, the team number (1-9, then a-z) its scheduled interval.
std::string render_gantt(std::span<const Job> jobs, const ShiftSchedule& schedule, const Instance& inst);

// Gantt charts of every shift of a run, each preceded by a "# " title line.
std::string render_gantt(const RunResult& result, const Instance& inst);

std::string schedules_document(const RunResult& result, const Instance& inst);

struct RunSummaryInput {
    const Instance* inst = nullptr;
    const RunResult* result = nullptr;
    CutStrategy strategy;
    ShiftScope scope;
    std::string scenario;
    double elapsed_s = 0.0;
};

std::string summary_document(const RunSummaryInput& in);

// Machine-readable record of a failed invocation.
std::string error_document(std::string_view kind, std::string_view message);

}  // namespace mslcp
