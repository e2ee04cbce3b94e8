#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mslcp/error.hpp"
#include "mslcp/generator.hpp"
#include "mslcp/instance_io.hpp"
#include "mslcp/lbbd.hpp"
#include "mslcp/report.hpp"

namespace fs = std::filesystem;
using namespace mslcp;

namespace {

enum Exit { kOk = 0, kInput = 2, kUnsupported = 3, kInfeasible = 4, kInternal = 5 };

struct GeneratorFlags {
    int units = 3;
    int locations = 2;
    int days = 2;
    double pressure = 0.25;
    std::vector<std::string> types;  // NAME:MINUTES:HOURS
    int teams = 1;
    int max_day_locations = 5;

    void add(CLI::App& app) {
        app.add_option("--units", units, "Rolling stock units")->check(CLI::PositiveNumber);
        app.add_option("--locations", locations, "Maintenance locations")->check(CLI::PositiveNumber);
        app.add_option("--days", days, "Horizon in days")->check(CLI::PositiveNumber);
        app.add_option("--pressure", pressure, "Share of daytime shifts with an engineered conflict")
            ->check(CLI::Range(0.0, 1.0));
        app.add_option("--type", types, "Maintenance type NAME:MINUTES:HOURS (repeatable)");
        app.add_option("--teams", teams, "Teams per shift")->check(CLI::PositiveNumber);
        app.add_option("--max-day-locations", max_day_locations, "Daytime location limit")
            ->check(CLI::PositiveNumber);
    }

    GeneratorSpec spec(std::uint64_t seed) const {
        GeneratorSpec s;
        s.units = units;
        s.locations = locations;
        s.days = days;
        s.conflict_pressure = pressure;
        s.seed = seed;
        s.policy.teams_per_shift = teams;
        s.policy.max_day_locations = max_day_locations;
        if (!types.empty()) {
            s.types.clear();
            for (const auto& text : types) {
                std::istringstream in(text);
                MaintenanceType t;
                std::string minutes, hours;
                if (!std::getline(in, t.name, ':') || !std::getline(in, minutes, ':') || !std::getline(in, hours))
                    throw InputError("type must be NAME:MINUTES:HOURS: " + text);
                try {
                    t.duration_min = std::stoi(minutes);
                    t.interval_hr = std::stod(hours);
                } catch (const std::exception&) {
                    throw InputError("type must be NAME:MINUTES:HOURS: " + text);
                }
                t.id = static_cast<int>(s.types.size());
                s.types.push_back(t);
            }
        }
        return s;
    }
};

struct SolveFlags {
    std::string instance;
    std::string strategy = "mincut";
    int cuts_per_call = 1;
    std::uint64_t seed = 0;
    std::string time_limit = "1h";
    std::string master_budget;
    std::string scenario = "all-shifts";
    std::string shift;
    std::string scope = "day";
    int max_iterations = 0;
    std::string out = "mslcp-out";
    bool quiet = false;
    GeneratorFlags gen;

    void add(CLI::App& app, bool with_strategy) {
        app.add_option("instance", instance, "Instance file; generated from the generator flags when omitted");
        if (with_strategy) {
            app.add_option("--strategy", strategy, "naive, basic, bsh or mincut");
            app.add_option("--scenario", scenario, "all-shifts or single-shift")
                ->check(CLI::IsMember({"all-shifts", "single-shift"}));
            app.add_option("--shift", shift, "Target of single-shift, e.g. L0/day/1");
        }
        app.add_option("--cuts-per-call", cuts_per_call, "Cuts per violated shift (heuristics)")
            ->check(CLI::PositiveNumber);
        app.add_option("--seed", seed, "Seed for generation and the cut heuristics");
        app.add_option("--time-limit", time_limit, "Wall-time limit, e.g. 2h, 30m, 45s");
        app.add_option("--master-budget", master_budget, "Time budget per master solve");
        app.add_option("--scope", scope, "Capacity scope of all-shifts: day or all")
            ->check(CLI::IsMember({"day", "all"}));
        app.add_option("--max-iterations", max_iterations, "Stop after this many iterations (0: no cap)");
        app.add_option("-o,--out", out, "Output directory");
        app.add_flag("-q,--quiet", quiet, "No per-iteration progress");
        gen.add(app);
    }
};

Instance obtain_instance(const SolveFlags& f) {
    if (!f.instance.empty()) {
        Instance inst = load_instance(f.instance);
        const auto problems = validate(inst);
        if (!problems.empty()) throw InputError(problems.front().entity + ": " + problems.front().message);
        return inst;
    }
    return generate_instance(f.gen.spec(f.seed));
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

ShiftScope make_scope(const SolveFlags& f, const std::string& scenario, const Instance& inst) {
    ShiftScope scope;
    if (scenario == "single-shift") {
        if (f.shift.empty()) throw InputError("single-shift needs --shift");
        const ShiftKey key = parse_shift_key(f.shift, inst);
        bool exists = false;
        for (const auto& u : inst.units)
            for (const auto& m : u.mos) exists = exists || assign_shift(m, inst) == key;
        if (!exists) throw InputError("shift " + f.shift + " has no MO in the instance");
        scope.kind = ShiftScope::Kind::Explicit;
        scope.shifts = {key};
    } else {
        scope.kind = f.scope == "all" ? ShiftScope::Kind::All : ShiftScope::Kind::AllDay;
    }
    return scope;
}

struct Outcome {
    RunResult result;
    double elapsed_s = 0.0;
};

Outcome solve_into(const Instance& inst, const SolveFlags& f, const CutStrategy& strategy, const ShiftScope& scope,
                   const std::string& scenario, const fs::path& dir, const std::string& tag) {
    fs::create_directories(dir);
    ConvergenceLog log(dir / "convergence.csv");
    RunOptions opts;
    opts.scope = scope;
    opts.strategy = strategy;
    opts.time_limit = parse_duration(f.time_limit);
    if (!f.master_budget.empty()) opts.master_budget = parse_duration(f.master_budget);
    opts.max_iterations = f.max_iterations;
    opts.on_iteration = [&](const IterationRecord& rec) {
        log.append(rec);
        if (f.quiet) return;
        std::printf("%s iter %3d  obj %.6f (%d night, %d total)  violated %d  cuts +%d = %d  %.3f s\n",
                    tag.c_str(), rec.iteration, rec.master_objective, rec.night_count, rec.total_count,
                    rec.violated_shifts, rec.cuts_added, rec.cumulative_cuts, rec.elapsed_s);
        std::fflush(stdout);
    };

    const auto started = std::chrono::steady_clock::now();
    Outcome out;
    out.result = run(inst, opts);
    out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    write_file(dir / "gantt.txt", render_gantt(out.result, inst));
    write_file(dir / "schedules.json", schedules_document(out.result, inst));
    RunSummaryInput summary{&inst, &out.result, strategy, scope, scenario, out.elapsed_s};
    write_file(dir / "summary.json", summary_document(summary));
    return out;
}

CutStrategy make_strategy(const std::string& name, const SolveFlags& f) {
    const auto kind = parse_procedure(name);
    if (!kind) throw InputError("unknown strategy " + name);
    CutStrategy s;
    s.kind = *kind;
    s.cuts_per_call = f.cuts_per_call;
    s.seed = f.seed;
    return s;
}

void print_final(const std::string& tag, const Outcome& o) {
    const auto& r = o.result;
    if (r.final_solution)
        std::printf("%s %s after %zu iterations: objective %.6f (%d night, %d total), %zu cuts, %.3f s\n", tag.c_str(),
                    to_string(r.status), r.history.size(), r.final_solution->objective, r.final_solution->night_count,
                    r.final_solution->total_count, r.cuts.size(), o.elapsed_s);
    else
        std::printf("%s %s without a master solution, %.3f s\n", tag.c_str(), to_string(r.status), o.elapsed_s);
}

// Runs `body`, turning library errors into an exit code and error.json.
template <class F>
int guarded(const std::string& out_dir, F&& body) {
    auto fail = [&](int code, const char* kind, const std::string& message) {
        std::cerr << "error: " << message << "\n";
        if (!out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(out_dir, ec);
            std::ofstream(fs::path(out_dir) / "error.json") << error_document(kind, message);
        }
        return code;
    };
    try {
        return body();
    } catch (const MasterInfeasible& e) {
        std::string message = e.what();
        for (const auto& c : e.cuts) message += "\n  " + to_string(c);
        return fail(kInfeasible, "master_infeasible", message);
    } catch (const InputError& e) {
        return fail(kInput, "input", e.what());
    } catch (const ContractError& e) {
        return fail(kInput, "contract", e.what());
    } catch (const Unsupported& e) {
        return fail(kUnsupported, "unsupported", e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, "internal", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maintenance scheduling and location choice with logic-based Benders decomposition"};
    app.require_subcommand(1);

    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic instance");
    GeneratorFlags gen;
    std::uint64_t gen_seed = 7;
    std::string gen_out;
    gen.add(*gen_cmd);
    gen_cmd->add_option("--seed", gen_seed, "Generator seed");
    gen_cmd->add_option("-o,--out", gen_out, "Output file (stdout when omitted)");

    auto* val_cmd = app.add_subcommand("validate", "Check an instance file");
    std::string val_path;
    val_cmd->add_option("instance", val_path, "Instance file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Run the decomposition with one cut strategy");
    SolveFlags solve;
    solve.add(*solve_cmd, true);

    auto* cmp_cmd = app.add_subcommand("compare", "Run all four cut strategies on one instance");
    SolveFlags cmp;
    cmp.cuts_per_call = 15;
    std::string cmp_strategies = "naive,basic,bsh,mincut";
    cmp.add(*cmp_cmd, false);
    cmp_cmd->add_option("--strategies", cmp_strategies, "Comma-separated strategies");

    CLI11_PARSE(app, argc, argv);

    if (*gen_cmd) {
        return guarded("", [&] {
            const std::string text = dump_instance(generate_instance(gen.spec(gen_seed)));
            if (gen_out.empty())
                std::cout << text;
            else
                write_file(gen_out, text);
            return int{kOk};
        });
    }

    if (*val_cmd) {
        return guarded("", [&] {
            const Instance inst = load_instance(val_path);
            const auto problems = validate(inst);
            for (const auto& p : problems) std::cout << p.entity << ": " << p.message << "\n";
            if (!problems.empty()) return int{kInput};
            std::cout << "ok: " << inst.units.size() << " units, " << inst.locations.size() << " locations, "
                      << inst.mo_count() << " MOs, " << inst.types.size() << " types\n";
            return int{kOk};
        });
    }

    if (*solve_cmd) {
        return guarded(solve.out, [&] {
            const Instance inst = obtain_instance(solve);
            const CutStrategy strategy = make_strategy(solve.strategy, solve);
            const ShiftScope scope = make_scope(solve, solve.scenario, inst);
            const Outcome o = solve_into(inst, solve, strategy, scope, solve.scenario, solve.out, describe(strategy));
            print_final(describe(strategy), o);
            return int{kOk};
        });
    }

    return guarded(cmp.out, [&] {
        const Instance inst = obtain_instance(cmp);
        const ShiftScope scope = make_scope(cmp, "all-shifts", inst);
        std::ostringstream table;
        table << "format_version,strategy,status,iterations,night_count,total_count,objective,cuts,elapsed_s,"
                 "mean_iteration_s\n";
        std::set<std::pair<int, int>> finals;
        bool all_optimal = true;
        std::stringstream names(cmp_strategies);
        for (std::string name; std::getline(names, name, ',');) {
            const CutStrategy strategy = make_strategy(name, cmp);
            const std::string tag = describe(strategy);
            const Outcome o = solve_into(inst, cmp, strategy, scope, "all-shifts", fs::path(cmp.out) / to_string(strategy.kind), tag);
            print_final(tag, o);
            const auto& r = o.result;
            double iter_s = 0.0;
            for (const auto& rec : r.history) iter_s += rec.times.total();
            char row[256];
            std::snprintf(row, sizeof row, "%d,%s,%s,%zu,%d,%d,%.6f,%zu,%.3f,%.3f\n", kReportFormatVersion,
                          tag.c_str(), to_string(r.status), r.history.size(),
                          r.final_solution ? r.final_solution->night_count : -1,
                          r.final_solution ? r.final_solution->total_count : -1,
                          r.final_solution ? r.final_solution->objective : -1.0, r.cuts.size(), o.elapsed_s,
                          r.history.empty() ? 0.0 : iter_s / static_cast<double>(r.history.size()));
            table << row;
            if (r.status == RunStatus::Optimal && r.final_solution)
                finals.insert({r.final_solution->night_count, r.final_solution->total_count});
            else
                all_optimal = false;
        }
        write_file(fs::path(cmp.out) / "compare.csv", table.str());
        if (all_optimal) std::printf(finals.size() == 1 ? "final objectives agree\n" : "final objectives DIFFER\n");
        return int{finals.size() <= 1 ? kOk : kInternal};
    });
}
