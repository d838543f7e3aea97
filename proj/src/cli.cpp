#include "iabopt/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "iabopt/energy.hpp"
#include "iabopt/error.hpp"
#include "iabopt/graph_io.hpp"
#include "iabopt/milp.hpp"

namespace iabopt {

using nlohmann::json;

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::LocalSearch: return "local-search";
        case Method::SelectiveReduction: return "selective-reduction";
        case Method::Exact: return "exact";
    }
    return "exact";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    if (text == "local-search") return Method::LocalSearch;
    if (text == "selective-reduction") return Method::SelectiveReduction;
    if (text == "exact") return Method::Exact;
    return std::nullopt;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "results line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

std::string run_stem(int hour, Method method, ProblemKind problem) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "h%03d", hour);
    return std::string(buf) + "_" + std::string(to_string(method)) + "_" + std::string(to_string(problem));
}

}  // namespace

std::string results_csv(const std::vector<RunRecord>& records) {
    std::string out(kResultsHeader);
    out += '\n';
    for (const RunRecord& r : records) {
        out += std::to_string(r.hour) + ',' + std::string(to_string(r.method)) + ',' + std::string(to_string(r.problem)) +
               ',' + std::string(to_string(r.status)) + ',' + fmt(r.objective) + ',' + fmt(r.min_ue_mbps) + ',' +
               std::to_string(r.activated_frontends) + ',' + fmt(r.p_total_w) + ',' +
               (r.eta_mbps_per_w ? fmt(*r.eta_mbps_per_w) : std::string()) + ',' + fmt(r.runtime_s) + '\n';
    }
    return out;
}

std::vector<RunRecord> parse_results_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "results file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsHeader) throw Error(ErrorCode::ParseError, "results file has an unexpected header");
    std::vector<RunRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != 10)
            throw Error(ErrorCode::ParseError, "results line " + std::to_string(line_no) + ": expected 10 fields");
        RunRecord r;
        r.hour = static_cast<int>(to_double(cells[0], line_no));
        auto method = parse_method(cells[1]);
        auto problem = parse_problem_kind(cells[2]);
        auto status = parse_solve_status(cells[3]);
        if (!method || !problem || !status)
            throw Error(ErrorCode::ParseError, "results line " + std::to_string(line_no) + ": unknown label");
        r.method = *method;
        r.problem = *problem;
        r.status = *status;
        r.objective = to_double(cells[4], line_no);
        r.min_ue_mbps = to_double(cells[5], line_no);
        r.activated_frontends = static_cast<int>(to_double(cells[6], line_no));
        r.p_total_w = to_double(cells[7], line_no);
        if (!cells[8].empty()) r.eta_mbps_per_w = to_double(cells[8], line_no);
        r.runtime_s = to_double(cells[9], line_no);
        out.push_back(r);
    }
    return out;
}

RunOutput run_method(const ProblemInstance& instance, Method method, ProblemKind problem, const RunSettings& settings,
                     SolverBackend& backend, int hour) {
    RunOutput out;
    out.record.hour = hour;
    out.record.method = method;
    out.record.problem = problem;
    try {
        NetworkSolution sol;
        switch (method) {
            case Method::Exact:
                sol = solve_problem(instance, problem, settings.solver, backend);
                break;
            case Method::SelectiveReduction:
                sol = selective_reduction(instance, settings.prune, problem, settings.solver, backend).solution;
                break;
            case Method::LocalSearch: {
                LocalSearchOptions opts = settings.search;
                opts.solver = settings.solver;
                HeuristicResult h = problem == ProblemKind::Throughput ? local_search_throughput(instance, opts, backend)
                                                                        : local_search_energy(instance, opts, backend);
                sol = std::move(h.solution);
                out.trace = std::move(h.state.log);
                if (!settings.timing)
                    for (auto& e : out.trace) e.timestamp_s = 0.0;
                break;
            }
        }
        out.record.status = sol.status;
        out.record.runtime_s = settings.timing ? sol.runtime_s : 0.0;
        if (sol.has_values()) {
            out.record.objective = sol.objective;
            out.record.min_ue_mbps = sol.min_rate_mbps;
            out.record.activated_frontends = static_cast<int>(sol.activated_count());
            out.record.p_total_w = sol.p_total_w;
            if (sol.p_total_w > 0.0 && !instance.commodities.empty())
                out.record.eta_mbps_per_w = energy_efficiency(sol.min_rate_mbps, sol.p_total_w);
            if (!settings.timing) sol.runtime_s = 0.0;
            out.solution = std::move(sol);
        }
    } catch (const Error& e) {
        const ErrorCode c = e.code();
        const bool infeasible = c == ErrorCode::NoFeasibleWithinKmax || c == ErrorCode::DemandExceedsMaxMin ||
                                c == ErrorCode::NoFeasibleStart || c == ErrorCode::EmptyCommodities;
        out.record.status = infeasible ? SolveStatus::Infeasible : SolveStatus::Error;
        out.error = e.what();
    } catch (const std::exception& e) {
        out.record.status = SolveStatus::Error;
        out.error = e.what();
    }
    return out;
}

json solution_file_json(const ProblemInstance& instance, const NetworkSolution& solution) {
    return {{"settings", instance_settings_to_json(instance)},
            {"solution", solution_to_json(solution, instance.graph, instance.commodities)}};
}

std::vector<RunRecord> cmd_sweep(const SweepRequest& req) {
    validate(req.config);
    if (req.methods.empty() || req.problems.empty() || req.hours.empty())
        throw Error(ErrorCode::InvalidArgument, "sweep needs at least one method, problem and hour");
    for (int h : req.hours)
        if (!req.profile.p.count(h)) throw Error(ErrorCode::MissingHour, "load profile has no hour " + std::to_string(h));

    struct Task {
        int hour;
        Method method;
        ProblemKind problem;
    };
    std::vector<Task> tasks;
    std::vector<int> hours = req.hours;
    std::sort(hours.begin(), hours.end());
    hours.erase(std::unique(hours.begin(), hours.end()), hours.end());
    std::vector<Method> methods = req.methods;
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    for (int h : hours)
        for (Method m : methods)
            for (ProblemKind p : req.problems) tasks.push_back({h, m, p});

    struct Done {
        RunOutput run;
        std::optional<json> solution_file;
    };
    std::vector<Done> done(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        auto backend = make_default_backend();
        std::map<int, std::optional<ProblemInstance>> cache;
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& t = tasks[i];
            auto& inst = cache[t.hour];
            try {
                if (!inst) inst = scenario_instance(req.config, generate(req.config, req.profile, t.hour));
            } catch (const Error& e) {
                done[i].run.record = {t.hour, t.method, t.problem, SolveStatus::Error, 0, 0, 0, 0, std::nullopt, 0};
                done[i].run.error = e.what();
                continue;
            }
            done[i].run = run_method(*inst, t.method, t.problem, req.settings, *backend, t.hour);
            if (done[i].run.solution) done[i].solution_file = solution_file_json(*inst, *done[i].run.solution);
        }
    };
    const int workers = std::max(1, std::min<int>(req.workers, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Single writer: everything below runs on the calling thread.
    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        records.push_back(done[i].run.record);
        const std::string stem = run_stem(t.hour, t.method, t.problem);
        if (done[i].solution_file) write_file(req.out_dir / "solutions" / (stem + ".json"), done[i].solution_file->dump(1) + "\n");
        if (!done[i].run.trace.empty()) write_file(req.out_dir / "traces" / (stem + ".csv"), search_log_csv(done[i].run.trace));
        if (!done[i].run.error.empty()) std::fprintf(stderr, "%s: %s\n", stem.c_str(), done[i].run.error.c_str());
    }
    write_file(req.out_dir / "results.csv", results_csv(records));
    return records;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.push_back({values[i], static_cast<double>(i + 1) / n});
    return out;
}

void cmd_report(const std::filesystem::path& results_csv_path, const std::filesystem::path& out_dir,
                const std::optional<std::filesystem::path>& traces_dir) {
    const auto records = parse_results_csv(read_text_file(results_csv_path));
    if (records.empty()) throw Error(ErrorCode::EmptyResults, results_csv_path.string() + " has no rows");

    using Key = std::pair<Method, ProblemKind>;
    std::map<Key, std::vector<double>> rates;
    std::map<Key, std::vector<double>> etas;
    for (const RunRecord& r : records) {
        if (r.status != SolveStatus::Optimal && r.status != SolveStatus::Feasible) continue;
        rates[{r.method, r.problem}].push_back(r.min_ue_mbps);
        if (r.eta_mbps_per_w) etas[{r.method, r.problem}].push_back(*r.eta_mbps_per_w);
    }
    auto cdf_csv = [](const std::map<Key, std::vector<double>>& groups) {
        std::string out = "method,problem,value,cdf\n";
        for (const auto& [key, values] : groups)
            for (const CdfPoint& p : empirical_cdf(values))
                out += std::string(to_string(key.first)) + ',' + std::string(to_string(key.second)) + ',' +
                       fmt(p.value) + ',' + fmt(p.cdf) + '\n';
        return out;
    };
    write_file(out_dir / "throughput_cdf.csv", cdf_csv(rates));
    write_file(out_dir / "eta_cdf.csv", cdf_csv(etas));

    std::string activation = "hour,method,problem,status,activated_frontends\n";
    for (const RunRecord& r : records)
        activation += std::to_string(r.hour) + ',' + std::string(to_string(r.method)) + ',' +
                      std::string(to_string(r.problem)) + ',' + std::string(to_string(r.status)) + ',' +
                      std::to_string(r.activated_frontends) + '\n';
    write_file(out_dir / "activation.csv", activation);

    const std::filesystem::path traces = traces_dir ? *traces_dir : results_csv_path.parent_path() / "traces";
    if (std::filesystem::is_directory(traces)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(traces))
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        std::string table = "run,initial,final,improvement_pct,time_to_near_final_s\n";
        for (const auto& f : files) {
            const auto log = parse_search_log_csv(read_text_file(f));
            if (log.empty()) continue;
            const EvolutionStats s = evolution_stats(log);
            table += f.stem().string() + ',' + fmt(s.initial) + ',' + fmt(s.final_value) + ',' + fmt(s.improvement_pct) +
                     ',' + fmt(s.time_to_near_final_s) + '\n';
        }
        write_file(out_dir / "evolution.csv", table);
    }
}

ValidationReport cmd_validate(const std::filesystem::path& solution_json, const std::filesystem::path& graph_json) {
    const MeasurementGraph graph = load_graph(graph_json);
    const json doc = parse_json_text(read_text_file(solution_json), solution_json.string());
    if (!doc.is_object() || !doc.contains("settings") || !doc.contains("solution"))
        throw Error(ErrorCode::ParseError, "solution file needs 'settings' and 'solution'");
    const ProblemInstance instance = instance_from_json(graph, doc["settings"]);
    const NetworkSolution sol = solution_from_json(doc["solution"], instance.graph, instance.commodities);
    return validate_solution(instance, sol);
}

}  // namespace iabopt
