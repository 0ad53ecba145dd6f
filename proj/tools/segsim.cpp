// segsim: stochastic CRN simulator with segment-memoized acceleration.
// Subcommands: simulate, transient, bench. CSV/JSON output only.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "segsim/abstract.hpp"
#include "segsim/analysis.hpp"
#include "segsim/archive.hpp"
#include "segsim/ensemble.hpp"
#include "segsim/model_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace segsim;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDataFormat = 3;

CrnModel resolve_model(const std::string& spec) {
    const auto& builtins = builtin_models();
    if (const auto it = builtins.find(spec); it != builtins.end()) return it->second;
    return load_model_file(spec);
}

Recording parse_recording(const std::string& text) {
    if (text == "full") return Recording::full();
    if (text == "seams") return Recording::seams_only();
    if (text.starts_with("stride:")) {
        const auto n = std::stoull(text.substr(7));
        if (n == 0) throw CLI::ValidationError("--recording", "stride must be positive");
        return Recording::every(n);
    }
    throw CLI::ValidationError("--recording", "expected full, seams or stride:<n>");
}

void write_json_file(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << "\n";
}

json memory_json(const SegmentMemory& memory) {
    const MemoryStats ms = memory.stats();
    return json{{"visited_states", ms.visited_states},
                {"stored_summaries", ms.stored_summaries},
                {"approx_bytes", ms.approx_bytes},
                {"fresh_generations", memory.fresh_count()},
                {"reuses", memory.reuse_count()},
                {"fallbacks", memory.fallback_count()}};
}

struct SimulateOptions {
    std::string model;
    std::string method = "ssa";
    double c = 1.5;
    int k = 100;
    std::size_t runs = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    double t_end_override = 0.0;
    std::string recording = "seams";
    std::string memory_in;
    std::string memory_out;
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateOptions& opt) {
    const CrnModel model = resolve_model(opt.model);
    const double t_end = opt.t_end_override > 0 ? opt.t_end_override : model.t_end;
    fs::create_directories(opt.out_dir);

    ArchiveHeader header;
    header.model = model.name;
    header.method = opt.method;
    header.seed = opt.seed;
    header.n_runs = opt.runs;
    header.threads = opt.threads;
    header.columns = model.species;

    json stats;
    stats["model"] = model.name;
    stats["method"] = opt.method;
    stats["seed"] = opt.seed;
    stats["runs"] = opt.runs;
    stats["threads"] = opt.threads;
    stats["t_end"] = t_end;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Run> runs;

    if (opt.method == "ssa") {
        runs = run_ssa_ensemble(model, opt.runs, opt.seed, opt.threads, t_end,
                                parse_recording(opt.recording));
    } else if (opt.method == "segmental" || opt.method == "abstract") {
        const Abstraction abstraction(opt.c);
        SegmentMemory memory(model.name, opt.c, opt.k, model.num_species());
        if (!opt.memory_in.empty()) {
            std::ifstream in(opt.memory_in);
            if (!in) throw FormatError("cannot open memory file '" + opt.memory_in + "'");
            memory = SegmentMemory::import_json(json::parse(in));
            memory.check_compatible(model.name, opt.c, model.num_species());
        }
        runs = run_segmental_ensemble(model, opt.runs, opt.seed, opt.threads, t_end, abstraction,
                                      memory);
        header.c = opt.c;
        header.k = opt.k;
        stats["c"] = opt.c;
        stats["k"] = opt.k;
        stats["memory"] = memory_json(memory);
        if (!opt.memory_out.empty()) write_json_file(opt.memory_out, memory.export_json());
        if (opt.method == "abstract") {
            // project seams to levels in place; the archive then stores levels
            for (Run& run : runs) {
                for (Seam& seam : run.seams) {
                    const AbstractState a = abstraction.abstract_state(seam.state);
                    for (std::size_t i = 0; i < seam.state.counts.size(); ++i) {
                        seam.state.counts[i] = a.levels[i];
                    }
                }
            }
        }
    } else {
        std::cerr << "unknown --method '" << opt.method << "'\n";
        return kExitUsage;
    }
    const double wall_total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double mean_reactions = 0.0, mean_summaries = 0.0, mean_wall = 0.0;
    std::uint64_t deadlocks = 0;
    for (const Run& run : runs) {
        mean_reactions += static_cast<double>(run.stats.reaction_count);
        mean_summaries += static_cast<double>(run.stats.summaries_applied);
        mean_wall += run.stats.wall_seconds;
        if (run.terminal == Terminal::Deadlock) ++deadlocks;
    }
    const double n = static_cast<double>(runs.size());
    stats["mean_reactions_per_run"] = mean_reactions / n;
    stats["mean_summaries_per_run"] = mean_summaries / n;
    stats["mean_wall_seconds_per_run"] = mean_wall / n;
    stats["wall_seconds_total"] = wall_total;
    stats["deadlocked_runs"] = deadlocks;

    write_archive_file((fs::path(opt.out_dir) / "runs.csv").string(), header, runs);
    write_json_file(fs::path(opt.out_dir) / "stats.json", stats);
    return 0;
}

struct TransientOptions {
    std::vector<std::string> archives;
    double at = 0.0;
    std::string species;
    bool control = false;
    std::string control_model;
    std::uint64_t control_seed = 9001;
    std::string out_dir = ".";
};

int cmd_transient(const TransientOptions& opt) {
    std::vector<Archive> archives;
    for (const auto& path : opt.archives) archives.push_back(read_archive_file(path));

    const auto& columns = archives.front().header.columns;
    const auto col = std::find(columns.begin(), columns.end(), opt.species);
    if (col == columns.end()) {
        std::cerr << "species '" << opt.species << "' is not a column of "
                  << opt.archives.front() << "\n";
        return kExitUsage;
    }
    const auto species = static_cast<std::size_t>(col - columns.begin());

    fs::create_directories(opt.out_dir);
    json report;
    report["at"] = opt.at;
    report["species"] = opt.species;

    std::vector<Histogram> histograms;
    for (std::size_t i = 0; i < archives.size(); ++i) {
        histograms.push_back(transient_histogram(archives[i].runs, opt.at, species));
        const fs::path path = fs::path(opt.out_dir) / ("hist_" + std::to_string(i + 1) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << "#segsim-histogram v1\nvalue,mass\n";
        for (std::size_t j = 0; j < histograms[i].support.size(); ++j) {
            out << histograms[i].support[j] << "," << histograms[i].mass[j] << "\n";
        }
    }
    if (histograms.size() == 2) {
        report["emd"] = emd(histograms[0], histograms[1]);
        const auto mean = [](const Histogram& h) {
            double m = 0.0;
            for (std::size_t j = 0; j < h.support.size(); ++j) {
                m += static_cast<double>(h.support[j]) * h.mass[j];
            }
            return m;
        };
        report["mean_1"] = mean(histograms[0]);
        report["mean_2"] = mean(histograms[1]);
        report["mean_difference"] = mean(histograms[0]) - mean(histograms[1]);
    }
    if (opt.control) {
        const std::string model_spec =
            opt.control_model.empty() ? archives.front().header.model : opt.control_model;
        const CrnModel model = resolve_model(model_spec);
        const int species_idx = model.species_index(opt.species);
        if (species_idx < 0) {
            std::cerr << "species '" << opt.species << "' is not in model " << model.name << "\n";
            return kExitUsage;
        }
        report["emd_control"] = control_pair_emd(
            model, opt.at, static_cast<std::size_t>(species_idx), archives.front().runs.size(),
            opt.control_seed, opt.control_seed + 1);
    }
    write_json_file(fs::path(opt.out_dir) / "report.json", report);
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct BenchOptions {
    std::string model;
    std::vector<double> cs{2.0, 1.5, 1.3};
    std::vector<int> ks{10, 100, 1000};
    std::size_t runs = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    double t_end_override = 0.0;
    int windows = 10;
    std::string out_dir = ".";
};

int cmd_bench(const BenchOptions& opt) {
    const CrnModel model = resolve_model(opt.model);
    const double t_end = opt.t_end_override > 0 ? opt.t_end_override : model.t_end;
    fs::create_directories(opt.out_dir);

    const auto timed = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = fn();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::make_pair(std::move(result), s);
    };

    auto [ssa_runs, ssa_total] = timed([&] {
        return run_ssa_ensemble(model, opt.runs, opt.seed, opt.threads, t_end,
                                Recording::seams_only());
    });
    double ssa_reactions = 0.0;
    for (const Run& run : ssa_runs) ssa_reactions += static_cast<double>(run.stats.reaction_count);
    ssa_runs.clear();

    std::ofstream report(fs::path(opt.out_dir) / "bench.csv", std::ios::binary);
    report << "#segsim-bench v1\n"
              "c,k,ssa_seconds,seg_seconds,speedup,mean_reactions_ssa,mean_summaries_seg,"
              "visited_states,stored_summaries,approx_bytes,fallbacks\n";
    std::ofstream windows_csv(fs::path(opt.out_dir) / "bench_windows.csv", std::ios::binary);
    windows_csv << "#segsim-bench-windows v1\nc,k,window,mean_seconds_per_run\n";

    json doc;
    doc["model"] = model.name;
    doc["runs"] = opt.runs;
    doc["t_end"] = t_end;
    doc["threads"] = opt.threads;
    doc["ssa_seconds"] = ssa_total;
    doc["mean_reactions_ssa"] = ssa_reactions / static_cast<double>(opt.runs);
    doc["grid"] = json::array();

    for (double c : opt.cs) {
        for (int k : opt.ks) {
            const Abstraction abstraction(c);
            SegmentMemory memory(model.name, c, k, model.num_species());
            auto [seg_runs, seg_total] = timed([&] {
                return run_segmental_ensemble(model, opt.runs, opt.seed, opt.threads, t_end,
                                              abstraction, memory);
            });
            double summaries = 0.0;
            for (const Run& run : seg_runs) {
                summaries += static_cast<double>(run.stats.summaries_applied);
            }
            const MemoryStats ms = memory.stats();
            const double speedup = seg_total > 0 ? ssa_total / seg_total : 0.0;
            report << c << "," << k << "," << ssa_total << "," << seg_total << "," << speedup
                   << "," << ssa_reactions / static_cast<double>(opt.runs) << ","
                   << summaries / static_cast<double>(opt.runs) << "," << ms.visited_states << ","
                   << ms.stored_summaries << "," << ms.approx_bytes << ","
                   << memory.fallback_count() << "\n";

            // moving average of per-run wall time across windows (reuse curve)
            json window_means = json::array();
            const std::size_t per = std::max<std::size_t>(1, opt.runs / opt.windows);
            for (std::size_t w = 0; w * per < seg_runs.size(); ++w) {
                const std::size_t lo = w * per;
                const std::size_t hi = std::min(seg_runs.size(), lo + per);
                double sum = 0.0;
                for (std::size_t i = lo; i < hi; ++i) sum += seg_runs[i].stats.wall_seconds;
                const double mean = sum / static_cast<double>(hi - lo);
                windows_csv << c << "," << k << "," << w << "," << mean << "\n";
                window_means.push_back(mean);
            }
            doc["grid"].push_back(json{{"c", c},
                                       {"k", k},
                                       {"seg_seconds", seg_total},
                                       {"speedup", speedup},
                                       {"mean_summaries", summaries / static_cast<double>(opt.runs)},
                                       {"memory", memory_json(memory)},
                                       {"window_mean_seconds", window_means}});
        }
    }
    write_json_file(fs::path(opt.out_dir) / "bench.json", doc);
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"segsim: segment-memoized stochastic simulation of chemical reaction networks"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "run an ensemble and write a run archive");
    simulate->add_option("--model", sim.model, "builtin name (PP, VI, TS, RP, SWITCH) or .crn path")
        ->required();
    simulate->add_option("--method", sim.method, "ssa | segmental | abstract")
        ->check(CLI::IsMember({"ssa", "segmental", "abstract"}));
    simulate->add_option("--c", sim.c, "partition parameter, 1 < c <= 2");
    simulate->add_option("--k", sim.k, "summaries stored per abstract state");
    simulate->add_option("--runs", sim.runs)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--threads", sim.threads)->check(CLI::PositiveNumber);
    simulate->add_option("--t-end", sim.t_end_override, "override the model's horizon");
    simulate->add_option("--recording", sim.recording, "full | seams | stride:<n> (ssa only)");
    simulate->add_option("--memory-in", sim.memory_in, "segment memory JSON to preload");
    simulate->add_option("--memory-out", sim.memory_out, "write segment memory JSON here");
    simulate->add_option("--out", sim.out_dir, "output directory");

    TransientOptions tr;
    auto* transient = app.add_subcommand("transient", "histograms and EMD from run archives");
    transient->add_option("--archive", tr.archives, "one or two run archives")
        ->required()
        ->expected(1, 2);
    transient->add_option("--at", tr.at, "query time")->required();
    transient->add_option("--species", tr.species)->required();
    transient->add_flag("--control", tr.control, "also report a control-pair SSA EMD");
    transient->add_option("--model", tr.control_model, "model for --control (default: archive's)");
    transient->add_option("--seed", tr.control_seed, "seed for the control ensembles");
    transient->add_option("--out", tr.out_dir, "output directory");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "SSA vs segmental timing over a parameter grid");
    bench_cmd->add_option("--model", bench.model)->required();
    bench_cmd->add_option("--c", bench.cs, "partition parameters to sweep");
    bench_cmd->add_option("--k", bench.ks, "capacities to sweep");
    bench_cmd->add_option("--runs", bench.runs)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed);
    bench_cmd->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--t-end", bench.t_end_override, "override the model's horizon");
    bench_cmd->add_option("--windows", bench.windows, "windows for the reuse curve");
    bench_cmd->add_option("--out", bench.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (transient->parsed()) return cmd_transient(tr);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const ParseError& e) {
        std::cerr << "model parse error: " << e.what() << "\n";
        return kExitDataFormat;
    } catch (const FormatError& e) {
        std::cerr << "data format error: " << e.what() << "\n";
        return kExitDataFormat;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitDataFormat;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
