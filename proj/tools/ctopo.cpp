// ctopo: concurrence-topology independence analysis from the command line.
//
//   ctopo analyze   --input data.csv --group-a A1,A2 --group-b b1,b2 [--frames 1..5] [--output report.json]
//   ctopo simulate  (--input spec.json | --cycles K [--coupled]) --rows T [--seed S] [--output data.csv]
//   ctopo homology  --input complex.json [--levels levels.json] [--verbose]
//   ctopo oracle    [--trials N] [--max-vertices V] [--seed S] [--inject-mutation]
//
// Exit status: 0 success, 1 an oracle identity failed, 2 bad usage or input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctopo/ctopo.hpp"
#include "ctopo/json_io.hpp"

namespace {

using namespace ctopo;

constexpr int exit_ok = 0;
constexpr int exit_identity_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return in;
}

Json read_json(const std::string& path) {
    auto in = open_input(path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

// ---- analyze -------------------------------------------------------------------

struct AnalyzeConfig {
    std::string input;
    std::string output;
    std::string group_a;
    std::string group_b;
    std::string frames = "all";
    bool verbose = false;
};

int cmd_analyze(const AnalyzeConfig& cfg) {
    auto in = open_input(cfg.input);
    const BinaryDataset data = ingest_csv(in);
    const Grouping grouping{split_names(cfg.group_a), split_names(cfg.group_b)};
    const IndependenceReport report = IndependenceAnalyzer(data, grouping)
                                          .analyze(FrameRange::parse(cfg.frames), cfg.verbose);

    if (!cfg.output.empty()) write_file(cfg.output, report_to_json(report, cfg.verbose).dump(2) + "\n");

    std::cout << "T " << report.summary.T << ", variables " << report.summary.n_analyzed << " of "
              << report.summary.n << ", zero rows " << report.summary.zero_rows << ", max frame "
              << report.summary.max_frame << "\n";
    for (const FrameReport& f : report.frames) {
        if (f.status != FrameStatus::ok) {
            std::cout << "frame " << f.frame << ": " << to_string(f.status);
            if (f.status == FrameStatus::empty_side)
                std::cout << " (" << (f.empty_a ? "group A" : "group B") << " empty)";
            if (!f.message.empty()) std::cout << " (" << f.message << ")";
            std::cout << "\n";
            continue;
        }
        for (std::size_t d = 0; d < f.inclusion_ranks.size(); ++d)
            std::cout << "frame " << f.frame << " dim " << d << ": rank " << f.inclusion_ranks[d] << "\n";
    }
    for (const auto& [dim, runs] : report.frequency_lifespans) {
        if (runs.empty()) continue;
        std::cout << "lifespan dim " << dim << ":";
        for (const auto& [lo, hi] : runs) std::cout << " " << lo << ".." << hi;
        std::cout << "\n";
    }
    return exit_ok;
}

// ---- simulate ------------------------------------------------------------------

struct SimulateConfig {
    std::string input;
    std::string output;
    std::size_t cycles = 0;
    bool coupled = false;
    std::size_t rows = 0;
    std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateConfig& cfg) {
    if (cfg.rows < 1) throw UsageError("--rows must be at least 1");
    JointSpec spec;
    if (!cfg.input.empty()) {
        if (cfg.cycles) throw UsageError("give either --input or --cycles, not both");
        spec = joint_spec_from_json(read_json(cfg.input));
    } else if (cfg.cycles) {
        GroupSpec a = cycle_pattern_spec(cfg.cycles, numbered_names("A", cfg.cycles));
        GroupSpec b = cycle_pattern_spec(cfg.cycles, numbered_names("b", cfg.cycles));
        spec = cfg.coupled ? diagonal_coupling(std::move(a), std::move(b)) : JointSpec{a, b, std::nullopt};
    } else {
        throw UsageError("simulate needs --input SPEC or --cycles K");
    }

    std::ostringstream csv;
    write_csv(sample(spec, cfg.rows, cfg.seed), csv);
    if (cfg.output.empty()) std::cout << csv.str();
    else write_file(cfg.output, csv.str());
    return exit_ok;
}

// ---- homology ------------------------------------------------------------------

struct HomologyConfig {
    std::string input;
    std::string levels;
    bool verbose = false;
};

// {"levels": [{"level": 1, "facets": [[names]]}, ...]}: a simplex gets the
// smallest level whose facets contain it.
FiltrationOrder read_levels(const std::string& path, const ParsedComplex& parsed) {
    const Json j = read_json(path);
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
        throw SpecError("level map needs an array member \"levels\"");
    std::vector<std::pair<int, std::vector<Simplex>>> groups;
    for (const auto& entry : j["levels"]) {
        const int level = entry.at("level").get<int>();
        std::vector<Simplex> facets;
        for (const auto& facet : entry.at("facets")) {
            std::vector<VertexId> vs;
            for (const auto& name : facet) {
                auto it = parsed.ids.find(name.get<std::string>());
                if (it == parsed.ids.end())
                    throw SpecError("level map uses unknown vertex '" + name.get<std::string>() + "'");
                vs.push_back(it->second);
            }
            facets.emplace_back(std::move(vs));
        }
        groups.emplace_back(level, std::move(facets));
    }
    const SimplicialComplex& x = parsed.complex;
    auto level_of = [&](const Simplex& s) {
        int best = std::numeric_limits<int>::max();
        for (const auto& [level, facets] : groups)
            for (const Simplex& f : facets)
                if (s.is_face_of(f)) best = std::min(best, level);
        if (best == std::numeric_limits<int>::max())
            throw SpecError("level map assigns no level to " + format_simplex(s, x));
        return best;
    };
    return FiltrationOrder::from_levels(x, level_of);
}

int cmd_homology(const HomologyConfig& cfg) {
    const ParsedComplex parsed = complex_from_json(read_json(cfg.input));
    const SimplicialComplex& x = parsed.complex;
    if (parsed.absorbed)
        std::cout << "note: auto-closed input; " << parsed.absorbed
                  << " listed facet(s) were faces of other facets\n";
    std::cout << "betti: " << to_string(betti(x)) << "\n";
    std::cout << "euler: " << euler_characteristic(x) << "\n";
    if (!cfg.levels.empty()) {
        const auto intervals = persistence(read_levels(cfg.levels, parsed), cfg.verbose);
        auto name = [&](VertexId v) { return x.label(v); };
        std::cout << "intervals: " << intervals_to_json(intervals, name, cfg.verbose).dump() << "\n";
    }
    return exit_ok;
}

// ---- oracle --------------------------------------------------------------------

struct OracleConfig {
    std::size_t trials = 200;
    std::size_t max_vertices = 6;
    std::uint64_t seed = 1;
    bool inject_mutation = false;
};

int cmd_oracle(const OracleConfig& cfg) {
    if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
    const OracleSummary s = run_oracle(cfg.trials, cfg.max_vertices, cfg.seed, cfg.inject_mutation);
    if (s.failure) {
        const Json witness{{"identity", s.failure->identity},
                           {"detail", s.failure->detail},
                           {"trial", s.trials},
                           {"K", complex_to_json(s.failure->k)},
                           {"L", complex_to_json(s.failure->l)}};
        std::cout << "oracle: identity failed after " << s.trials << " trial(s)\n" << witness.dump(2) << "\n";
        return exit_identity_failed;
    }
    std::cout << "oracle: " << s.trials << " trials, all identities hold\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concurrence topology: join homology and independence analysis"};
    app.require_subcommand(1);

    AnalyzeConfig analyze_cfg;
    auto* analyze = app.add_subcommand("analyze", "Two-level persistence of M_f in K_f * L_f per frame");
    analyze->add_option("--input", analyze_cfg.input, "CSV of 0/1 observations with a header row")->required();
    analyze->add_option("--output", analyze_cfg.output, "Report JSON path");
    analyze->add_option("--group-a", analyze_cfg.group_a, "Comma-separated group A variables")->required();
    analyze->add_option("--group-b", analyze_cfg.group_b, "Comma-separated group B variables")->required();
    analyze->add_option("--frames", analyze_cfg.frames, "\"all\", \"k\" or \"lo..hi\"");
    analyze->add_flag("--verbose", analyze_cfg.verbose, "Include representative cycles in the report");

    SimulateConfig simulate_cfg;
    auto* simulate = app.add_subcommand("simulate", "Sample a synthetic binary dataset");
    simulate->add_option("--input", simulate_cfg.input, "Generator spec JSON");
    simulate->add_option("--cycles", simulate_cfg.cycles, "Use two k-cycle pattern groups instead of a spec");
    simulate->add_flag("--coupled", simulate_cfg.coupled, "With --cycles: couple pattern i with pattern i");
    simulate->add_option("--rows,-T", simulate_cfg.rows, "Number of observations")->required();
    simulate->add_option("--seed", simulate_cfg.seed, "Random seed");
    simulate->add_option("--output", simulate_cfg.output, "CSV path (default: stdout)");

    HomologyConfig homology_cfg;
    auto* homology = app.add_subcommand("homology", "Z/2 Betti numbers of a complex");
    homology->add_option("--input", homology_cfg.input, "Complex JSON")->required();
    homology->add_option("--levels", homology_cfg.levels, "Level map JSON; prints persistence intervals");
    homology->add_flag("--verbose", homology_cfg.verbose, "Include representative cycles");

    OracleConfig oracle_cfg;
    auto* oracle = app.add_subcommand("oracle", "Check join/product homology identities on random complexes");
    oracle->add_option("--trials", oracle_cfg.trials, "Number of random pairs");
    oracle->add_option("--max-vertices", oracle_cfg.max_vertices, "Vertices per side (at most 8)");
    oracle->add_option("--seed", oracle_cfg.seed, "Random seed");
    oracle->add_flag("--inject-mutation", oracle_cfg.inject_mutation, "Drop one join facet (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_cfg);
        if (*simulate) return cmd_simulate(simulate_cfg);
        if (*homology) return cmd_homology(homology_cfg);
        if (*oracle) return cmd_oracle(oracle_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
