// Command-line front end: parse a sinked-graph file, run the requested
// analysis, emit JSON/CSV artifacts.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/dynamics.hpp"
#include "sinkwalk/io.hpp"
#include "sinkwalk/operators.hpp"
#include "sinkwalk/oracle.hpp"
#include "sinkwalk/random_graphs.hpp"
#include "sinkwalk/verify.hpp"

namespace {

using namespace sinkwalk;

void write_artifact(const std::optional<std::string>& out, const std::string& payload) {
    if (!out) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(*out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write output file: " + *out);
    file << payload;
}

// complex list "re[:im],re[:im],..."
std::vector<Complex> parse_alphas(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        auto colon = token.find(':');
        double re = std::stod(token.substr(0, colon));
        double im = colon == std::string::npos ? 0.0 : std::stod(token.substr(colon + 1));
        out.emplace_back(re, im);
    }
    return out;
}

std::uint64_t seed_from_env() {
    if (const char* env = std::getenv("GROVER_SINK_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return kDefaultSweepSeed;
}

struct LoadedGraph {
    GraphSpec spec;
    SymmetricDigraph graph;
    InternalGraph internal;
};

LoadedGraph load(const std::string& path) {
    GraphSpec spec = load_graph_file(path);
    SymmetricDigraph graph = spec.build();
    InternalGraph internal = remove_sinks(graph, spec.sinks);
    return {std::move(spec), std::move(graph), std::move(internal)};
}

std::string graph_label(const SweepGraph& sg, int index) {
    std::ostringstream name;
    name << "graph[" << index << "] v=" << sg.graph.vertex_count()
         << " e=" << sg.graph.edge_count() << " loops=" << sg.graph.loops().size()
         << " sinks=" << sg.sinks.size();
    return name.str();
}

int run_verify(const std::optional<std::string>& graph_path, int count, int jobs,
               double unit_tol, const std::optional<std::string>& out) {
    Tolerances tol;
    tol.unit_circle = unit_tol;

    std::vector<std::pair<std::string, SweepGraph>> jobs_list;
    if (graph_path) {
        GraphSpec spec = load_graph_file(*graph_path);
        jobs_list.emplace_back(*graph_path, SweepGraph{spec.build(), spec.sinks});
    } else {
        auto graphs = sweep_graphs(count, seed_from_env());
        for (int i = 0; i < count; ++i) {
            auto& sg = graphs[static_cast<std::size_t>(i)];
            jobs_list.emplace_back(graph_label(sg, i), std::move(sg));
        }
    }

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;

    std::vector<std::pair<std::string, VerifyReport>> reports(jobs_list.size());
    std::size_t next = 0;
    while (next < jobs_list.size()) {
        std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                  jobs_list.size() - next);
        std::vector<std::future<VerifyReport>> futures;
        for (std::size_t k = 0; k < batch; ++k) {
            const auto& job = jobs_list[next + k];
            futures.push_back(std::async(std::launch::async, [&job, &tol]() {
                return verify_graph(job.second.graph, job.second.sinks, tol);
            }));
        }
        for (std::size_t k = 0; k < batch; ++k) {
            reports[next + k] = {jobs_list[next + k].first, futures[k].get()};
        }
        next += batch;
    }

    bool all = true;
    for (const auto& [name, report] : reports) {
        all = all && report.pass;
        std::cout << (report.pass ? "PASS " : "FAIL ") << name << '\n';
        for (const auto& check : report.checks) {
            if (!check.pass) {
                std::cout << "  " << check.name << ": " << check.value << " > tol "
                          << check.tolerance << '\n';
            }
        }
    }
    std::cout << (all ? "verify: all checks passed" : "verify: tolerance breaches found")
              << " (" << reports.size() << " graphs)\n";
    if (out) write_artifact(out, verify_to_json(reports));
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover walks with sinks: survival probabilities via the attractor space"};
    app.require_subcommand(1);

    std::string graph_path;
    std::optional<std::string> out;
    std::string state = "delta:0";
    std::string format = "csv";
    int steps = 500;
    double unit_tol = 1e-8;
    bool include_projector = false;
    std::string alphas_text;
    std::optional<std::string> verify_graph_path;
    int verify_count = 20;
    int verify_jobs = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_graph = true) {
        if (needs_graph) {
            cmd->add_option("--graph", graph_path, "graph file (text or .json)")->required();
        }
        cmd->add_option("--out", out, "write the artifact to this file instead of stdout");
        cmd->add_option("--tol", unit_tol, "unit-circle threshold (|lambda| >= 1 - tol)");
    };

    auto* simulate = app.add_subcommand("simulate", "iterate the sinked walk, emit gamma_n/tau_n");
    add_common(simulate);
    simulate->add_option("--state", state, "initial state preset (delta:<arc>, uniform-cycle:<k>, file:<path>)");
    simulate->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
    simulate->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* attractor_cmd = app.add_subcommand("attractor", "construct the attractor basis");
    add_common(attractor_cmd);
    attractor_cmd->add_flag("--projector", include_projector, "include the projector matrix");

    auto* survival = app.add_subcommand("survival", "survival probability via the spectral route");
    add_common(survival);
    survival->add_option("--state", state, "initial state preset");

    auto* dims = app.add_subcommand("dims", "predicted vs numeric attractor dimensions");
    add_common(dims);

    auto* tails = app.add_subcommand("tails", "stationary state under constant tail inflows");
    add_common(tails);
    tails->add_option("--alphas", alphas_text,
                      "comma-separated inflows, each re[:im]; default all ones");

    auto* verify = app.add_subcommand("verify", "cross-check every identity against the oracle");
    add_common(verify, /*needs_graph=*/false);
    verify->add_option("--graph", verify_graph_path, "verify this graph instead of random ones");
    verify->add_option("--count", verify_count, "number of random graphs")
        ->check(CLI::PositiveNumber);
    verify->add_option("--jobs", verify_jobs, "worker threads (0 = hardware)");

    auto* dump = app.add_subcommand("dump", "emit the operator matrices as JSON");
    add_common(dump);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            auto loaded = load(graph_path);
            auto phi0 = parse_initial_state(state, loaded.graph, loaded.internal);
            auto run = survival_sequence(loaded.internal, phi0, steps);
            write_artifact(out, format == "csv" ? run_to_csv(run) : run_to_json(run));
        } else if (attractor_cmd->parsed()) {
            auto loaded = load(graph_path);
            auto basis = attractor_basis(loaded.internal);
            write_artifact(out, basis_to_json(loaded.internal, basis, include_projector));
        } else if (survival->parsed()) {
            auto loaded = load(graph_path);
            auto phi0 = parse_initial_state(state, loaded.graph, loaded.internal);
            auto basis = attractor_basis(loaded.internal);
            auto breakdown = survival_spectral(basis, phi0);
            std::cout << "gamma=" << breakdown.gamma << '\n';
            if (out) write_artifact(out, survival_to_json(loaded.internal, basis, breakdown));
        } else if (dims->parsed()) {
            auto loaded = load(graph_path);
            auto report = dimension_report(loaded.internal, unit_tol);
            std::cout << "case " << to_char(report.case_label) << ": predicted (+1: "
                      << report.predicted_plus << ", -1: " << report.predicted_minus
                      << ") numeric (+1: " << report.numeric_plus << ", -1: "
                      << report.numeric_minus << ")"
                      << (report.match ? "" : "  MISMATCH") << '\n';
            if (out) write_artifact(out, dims_to_json(loaded.spec, report));
            return report.match ? 0 : 1;
        } else if (tails->parsed()) {
            auto loaded = load(graph_path);
            std::size_t r = loaded.internal.tail_vertices().size();
            std::vector<Complex> alphas(r, Complex(1.0, 0.0));
            if (!alphas_text.empty()) alphas = parse_alphas(alphas_text);
            auto tail_state = tail_stationary_state(loaded.internal, alphas);
            auto residuals = check_tail_state(loaded.internal, tail_state);
            write_artifact(out, tail_state_to_json(loaded.internal, tail_state, residuals));
        } else if (verify->parsed()) {
            return run_verify(verify_graph_path, verify_count, verify_jobs, unit_tol, out);
        } else if (dump->parsed()) {
            auto loaded = load(graph_path);
            write_artifact(out, operators_to_json(loaded.graph, loaded.internal));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
