#include "sinkwalk/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sinkwalk {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(int line, const std::string& message) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v[i]));
    return out;
}

Json matrix_body(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_pair(m(r, c)));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json arcs_json(const SymmetricDigraph& g) {
    Json arcs = Json::array();
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        arcs.push_back(Json{{"id", a},
                            {"origin", g.origin(a)},
                            {"terminus", g.terminus(a)},
                            {"inverse", g.inverse(a)}});
    }
    return arcs;
}

}  // namespace

GraphSpec parse_graph_text(std::istream& in) {
    GraphSpec spec;
    bool have_count = false;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::string tag;
        if (!(fields >> tag)) continue;
        auto read_vertex = [&]() {
            long v;
            if (!(fields >> v)) parse_fail(line, "expected a vertex index");
            if (v < 0 || (have_count && v >= spec.vertex_count)) {
                parse_fail(line, "vertex index out of range: " + std::to_string(v));
            }
            return static_cast<VertexId>(v);
        };
        if (tag == "v") {
            if (have_count) parse_fail(line, "repeated vertex-count line");
            long n;
            if (!(fields >> n) || n <= 0) parse_fail(line, "expected a positive vertex count");
            spec.vertex_count = static_cast<VertexId>(n);
            have_count = true;
        } else if (tag == "e") {
            if (!have_count) parse_fail(line, "edge before the vertex-count line");
            VertexId u = read_vertex();
            VertexId w = read_vertex();
            spec.edges.emplace_back(u, w);
        } else if (tag == "l") {
            if (!have_count) parse_fail(line, "loop before the vertex-count line");
            spec.loops.push_back(read_vertex());
        } else if (tag == "s") {
            if (!have_count) parse_fail(line, "sink before the vertex-count line");
            spec.sinks.push_back(read_vertex());
        } else {
            parse_fail(line, "unknown directive '" + tag + "'");
        }
        std::string trailing;
        if (fields >> trailing) parse_fail(line, "trailing tokens after directive");
    }
    if (!have_count) throw std::runtime_error("graph file has no vertex-count line");
    return spec;
}

GraphSpec parse_graph_json(const std::string& text) {
    Json j = Json::parse(text);
    GraphSpec spec;
    spec.vertex_count = j.at("vertices").get<VertexId>();
    for (const auto& e : j.at("edges")) {
        spec.edges.emplace_back(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
    }
    if (j.contains("loops")) {
        for (const auto& v : j["loops"]) spec.loops.push_back(v.get<VertexId>());
    }
    if (j.contains("sinks")) {
        for (const auto& v : j["sinks"]) spec.sinks.push_back(v.get<VertexId>());
    }
    return spec;
}

GraphSpec load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_graph_json(buffer.str());
    }
    return parse_graph_text(in);
}

std::string graph_to_json(const GraphSpec& spec) {
    Json j{{"schema", 1},
           {"vertices", spec.vertex_count},
           {"edges", Json::array()},
           {"loops", spec.loops},
           {"sinks", spec.sinks}};
    for (auto [u, w] : spec.edges) j["edges"].push_back(Json::array({u, w}));
    return j.dump(2);
}

ArcVector parse_initial_state(const std::string& preset, const SymmetricDigraph& g,
                              const InternalGraph& g0) {
    auto from_full_arc = [&](ArcId full) -> ArcId {
        for (ArcId a = 0; a < g0.arc_count(); ++a) {
            if (g0.parent_arc(a) == full) return a;
        }
        throw std::invalid_argument("initial state touches a deleted arc: " +
                                    std::to_string(full));
    };
    ArcVector psi{ArcDomain::internal, ComplexVector::Zero(g0.arc_count())};
    auto colon = preset.find(':');
    std::string kind = preset.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : preset.substr(colon + 1);
    if (kind == "delta") {
        long full = std::stol(arg);
        if (full < 0 || full >= g.arc_count()) {
            throw std::invalid_argument("delta preset: arc id out of range");
        }
        psi.values[from_full_arc(static_cast<ArcId>(full))] = 1.0;
    } else if (kind == "uniform-cycle") {
        CycleBasis basis = fundamental_cycle_basis(g0);
        long k = std::stol(arg);
        if (k < 0 || k >= static_cast<long>(basis.cycles.size())) {
            throw std::invalid_argument("uniform-cycle preset: cycle index out of range");
        }
        for (ArcId a : basis.cycles[static_cast<std::size_t>(k)].arcs) psi.values[a] = 1.0;
    } else if (kind == "file") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open state file: " + arg);
        std::stringstream buffer;
        buffer << in.rdbuf();
        Json j = Json::parse(buffer.str());
        for (const auto& entry : j.at("amplitudes")) {
            long full = entry.at(0).get<long>();
            if (full < 0 || full >= g.arc_count()) {
                throw std::invalid_argument("state file: arc id out of range");
            }
            psi.values[from_full_arc(static_cast<ArcId>(full))] +=
                Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
        }
    } else {
        throw std::invalid_argument("unknown initial-state preset: " + preset);
    }
    double norm = psi.values.norm();
    if (norm < 1e-300) throw std::invalid_argument("initial state is zero");
    psi.values /= norm;
    return psi;
}

std::string matrix_json(const ComplexMatrix& m) {
    Json j = matrix_body(m);
    j["schema"] = 1;
    return j.dump(2);
}

std::string operators_to_json(const SymmetricDigraph& g, const InternalGraph& g0) {
    CycleBasis basis = fundamental_cycle_basis(g0);
    Json j{{"schema", 1}};
    j["arcs"] = arcs_json(g);
    Json internal_arcs = Json::array();
    for (ArcId a = 0; a < g0.arc_count(); ++a) internal_arcs.push_back(g0.parent_arc(a));
    j["internal_arcs"] = internal_arcs;
    j["grover"] = matrix_body(build_grover_matrix(g));
    j["flip"] = matrix_body(build_flip_matrix(g0.graph()));
    j["evolution"] = matrix_body(build_E(g0));
    j["dirichlet_t"] = matrix_body(build_T(g0).cast<Complex>());
    j["dirichlet_transition"] = matrix_body(build_dirichlet_transition(g0).cast<Complex>());
    j["d1"] = matrix_body(build_d1_matrix(g0).cast<Complex>());
    j["boundary2"] = matrix_body(build_boundary2_matrix(g0, basis).cast<Complex>());
    return j.dump(2);
}

namespace {

Json flow_json(const FlowVector& flow) {
    return Json{{"kind", flow.kind == FlowVector::Kind::plus ? "plus" : "minus"},
                {"walk", flow.walk},
                {"amplitudes", vector_json(flow.carrier)}};
}

}  // namespace

std::string basis_to_json(const InternalGraph& g0, const AttractorBasis& basis,
                          bool include_projector) {
    Json j{{"schema", 1}};
    j["case"] = std::string(1, to_char(basis.case_label));
    j["dimension"] = basis.dimension();
    j["k_part"] = Json::array();
    for (const auto& f : basis.k_part) j["k_part"].push_back(flow_json(f));
    j["minus_part"] = Json::array();
    for (const auto& f : basis.minus_part.flows) j["minus_part"].push_back(flow_json(f));
    for (const auto& h : basis.minus_part.etas) {
        j["minus_part"].push_back(Json{{"kind", "eta"},
                                       {"anchor_x", h.anchor_x},
                                       {"anchor_y", h.anchor_y},
                                       {"walk", h.walk},
                                       {"amplitudes", vector_json(h.carrier)}});
    }
    j["t_part"] = Json::array();
    for (const auto& pair : basis.t_part) {
        Json f = Json::array();
        for (Eigen::Index i = 0; i < pair.f.size(); ++i) f.push_back(pair.f[i]);
        j["t_part"].push_back(Json{{"mu", pair.mu},
                                   {"theta", pair.theta},
                                   {"f", std::move(f)},
                                   {"phi_plus", vector_json(pair.phi_plus)},
                                   {"phi_minus", vector_json(pair.phi_minus)}});
    }
    j["blocks"] = Json::array();
    for (const auto& b : basis.blocks) {
        Json vectors = Json::array();
        for (Eigen::Index c = 0; c < b.vectors.cols(); ++c) {
            vectors.push_back(vector_json(b.vectors.col(c)));
        }
        j["blocks"].push_back(
            Json{{"eigenvalue", complex_pair(b.eigenvalue)}, {"vectors", std::move(vectors)}});
    }
    if (include_projector) j["projector"] = matrix_body(basis.projector);
    (void)g0;
    return j.dump(2);
}

std::string survival_to_json(const InternalGraph& g0, const AttractorBasis& basis,
                             const SurvivalBreakdown& breakdown) {
    Json j{{"schema", 1},
           {"case", std::string(1, to_char(basis.case_label))},
           {"gamma", breakdown.gamma},
           {"blocks",
            Json{{"t", breakdown.t_block},
                 {"k", breakdown.k_block},
                 {"minus", breakdown.minus_block}}},
           {"attractor_dimension", basis.dimension()},
           {"internal_arcs", g0.arc_count()}};
    return j.dump(2);
}

std::string dims_to_json(const GraphSpec& spec, const DimensionReport& report) {
    Json j{{"schema", 1},
           {"case", std::string(1, to_char(report.case_label))},
           {"predicted", Json{{"plus", report.predicted_plus}, {"minus", report.predicted_minus}}},
           {"numeric", Json{{"plus", report.numeric_plus}, {"minus", report.numeric_minus}}},
           {"match", report.match}};
    if (!report.match) {
        j["graph"] = Json::parse(graph_to_json(spec));
    }
    return j.dump(2);
}

std::string spectrum_to_json(const SpectrumReport& report) {
    Json values = Json::array();
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
        values.push_back(Json{{"value", complex_pair(report.eigenvalues[i])},
                              {"modulus", std::abs(report.eigenvalues[i])}});
    }
    Json j{{"schema", 1},
           {"eigenvalues", std::move(values)},
           {"unit_circle", report.unit_circle},
           {"spectral_radius", report.spectral_radius},
           {"r_max", report.r_max},
           {"defective", report.defective}};
    return j.dump(2);
}

std::string tail_state_to_json(const InternalGraph& g0, const TailState& state,
                               const TailResiduals& residuals) {
    Json tails = Json::array();
    for (std::size_t i = 0; i < g0.tail_vertices().size(); ++i) {
        tails.push_back(Json{{"vertex", g0.tail_vertices()[i]},
                             {"alpha", complex_pair(state.alphas[i])},
                             {"psi", complex_pair(state.psi_tail[i])}});
    }
    Json j{{"schema", 1},
           {"mean", complex_pair(state.mean)},
           {"tails", std::move(tails)},
           {"psi_internal", vector_json(state.psi_internal)},
           {"current", vector_json(state.current)},
           {"residuals",
            Json{{"current_law", residuals.current_law},
                 {"voltage_law", residuals.voltage_law},
                 {"antisymmetry", residuals.antisymmetry},
                 {"fixed_point", residuals.fixed_point}}}};
    return j.dump(2);
}

std::string verify_to_json(const std::vector<std::pair<std::string, VerifyReport>>& reports) {
    Json j{{"schema", 1}, {"graphs", Json::array()}};
    bool all = true;
    for (const auto& [name, report] : reports) {
        Json checks = Json::array();
        for (const auto& c : report.checks) {
            checks.push_back(Json{{"name", c.name},
                                  {"value", c.value},
                                  {"tolerance", c.tolerance},
                                  {"pass", c.pass}});
        }
        all = all && report.pass;
        j["graphs"].push_back(
            Json{{"name", name}, {"pass", report.pass}, {"checks", std::move(checks)}});
    }
    j["pass"] = all;
    return j.dump(2);
}

std::string run_to_csv(const SinkRun& run) {
    std::ostringstream out;
    out.precision(17);
    out << "n,gamma_n,tau_n\n";
    for (std::size_t n = 0; n < run.gammas.size(); ++n) {
        out << n << ',' << run.gammas[n] << ',' << run.outflows[n] << '\n';
    }
    return out.str();
}

std::string run_to_json(const SinkRun& run) {
    Json j{{"schema", 1}, {"gamma", run.gammas}, {"tau", run.outflows}};
    return j.dump(2);
}

}  // namespace sinkwalk
