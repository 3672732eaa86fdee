// geonet: build, verify, relax, certify and draw planar geodesic nets.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geonet/geonet.hpp"

namespace {

using namespace geonet;

constexpr int kExitFailure = 1;
constexpr int kExitReducible = 2;
constexpr int kExitBudget = 3;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
    out << text;
}

std::string fmt(double v) { return detail::format_real(v, "%.17g"); }

int cmd_build(const std::string& which, const std::string& out) {
    Net net;
    if (which == "paper16") {
        net = build_paper_net();
    } else if (which == "overlay") {
        net = build_overlay_net();
    } else {
        net = build_fermat_tripod({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    }
    write_text(out, to_document(net));
    return 0;
}

int cmd_verify(const std::string& file, double tol, bool json) {
    const Net net = load(file);
    const VerifyReport r = verify(net, tol);
    if (json) {
        std::cout << to_json(net, r).dump(2) << "\n";
        return r.passed ? 0 : kExitFailure;
    }
    std::cout << (r.passed ? "PASSED" : "FAILED") << "\n";
    std::cout << "vertices " << net.vertex_count() << ", edges " << net.edge_count() << "\n";
    std::cout << "max residual " << fmt(r.max_residual) << " (tol " << fmt(tol) << ")\n";
    for (const auto& [id, res] : r.residuals) {
        if (res > tol) std::cout << "  unbalanced residual at " << id << ": " << fmt(res) << "\n";
    }
    for (const auto& [id, deg] : r.degree_violations) {
        std::cout << "  balanced vertex " << id << " has degree " << deg << "\n";
    }
    for (const auto& f : r.overlay_findings) {
        std::cout << "  overlay: " << net.edge_name(f.first) << " / " << net.edge_name(f.second) << "\n";
    }
    for (const auto& f : r.unplanarized_crossings) {
        std::cout << "  crossing: " << net.edge_name(f.first) << " / " << net.edge_name(f.second)
                  << " at (" << fmt(f.at.x) << ", " << fmt(f.at.y) << ")\n";
    }
    for (std::size_t e : r.unbalanced_to_unbalanced_edges) {
        std::cout << "  edge between unbalanced vertices: " << net.edge_name(e) << "\n";
    }
    std::cout << "connected " << (r.connected ? "yes" : "no") << "\n";
    return r.passed ? 0 : kExitFailure;
}

int cmd_irreducible(const std::string& file, double tol, const std::string& witness_out, bool json) {
    const Net net = load(file);
    SubnetCertificate cert;
    try {
        cert = find_proper_subnet(net, tol);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitBudget;
    }
    if (json) {
        std::cout << to_json(net, cert).dump(2) << "\n";
    } else if (const auto* ir = std::get_if<Irreducible>(&cert)) {
        std::cout << "IRREDUCIBLE (" << ir->nodes << " search nodes)\n";
        for (const auto& step : ir->trace) {
            std::cout << "  " << step.vertex << " forces";
            for (std::size_t e : step.forced_edges) std::cout << " " << net.edge_name(e);
            std::cout << "\n";
        }
    } else {
        const auto& rd = std::get<Reducible>(cert);
        std::cout << "REDUCIBLE: minimal witness with " << rd.witness.size() << " of "
                  << net.edge_count() << " edges\n";
        for (std::size_t e : rd.witness) std::cout << "  " << net.edge_name(e) << "\n";
    }
    for (const auto& w : std::visit([](const auto& c) { return c.warnings; }, cert)) {
        std::cerr << "warning: " << w << "\n";
    }
    if (const auto* rd = std::get_if<Reducible>(&cert)) {
        if (!witness_out.empty()) save(subnet(net, rd->witness), witness_out);
        return kExitReducible;
    }
    return 0;
}

int cmd_relax(const std::string& file, const RelaxParams& params, const std::string& out,
              const std::string& trace_out) {
    const Net topo = load(file);
    const RelaxResult r = relax(topo, params);
    std::ostream& log = out.empty() ? std::cerr : std::cout;
    log << (r.converged ? "converged" : "not converged") << " after " << r.iterations
        << " steps, final residual " << fmt(r.final_residual) << "\n";
    log << "length " << fmt(r.length_trace.front()) << " -> " << fmt(r.length_trace.back()) << "\n";
    if (!trace_out.empty()) {
        std::ofstream t(trace_out);
        t << "iteration,length\n";
        for (std::size_t i = 0; i < r.length_trace.size(); ++i) {
            t << i << "," << fmt(r.length_trace[i]) << "\n";
        }
    }
    write_text(out, to_document(r.net));
    return r.converged ? 0 : kExitFailure;
}

int cmd_fermat(const std::vector<double>& xy) {
    const Point f = fermat_point({{xy[0], xy[1]}, {xy[2], xy[3]}, {xy[4], xy[5]}});
    std::cout << fmt(f.x) << " " << fmt(f.y) << "\n";
    return 0;
}

int cmd_render(const std::string& file, const std::string& out, bool labels,
               const std::string& highlight, double width) {
    const Net net = load(file);
    SvgOptions opt;
    opt.width = width;
    opt.show_labels = labels;
    if (!highlight.empty()) {
        const Net part = load(highlight);
        EdgeSubset hot;
        for (std::size_t e = 0; e < part.edge_count(); ++e) {
            const auto [a, b] = part.edge_key(e);
            if (auto pe = net.find_edge(a, b)) hot.push_back(*pe);
        }
        std::sort(hot.begin(), hot.end());
        opt.highlight = hot;
    }
    write_text(out, render_svg(net, opt));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build, verify, relax and certify planar geodesic nets"};
    app.require_subcommand(1);

    std::string which, out, file, witness_out, trace_out, highlight;
    double tol = kBalanceTol;
    double width = 800.0;
    bool json = false;
    bool labels = false;
    RelaxParams params;
    std::vector<double> coords;

    auto* build = app.add_subcommand("build", "Write a built-in net document");
    build->add_option("fixture", which, "paper16 | overlay | fermat-tripod")
        ->required()
        ->check(CLI::IsMember({"paper16", "overlay", "fermat-tripod"}));
    build->add_option("--out", out, "Output file (default: stdout)");

    auto* ver = app.add_subcommand("verify", "Check the geodesic net conditions");
    ver->add_option("file", file)->required();
    ver->add_option("--tol", tol, "Balance tolerance");
    ver->add_flag("--json", json, "Machine-readable report");

    auto* irr = app.add_subcommand("irreducible", "Search for a proper geodesic subnet");
    irr->add_option("file", file)->required();
    irr->add_option("--tol", tol, "Balance tolerance");
    irr->add_option("--witness-out", witness_out, "Write the witness subnet document here");
    irr->add_flag("--json", json, "Machine-readable certificate");

    auto* rel = app.add_subcommand("relax", "Descend total length with unbalanced vertices pinned");
    rel->add_option("file", file)->required();
    rel->add_option("--step", params.step, "Initial step length");
    rel->add_option("--tol", params.tol, "Residual at which to stop");
    rel->add_option("--max-iter", params.max_iter, "Maximum accepted steps");
    rel->add_option("--out", out, "Relaxed net document (default: stdout)");
    rel->add_option("--trace-out", trace_out, "CSV of total length per step");

    auto* fer = app.add_subcommand("fermat", "Fermat point of a triangle");
    fer->add_option("coords", coords, "X1 Y1 X2 Y2 X3 Y3")->required()->expected(6);

    auto* ren = app.add_subcommand("render", "Draw a net as SVG");
    ren->add_option("file", file)->required();
    ren->add_option("--out", out, "SVG file (default: stdout)");
    ren->add_flag("--labels", labels, "Draw vertex labels");
    ren->add_option("--highlight", highlight, "Net document whose edges are drawn highlighted");
    ren->add_option("--width", width, "Drawing width in pixels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(which, out);
        if (*ver) return cmd_verify(file, tol, json);
        if (*irr) return cmd_irreducible(file, tol, witness_out, json);
        if (*rel) return cmd_relax(file, params, out, trace_out);
        if (*fer) return cmd_fermat(coords);
        if (*ren) return cmd_render(file, out, labels, highlight, width);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
