// phid: persistence barcodes, critical structures, rigidity and
// identifiability reports for finite point clouds.

#include "phid/io.hpp"
#include "phid/phid.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using phid::io::json;

enum ExitCode : int { kOk = 0, kInputError = 2, kResourceCap = 3, kDomainError = 4 };

struct Common {
    std::string input;
    std::string filtration = "vr";
    std::optional<int> max_degree;
    double tol = phid::kDefaultEndpointTol;
    double rank_tol = phid::kDefaultRankTol;
    std::optional<std::uint64_t> seed;
    int trials = phid::kDefaultGgrTrials;
    std::string json_out = "stdout";
    std::string svg;
};

void add_common(CLI::App* cmd, Common& c, bool with_input = true)
{
    if (with_input) {
        cmd->add_option("input", c.input, "point cloud (CSV rows or JSON {\"points\": [...]})")->required();
    }
    cmd->add_option("--filtration", c.filtration, "vr, cech or both")
        ->check(CLI::IsMember({"vr", "cech", "both"}));
    cmd->add_option("--max-degree", c.max_degree, "highest homological degree")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", c.tol, "relative tolerance for endpoint and tie matching")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rank-tol", c.rank_tol, "relative singular-value cutoff")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "seed for randomized tests");
    cmd->add_option("--trials", c.trials, "trials for randomized tests")->check(CLI::PositiveNumber);
    cmd->add_option("--json", c.json_out, "output path or 'stdout'");
}

std::vector<phid::FiltrationKind> kinds(const Common& c)
{
    if (c.filtration == "both") {
        return {phid::FiltrationKind::VietorisRips, phid::FiltrationKind::Cech};
    }
    return {c.filtration == "cech" ? phid::FiltrationKind::Cech : phid::FiltrationKind::VietorisRips};
}

phid::AnalysisOptions options(const Common& c)
{
    phid::AnalysisOptions o;
    o.tol = c.tol;
    o.rank_tol = c.rank_tol;
    o.max_degree = c.max_degree;
    o.trials = c.trials;
    o.seed = c.seed.value_or(0);
    return o;
}

std::uint64_t require_seed(const Common& c, const char* why)
{
    if (!c.seed) {
        throw phid::InputError(std::string("--seed is required: ") + why);
    }
    return *c.seed;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path == "stdout" || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw phid::InputError("cannot write " + path);
    }
    out << text;
}

void emit(const Common& c, const json& j) { write_text(c.json_out, j.dump(2) + "\n"); }

std::string svg_path(const std::string& base, phid::FiltrationKind kind, bool several)
{
    if (!several) {
        return base;
    }
    const std::size_t dot = base.rfind('.');
    const std::string stem = dot == std::string::npos ? base : base.substr(0, dot);
    const std::string ext = dot == std::string::npos ? ".svg" : base.substr(dot);
    return stem + "." + std::string(phid::to_string(kind)) + ext;
}

void cmd_barcode(const Common& c)
{
    const phid::PointCloud p = phid::io::read_point_cloud(c.input);
    const auto ks = kinds(c);
    json out = json::object();
    for (phid::FiltrationKind kind : ks) {
        const int deg = c.max_degree.value_or(phid::default_max_degree(kind, p));
        const phid::FullBarcode bars = phid::compute_barcodes(p, kind, deg);
        out[std::string(phid::to_string(kind))] = {{"max_degree", deg}, {"barcodes", phid::io::barcode_json(bars)}};
        if (!c.svg.empty()) {
            write_text(svg_path(c.svg, kind, ks.size() > 1), phid::io::barcode_svg(bars));
        }
    }
    emit(c, out);
}

void cmd_critical(const Common& c)
{
    const phid::PointCloud p = phid::io::read_point_cloud(c.input);
    const phid::CriticalityOptions opt = options(c).criticality();
    json out = json::object();
    for (phid::FiltrationKind kind : kinds(c)) {
        if (kind == phid::FiltrationKind::VietorisRips) {
            out["graph"] = phid::io::graph_json(phid::critical_graph(p, opt));
        } else {
            out["hypergraph"] = phid::io::hypergraph_json(phid::critical_hypergraph(p, opt));
        }
    }
    emit(c, out);
}

void cmd_identify(const Common& c)
{
    const phid::PointCloud p = phid::io::read_point_cloud(c.input);
    const auto ks = kinds(c);
    const bool vr = std::find(ks.begin(), ks.end(), phid::FiltrationKind::VietorisRips) != ks.end();
    const bool cech = std::find(ks.begin(), ks.end(), phid::FiltrationKind::Cech) != ks.end();
    if (vr && p.dim() >= 3) {
        require_seed(c, "the global criterion in d >= 3 is randomized");
    }
    emit(c, phid::io::report_json(phid::identify(p, vr, cech, options(c))));
}

void cmd_fiber_dim(const Common& c)
{
    const phid::PointCloud p = phid::io::read_point_cloud(c.input);
    json out = json::object();
    for (phid::FiltrationKind kind : kinds(c)) {
        const phid::LocalFiberResult r = phid::local_fiber_dimension(p, kind, options(c));
        const auto b = phid::fiber_dim_bounds(static_cast<long long>(p.size()), static_cast<long long>(p.dim()),
                                              static_cast<long long>(r.endpoints.size()));
        json reps = json::array();
        for (const phid::SimplexKey& s : r.representatives) {
            reps.push_back(s.vertices());
        }
        out[std::string(phid::to_string(kind))] = {{"k", r.endpoints.size()},
                                                   {"lower_bound", b.lower},
                                                   {"upper_bound_whole_fiber", b.upper},
                                                   {"local_fiber_dim", r.dimension},
                                                   {"jacobian_rank", r.rank},
                                                   {"representatives", std::move(reps)}};
    }
    emit(c, out);
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw phid::InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw phid::InputError(path + ": " + e.what());
    }
}

void cmd_rigidity(const Common& c, const std::string& graph_path, const std::string& hyper_path)
{
    const phid::PointCloud p = phid::io::read_point_cloud(c.input);
    if (graph_path.empty() == hyper_path.empty()) {
        throw phid::InputError("give exactly one of --graph or --hypergraph");
    }
    json out = json::object();
    try {
        if (!graph_path.empty()) {
            const phid::Graph g = phid::io::graph_from_json(read_json_file(graph_path));
            out["infinitesimal"] = phid::io::verdict_json(
                phid::infinitesimal_rigidity_test(phid::Framework(g, p), c.rank_tol));
            if (p.dim() == 2) {
                out["laman_glr_2d"] = phid::laman_glr_2d(g);
                out["three_connected"] = phid::is_3_connected(g);
                out["redundantly_rigid_2d"] = phid::is_redundantly_rigid_2d(g);
                out["ggr_2d"] = phid::ggr_2d(g);
            }
            if (c.seed) {
                out["ggr_randomized"] = phid::ggr_randomized(g, p.dim(), c.trials, *c.seed, c.rank_tol);
            }
        } else {
            const phid::Hypergraph h = phid::io::hypergraph_from_json(read_json_file(hyper_path));
            out["circumsphere"] = phid::io::verdict_json(
                phid::circumsphere_rigidity_test(phid::CircumsphereFramework(h, p), c.rank_tol));
        }
    } catch (const nlohmann::json::exception& e) {
        throw phid::InputError(e.what());
    }
    emit(c, out);
}

void cmd_conjecture(const Common& c, std::size_t d, std::size_t n)
{
    const std::uint64_t seed = require_seed(c, "random configurations are sampled");
    const phid::ConjectureReport r = phid::verify_complete_uniform_rigidity(d, n, c.trials, seed, c.rank_tol);
    emit(c, phid::io::conjecture_json(r, c.trials, seed));
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string field = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        try {
            out.push_back(std::stod(field, &used));
        } catch (const std::exception&) {
            throw phid::InputError("cannot parse '" + field + "' as a number");
        }
        if (used != field.size()) {
            throw phid::InputError("cannot parse '" + field + "' as a number");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Persistence barcodes, critical structures, rigidity and identifiability of point clouds"};
    app.require_subcommand(1);

    Common common;
    auto* barcode = app.add_subcommand("barcode", "full barcode per filtration");
    add_common(barcode, common);
    barcode->add_option("--svg", common.svg, "write an SVG rendering of the barcode");

    auto* critical = app.add_subcommand("critical", "critical graph (vr) and/or critical hypergraph (cech)");
    add_common(critical, common);

    auto* identify = app.add_subcommand("identify", "identifiability report");
    add_common(identify, common);

    auto* fiber = app.add_subcommand("fiber-dim", "local fiber dimension and fiber-dimension bounds");
    add_common(fiber, common);

    std::string graph_path;
    std::string hyper_path;
    auto* rigidity = app.add_subcommand("rigidity", "rigidity of a framework or circumsphere framework");
    add_common(rigidity, common);
    rigidity->add_option("--graph", graph_path, "graph JSON {n, edges}");
    rigidity->add_option("--hypergraph", hyper_path, "hypergraph JSON {n, hyperedges}");

    std::size_t conj_d = 2;
    std::size_t conj_n = 5;
    auto* conj = app.add_subcommand("conjecture66", "rank test of complete (d+1)-uniform hypergraphs");
    add_common(conj, common, false);
    conj->add_option("--d", conj_d, "dimension")->required();
    conj->add_option("--n", conj_n, "number of points")->required();

    std::string radii;
    std::string angles;
    auto* chain = app.add_subcommand("chain-gen", "planar chain with prescribed degree-0 Cech deaths");
    chain->add_option("--radii", radii, "comma-separated positive radii")->required();
    chain->add_option("--angles", angles, "comma-separated step angles in (-pi/4, pi/4)")->required();
    chain->add_option("--json", common.json_out, "output path or 'stdout'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    // conjecture66 defaults to the documented trial count.
    if (conj->parsed() && conj->count("--trials") == 0) {
        common.trials = phid::kDefaultConjectureTrials;
    }

    try {
        if (barcode->parsed()) {
            cmd_barcode(common);
        } else if (critical->parsed()) {
            cmd_critical(common);
        } else if (identify->parsed()) {
            cmd_identify(common);
        } else if (fiber->parsed()) {
            cmd_fiber_dim(common);
        } else if (rigidity->parsed()) {
            cmd_rigidity(common, graph_path, hyper_path);
        } else if (conj->parsed()) {
            cmd_conjecture(common, conj_d, conj_n);
        } else if (chain->parsed()) {
            emit(common, phid::io::points_json(phid::generate_chain_cloud(parse_list(radii), parse_list(angles))));
        }
    } catch (const phid::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const phid::ComplexTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const phid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kOk;
}
