#pragma once

// Point-cloud readers and JSON / SVG writers. Doubles are written in the
// shortest form that parses back to the identical value.

#include "phid/circumsphere.hpp"
#include "phid/fiber.hpp"
#include "phid/graph.hpp"
#include "phid/persistence.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace phid::io {

using nlohmann::json;

inline constexpr std::string_view kToolVersion = "0.1.0";

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_double(std::string_view field, std::size_t line)
{
    field = trim(field);
    double v = 0.0;
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw InputError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "' as a number");
    }
    return v;
}

} // namespace detail

/// One point per non-empty line, comma-separated coordinates, no header.
inline PointCloud parse_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            row.push_back(detail::parse_double(line.substr(start, comma - start), line_no));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                             " columns, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InputError("no points in input");
    }
    return PointCloud(rows);
}

/// {"points": [[x, y, ...], ...]}
inline PointCloud parse_points_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
        throw InputError("JSON input must be an object with a \"points\" array");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const json& row = j["points"][i];
        if (!row.is_array()) {
            throw InputError("point " + std::to_string(i) + " is not an array");
        }
        std::vector<double> coords;
        for (const json& x : row) {
            if (!x.is_number()) {
                throw InputError("point " + std::to_string(i) + " has a non-numeric coordinate");
            }
            coords.push_back(x.get<double>());
        }
        rows.push_back(std::move(coords));
    }
    if (rows.empty()) {
        throw InputError("no points in input");
    }
    return PointCloud(rows);
}

/// Chooses the JSON reader when the first non-blank character is '{'.
inline PointCloud parse_point_cloud(std::string_view text)
{
    const std::string_view t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
        return parse_points_json(t);
    }
    return parse_csv(text);
}

inline PointCloud read_point_cloud(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_point_cloud(buf.str());
}

inline json endpoint_json(double v)
{
    if (std::isinf(v)) {
        return "inf";
    }
    return v;
}

/// Array per degree of [birth, death] pairs; infinite deaths are "inf".
inline json barcode_json(const FullBarcode& bars)
{
    json degrees = json::array();
    for (const Barcode& b : bars.per_degree) {
        json ivs = json::array();
        for (const Interval& iv : b.intervals) {
            ivs.push_back(json::array({endpoint_json(iv.birth), endpoint_json(iv.death)}));
        }
        degrees.push_back(std::move(ivs));
    }
    return degrees;
}

inline FullBarcode barcode_from_json(const json& degrees)
{
    FullBarcode out;
    for (const json& ivs : degrees) {
        Barcode b;
        for (const json& iv : ivs) {
            const json& death = iv.at(1);
            b.intervals.push_back({iv.at(0).get<double>(), death.is_string() ? kInfinity : death.get<double>()});
        }
        out.per_degree.push_back(std::move(b));
    }
    out.max_degree = static_cast<int>(out.per_degree.size()) - 1;
    return out;
}

inline json graph_json(const Graph& g)
{
    json edges = json::array();
    for (const Edge& e : g.edges) {
        edges.push_back(json::array({e.u, e.v}));
    }
    return {{"n", g.n}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j)
{
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) {
        if (e.size() != 2) {
            throw InputError("graph edges must have two endpoints");
        }
        edges.emplace_back(e.at(0).get<Index>(), e.at(1).get<Index>());
    }
    return Graph(j.at("n").get<std::size_t>(), std::move(edges));
}

inline json hypergraph_json(const Hypergraph& h)
{
    json edges = json::array();
    for (const SimplexKey& s : h.hyperedges) {
        edges.push_back(s.vertices());
    }
    return {{"n", h.n}, {"hyperedges", std::move(edges)}};
}

inline Hypergraph hypergraph_from_json(const json& j)
{
    std::vector<SimplexKey> h;
    for (const json& e : j.at("hyperedges")) {
        h.emplace_back(e.get<std::vector<Index>>());
    }
    return Hypergraph(j.at("n").get<std::size_t>(), std::move(h));
}

inline json verdict_json(const RigidityVerdict& v)
{
    return {{"status", to_string(v.status)}, {"rank", v.rank}, {"target_rank", v.target_rank}, {"dof", v.dof}};
}

inline json verdict_entry_json(const VerdictEntry& e)
{
    json j;
    j["value"] = e.value ? json(*e.value) : json("n/a");
    if (!e.note.empty()) {
        j["note"] = e.note;
    }
    if (e.rank) {
        j["rank"] = verdict_json(*e.rank);
    }
    return j;
}

inline json report_json(const IdentifiabilityReport& r)
{
    json fibers = json::array();
    for (const FiberSection& s : r.fibers) {
        json reps = json::array();
        for (const SimplexKey& k : s.local.representatives) {
            reps.push_back(k.vertices());
        }
        fibers.push_back({{"filtration", to_string(s.kind)},
                          {"k", s.k},
                          {"lower_bound", s.bounds.lower},
                          {"upper_bound_whole_fiber", s.bounds.upper},
                          {"local_fiber_dim", s.local.dimension},
                          {"jacobian_rank", s.local.rank},
                          {"endpoints", s.local.endpoints},
                          {"representatives", std::move(reps)}});
    }
    return {{"tool", "phid"},
            {"version", kToolVersion},
            {"n", r.n},
            {"d", r.d},
            {"seed", r.options.seed},
            {"trials", r.options.trials},
            {"tol", r.options.tol},
            {"rank_tol", r.options.rank_tol},
            {"fibers", std::move(fibers)},
            {"vr_locally_identifiable", verdict_entry_json(r.vr_locally_identifiable)},
            {"vr_globally_identifiable_sufficient", verdict_entry_json(r.vr_globally_identifiable_sufficient)},
            {"cech_locally_identifiable", verdict_entry_json(r.cech_locally_identifiable)},
            {"genericity_flags", r.genericity_flags}};
}

inline json conjecture_json(const ConjectureReport& r, int trials, std::uint64_t seed)
{
    return {{"d", r.d},
            {"n", r.n},
            {"trials", trials},
            {"seed", seed},
            {"trials_run", r.trials_run},
            {"rigid", r.rigid_count},
            {"rejects", r.degenerate_rejects},
            {"target_rank", r.target_rank},
            {"min_rank", r.min_rank},
            {"max_rank", r.max_rank},
            {"verdict", to_string(r.verdict)}};
}

inline json points_json(const PointCloud& p)
{
    json rows = json::array();
    for (Index i = 0; i < p.size(); ++i) {
        json row = json::array();
        for (Index k = 0; k < p.dim(); ++k) {
            row.push_back(p.coord(i, k));
        }
        rows.push_back(std::move(row));
    }
    return {{"points", std::move(rows)}};
}

/// One horizontal bar per interval, grouped and colored by degree. Infinite
/// bars run to the right edge.
inline std::string barcode_svg(const FullBarcode& bars)
{
    static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    constexpr double kWidth = 640.0;
    constexpr double kMargin = 40.0;
    constexpr double kBar = 10.0;
    constexpr double kGap = 4.0;

    double t_max = 0.0;
    std::size_t count = 0;
    for (const Barcode& b : bars.per_degree) {
        for (const Interval& iv : b.intervals) {
            t_max = std::max(t_max, iv.birth);
            if (!iv.infinite()) {
                t_max = std::max(t_max, iv.death);
            }
            ++count;
        }
    }
    if (t_max <= 0.0) {
        t_max = 1.0;
    }
    t_max *= 1.1;
    const double plot = kWidth - 2.0 * kMargin;
    const double height = 2.0 * kMargin + static_cast<double>(count) * (kBar + kGap);
    const auto x_of = [&](double t) { return kMargin + plot * std::min(t, t_max) / t_max; };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height << "\">\n";
    os << "  <line x1=\"" << kMargin << "\" y1=\"" << height - kMargin / 2 << "\" x2=\"" << kWidth - kMargin
       << "\" y2=\"" << height - kMargin / 2 << "\" stroke=\"black\"/>\n";
    double y = kMargin;
    for (std::size_t deg = 0; deg < bars.per_degree.size(); ++deg) {
        const char* color = kColors[deg % std::size(kColors)];
        for (const Interval& iv : bars.per_degree[deg].intervals) {
            const double x0 = x_of(iv.birth);
            const double x1 = iv.infinite() ? kWidth - kMargin : x_of(iv.death);
            os << "  <rect class=\"bar\" data-degree=\"" << deg << "\" x=\"" << x0 << "\" y=\"" << y
               << "\" width=\"" << std::max(x1 - x0, 1.0) << "\" height=\"" << kBar << "\" fill=\"" << color
               << "\"/>\n";
            y += kBar + kGap;
        }
    }
    os << "  <text x=\"" << kMargin << "\" y=\"" << height - 4 << "\" font-size=\"10\">0</text>\n";
    os << "  <text x=\"" << kWidth - kMargin << "\" y=\"" << height - 4 << "\" font-size=\"10\">" << t_max
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace phid::io
