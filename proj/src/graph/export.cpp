#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

#include "reqnet/csv.hpp"
#include "reqnet/error.hpp"
#include "reqnet/format.hpp"
#include "reqnet/graph.hpp"

namespace reqnet::graph {

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_graphml(std::ostream& out, const FeatureGraph& g, const ExportAttributes& attrs) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    if (attrs.metrics) {
        out << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
            << "  <key id=\"closeness\" for=\"node\" attr.name=\"closeness\" attr.type=\"double\"/>\n"
            << "  <key id=\"clustering\" for=\"node\" attr.name=\"clustering\" attr.type=\"double\"/>\n";
    }
    if (attrs.community)
        out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
        << "  <graph id=\"features\" edgedefault=\"undirected\">\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "    <node id=\"" << xml_escape(g.label(v)) << "\"";
        if (!attrs.metrics && !attrs.community) {
            out << "/>\n";
            continue;
        }
        out << ">\n";
        if (attrs.metrics) {
            out << "      <data key=\"degree\">" << attrs.metrics->degree[v] << "</data>\n"
                << "      <data key=\"closeness\">" << format_real(attrs.metrics->closeness[v], 17) << "</data>\n"
                << "      <data key=\"clustering\">" << format_real(attrs.metrics->clustering[v], 17) << "</data>\n";
        }
        if (attrs.community) out << "      <data key=\"community\">" << (*attrs.community)[v] << "</data>\n";
        out << "    </node>\n";
    }
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        out << "    <edge id=\"e" << i << "\" source=\"" << xml_escape(g.label(e.u)) << "\" target=\""
            << xml_escape(g.label(e.v)) << "\">\n"
            << "      <data key=\"weight\">" << e.weight << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const FeatureGraph& g, const ExportAttributes& attrs) {
    std::size_t max_w = 1;
    for (const auto& e : g.edges()) max_w = std::max(max_w, e.weight);

    out << "graph features {\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "  " << dot_quote(g.label(v));
        if (attrs.metrics || attrs.community) {
            out << " [";
            bool first = true;
            auto sep = [&] {
                if (!first) out << ", ";
                first = false;
            };
            if (attrs.metrics) {
                sep();
                out << "degree=" << attrs.metrics->degree[v];
                sep();
                out << "closeness=" << format_real(attrs.metrics->closeness[v], 6);
                sep();
                out << "clustering=" << format_real(attrs.metrics->clustering[v], 6);
            }
            if (attrs.community) {
                sep();
                out << "community=" << (*attrs.community)[v];
            }
            out << "]";
        }
        out << ";\n";
    }
    for (const auto& e : g.edges()) {
        char pen[32];
        std::snprintf(pen, sizeof pen, "%.3f", 5.0 * static_cast<double>(e.weight) / static_cast<double>(max_w));
        out << "  " << dot_quote(g.label(e.u)) << " -- " << dot_quote(g.label(e.v)) << " [weight=" << e.weight
            << ", penwidth=" << pen << "];\n";
    }
    out << "}\n";
}

void write_csv(std::ostream& out, const FeatureGraph& g) {
    csv::write_row(out, {"feature_a", "feature_b", "weight"});
    for (const auto& e : g.edges()) csv::write_row(out, {g.label(e.u), g.label(e.v), std::to_string(e.weight)});
}

std::vector<FeatureGraph::LabeledEdge> read_edges(std::istream& in, std::set<std::string>& endpoints) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"feature_a", "feature_b", "weight"})
        throw InputError("edge CSV must start with header 'feature_a,feature_b,weight'");
    std::vector<FeatureGraph::LabeledEdge> edges;
    while (auto row = reader.next()) {
        if (!reader.error().empty() || row->fields.size() != 3)
            throw InputError("edge CSV line " + std::to_string(row->line) + " is malformed");
        char* end = nullptr;
        const auto w = std::strtoull(row->fields[2].c_str(), &end, 10);
        if (row->fields[2].empty() || *end != '\0' || w == 0)
            throw InputError("edge CSV line " + std::to_string(row->line) + " has a bad weight");
        endpoints.insert(row->fields[0]);
        endpoints.insert(row->fields[1]);
        edges.push_back({row->fields[0], row->fields[1], static_cast<std::size_t>(w)});
    }
    return edges;
}

}  // namespace

std::optional<ExportFormat> parse_export_format(std::string_view raw) {
    std::string text(raw);
    for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (text == "graphml") return ExportFormat::graphml;
    if (text == "dot") return ExportFormat::dot;
    if (text == "csv") return ExportFormat::csv;
    return std::nullopt;
}

std::string_view to_string(ExportFormat f) {
    switch (f) {
        case ExportFormat::graphml: return "graphml";
        case ExportFormat::dot: return "dot";
        case ExportFormat::csv: return "csv";
    }
    return "csv";
}

void export_graph(std::ostream& out, const FeatureGraph& g, ExportFormat format, const ExportAttributes& attrs) {
    if (attrs.metrics && attrs.metrics->degree.size() != g.vertex_count())
        throw ConsistencyError("metrics do not match the graph being exported");
    if (attrs.community && attrs.community->size() != g.vertex_count())
        throw ConsistencyError("community assignment does not match the graph being exported");
    switch (format) {
        case ExportFormat::graphml: write_graphml(out, g, attrs); return;
        case ExportFormat::dot: write_dot(out, g, attrs); return;
        case ExportFormat::csv: write_csv(out, g); return;
    }
}

FeatureGraph read_edge_csv(std::istream& in) {
    std::set<std::string> endpoints;
    auto edges = read_edges(in, endpoints);
    try {
        return FeatureGraph({endpoints.begin(), endpoints.end()}, edges);
    } catch (const DomainError& e) {
        throw InputError(std::string("edge CSV: ") + e.what());
    }
}

void write_vertices_csv(std::ostream& out, const FeatureGraph& g) {
    csv::write_row(out, {"feature"});
    for (const auto& l : g.labels()) csv::write_row(out, {l});
}

FeatureGraph read_graph_csv(std::istream& vertices, std::istream& edges) {
    csv::Reader reader(vertices);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"feature"})
        throw InputError("vertex CSV must start with header 'feature'");
    std::vector<std::string> labels;
    while (auto row = reader.next()) {
        if (!reader.error().empty() || row->fields.size() != 1)
            throw InputError("vertex CSV line " + std::to_string(row->line) + " is malformed");
        labels.push_back(row->fields[0]);
    }
    std::set<std::string> endpoints;
    auto edge_list = read_edges(edges, endpoints);
    try {
        return FeatureGraph(std::move(labels), edge_list);
    } catch (const DomainError& e) {
        throw InputError(std::string("graph CSV: ") + e.what());
    }
}

}  // namespace reqnet::graph
