#include "graphval/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "graphval/errors.hpp"

namespace graphval {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

bool blank_or_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r\n");
    return pos == std::string::npos || line[pos] == '#';
}

std::vector<double> parse_csv_row(const std::string& line, const std::string& where,
                                  int line_no) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) {
                ++used;
            }
            if (used != cell.size()) throw std::invalid_argument(cell);
            row.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError(where + ":" + std::to_string(line_no) +
                                  ": malformed value '" + cell + "'");
        }
    }
    if (row.empty()) {
        throw ValidationError(where + ":" + std::to_string(line_no) + ": empty row");
    }
    return row;
}

void note_dropped_self_loops(int count, const std::filesystem::path& path) {
    if (count > 0) {
        std::cerr << "note: dropped " << count << " self-loop(s) while loading "
                  << path.string() << "\n";
    }
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<std::pair<long long, long long>> raw;
    std::string line;
    int line_no = 0;
    int self_loops = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        std::stringstream ss(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ss >> u >> v) || (ss >> extra) || u < 0 || v < 0) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected two non-negative integers");
        }
        if (u == v) {
            ++self_loops;
            continue;
        }
        raw.emplace_back(u, v);
    }
    note_dropped_self_loops(self_loops, path);
    if (raw.empty()) {
        throw ValidationError(path.string() + ": no edges");
    }

    std::map<long long, int> dense;
    for (auto [u, v] : raw) {
        dense.emplace(u, 0);
        dense.emplace(v, 0);
    }
    int next = 0;
    for (auto& [id, idx] : dense) idx = next++;

    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw.size());
    for (auto [u, v] : raw) {
        edges.emplace_back(dense[u], dense[v]);
    }
    std::sort(edges.begin(), edges.end());
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(next, std::move(edges));
}

Graph load_feature_csv(const std::filesystem::path& path, const Graph& g) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        rows.push_back(parse_csv_row(line, path.string(), line_no));
        if (rows.back().size() != rows.front().size()) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": ragged row width");
        }
    }
    if (static_cast<int>(rows.size()) != g.node_count()) {
        throw ValidationError(path.string() + ": feature rows (" +
                              std::to_string(rows.size()) + ") != node count (" +
                              std::to_string(g.node_count()) + ")");
    }
    Eigen::MatrixXd feats(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            feats(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return g.with_features(std::move(feats));
}

GraphSet load_tu_dataset(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }
    std::filesystem::path adjacency_file;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 6 && name.ends_with("_A.txt")) {
            adjacency_file = entry.path();
            break;
        }
    }
    if (adjacency_file.empty()) {
        throw IoError("no *_A.txt file in " + dir.string());
    }
    const std::string stem = adjacency_file.filename().string();
    const std::string prefix = stem.substr(0, stem.size() - 6);
    const auto indicator_file = dir / (prefix + "_graph_indicator.txt");
    const auto attributes_file = dir / (prefix + "_node_attributes.txt");

    // Graph membership, 1-based graph ids, one node per line.
    std::vector<int> graph_of;  // 0-based node -> 0-based graph
    {
        std::ifstream in = open_input(indicator_file);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank_or_comment(line)) continue;
            try {
                const int gid = std::stoi(line);
                if (gid < 1) throw std::invalid_argument(line);
                graph_of.push_back(gid - 1);
            } catch (const std::exception&) {
                throw ValidationError(indicator_file.string() + ":" +
                                      std::to_string(line_no) + ": bad graph id");
            }
        }
    }
    if (graph_of.empty()) {
        throw ValidationError(indicator_file.string() + ": empty graph indicator");
    }
    const int n_graphs = *std::max_element(graph_of.begin(), graph_of.end()) + 1;

    std::vector<int> local_index(graph_of.size());
    std::vector<int> graph_sizes(n_graphs, 0);
    for (std::size_t node = 0; node < graph_of.size(); ++node) {
        local_index[node] = graph_sizes[graph_of[node]]++;
    }
    for (int g = 0; g < n_graphs; ++g) {
        if (graph_sizes[g] == 0) {
            throw ValidationError(indicator_file.string() + ": dangling graph indicator, id " +
                                  std::to_string(g + 1) + " has no nodes");
        }
    }

    std::vector<std::vector<std::pair<int, int>>> edges(n_graphs);
    {
        std::ifstream in = open_input(adjacency_file);
        std::string line;
        int line_no = 0;
        int self_loops = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank_or_comment(line)) continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::stringstream ss(line);
            long long u = 0, v = 0;
            if (!(ss >> u >> v) || u < 1 || v < 1 ||
                u > static_cast<long long>(graph_of.size()) ||
                v > static_cast<long long>(graph_of.size())) {
                throw ValidationError(adjacency_file.string() + ":" +
                                      std::to_string(line_no) + ": bad edge");
            }
            if (u == v) {
                ++self_loops;
                continue;
            }
            const int gu = graph_of[u - 1];
            const int gv = graph_of[v - 1];
            if (gu != gv) {
                throw ValidationError(adjacency_file.string() + ":" + std::to_string(line_no) +
                                      ": edge crosses graphs " + std::to_string(gu + 1) +
                                      " and " + std::to_string(gv + 1));
            }
            edges[gu].emplace_back(local_index[u - 1],
                                   local_index[v - 1]);
        }
        note_dropped_self_loops(self_loops, adjacency_file);
    }

    std::vector<Eigen::MatrixXd> feats;
    bool has_features = std::filesystem::exists(attributes_file);
    if (has_features) {
        std::ifstream in = open_input(attributes_file);
        std::vector<std::vector<double>> rows;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank_or_comment(line)) continue;
            rows.push_back(parse_csv_row(line, attributes_file.string(), line_no));
        }
        if (rows.size() != graph_of.size()) {
            throw ValidationError(attributes_file.string() + ": attribute rows (" +
                                  std::to_string(rows.size()) + ") != node count (" +
                                  std::to_string(graph_of.size()) + ")");
        }
        const std::size_t r = rows.front().size();
        feats.resize(n_graphs);
        for (int g = 0; g < n_graphs; ++g) {
            feats[g].resize(graph_sizes[g], static_cast<Eigen::Index>(r));
        }
        for (std::size_t node = 0; node < rows.size(); ++node) {
            if (rows[node].size() != r) {
                throw ValidationError(attributes_file.string() + ": ragged attribute rows");
            }
            for (std::size_t j = 0; j < r; ++j) {
                feats[graph_of[node]](local_index[node], static_cast<Eigen::Index>(j)) =
                    rows[node][j];
            }
        }
    }

    std::vector<Graph> graphs;
    graphs.reserve(n_graphs);
    for (int g = 0; g < n_graphs; ++g) {
        // Symmetrize: directed pairs collapse onto canonical undirected edges.
        auto& e = edges[g];
        for (auto& [u, v] : e) {
            if (u > v) std::swap(u, v);
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        graphs.emplace_back(graph_sizes[g], std::move(e),
                            has_features ? std::optional<Eigen::MatrixXd>(std::move(feats[g]))
                                         : std::nullopt);
    }
    return GraphSet(std::move(graphs));
}

GraphSet load_manifest(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("graphs") || !doc["graphs"].is_array() ||
        doc["graphs"].empty()) {
        throw ValidationError(path.string() + ": manifest needs a non-empty \"graphs\" array");
    }
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    std::vector<Graph> graphs;
    for (const auto& entry : doc["graphs"]) {
        if (!entry.is_object() || !entry.contains("edges") || !entry["edges"].is_string()) {
            throw ValidationError(path.string() + ": each graph entry needs an \"edges\" path");
        }
        Graph g = load_edge_list(resolve(entry["edges"].get<std::string>()));
        if (entry.contains("features") && !entry["features"].is_null()) {
            if (!entry["features"].is_string()) {
                throw ValidationError(path.string() + ": \"features\" must be a path or null");
            }
            g = load_feature_csv(resolve(entry["features"].get<std::string>()), g);
        }
        graphs.push_back(std::move(g));
    }
    return GraphSet(std::move(graphs));
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "# " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    for (auto [u, v] : g.edges()) {
        out << u << " " << v << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace graphval
