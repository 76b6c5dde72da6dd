#include "multinet/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "multinet/errors.hpp"

namespace multinet {

namespace detail {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    for (auto& f : fields) {
        const auto begin = f.find_first_not_of(" \t\r");
        const auto end = f.find_last_not_of(" \t\r");
        f = begin == std::string::npos ? std::string() : f.substr(begin, end - begin + 1);
    }
    return fields;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

std::vector<std::string> read_roster(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open roster '" + path + "'");
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t");
        const std::string label = line.substr(begin, end - begin + 1);
        if (!seen.insert(label).second)
            throw ParseError(path, line_no, "duplicate roster label '" + label + "'");
        labels.push_back(label);
    }
    if (labels.empty()) throw ParseError(path, line_no, "roster has no labels");
    return labels;
}

namespace {

double parse_number(const std::string& text, const std::string& path, std::size_t row,
                    const char* what) {
    if (text.empty()) throw ParseError(path, row, std::string("empty ") + what);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw ParseError(path, row, std::string("cannot parse ") + what + " '" + text + "'");
    return v;
}

}  // namespace

LayerGraph read_edge_csv(const std::string& path, const std::vector<std::string>* roster,
                         const std::string& layer_name) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file, expected header");
    auto header = detail::split_csv_row(line);
    if (header != std::vector<std::string>{"src", "dst", "weight"})
        throw ParseError(path, 1, "expected header 'src,dst,weight'");

    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index_of;
    const auto node_index = [&](const std::string& label, std::size_t row) {
        auto it = index_of.find(label);
        if (it != index_of.end()) return it->second;
        if (roster) throw ParseError(path, row, "label '" + label + "' not in roster");
        const Index idx = static_cast<Index>(labels.size());
        labels.push_back(label);
        index_of.emplace(label, idx);
        return idx;
    };
    if (roster) {
        labels = *roster;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index_of.emplace(labels[i], static_cast<Index>(i));
    }

    struct Edge {
        Index src, dst;
        double weight;
    };
    std::vector<Edge> edges;
    std::unordered_set<std::string> seen_pairs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 3)
            throw ParseError(path, row, "expected 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(path, row, "empty node label");
        const Index src = node_index(fields[0], row);
        const Index dst = node_index(fields[1], row);
        const double weight = parse_number(fields[2], path, row, "weight");
        if (weight < 0.0) throw ParseError(path, row, "negative weight");
        if (!seen_pairs.insert(fields[0] + "\x1f" + fields[1]).second)
            throw ParseError(path, row, "duplicate edge " + fields[0] + " -> " + fields[1]);
        if (src == dst) continue;  // layers are loop-free
        edges.push_back({src, dst, weight});
    }

    const Index n = static_cast<Index>(labels.size());
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) weights(e.src, e.dst) = e.weight;
    return LayerGraph(std::move(labels), std::move(weights), layer_name, /*directed=*/true);
}

}  // namespace multinet
