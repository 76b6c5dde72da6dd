#include "multinet/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "multinet/io.hpp"

namespace multinet {

void PipelineConfig::validate() const {
    if (!(sh_threshold >= 0.0 && sh_threshold < 1.0))
        throw std::invalid_argument("sh_threshold must lie in [0, 1)");
    if (!(corr_threshold > -1.0 && corr_threshold < 1.0))
        throw std::invalid_argument("corr_threshold must lie in (-1, 1)");
    if (rank < 1) throw std::invalid_argument("rank must be at least 1");
}

PriceTable::PriceTable(std::vector<std::string> tickers, std::vector<std::string> dates,
                       Eigen::MatrixXd closes)
    : tickers_(std::move(tickers)), dates_(std::move(dates)), closes_(std::move(closes)) {
    if (closes_.rows() != static_cast<Index>(dates_.size()) ||
        closes_.cols() != static_cast<Index>(tickers_.size()))
        throw DimensionError("price matrix shape must be dates x tickers");
    if (dates_.size() < 2) throw std::invalid_argument("need at least two dates");
    for (std::size_t i = 1; i < dates_.size(); ++i)
        if (!(dates_[i - 1] < dates_[i]))
            throw std::invalid_argument("dates must be strictly increasing (at '" + dates_[i] +
                                        "')");
    for (Index c = 0; c < closes_.cols(); ++c) {
        Index observed = 0;
        for (Index r = 0; r < closes_.rows(); ++r) {
            const double v = closes_(r, c);
            if (std::isnan(v)) continue;
            if (!(v > 0.0))
                throw std::invalid_argument("non-positive price for ticker '" + tickers_[c] + "'");
            ++observed;
        }
        if (observed < 2)
            throw std::invalid_argument("ticker '" + tickers_[static_cast<std::size_t>(c)] +
                                        "' has fewer than two observed prices");
    }
}

namespace {

double parse_double(const std::string& text, const std::string& path, std::size_t row,
                    const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw ParseError(path, row, std::string("cannot parse ") + what + " '" + text + "'");
    return v;
}

bool looks_like_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

LayerGraph load_shareholding(const std::string& path, const PipelineConfig& cfg,
                             const std::vector<std::string>* roster, LoadStats* stats) {
    cfg.validate();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file, expected header");
    if (detail::split_csv_row(line) != std::vector<std::string>{"src", "dst", "weight"})
        throw ParseError(path, 1, "expected header 'src,dst,weight'");

    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index_of;
    if (roster) {
        labels = *roster;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index_of.emplace(labels[i], static_cast<Index>(i));
    }
    const auto node_index = [&](const std::string& label, std::size_t row) {
        auto it = index_of.find(label);
        if (it != index_of.end()) return it->second;
        if (roster) throw ParseError(path, row, "label '" + label + "' not in roster");
        const Index idx = static_cast<Index>(labels.size());
        labels.push_back(label);
        index_of.emplace(label, idx);
        return idx;
    };

    struct Edge {
        Index src, dst;
        double weight;
    };
    std::vector<Edge> edges;
    std::unordered_set<std::string> seen_pairs;
    LoadStats local;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 3)
            throw ParseError(path, row, "expected 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty()) throw ParseError(path, row, "empty node label");
        ++local.rows;
        const Index src = node_index(fields[0], row);
        const Index dst = node_index(fields[1], row);
        const double weight = parse_double(fields[2], path, row, "weight");
        if (weight < 0.0 || weight > 1.0)
            throw ParseError(path, row, "ownership fraction must lie in [0, 1]");
        if (!seen_pairs.insert(fields[0] + "\x1f" + fields[1]).second)
            throw ParseError(path, row, "duplicate holding " + fields[0] + " -> " + fields[1]);
        if (src == dst) {
            ++local.dropped_diagonal;  // self-owned shares are discarded
            continue;
        }
        if (weight < cfg.sh_threshold) {
            ++local.dropped_threshold;
            continue;
        }
        edges.push_back({src, dst, weight});
        ++local.edges_kept;
    }

    const Index n = static_cast<Index>(labels.size());
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) weights(e.src, e.dst) = e.weight;
    if (stats) *stats = local;
    return LayerGraph(std::move(labels), std::move(weights), "SH", /*directed=*/true);
}

namespace {

LayerGraph board_from_membership(std::ifstream& in, const std::string& path,
                                 const std::vector<std::string>* roster, LoadStats* stats) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index_of;
    if (roster) {
        labels = *roster;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index_of.emplace(labels[i], static_cast<Index>(i));
    }
    // director -> companies, in row order for determinism
    std::map<std::string, std::vector<Index>> boards;
    LoadStats local;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 2)
            throw ParseError(path, row, "expected 2 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(path, row, "empty company or director");
        ++local.rows;
        auto it = index_of.find(fields[0]);
        Index company;
        if (it != index_of.end()) {
            company = it->second;
        } else {
            if (roster) throw ParseError(path, row, "label '" + fields[0] + "' not in roster");
            company = static_cast<Index>(labels.size());
            labels.push_back(fields[0]);
            index_of.emplace(fields[0], company);
        }
        auto& seats = boards[fields[1]];
        if (std::find(seats.begin(), seats.end(), company) == seats.end())
            seats.push_back(company);
    }

    const Index n = static_cast<Index>(labels.size());
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [director, seats] : boards)
        for (std::size_t a = 0; a < seats.size(); ++a)
            for (std::size_t b = a + 1; b < seats.size(); ++b) {
                weights(seats[a], seats[b]) += 1.0;
                weights(seats[b], seats[a]) += 1.0;
            }
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) local.edges_kept += weights(i, j) != 0.0;
    if (stats) *stats = local;
    return LayerGraph(std::move(labels), std::move(weights), "BD", /*directed=*/false);
}

LayerGraph board_from_counts(std::ifstream& in, const std::string& path,
                             const std::vector<std::string>* roster, LoadStats* stats) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index_of;
    if (roster) {
        labels = *roster;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index_of.emplace(labels[i], static_cast<Index>(i));
    }
    const auto node_index = [&](const std::string& label, std::size_t row) {
        auto it = index_of.find(label);
        if (it != index_of.end()) return it->second;
        if (roster) throw ParseError(path, row, "label '" + label + "' not in roster");
        const Index idx = static_cast<Index>(labels.size());
        labels.push_back(label);
        index_of.emplace(label, idx);
        return idx;
    };

    struct Edge {
        Index a, b;
        double count;
    };
    std::vector<Edge> edges;
    std::set<std::pair<Index, Index>> seen;
    LoadStats local;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 3)
            throw ParseError(path, row, "expected 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty()) throw ParseError(path, row, "empty node label");
        ++local.rows;
        const Index a = node_index(fields[0], row);
        const Index b = node_index(fields[1], row);
        const double count = parse_double(fields[2], path, row, "count");
        if (count < 0.0) throw ParseError(path, row, "negative shared-director count");
        if (count != std::floor(count))
            throw ParseError(path, row, "shared-director count must be an integer");
        if (a == b) {
            ++local.dropped_diagonal;
            continue;
        }
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw ParseError(path, row, "duplicate pair " + fields[0] + " / " + fields[1]);
        if (count > 0.0) {
            edges.push_back({a, b, count});
            ++local.edges_kept;
        }
    }

    const Index n = static_cast<Index>(labels.size());
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) weights(e.a, e.b) = weights(e.b, e.a) = e.count;
    if (stats) *stats = local;
    return LayerGraph(std::move(labels), std::move(weights), "BD", /*directed=*/false);
}

}  // namespace

LayerGraph load_board(const std::string& path, const std::vector<std::string>* roster,
                      LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file, expected header");
    const auto header = detail::split_csv_row(line);
    if (header == std::vector<std::string>{"company", "director"})
        return board_from_membership(in, path, roster, stats);
    if (header == std::vector<std::string>{"src", "dst", "count"})
        return board_from_counts(in, path, roster, stats);
    throw ParseError(path, 1, "expected header 'company,director' or 'src,dst,count'");
}

PriceTable load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file, expected header");
    auto header = detail::split_csv_row(line);
    if (header.size() < 2 || header[0] != "date")
        throw ParseError(path, 1, "expected header 'date,<ticker>,...'");
    std::vector<std::string> tickers(header.begin() + 1, header.end());
    {
        std::unordered_set<std::string> seen;
        for (const auto& t : tickers) {
            if (t.empty()) throw ParseError(path, 1, "empty ticker in header");
            if (!seen.insert(t).second) throw ParseError(path, 1, "duplicate ticker '" + t + "'");
        }
    }

    std::vector<std::string> dates;
    std::vector<std::vector<double>> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != tickers.size() + 1)
            throw ParseError(path, row,
                             "expected " + std::to_string(tickers.size() + 1) + " fields, got " +
                                 std::to_string(fields.size()));
        if (!looks_like_iso_date(fields[0]))
            throw ParseError(path, row, "expected ISO-8601 date, got '" + fields[0] + "'");
        dates.push_back(fields[0]);
        std::vector<double> prices;
        prices.reserve(tickers.size());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            if (fields[c].empty()) {
                prices.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            const double v = parse_double(fields[c], path, row, "price");
            if (!(v > 0.0)) throw ParseError(path, row, "non-positive price");
            prices.push_back(v);
        }
        rows.push_back(std::move(prices));
    }
    if (dates.size() < 2) throw ParseError(path, row, "need at least two dates");

    Eigen::MatrixXd closes(static_cast<Index>(dates.size()), static_cast<Index>(tickers.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < tickers.size(); ++c)
            closes(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    return PriceTable(std::move(tickers), std::move(dates), std::move(closes));
}

LayerGraph correlation_layer(const PriceTable& prices, const PipelineConfig& cfg,
                             LoadStats* stats) {
    cfg.validate();
    const Index n_dates = prices.closes().rows();
    const Index n = prices.closes().cols();

    // returns(t, i) from prices t -> t+1; NaN where either price is missing
    Eigen::MatrixXd returns(n_dates - 1, n);
    for (Index c = 0; c < n; ++c)
        for (Index t = 0; t + 1 < n_dates; ++t) {
            const double p0 = prices.closes()(t, c), p1 = prices.closes()(t + 1, c);
            if (std::isnan(p0) || std::isnan(p1)) {
                returns(t, c) = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            returns(t, c) = cfg.return_kind == ReturnKind::Log ? std::log(p1 / p0) : p1 / p0 - 1.0;
        }

    LoadStats local;
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            Index count = 0;
            for (Index t = 0; t < returns.rows(); ++t) {
                const double x = returns(t, a), y = returns(t, b);
                if (std::isnan(x) || std::isnan(y)) continue;
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                sxy += x * y;
                ++count;
            }
            ++local.rows;
            if (count < 2) {
                ++local.pairs_skipped;
                continue;
            }
            const double varx = sxx - sx * sx / count;
            const double vary = syy - sy * sy / count;
            if (varx <= 0.0 || vary <= 0.0) {
                ++local.pairs_skipped;  // degenerate variance, correlation undefined
                continue;
            }
            const double corr = (sxy - sx * sy / count) / std::sqrt(varx * vary);
            if (corr > cfg.corr_threshold) {
                weights(a, b) = weights(b, a) = 1.0;
                ++local.edges_kept;
            } else {
                ++local.dropped_threshold;
            }
        }
    if (stats) *stats = local;
    return LayerGraph(prices.tickers(), std::move(weights), "CORR", /*directed=*/false);
}

Assembly assemble(const std::vector<LayerGraph>& layers, const PipelineConfig& cfg,
                  const std::vector<LoadStats>* per_layer_stats) {
    cfg.validate();
    if (layers.empty()) throw std::invalid_argument("assemble requires at least one layer");

    // Unified label space: union in first-appearance order across layers.
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index_of;
    for (const auto& layer : layers)
        for (const auto& label : layer.labels())
            if (index_of.emplace(label, static_cast<Index>(labels.size())).second)
                labels.push_back(label);
    const Index n = static_cast<Index>(labels.size());
    if (n == 0) throw std::invalid_argument("assemble requires at least one node");

    std::vector<LayerGraph> aligned;
    aligned.reserve(layers.size());
    for (const auto& layer : layers) {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
        std::vector<Index> map(layer.labels().size());
        for (std::size_t i = 0; i < layer.labels().size(); ++i)
            map[i] = index_of.at(layer.labels()[i]);
        const auto& src = layer.weights();
        for (Index j = 0; j < src.cols(); ++j)
            for (Index i = 0; i < src.rows(); ++i) w(map[i], map[j]) = src(i, j);
        if (cfg.zero_diagonal) w.diagonal().setZero();
        aligned.emplace_back(labels, std::move(w), layer.name(), layer.directed());
    }

    AssembleReport report;
    report.nodes_before = static_cast<std::size_t>(n);
    MultiNet net(std::move(aligned));

    if (cfg.restrict_to_union_scc) {
        const SccPartition scc = strongly_connected_components(union_network(net));
        net = restrict_nodes(net, scc.components.front());
        report.restricted = true;
    }
    report.nodes_after = static_cast<std::size_t>(net.node_count());

    std::vector<LayerGraph> finished;
    finished.reserve(net.layer_count());
    const Index m = net.node_count();
    for (std::size_t k = 0; k < net.layer_count(); ++k) {
        const auto& layer = net.layer(k);
        AssembleReport::LayerInfo info;
        info.name = layer.name();
        info.frobenius_before = layer.weights().norm();
        std::size_t edges = 0;
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < m; ++i) edges += (i != j && layer.weights()(i, j) != 0.0);
        info.edges = edges;
        info.density = m > 1 ? double(edges) / (double(m) * double(m - 1)) : 0.0;
        if (per_layer_stats && k < per_layer_stats->size()) info.load = (*per_layer_stats)[k];
        report.layers.push_back(std::move(info));

        if (cfg.normalize_layers && info.frobenius_before > 0.0) {
            finished.emplace_back(net.labels(),
                                  Eigen::MatrixXd(layer.weights() / info.frobenius_before),
                                  layer.name(), layer.directed());
        } else {
            finished.push_back(layer);
        }
    }
    report.normalized = cfg.normalize_layers;

    MultiNet out(std::move(finished));
    Tensor3 tensor = Tensor3::from_multinet(out);
    bool any_nonzero = false;
    for (double v : tensor.data()) any_nonzero |= v != 0.0;
    if (!any_nonzero)
        throw NumericError("assembled tensor is all-zero (degenerate input)");
    return Assembly{std::move(out), std::move(tensor), std::move(report)};
}

std::string AssembleReport::to_json() const {
    nlohmann::json j;
    j["nodes_before"] = nodes_before;
    j["nodes_after"] = nodes_after;
    j["restricted_to_union_scc"] = restricted;
    j["normalized_layers"] = normalized;
    j["layers"] = nlohmann::json::array();
    for (const auto& info : layers) {
        nlohmann::json l;
        l["name"] = info.name;
        l["edges"] = info.edges;
        l["density"] = info.density;
        l["frobenius_before_normalization"] = info.frobenius_before;
        l["load"] = {{"rows", info.load.rows},
                     {"edges_kept", info.load.edges_kept},
                     {"dropped_threshold", info.load.dropped_threshold},
                     {"dropped_diagonal", info.load.dropped_diagonal},
                     {"pairs_skipped", info.load.pairs_skipped}};
        j["layers"].push_back(std::move(l));
    }
    return j.dump(2);
}

}  // namespace multinet
