#include "multinet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

namespace multinet {

namespace {

void validate_layer(const std::vector<std::string>& labels, const Eigen::MatrixXd& weights,
                    bool directed) {
    const Index n = weights.rows();
    if (weights.cols() != n)
        throw DimensionError("layer weights must be square, got " + std::to_string(n) + "x" +
                             std::to_string(weights.cols()));
    if (static_cast<Index>(labels.size()) != n)
        throw DimensionError("label count " + std::to_string(labels.size()) +
                             " does not match matrix size " + std::to_string(n));
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            const double w = weights(i, j);
            if (!(w >= 0.0))
                throw std::invalid_argument("negative or non-finite weight at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (weights(j, j) != 0.0)
            throw std::invalid_argument("nonzero diagonal at node " + std::to_string(j) +
                                        " (layers are loop-free)");
    }
    if (!directed && !weights.isApprox(weights.transpose(), 0.0))
        throw std::invalid_argument("undirected layer requires a symmetric weight matrix");
    std::unordered_set<std::string> seen;
    for (const auto& label : labels)
        if (!seen.insert(label).second)
            throw std::invalid_argument("duplicate node label '" + label + "'");
}

}  // namespace

LayerGraph::LayerGraph(std::vector<std::string> labels, Eigen::MatrixXd weights, std::string name,
                       bool directed)
    : labels_(std::move(labels)),
      weights_(std::move(weights)),
      name_(std::move(name)),
      directed_(directed) {
    validate_layer(labels_, weights_, directed_);
}

LayerGraph LayerGraph::zero(std::vector<std::string> labels, std::string name, bool directed) {
    const Index n = static_cast<Index>(labels.size());
    return LayerGraph(std::move(labels), Eigen::MatrixXd::Zero(n, n), std::move(name), directed);
}

MultiNet::MultiNet(std::vector<LayerGraph> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("a multinet needs at least one layer");
    const auto& roster = layers_.front().labels();
    for (std::size_t k = 1; k < layers_.size(); ++k)
        if (layers_[k].labels() != roster)
            throw std::invalid_argument("layer '" + layers_[k].name() +
                                        "' does not share the multinet node roster");
}

std::size_t degree(const LayerGraph& g, Index node, DegreeMode mode) {
    const Index n = g.node_count();
    if (node < 0 || node >= n)
        throw std::out_of_range("node " + std::to_string(node) + " outside graph of size " +
                                std::to_string(n));
    const auto& w = g.weights();
    std::size_t count = 0;
    for (Index j = 0; j < n; ++j) {
        if (j == node) continue;
        const bool incoming = w(j, node) != 0.0;
        const bool outgoing = w(node, j) != 0.0;
        switch (mode) {
            case DegreeMode::In: count += incoming; break;
            case DegreeMode::Out: count += outgoing; break;
            case DegreeMode::Total: count += (incoming || outgoing); break;
        }
    }
    return count;
}

namespace {

// Iterative Tarjan; explicit stack so deep chains cannot overflow.
struct TarjanState {
    const Eigen::MatrixXd& w;
    Index n;
    std::vector<int> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<Index> stack;
    int next_index = 0;
    std::vector<std::vector<Index>> components;

    explicit TarjanState(const Eigen::MatrixXd& weights)
        : w(weights),
          n(weights.rows()),
          index(static_cast<std::size_t>(weights.rows()), -1),
          lowlink(static_cast<std::size_t>(weights.rows()), -1),
          on_stack(static_cast<std::size_t>(weights.rows()), false) {}

    void run(Index root) {
        struct Frame {
            Index v;
            Index next_child;
        };
        std::vector<Frame> frames;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& f = frames.back();
            bool descended = false;
            while (f.next_child < n) {
                const Index u = f.next_child++;
                if (u == f.v || w(f.v, u) == 0.0) continue;
                if (index[u] < 0) {
                    index[u] = lowlink[u] = next_index++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    frames.push_back({u, 0});
                    descended = true;
                    break;
                }
                if (on_stack[u]) lowlink[f.v] = std::min(lowlink[f.v], index[u]);
            }
            if (descended) continue;

            if (lowlink[f.v] == index[f.v]) {
                std::vector<Index> comp;
                Index u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[u] = false;
                    comp.push_back(u);
                } while (u != f.v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            const Index finished = f.v;
            frames.pop_back();
            if (!frames.empty())
                lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[finished]);
        }
    }
};

}  // namespace

SccPartition strongly_connected_components(const LayerGraph& g) {
    TarjanState state(g.weights());
    for (Index v = 0; v < state.n; ++v)
        if (state.index[v] < 0) state.run(v);

    // Descending size, ties by smallest member.
    std::stable_sort(state.components.begin(), state.components.end(),
                     [](const std::vector<Index>& a, const std::vector<Index>& b) {
                         if (a.size() != b.size()) return a.size() > b.size();
                         return a.front() < b.front();
                     });

    SccPartition part;
    part.components = std::move(state.components);
    part.component_of.assign(static_cast<std::size_t>(state.n), -1);
    for (std::size_t c = 0; c < part.components.size(); ++c)
        for (Index v : part.components[c]) part.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    return part;
}

namespace {

LayerGraph combine_layers(const MultiNet& m, bool require_all, const std::string& name) {
    const Index n = m.node_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            if (i == j) continue;
            std::size_t hits = 0;
            for (const auto& layer : m.layers())
                if (layer.weights()(i, j) != 0.0) ++hits;
            const bool present = require_all ? hits == m.layer_count() : hits > 0;
            out(i, j) = present ? 1.0 : 0.0;
        }
    }
    bool any_directed = false;
    for (const auto& layer : m.layers()) any_directed |= layer.directed();
    return LayerGraph(m.labels(), std::move(out), name, any_directed);
}

}  // namespace

LayerGraph intersection_network(const MultiNet& m) {
    return combine_layers(m, /*require_all=*/true, "intersection");
}

LayerGraph union_network(const MultiNet& m) {
    return combine_layers(m, /*require_all=*/false, "union");
}

MultiNet restrict_nodes(const MultiNet& m, std::vector<Index> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw std::invalid_argument("restrict requires a nonempty node set");
    const Index n = m.node_count();
    if (keep.front() < 0 || keep.back() >= n)
        throw std::out_of_range("restrict index outside graph of size " + std::to_string(n));

    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (Index v : keep) labels.push_back(m.labels()[static_cast<std::size_t>(v)]);

    std::vector<LayerGraph> layers;
    layers.reserve(m.layer_count());
    const Index kn = static_cast<Index>(keep.size());
    for (const auto& layer : m.layers()) {
        Eigen::MatrixXd w(kn, kn);
        for (Index b = 0; b < kn; ++b)
            for (Index a = 0; a < kn; ++a) w(a, b) = layer.weights()(keep[a], keep[b]);
        layers.emplace_back(labels, std::move(w), layer.name(), layer.directed());
    }
    return MultiNet(std::move(layers));
}

LayerGraph symmetrized(const LayerGraph& g) {
    const Index n = g.node_count();
    Eigen::MatrixXd w = g.weights();
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < j; ++i) {
            const double a = w(i, j), b = w(j, i);
            if (a != 0.0 && b != 0.0 && a != b)
                throw std::invalid_argument("conflicting arc weights between nodes " +
                                            std::to_string(i) + " and " + std::to_string(j));
            const double v = a != 0.0 ? a : b;
            w(i, j) = w(j, i) = v;
        }
    }
    return LayerGraph(g.labels(), std::move(w), g.name(), /*directed=*/false);
}

}  // namespace multinet
