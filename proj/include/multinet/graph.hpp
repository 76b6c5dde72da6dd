#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "multinet/errors.hpp"

namespace multinet {

using Index = Eigen::Index;

enum class DegreeMode { In, Out, Total };

/// One network layer: a node label roster plus a weighted adjacency matrix.
/// Weight (i,j) is the weight of the arc i -> j. The matrix is square,
/// nonnegative, loop-free (zero diagonal) and symmetric when the layer is
/// undirected; construction rejects anything else.
class LayerGraph {
public:
    LayerGraph(std::vector<std::string> labels, Eigen::MatrixXd weights, std::string name,
               bool directed);

    /// All-zero layer over the given roster.
    static LayerGraph zero(std::vector<std::string> labels, std::string name, bool directed);

    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::MatrixXd& weights() const { return weights_; }
    const std::string& name() const { return name_; }
    bool directed() const { return directed_; }
    Index node_count() const { return weights_.rows(); }

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd weights_;
    std::string name_;
    bool directed_;
};

/// Ordered stack of layers over one shared node roster. Every layer must
/// carry identical labels in identical order; at least one layer.
class MultiNet {
public:
    explicit MultiNet(std::vector<LayerGraph> layers);

    const std::vector<std::string>& labels() const { return layers_.front().labels(); }
    const std::vector<LayerGraph>& layers() const { return layers_; }
    const LayerGraph& layer(std::size_t k) const { return layers_.at(k); }
    std::size_t layer_count() const { return layers_.size(); }
    Index node_count() const { return layers_.front().node_count(); }

private:
    std::vector<LayerGraph> layers_;
};

/// Strongly connected components: component_of maps node index -> component
/// id, components are listed by descending size (ties by smallest member).
struct SccPartition {
    std::vector<int> component_of;
    std::vector<std::vector<Index>> components;
};

/// Number of distinct neighbours on incoming arcs (In), outgoing arcs (Out),
/// or either direction (Total). Loops never count; the diagonal is zero.
std::size_t degree(const LayerGraph& g, Index node, DegreeMode mode);

SccPartition strongly_connected_components(const LayerGraph& g);

/// Binary graph with an edge wherever every layer has one (entrywise AND of
/// the binarized layers).
LayerGraph intersection_network(const MultiNet& m);

/// Binary graph with an edge wherever at least one layer has one (layer sum,
/// then binarized).
LayerGraph union_network(const MultiNet& m);

/// Sub-multinet induced on `keep` (indices into m's roster, any order;
/// duplicates ignored). Label order of the survivors is preserved.
MultiNet restrict_nodes(const MultiNet& m, std::vector<Index> keep);

/// Undirected copy: mirrors each arc. Arcs present in both directions must
/// agree in weight.
LayerGraph symmetrized(const LayerGraph& g);

}  // namespace multinet
