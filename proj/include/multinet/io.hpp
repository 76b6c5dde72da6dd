#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multinet/graph.hpp"

namespace multinet {

/// One node label per line; blank lines ignored. Duplicates are an error.
std::vector<std::string> read_roster(const std::string& path);

/// Generic edge-list CSV with header `src,dst,weight`. Labels map to indices
/// in first-appearance order (src before dst, row by row) unless a roster
/// fixes the ordering, in which case unknown labels are an error. Rows with
/// src == dst are dropped (layers are loop-free); duplicate (src,dst) pairs
/// and negative weights are errors.
LayerGraph read_edge_csv(const std::string& path,
                         const std::vector<std::string>* roster = nullptr,
                         const std::string& layer_name = "layer");

namespace detail {

/// Split one CSV record on commas. No quoting support; fields are trimmed of
/// surrounding whitespace and a trailing CR.
std::vector<std::string> split_csv_row(const std::string& line);

std::string read_file(const std::string& path);

}  // namespace detail

}  // namespace multinet
