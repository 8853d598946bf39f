#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "egp/graphcore/embedding.hpp"
#include "egp/graphcore/multigraph.hpp"

namespace egp {

struct GraphDocument {
  Multigraph graph;
  std::optional<Embedding> embedding;
};

/// Line format:
///   # comment
///   V <count>
///   E <tail> <head>            (edge ids follow line order)
///   EMB <vertex>: <edge ids>   (optional, counter-clockwise)
/// Throws ParseError with the offending line and column.
GraphDocument parse_graph(std::string_view text);
GraphDocument read_graph_file(const std::filesystem::path& path);

std::string format_graph(const Multigraph& g, const Embedding* emb = nullptr);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace egp
