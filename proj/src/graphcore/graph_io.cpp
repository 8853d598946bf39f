#include "egp/graphcore/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "egp/common/error.hpp"

namespace egp {
namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',' && line[j] != '#' &&
           line[j] != '\r') {
      ++j;
    }
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(const Token& t, int line) {
  int value = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected an integer, got '" + std::string(t.text) + "'", line, t.column);
  }
  return value;
}

}  // namespace

GraphDocument parse_graph(std::string_view text) {
  std::optional<int> vertex_count;
  std::vector<Edge> edges;
  std::vector<std::pair<int, std::vector<EdgeId>>> rotations;
  std::vector<int> rotation_lines;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto tokens = split_line(line);
    if (tokens.empty()) continue;
    const std::string_view key = tokens[0].text;
    if (key == "V") {
      if (tokens.size() != 2) throw ParseError("expected 'V <count>'", line_no, tokens[0].column);
      if (vertex_count) throw ParseError("duplicate V line", line_no, tokens[0].column);
      vertex_count = parse_int(tokens[1], line_no);
      if (*vertex_count < 1) throw ParseError("vertex count must be positive", line_no, tokens[1].column);
    } else if (key == "E") {
      if (!vertex_count) throw ParseError("E line before V line", line_no, tokens[0].column);
      if (tokens.size() != 3) throw ParseError("expected 'E <tail> <head>'", line_no, tokens[0].column);
      const int tail = parse_int(tokens[1], line_no);
      const int head = parse_int(tokens[2], line_no);
      if (tail < 0 || tail >= *vertex_count) throw ParseError("tail out of range", line_no, tokens[1].column);
      if (head < 0 || head >= *vertex_count) throw ParseError("head out of range", line_no, tokens[2].column);
      edges.push_back({tail, head});
    } else if (key == "EMB") {
      if (tokens.size() < 2) throw ParseError("expected 'EMB <vertex>: <edges>'", line_no, tokens[0].column);
      Token vt = tokens[1];
      std::size_t first_edge = 2;
      if (!vt.text.empty() && vt.text.back() == ':') {
        vt.text.remove_suffix(1);
      } else if (tokens.size() > 2 && tokens[2].text == ":") {
        first_edge = 3;
      } else {
        throw ParseError("expected ':' after the vertex", line_no, vt.column);
      }
      const int v = parse_int(vt, line_no);
      std::vector<EdgeId> ids;
      for (std::size_t i = first_edge; i < tokens.size(); ++i) ids.push_back(parse_int(tokens[i], line_no));
      rotations.emplace_back(v, std::move(ids));
      rotation_lines.push_back(line_no);
    } else {
      throw ParseError("unknown record '" + std::string(key) + "'", line_no, tokens[0].column);
    }
  }
  if (!vertex_count) throw ParseError("missing V line", line_no, 1);

  GraphDocument doc{Multigraph(*vertex_count, std::move(edges)), std::nullopt};
  if (!rotations.empty()) {
    Embedding emb;
    emb.rotation.resize(*vertex_count);
    std::vector<bool> seen(*vertex_count, false);
    for (std::size_t i = 0; i < rotations.size(); ++i) {
      const auto& [v, ids] = rotations[i];
      if (v < 0 || v >= *vertex_count) throw ParseError("EMB vertex out of range", rotation_lines[i], 1);
      if (seen[v]) throw ParseError("duplicate EMB line", rotation_lines[i], 1);
      seen[v] = true;
      for (EdgeId e : ids) {
        if (e < 0 || e >= doc.graph.edge_count()) throw ParseError("EMB edge id out of range", rotation_lines[i], 1);
      }
      emb.rotation[v] = ids;
    }
    try {
      validate_embedding(doc.graph, emb);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), rotation_lines.front(), 1);
    }
    doc.embedding = std::move(emb);
  }
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument read_graph_file(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

std::string format_graph(const Multigraph& g, const Embedding* emb) {
  std::ostringstream out;
  out << "V " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << "E " << e.tail << ' ' << e.head << '\n';
  if (emb != nullptr) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      out << "EMB " << v << ':';
      for (EdgeId e : emb->rotation[v]) out << ' ' << e;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace egp
