/*******************************************************************************
 * hMetis hypergraph files and partition files.
 *
 * Header: "<#edges> <#vertices> [fmt]" with fmt in {0, 1, 10, 11}.
 *   fmt 1  : each edge line starts with the edge weight
 *   fmt 10 : #vertices lines of vertex weights follow the edge lines
 *   fmt 11 : both
 * Pins are 1-indexed in files and 0-indexed in memory. Lines starting with
 * '%' are comments.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

inline std::vector<std::int64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::int64_t> numbers;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
      ++pos;
    }
    if (pos == line.size()) {
      break;
    }
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc() || (end != line.data() + line.size() && *end != ' ' && *end != '\t' &&
                              *end != '\r')) {
      throw ParseError(line_no, "expected an integer");
    }
    numbers.push_back(value);
    pos = static_cast<std::size_t>(end - line.data());
  }
  return numbers;
}

// Yields non-comment, non-blank lines with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<std::pair<std::string, std::size_t>> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.front() == '%') {
        continue;
      }
      if (is_blank(line)) {
        continue;
      }
      return std::make_pair(std::move(line), line_no_);
    }
    return std::nullopt;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace detail

inline Hypergraph parse_hmetis(std::istream& in) {
  detail::LineReader reader(in);
  const auto header_line = reader.next();
  if (!header_line) {
    throw ParseError(reader.line_no(), "missing header");
  }
  const auto header = detail::parse_numbers(header_line->first, header_line->second);
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError(header_line->second, "header must be '<edges> <vertices> [fmt]'");
  }
  const std::int64_t num_edges = header[0];
  const std::int64_t num_vertices = header[1];
  const std::int64_t fmt = header.size() == 3 ? header[2] : 0;
  if (num_edges < 0 || num_vertices < 0) {
    throw ParseError(header_line->second, "negative counts in header");
  }
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw ParseError(header_line->second, "unsupported fmt flag " + std::to_string(fmt));
  }
  const bool has_edge_weights = fmt == 1 || fmt == 11;
  const bool has_vertex_weights = fmt == 10 || fmt == 11;

  std::vector<std::vector<VertexID>> edges;
  std::vector<Weight> edge_weights;
  edges.reserve(static_cast<std::size_t>(num_edges));
  for (std::int64_t e = 0; e < num_edges; ++e) {
    const auto line = reader.next();
    if (!line) {
      throw ParseError(reader.line_no(), "expected " + std::to_string(num_edges) +
                                             " hyperedges, found " + std::to_string(e));
    }
    auto numbers = detail::parse_numbers(line->first, line->second);
    std::size_t first_pin = 0;
    Weight weight = 1;
    if (has_edge_weights) {
      weight = numbers.front();
      if (weight <= 0) {
        throw ParseError(line->second, "hyperedge weight must be positive");
      }
      first_pin = 1;
    }
    if (numbers.size() <= first_pin) {
      throw ParseError(line->second, "hyperedge without pins");
    }
    std::vector<VertexID> pins;
    pins.reserve(numbers.size() - first_pin);
    for (std::size_t i = first_pin; i < numbers.size(); ++i) {
      const std::int64_t pin = numbers[i];
      if (pin < 1 || pin > num_vertices) {
        throw ParseError(line->second, "pin " + std::to_string(pin) + " out of range [1, " +
                                           std::to_string(num_vertices) + "]");
      }
      const auto id = static_cast<VertexID>(pin - 1);
      if (std::find(pins.begin(), pins.end(), id) != pins.end()) {
        throw ParseError(line->second, "duplicate pin " + std::to_string(pin));
      }
      pins.push_back(id);
    }
    edges.push_back(std::move(pins));
    edge_weights.push_back(weight);
  }

  std::vector<Weight> vertex_weights;
  if (has_vertex_weights) {
    vertex_weights.reserve(static_cast<std::size_t>(num_vertices));
    for (std::int64_t v = 0; v < num_vertices; ++v) {
      const auto line = reader.next();
      if (!line) {
        throw ParseError(reader.line_no(), "missing vertex weight lines");
      }
      const auto numbers = detail::parse_numbers(line->first, line->second);
      if (numbers.size() != 1) {
        throw ParseError(line->second, "expected a single vertex weight");
      }
      if (numbers.front() <= 0) {
        throw ParseError(line->second, "vertex weight must be positive");
      }
      vertex_weights.push_back(numbers.front());
    }
  }
  if (const auto extra = reader.next()) {
    throw ParseError(extra->second, "unexpected trailing content");
  }

  return Hypergraph(static_cast<VertexID>(num_vertices), std::move(edges),
                    std::move(vertex_weights), std::move(edge_weights));
}

inline Hypergraph parse_hmetis_string(const std::string& text) {
  std::istringstream in(text);
  return parse_hmetis(in);
}

inline Hypergraph read_hmetis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open hypergraph file '" + path + "'");
  }
  return parse_hmetis(in);
}

// Writes the current state of `hg` (enabled edges only). Uses the fmt flag
// only for weights that are not all 1.
inline void write_hmetis(std::ostream& out, const Hypergraph& hg) {
  bool edge_weighted = false;
  for (const EdgeID e : hg.edges()) {
    edge_weighted = edge_weighted || hg.edge_weight(e) != 1;
  }
  bool vertex_weighted = false;
  for (VertexID v = 0; v < hg.initial_num_vertices(); ++v) {
    vertex_weighted = vertex_weighted || hg.vertex_weight(v) != 1;
  }
  out << hg.current_num_edges() << ' ' << hg.initial_num_vertices();
  if (edge_weighted || vertex_weighted) {
    out << ' ' << (vertex_weighted ? "1" : "") << (edge_weighted ? "1" : "0");
  }
  out << '\n';
  for (const EdgeID e : hg.edges()) {
    if (edge_weighted) {
      out << hg.edge_weight(e) << ' ';
    }
    const auto pins = hg.pins(e);
    for (std::size_t i = 0; i < pins.size(); ++i) {
      out << (i ? " " : "") << pins[i] + 1;
    }
    out << '\n';
  }
  if (vertex_weighted) {
    for (VertexID v = 0; v < hg.initial_num_vertices(); ++v) {
      out << hg.vertex_weight(v) << '\n';
    }
  }
}

inline void write_partition(std::ostream& out, std::span<const BlockID> blocks) {
  for (const BlockID b : blocks) {
    out << b << '\n';
  }
}

inline void write_partition(std::ostream& out, const Partition& part) {
  write_partition(out, part.blocks());
}

inline std::vector<BlockID> read_partition(std::istream& in) {
  std::vector<BlockID> blocks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) {
      continue;
    }
    const auto numbers = detail::parse_numbers(line, line_no);
    if (numbers.size() != 1 || numbers.front() < 0) {
      throw ParseError(line_no, "expected one nonnegative block id");
    }
    blocks.push_back(static_cast<BlockID>(numbers.front()));
  }
  return blocks;
}

inline Partition read_partition(std::istream& in, const Hypergraph& hg, BlockID k) {
  return Partition(hg, k, read_partition(in));
}

}  // namespace hgevo::io
