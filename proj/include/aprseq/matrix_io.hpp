#pragma once

// Matrix text format:
//   field rational        (or: field gf <p>)
//   <n>
//   <n rows of n whitespace-separated scalar tokens>
// Blank lines and lines starting with '#' are ignored.

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "aprseq/symmatrix.hpp"

namespace aprseq {

class MatrixFormatError : public ParseError {
 public:
  MatrixFormatError(std::size_t line, std::size_t column, const std::string& what)
      : ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace detail

inline SymMatrix read_matrix(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<detail::Token>>> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto toks = detail::split_tokens(raw);
    if (toks.empty() || toks.front().text.front() == '#') continue;
    lines.emplace_back(number, std::move(toks));
  }
  if (lines.empty()) throw MatrixFormatError(1, 1, "empty input, expected 'field rational' or 'field gf <p>'");

  const auto& [field_line, field_toks] = lines[0];
  if (field_toks[0].text != "field") throw MatrixFormatError(field_line, field_toks[0].column, "expected 'field'");
  FieldSpec field;
  if (field_toks.size() == 2 && field_toks[1].text == "rational") {
    field = FieldSpec::rationals();
  } else if (field_toks.size() == 3 && field_toks[1].text == "gf") {
    try {
      field = parse_field_spec("gf:" + field_toks[2].text);
    } catch (const std::exception& e) {
      throw MatrixFormatError(field_line, field_toks[2].column, e.what());
    }
  } else {
    const auto col = field_toks.size() > 1 ? field_toks[1].column : field_toks[0].column + 5;
    throw MatrixFormatError(field_line, col, "expected 'rational' or 'gf <p>'");
  }

  if (lines.size() < 2) throw MatrixFormatError(field_line + 1, 1, "missing matrix order");
  const auto& [n_line, n_toks] = lines[1];
  if (n_toks.size() != 1) throw MatrixFormatError(n_line, n_toks.size() > 1 ? n_toks[1].column : 1, "expected a single order n");
  std::size_t n = 0;
  for (char c : n_toks[0].text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || n > IndexSet::max_universe) {
      throw MatrixFormatError(n_line, n_toks[0].column, "order must be an integer between 1 and 32");
    }
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n < 1 || n > IndexSet::max_universe) throw MatrixFormatError(n_line, n_toks[0].column, "order must be an integer between 1 and 32");

  if (lines.size() - 2 < n) {
    const std::size_t at = lines.back().first + 1;
    throw MatrixFormatError(at, 1, "expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 2));
  }
  if (lines.size() - 2 > n) throw MatrixFormatError(lines[2 + n].first, 1, "unexpected content after row " + std::to_string(n));

  std::vector<std::vector<Scalar>> grid;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [ln, toks] = lines[2 + r];
    if (toks.size() != n) {
      const auto col = toks.size() > n ? toks[n].column : toks.back().column + toks.back().text.size();
      throw MatrixFormatError(ln, col, "row " + std::to_string(r + 1) + " has " + std::to_string(toks.size()) + " entries, expected " +
                                           std::to_string(n));
    }
    std::vector<Scalar> row;
    for (const auto& t : toks) {
      try {
        row.push_back(parse_scalar(t.text, field));
      } catch (const ParseError& e) {
        throw MatrixFormatError(ln, t.column, e.what());
      }
    }
    grid.push_back(std::move(row));
  }
  try {
    return make_symmetric(n, field, grid);
  } catch (const SymmetryError& e) {
    // report the position of the lower-triangle entry that disagrees
    const auto& [ln, toks] = lines[2 + e.col() - 1];
    throw MatrixFormatError(ln, toks[e.row() - 1].column, e.what());
  }
}

inline SymMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline SymMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_matrix(in);
}

inline std::string format_matrix(const SymMatrix& b) {
  return "field " + b.field().to_string() + "\n" + std::to_string(b.order()) + "\n" + b.to_string();
}

inline void save_matrix(const SymMatrix& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << format_matrix(b);
}

}  // namespace aprseq
