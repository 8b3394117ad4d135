#include "kerpair/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kerpair {

std::string_view to_string(FileRing r) noexcept {
  switch (r) {
    case FileRing::Gf: return "gf";
    case FileRing::Zmod: return "zmod";
    case FileRing::PolyGf: return "polygf";
    case FileRing::PolyZmod: return "polyzmod";
  }
  return "?";
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

u64 parse_count(std::string_view tok, std::size_t line, const char* what) {
  u64 v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) parse_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::string tok;
    int depth = 0;
    while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
      if (line[i] == '[') ++depth;
      if (line[i] == ']') --depth;
      if (!std::isspace(static_cast<unsigned char>(line[i]))) tok.push_back(line[i]);
      ++i;
    }
    out.push_back(std::move(tok));
  }
  return out;
}

u64 parse_residue(std::string_view token, u64 modulus) {
  const bool negative = !token.empty() && token.front() == '-';
  std::string_view digits = negative ? token.substr(1) : token;
  u64 v = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size()) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(token) + "'");
  }
  const Zmod Z(modulus);
  v = Z.reduce(v);
  return negative ? Z.neg(v) : v;
}

Poly parse_poly(std::string_view token, u64 modulus) {
  if (token.empty() || token.front() != '[') return Poly::constant(parse_residue(token, modulus));
  if (token.back() != ']') throw Error(ErrorKind::ParseError, "unterminated polynomial '" + std::string(token) + "'");
  std::string_view body = token.substr(1, token.size() - 2);
  std::vector<u64> coeffs;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view part = body.substr(0, comma);
    coeffs.push_back(parse_residue(part, modulus));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) throw Error(ErrorKind::ParseError, "trailing comma in '" + std::string(token) + "'");
  }
  return Poly(std::move(coeffs));
}

std::string format_poly(const Poly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.coeffs()[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

const AnyMatrix& MatrixFile::find(const std::string& name) const {
  for (const auto& m : matrices) {
    if (m.name == name) return m.matrix;
  }
  throw Error(ErrorKind::ParseError, "no matrix named '" + name + "'");
}

const ScalarMatrix& MatrixFile::scalar(const std::string& name) const {
  if (auto* m = std::get_if<ScalarMatrix>(&find(name))) return *m;
  throw Error(ErrorKind::RingMismatch, "matrix '" + name + "' has polynomial entries");
}

const PolyMatrix& MatrixFile::poly(const std::string& name) const {
  if (auto* m = std::get_if<PolyMatrix>(&find(name))) return *m;
  throw Error(ErrorKind::RingMismatch, "matrix '" + name + "' has residue entries");
}

MatrixFile parse_matrix_file(std::istream& in) {
  MatrixFile file;
  bool have_header = false;
  std::string raw;
  std::size_t line_no = 0;

  std::string current;
  std::size_t rows = 0, cols = 0, filled = 0;
  ScalarMatrix sm;
  PolyMatrix pm;

  auto finish = [&](std::size_t line) {
    if (current.empty()) return;
    if (filled != rows) {
      parse_error(line, "matrix '" + current + "' expects " + std::to_string(rows) + " rows, got " + std::to_string(filled));
    }
    if (file.is_poly()) file.matrices.push_back({current, pm});
    else file.matrices.push_back({current, sm});
    current.clear();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = tokenize(strip_comment(raw));
    if (toks.empty()) continue;

    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "ring") parse_error(line_no, "expected 'ring <gf|zmod|polygf|polyzmod> <parameter>'");
      const u64 param = parse_count(toks[2], line_no, "ring parameter");
      try {
        if (toks[1] == "gf") {
          file.kind = FileRing::Gf;
          file.ring = ring_make(RingKind::PrimeField, param);
        } else if (toks[1] == "zmod") {
          file.kind = FileRing::Zmod;
          file.ring = ring_make(RingKind::ModRing, param);
        } else if (toks[1] == "polygf") {
          file.kind = FileRing::PolyGf;
          file.ring = ring_make(RingKind::PolyRing, param);
        } else if (toks[1] == "polyzmod") {
          file.kind = FileRing::PolyZmod;
          file.ring = ring_make(RingKind::ModRing, param);
        } else {
          parse_error(line_no, "unknown ring kind '" + toks[1] + "'");
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        parse_error(line_no, e.what());
      }
      file.parameter = param;
      have_header = true;
      continue;
    }

    if (toks[0] == "matrix") {
      finish(line_no);
      if (toks.size() != 4) parse_error(line_no, "expected 'matrix <NAME> <rows> <cols>'");
      for (const auto& m : file.matrices) {
        if (m.name == toks[1]) parse_error(line_no, "duplicate matrix name '" + toks[1] + "'");
      }
      current = toks[1];
      rows = parse_count(toks[2], line_no, "row count");
      cols = parse_count(toks[3], line_no, "column count");
      // Rows of a zero-column matrix are empty and cannot be written out.
      filled = cols == 0 ? rows : 0;
      sm = ScalarMatrix(rows, cols);
      pm = PolyMatrix(rows, cols);
      continue;
    }

    if (current.empty()) parse_error(line_no, "matrix row outside a matrix block");
    if (filled == rows) parse_error(line_no, "too many rows for matrix '" + current + "'");
    if (toks.size() != cols) {
      parse_error(line_no, "expected " + std::to_string(cols) + " entries, got " + std::to_string(toks.size()));
    }
    try {
      for (std::size_t j = 0; j < cols; ++j) {
        if (file.is_poly()) pm(filled, j) = parse_poly(toks[j], file.parameter);
        else sm(filled, j) = parse_residue(toks[j], file.parameter);
      }
    } catch (const Error& e) {
      parse_error(line_no, e.what());
    }
    ++filled;
  }
  if (!have_header) throw Error(ErrorKind::ParseError, "empty file: missing ring header");
  finish(line_no);
  return file;
}

MatrixFile parse_matrix_file(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_file(in);
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_matrix_file(in);
}

std::string format_matrix_file(const MatrixFile& file) {
  std::ostringstream os;
  os << "ring " << to_string(file.kind) << " " << file.parameter << "\n";
  for (const auto& m : file.matrices) {
    std::visit(
        [&](const auto& mat) {
          os << "matrix " << m.name << " " << mat.rows() << " " << mat.cols() << "\n";
          for (std::size_t i = 0; i < mat.rows(); ++i) {
            for (std::size_t j = 0; j < mat.cols(); ++j) {
              if (j) os << " ";
              if constexpr (std::is_same_v<std::decay_t<decltype(mat)>, PolyMatrix>) os << format_poly(mat(i, j));
              else os << mat(i, j);
            }
            os << "\n";
          }
        },
        m.matrix);
  }
  return os.str();
}

std::vector<std::vector<u64>> parse_vector_lines(std::istream& in, std::size_t width, u64 modulus) {
  std::vector<std::vector<u64>> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = tokenize(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks.size() != width) {
      parse_error(line_no, "expected " + std::to_string(width) + " entries, got " + std::to_string(toks.size()));
    }
    std::vector<u64> v;
    try {
      for (const auto& t : toks) v.push_back(parse_residue(t, modulus));
    } catch (const Error& e) {
      parse_error(line_no, e.what());
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<u64>> load_vector_lines(const std::string& path, std::size_t width, u64 modulus) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_vector_lines(in, width, modulus);
}

}  // namespace kerpair
