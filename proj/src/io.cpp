#include "oprange/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "oprange/error.hpp"

namespace oprange {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

template <Scalar T>
T entry(const std::string& token, std::size_t i, std::size_t j) {
  try {
    return parse_scalar<T>(trim(token));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, "entry (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
  }
}

std::size_t parse_dim(const std::string& token, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != token.size() || token[0] == '-') {
    throw Error(ErrorKind::Parse, std::string("invalid ") + what + " '" + token + "'");
  }
  return v;
}

template <Scalar T>
Matrix<T> parse_mtx(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty Matrix Market file");
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw Error(ErrorKind::Parse, "missing %%MatrixMarket matrix header");
  }
  layout = lower(layout);
  field = lower(field);
  symmetry = lower(symmetry);
  if (layout != "array" && layout != "coordinate") throw Error(ErrorKind::Parse, "unknown layout '" + layout + "'");
  if (field != "real" && field != "integer" && field != "double") {
    throw Error(ErrorKind::Parse, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw Error(ErrorKind::Parse, "unsupported symmetry '" + symmetry + "'");
  }

  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    std::istringstream ls(t);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t at = 0;
  auto next = [&]() -> const std::string& {
    if (at >= tokens.size()) throw Error(ErrorKind::Parse, "truncated Matrix Market data");
    return tokens[at++];
  };
  const std::size_t rows = parse_dim(next(), "row count");
  const std::size_t cols = parse_dim(next(), "column count");
  const bool symmetric = symmetry == "symmetric";
  if (symmetric && rows != cols) throw Error(ErrorKind::Parse, "symmetric matrix must be square");
  Matrix<T> m(rows, cols);
  if (layout == "array") {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = symmetric ? j : 0; i < rows; ++i) {
        m(i, j) = entry<T>(next(), i, j);
        if (symmetric) m(j, i) = m(i, j);
      }
    }
  } else {
    const std::size_t nnz = parse_dim(next(), "entry count");
    for (std::size_t k = 0; k < nnz; ++k) {
      const std::size_t i = parse_dim(next(), "row index");
      const std::size_t j = parse_dim(next(), "column index");
      if (i == 0 || j == 0 || i > rows || j > cols) throw Error(ErrorKind::Parse, "index out of range");
      m(i - 1, j - 1) = entry<T>(next(), i - 1, j - 1);
      if (symmetric) m(j - 1, i - 1) = m(i - 1, j - 1);
    }
  }
  if (at != tokens.size()) throw Error(ErrorKind::Parse, "trailing data after matrix entries");
  return m;
}

template <Scalar T>
Matrix<T> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "empty csv");
  const std::size_t cols = rows.front().size();
  Matrix<T> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                        " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry<T>(rows[i][j], i, j);
  }
  return m;
}

template <Scalar T>
T json_entry(const nlohmann::json& v, std::size_t i, std::size_t j) {
  if (v.is_string()) return entry<T>(v.get<std::string>(), i, j);
  // Numbers go through their shortest decimal form, so exact mode reads 0.1 as 1/10.
  if (v.is_number()) return entry<T>(v.dump(), i, j);
  throw Error(ErrorKind::Parse, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not a number");
}

template <Scalar T>
Matrix<T> parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  std::optional<std::size_t> rows, cols;
  nlohmann::json data = doc;
  if (doc.is_object()) {
    if (!doc.contains("data")) throw Error(ErrorKind::Parse, "JSON matrix needs a \"data\" field");
    data = doc["data"];
    if (doc.contains("rows")) {
      if (!doc["rows"].is_number_unsigned()) throw Error(ErrorKind::Parse, "\"rows\" must be a non-negative integer");
      rows = doc["rows"].get<std::size_t>();
    }
    if (doc.contains("cols")) {
      if (!doc["cols"].is_number_unsigned()) throw Error(ErrorKind::Parse, "\"cols\" must be a non-negative integer");
      cols = doc["cols"].get<std::size_t>();
    }
  }
  if (!data.is_array()) throw Error(ErrorKind::Parse, "matrix data must be an array of rows");
  const std::size_t r = data.size();
  std::size_t c = r == 0 ? cols.value_or(0) : 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (!data[i].is_array()) throw Error(ErrorKind::Parse, "row " + std::to_string(i + 1) + " is not an array");
    if (i == 0) c = data[i].size();
    if (data[i].size() != c) throw Error(ErrorKind::Parse, "ragged row " + std::to_string(i + 1));
  }
  if ((rows && *rows != r) || (cols && *cols != c)) {
    throw Error(ErrorKind::Parse, "declared shape does not match data");
  }
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = json_entry<T>(data[i][j], i, j);
  }
  return m;
}

template <Scalar T>
std::string mtx_token(const T& v) {
  if constexpr (is_exact_v<T>) {
    return terminating_decimal(v);
  } else {
    return to_string(v);
  }
}

}  // namespace

MatrixFormat format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto ext = dot == std::string::npos ? std::string{} : lower(path.substr(dot));
  if (ext == ".mtx") return MatrixFormat::MatrixMarket;
  if (ext == ".csv") return MatrixFormat::Csv;
  if (ext == ".json") return MatrixFormat::Json;
  throw Error(ErrorKind::InvalidArgument, "cannot infer matrix format of '" + path + "' (use .mtx, .csv or .json)");
}

std::string terminating_decimal(const Rational& q) {
  mpz_class den = q.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) throw Error(ErrorKind::InvalidArgument, to_string(q) + " has no terminating decimal expansion");
  const unsigned digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpz_class scaled = q.get_num() * (scale / q.get_den());
  std::string s = mpz_class(abs(scaled)).get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return (scaled < 0 ? "-" : "") + s;
}

template <Scalar T>
Matrix<T> parse_matrix(const std::string& text, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::MatrixMarket: return parse_mtx<T>(text);
    case MatrixFormat::Csv: return parse_csv<T>(text);
    case MatrixFormat::Json: return parse_json<T>(text);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown matrix format");
}

template <Scalar T>
Matrix<T> read_matrix(const std::string& path) {
  const auto format = format_from_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix<T>(buf.str(), format);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

template <Scalar T>
std::string serialize_matrix(const Matrix<T>& m, MatrixFormat format) {
  std::ostringstream out;
  switch (format) {
    case MatrixFormat::MatrixMarket:
      out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
      for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) out << mtx_token(m(i, j)) << '\n';
      }
      break;
    case MatrixFormat::Csv:
      if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorKind::InvalidArgument, "csv cannot hold an empty matrix");
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << to_string(m(i, j));
        out << '\n';
      }
      break;
    case MatrixFormat::Json: {
      nlohmann::ordered_json doc;
      doc["rows"] = m.rows();
      doc["cols"] = m.cols();
      auto data = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        data.push_back(std::move(row));
      }
      doc["data"] = std::move(data);
      out << doc.dump() << '\n';
      break;
    }
  }
  return out.str();
}

template <Scalar T>
void write_matrix(const Matrix<T>& m, const std::string& path) {
  const auto text = serialize_matrix(m, format_from_path(path));
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

#define OPRANGE_INSTANTIATE_IO(T)                                                     \
  template Matrix<T> parse_matrix<T>(const std::string&, MatrixFormat);               \
  template Matrix<T> read_matrix<T>(const std::string&);                              \
  template std::string serialize_matrix<T>(const Matrix<T>&, MatrixFormat);           \
  template void write_matrix<T>(const Matrix<T>&, const std::string&);

OPRANGE_INSTANTIATE_IO(Rational)
OPRANGE_INSTANTIATE_IO(double)

}  // namespace oprange
