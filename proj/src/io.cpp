#include "graff/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "graff/errors.hpp"

namespace graff {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

double as_number(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  // Non-finite values are written as strings since JSON has no literal for them.
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return NAN;
  }
  throw ParseError(std::string(what) + " must contain numbers");
}

Matrix rows_to_matrix(const json& rows, const char* what) {
  if (!rows.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::Index c = -1;
  Matrix out;
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
    if (c < 0) {
      c = static_cast<Eigen::Index>(row.size());
      out.resize(r, c);
    } else if (static_cast<Eigen::Index>(row.size()) != c) {
      throw DimensionError(std::string(what) + " is not rectangular");
    }
    for (Eigen::Index j = 0; j < c; ++j) out(i, j) = as_number(row[static_cast<std::size_t>(j)], what);
  }
  if (c < 0) out.resize(0, 0);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_field(std::string_view field, double& out) {
  const std::string s(trim(field));
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {
// JSON flavour: non-finite values must be quoted.
std::string json_number(double x) {
  return std::isfinite(x) ? format_double(x) : "\"" + format_double(x) + "\"";
}
}  // namespace

std::string vector_to_json(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += json_number(v(i));
  }
  return out + ']';
}

std::string matrix_to_json(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += vector_to_json(m.row(i).transpose());
  }
  return out + ']';
}

std::string flat_to_json(const AffineFlat& flat) {
  std::ostringstream os;
  os << "{\"n\":" << flat.ambient_dim() << ",\"k\":" << flat.dim()
     << ",\"A\":" << matrix_to_json(flat.basis().transpose()) << ",\"b\":" << vector_to_json(flat.offset())
     << ",\"orthogonal\":true}";
  return os.str();
}

AffineFlat flat_from_json(std::string_view text, double tol) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("flat document must be a JSON object");
  for (const char* key : {"n", "k", "A", "b"}) {
    if (!doc.contains(key)) throw ParseError(std::string("flat document lacks \"") + key + "\"");
  }
  if (!doc["n"].is_number_integer() || !doc["k"].is_number_integer())
    throw ParseError("\"n\" and \"k\" must be integers");
  const int n = doc["n"].get<int>();
  const int k = doc["k"].get<int>();
  if (n < 1) throw DimensionError("n must be positive");
  if (k < 0 || k >= n) throw DimensionError("need 0 <= k < n");

  Matrix rows = rows_to_matrix(doc["A"], "\"A\"");
  if (rows.rows() != k || (k > 0 && rows.cols() != n))
    throw DimensionError("\"A\" must have k = " + std::to_string(k) + " rows of length n = " + std::to_string(n));
  const json& b = doc["b"];
  if (!b.is_array() || static_cast<int>(b.size()) != n)
    throw DimensionError("\"b\" must have n = " + std::to_string(n) + " entries");
  Vector offset(n);
  for (int i = 0; i < n; ++i) offset(i) = as_number(b[static_cast<std::size_t>(i)], "\"b\"");

  Matrix basis = k > 0 ? Matrix(rows.transpose()) : Matrix(n, 0);
  if (!basis.allFinite() || !offset.allFinite()) throw InvalidArgument("flat coordinates must be finite");
  const bool orthogonal = doc.contains("orthogonal") && doc["orthogonal"].is_boolean() && doc["orthogonal"].get<bool>();
  if (orthogonal) return AffineFlat::from_orthogonal(std::move(basis), std::move(offset), tol);
  return make_flat(basis, offset, tol);
}

Matrix matrix_from_json(std::string_view text) { return rows_to_matrix(parse_json(text), "matrix"); }

CloudDocument parse_cloud_csv(std::string_view text, bool last_column_is_label) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    const auto line = trim(text.substr(pos, next - pos));
    pos = next + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<double> values;
    bool numeric = true;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      double v = 0.0;
      if (!parse_field(field, v)) {
        numeric = false;
        break;
      }
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!numeric) {
      // A non-numeric first row is a header.
      if (rows.empty()) continue;
      throw ParseError("CSV line " + std::to_string(line_no) + " has a non-numeric field");
    }
    if (!rows.empty() && values.size() != rows.front().size())
      throw DimensionError("CSV line " + std::to_string(line_no) + " has " + std::to_string(values.size()) +
                           " fields, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("CSV contains no data rows");

  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto width = static_cast<Eigen::Index>(rows.front().size());
  const Eigen::Index d = last_column_is_label ? width - 1 : width;
  if (d < 1) throw DimensionError("CSV needs at least one coordinate column");

  CloudDocument doc;
  doc.points.resize(m, d);
  if (last_column_is_label) doc.labels = Vector(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) doc.points(i, j) = rows[i][j];
    if (last_column_is_label) {
      const double y = rows[i][d];
      if (y != 1.0 && y != -1.0) throw InvalidArgument("labels must be -1 or 1 (row " + std::to_string(i + 1) + ")");
      (*doc.labels)(i) = y;
    }
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace graff
