#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "graff/coords.hpp"

namespace graff {

// Shortest decimal that parses back to the same double (at most 17
// significant digits); "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

// JSON array of rows on a single line, e.g. [[1,0],[0,1]].
std::string matrix_to_json(const Matrix& m);
std::string vector_to_json(const Vector& v);

// Flat document: {"n":..,"k":..,"A":[k rows of length n],"b":[n],"orthogonal":true}.
// Basis vectors are stored as rows.
std::string flat_to_json(const AffineFlat& flat);

// Parses a flat document. With "orthogonal": true the coordinates are
// validated and kept; otherwise they are canonicalized through make_flat.
// Throws ParseError on malformed JSON and DimensionError on shape mismatch.
AffineFlat flat_from_json(std::string_view text, double tol = -1.0);

// Parses a JSON array of equal-length numeric rows.
Matrix matrix_from_json(std::string_view text);

// Point cloud in CSV: one point per row, optional header line, optional
// final label column. Blank lines are ignored.
struct CloudDocument {
  Matrix points;
  std::optional<Vector> labels;
};
CloudDocument parse_cloud_csv(std::string_view text, bool last_column_is_label);

// Whole file as a string; ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace graff
