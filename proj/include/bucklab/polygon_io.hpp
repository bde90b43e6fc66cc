#pragma once

#include <istream>
#include <string>

#include "bucklab/geometry.hpp"

namespace bucklab {

/// Parse the plain-text polygon format: one "x y" vertex per line, '#'
/// starts a comment, blank lines ignored.  Orientation is normalized and the
/// vertex list validated by make_convex_polygon.  Throws ParseError with a
/// 1-based line number on malformed lines.
ConvexPolygon parse_polygon(std::istream& in);

/// parse_polygon on a file; a missing or unreadable file is a ParseError at
/// line 0.
ConvexPolygon load_polygon(const std::string& path);

}  // namespace bucklab
