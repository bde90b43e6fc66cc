#include "bucklab/polygon_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace bucklab {

ConvexPolygon parse_polygon(std::istream& in) {
    std::vector<Eigen::Vector2d> points;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        double x = 0.0, y = 0.0;
        if (!(fields >> x)) {
            if (fields.eof()) continue;  // blank or comment-only line
            throw ParseError("expected a number for x", line_no);
        }
        if (!(fields >> y)) {
            if (fields.eof()) throw ParseError("expected \"x y\", found only one value", line_no);
            throw ParseError("expected a number for y", line_no);
        }
        std::string extra;
        if (fields >> extra) throw ParseError("trailing content after \"x y\"", line_no);
        points.emplace_back(x, y);
    }
    return make_convex_polygon(std::move(points));
}

ConvexPolygon load_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open polygon file: " + path, 0);
    return parse_polygon(in);
}

}  // namespace bucklab
