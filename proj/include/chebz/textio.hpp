#pragma once

#include <iosfwd>
#include <string>

#include "chebz/discrete.hpp"
#include "chebz/fourvertex.hpp"

namespace chebz {

// Polygon files: one vertex per line as "x y [z ...]". A "#closed" or "#open"
// line sets the flag (closed when absent); other "#" lines are comments.
PolyLine read_polyline(std::istream& in);
PolyLine read_polyline_file(const std::string& path);
void write_polyline(std::ostream& out, const PolyLine& p);

// Oval files: "h0" on the first data line, then "m a_m b_m" lines. Missing
// harmonics are zero; "#" lines are comments.
OvalSupport read_oval(std::istream& in);
OvalSupport read_oval_file(const std::string& path);
void write_oval(std::ostream& out, const OvalSupport& oval);

}  // namespace chebz
