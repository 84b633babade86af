#include "chebz/textio.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "chebz/error.hpp"

namespace chebz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> numbers_on(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      invalid_input("line " + std::to_string(lineno) + ": malformed number '" + tok + "'");
    }
  }
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ifstream open_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return f;
}

}  // namespace

PolyLine read_polyline(std::istream& in) {
  PolyLine p;
  p.closed = true;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (t == "#closed") p.closed = true;
      if (t == "#open") p.closed = false;
      continue;
    }
    const auto v = numbers_on(t, lineno);
    if (!p.vertices.empty() && static_cast<int>(v.size()) != p.dim()) {
      invalid_input("line " + std::to_string(lineno) + ": expected " + std::to_string(p.dim()) +
                    " coordinates");
    }
    if (v.empty() || static_cast<int>(v.size()) > kMaxCurveDim) {
      invalid_input("line " + std::to_string(lineno) + ": bad coordinate count");
    }
    Point x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) x(k) = v[k];
    p.vertices.push_back(x);
  }
  validate(p);
  return p;
}

PolyLine read_polyline_file(const std::string& path) {
  auto f = open_file(path);
  return read_polyline(f);
}

void write_polyline(std::ostream& out, const PolyLine& p) {
  out << (p.closed ? "#closed\n" : "#open\n");
  for (const auto& v : p.vertices) {
    for (Eigen::Index k = 0; k < v.size(); ++k) out << (k ? " " : "") << fmt(v(k));
    out << '\n';
  }
}

OvalSupport read_oval(std::istream& in) {
  OvalSupport o;
  bool have_h0 = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto v = numbers_on(t, lineno);
    if (!have_h0) {
      if (v.size() != 1) invalid_input("line " + std::to_string(lineno) + ": expected h0");
      o.h0 = v[0];
      have_h0 = true;
      continue;
    }
    if (v.size() != 3 || v[0] < 1 || v[0] != static_cast<int>(v[0]) || v[0] > 4096) {
      invalid_input("line " + std::to_string(lineno) + ": expected 'm a_m b_m' with 1 <= m");
    }
    const auto m = static_cast<std::size_t>(v[0]);
    if (o.coeffs.size() < m) o.coeffs.resize(m, {0.0, 0.0});
    o.coeffs[m - 1] = {v[1], v[2]};
  }
  if (!have_h0) invalid_input("oval file has no h0 line");
  validate(o);
  return o;
}

OvalSupport read_oval_file(const std::string& path) {
  auto f = open_file(path);
  return read_oval(f);
}

void write_oval(std::ostream& out, const OvalSupport& oval) {
  out << fmt(oval.h0) << '\n';
  for (std::size_t i = 0; i < oval.coeffs.size(); ++i) {
    out << i + 1 << ' ' << fmt(oval.coeffs[i][0]) << ' ' << fmt(oval.coeffs[i][1]) << '\n';
  }
}

}  // namespace chebz
