#include "texcurve/curve_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "texcurve/number_format.hpp"

namespace texcurve {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw Error(ErrorKind::parse, "curve file line " + std::to_string(line) + ": " + why);
}

double parse_real(const std::string& tok, int line) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) parse_fail(line, "expected a number, got '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  const char* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) parse_fail(line, "expected an integer, got '" + tok + "'");
  return v;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

CurveDescription parse_curve(std::istream& in) {
  CurveDescription d;
  int line_no = 0;
  bool saw_channels = false;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto reals = [&] {
      std::vector<double> v;
      for (std::size_t i = 1; i < tok.size(); ++i) v.push_back(parse_real(tok[i], line_no));
      return v;
    };
    auto single_int = [&] {
      if (tok.size() != 2) parse_fail(line_no, "'" + key + "' takes one integer");
      return parse_int(tok[1], line_no);
    };
    if (key == "degree") {
      d.degree = single_int();
    } else if (key == "channels") {
      d.channels = single_int();
      saw_channels = true;
    } else if (key == "segments") {
      d.segments = single_int();
    } else if (key == "grid") {
      if (tok.size() != 3) parse_fail(line_no, "'grid' takes rows and columns");
      d.grid = std::pair{parse_int(tok[1], line_no), parse_int(tok[2], line_no)};
    } else if (key == "knots") {
      d.knots = reals();
    } else if (key == "weights") {
      d.weights = reals();
    } else if (key == "domain") {
      d.domain = reals();
    } else if (key == "basis") {
      if (tok.size() != 2 || (tok[1] != "power" && tok[1] != "bernstein")) {
        parse_fail(line_no, "'basis' is 'power' or 'bernstein'");
      }
      d.basis = tok[1] == "power" ? Basis::power : Basis::bernstein;
    } else {
      if (!saw_channels && d.points.empty() && tok.size() != 1) {
        parse_fail(line_no, "point has " + std::to_string(tok.size()) +
                                " values but no 'channels' line precedes it");
      }
      if (static_cast<int>(tok.size()) != d.channels) {
        parse_fail(line_no, "point has " + std::to_string(tok.size()) + " values, expected " +
                                std::to_string(d.channels));
      }
      std::vector<double> v;
      for (const auto& t : tok) v.push_back(parse_real(t, line_no));
      try {
        d.points.push_back(Vec::from_span(v));
      } catch (const Error& e) {
        parse_fail(line_no, e.what());
      }
    }
  }
  try {
    d.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    throw Error(ErrorKind::parse, std::string("curve file: ") + e.what());
  }
  return d;
}

CurveDescription read_curve_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open curve file " + path.string());
  return parse_curve(in);
}

void CurveDescription::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::parse, "curve file: " + why); };
  if (channels < 1 || channels > Vec::kMaxChannels) fail("channels must be 1..4");
  const auto n = static_cast<int>(points.size());
  if (grid) {
    if (grid->first < 2 || grid->second < 2) fail("grid needs at least 2x2 points");
    if (n != grid->first * grid->second) fail("grid point count does not match rows x cols");
    return;
  }
  if (degree < 1) fail("missing or invalid 'degree'");
  if (is_bspline()) {
    if (static_cast<int>(knots.size()) != n + degree + 1) {
      fail("knot count must equal points + degree + 1");
    }
    return;
  }
  const int expected = segments ? degree * *segments + 1 : degree + 1;
  if (segments && *segments < 1) fail("segments must be >= 1");
  if (n != expected) {
    fail("expected " + std::to_string(expected) + " control points, found " + std::to_string(n));
  }
  if (is_rational() && static_cast<int>(weights.size()) != n) fail("weight count does not match points");
  if (!domain.empty() && static_cast<int>(domain.size()) != (segments ? *segments : 1) + 1) {
    fail("domain needs one breakpoint per segment boundary");
  }
}

ControlPolygon CurveDescription::polygon() const {
  if (segments && *segments != 1) {
    throw Error(ErrorKind::invalid_argument, "description holds a piecewise curve, not one polygon");
  }
  if (grid || is_bspline()) throw Error(ErrorKind::invalid_argument, "description is not a single curve");
  if (basis == Basis::power) return power_to_bernstein(points);
  return ControlPolygon(points);
}

std::vector<ControlPolygon> CurveDescription::piecewise() const {
  if (grid || is_bspline()) throw Error(ErrorKind::invalid_argument, "description is not a piecewise curve");
  const int n = segments.value_or(1);
  std::vector<ControlPolygon> out;
  for (int k = 0; k < n; ++k) {
    const auto first = points.begin() + k * degree;
    out.emplace_back(std::vector<Vec>(first, first + degree + 1));
  }
  return out;
}

ControlNet CurveDescription::net() const {
  if (!grid) throw Error(ErrorKind::invalid_argument, "description has no 'grid' line");
  return ControlNet(grid->first, grid->second, points);
}

BSplineCurve CurveDescription::bspline() const {
  if (!is_bspline()) throw Error(ErrorKind::invalid_argument, "description has no 'knots' line");
  return BSplineCurve(points, knots, degree);
}

std::string format_curve(const CurveDescription& d) {
  std::ostringstream out;
  if (d.degree >= 0) out << "degree " << d.degree << "\n";
  out << "channels " << d.channels << "\n";
  if (d.segments) out << "segments " << *d.segments << "\n";
  if (d.grid) out << "grid " << d.grid->first << " " << d.grid->second << "\n";
  if (d.basis == Basis::power) out << "basis power\n";
  if (!d.knots.empty()) out << "knots " << format_values(d.knots) << "\n";
  if (!d.weights.empty()) out << "weights " << format_values(d.weights) << "\n";
  if (!d.domain.empty()) out << "domain " << format_values(d.domain) << "\n";
  for (const Vec& p : d.points) out << format_values(p.values()) << "\n";
  return out.str();
}

CurveDescription describe_polygon(const ControlPolygon& poly) {
  CurveDescription d;
  d.degree = poly.degree();
  d.channels = poly.channels();
  d.points.assign(poly.points().begin(), poly.points().end());
  return d;
}

CurveDescription describe_piecewise(std::span<const BezierSegment> segments) {
  if (segments.empty()) throw Error(ErrorKind::invalid_argument, "no segments");
  CurveDescription d;
  d.degree = segments.front().poly.degree();
  d.channels = segments.front().poly.channels();
  d.segments = static_cast<int>(segments.size());
  d.domain.push_back(segments.front().t0);
  d.points.push_back(segments.front().poly[0]);
  for (const BezierSegment& s : segments) {
    if (!(s.poly[0] == d.points.back())) {
      throw Error(ErrorKind::join, "segments are not C0; they cannot share a piecewise description");
    }
    for (int i = 1; i <= s.poly.degree(); ++i) d.points.push_back(s.poly[i]);
    d.domain.push_back(s.t1);
  }
  return d;
}

}  // namespace texcurve
