#include "chordarr/construction.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

#include "chordarr/errors.hpp"

namespace chordarr {

namespace {

std::string q_str(const Rational& q) { return q.get_str(); }

Rational floor_q(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil_q(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

}  // namespace

Line Line::vertical(const Rational& x) { return Line{1, 0, x}; }

Line Line::sloped(const Rational& slope, const Rational& offset) { return Line{-slope, 1, offset}; }

std::string Line::describe() const {
  if (a == 0 && b == 0) return "degenerate line";
  if (b == 0) return "x = " + q_str(Rational(c / a));
  const Rational slope = -a / b;
  const Rational offset = c / b;
  std::string s = "y = ";
  if (slope != 0) s += q_str(slope) + "*x";
  if (offset != 0 || slope == 0) {
    if (slope != 0) s += offset < 0 ? " - " : " + ";
    s += q_str(slope != 0 ? Rational(abs(offset)) : offset);
  }
  return s;
}

Line transform(const Line& l, const Shear& s) {
  const long det = s.det();
  if (det == 0) throw ValidationError("shear matrix is singular");
  // Normal row vector times the inverse matrix.
  const Rational inv_a(s.d, det), inv_b(-s.b, det), inv_c(-s.c, det), inv_d(s.a, det);
  return Line{l.a * inv_a + l.b * inv_c, l.a * inv_b + l.b * inv_d, l.c};
}

Point transform(const Point& p, const Shear& s) {
  return Point{s.a * p.x + s.b * p.y, s.c * p.x + s.d * p.y};
}

// ---- Twelve slopes -----------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kSlopeCount> kSlopeNames = {"0",  "inf", "1",   "-1",   "2",   "-2",
                                                                  "3",  "-3",  "1/2", "-1/2", "1/3", "-1/3"};
// s -> -s and s -> 1/s on slot indices.
constexpr std::array<int, kSlopeCount> kNegate = {0, 1, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
constexpr std::array<int, kSlopeCount> kInvert = {1, 0, 2, 3, 8, 9, 10, 11, 4, 5, 6, 7};

SlabSignature map_signature(SlabSignature sig, const std::array<int, kSlopeCount>& f) {
  SlabSignature out = 0;
  for (int i = 0; i < kSlopeCount; ++i) {
    if (sig & (1u << i)) out = static_cast<SlabSignature>(out | (1u << f[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::vector<int> sorted_slots(SlabSignature sig) {
  std::vector<int> v;
  for (int i = 0; i < kSlopeCount; ++i) {
    if (sig & (1u << i)) v.push_back(i);
  }
  return v;
}

}  // namespace

std::string_view slope_name(int slot) { return kSlopeNames.at(static_cast<std::size_t>(slot)); }

std::optional<Rational> slope_value(int slot) {
  if (slot == 1) return std::nullopt;
  return parse_rational(std::string(slope_name(slot)));
}

std::string signature_name(SlabSignature sig) {
  std::string s = "{";
  bool first = true;
  for (int i : sorted_slots(sig)) {
    if (!first) s += ',';
    s += slope_name(i);
    first = false;
  }
  return s + "}";
}

int signature_size(SlabSignature sig) { return std::popcount(static_cast<unsigned>(sig)); }

std::vector<Line> bundle_lines(int m) {
  if (m < 1 || m % 2 == 0) throw ValidationError("bundle size must be odd and positive, got " + std::to_string(m));
  std::vector<Line> lines;
  const int h = (m - 1) / 2;
  for (int slot = 0; slot < kSlopeCount; ++slot) {
    const auto s = slope_value(slot);
    const bool fractional = s && s->get_den() != 1;
    for (int j = -h; j <= h; ++j) {
      if (!s) {
        lines.push_back(Line::vertical(j));
      } else {
        lines.push_back(Line::sloped(*s, fractional ? Rational(*s * j) : Rational(j)));
      }
    }
  }
  return lines;
}

std::vector<Line> normalized_extremal_lines() {
  std::vector<Line> lines;
  for (int slot = 0; slot < kSlopeCount; ++slot) {
    const auto s = slope_value(slot);
    if (!s) {
      lines.push_back(Line::vertical(Rational(1, 2)));
      lines.push_back(Line::vertical(Rational(-1, 2)));
      continue;
    }
    const Rational off = s->get_den() != 1 ? Rational(abs(*s) / 2) : Rational(1, 2);
    lines.push_back(Line::sloped(*s, off));
    lines.push_back(Line::sloped(*s, Rational(-off)));
  }
  return lines;
}

namespace {

const std::vector<Line>& extremal() {
  static const std::vector<Line> lines = normalized_extremal_lines();
  return lines;
}

// Sign-only membership; zero means the point is on one of the two lines.
int slab_side(const Point& p, int slot) {
  const int u = sgn(extremal()[static_cast<std::size_t>(2 * slot)].eval(p));
  const int v = sgn(extremal()[static_cast<std::size_t>(2 * slot + 1)].eval(p));
  if (u == 0 || v == 0) return 0;
  return u != v ? 1 : -1;
}

}  // namespace

SlabSignature slab_membership(const Point& p) {
  SlabSignature sig = 0;
  for (int slot = 0; slot < kSlopeCount; ++slot) {
    const int side = slab_side(p, slot);
    if (side == 0) {
      throw DegeneracyError("point (" + q_str(p.x) + ", " + q_str(p.y) + ") lies on an extremal line of slope " +
                            std::string(slope_name(slot)));
    }
    if (side > 0) sig = static_cast<SlabSignature>(sig | (1u << slot));
  }
  return sig;
}

SlabSignature canonical_signature(SlabSignature sig) {
  std::vector<SlabSignature> orbit{sig};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto* f : {&kNegate, &kInvert}) {
      const SlabSignature next = map_signature(orbit[i], *f);
      if (std::find(orbit.begin(), orbit.end(), next) == orbit.end()) orbit.push_back(next);
    }
  }
  return *std::min_element(orbit.begin(), orbit.end(), [](SlabSignature x, SlabSignature y) {
    return sorted_slots(x) < sorted_slots(y);
  });
}

// ---- Cells -------------------------------------------------------------------

namespace {

using Polygon = std::vector<Point>;

Rational area(const Polygon& p) {
  Rational twice = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point& u = p[i];
    const Point& v = p[(i + 1) % p.size()];
    twice += u.x * v.y - v.x * u.y;
  }
  return abs(twice) / 2;
}

// Part of a convex polygon where sign * eval >= 0.
Polygon clip(const Polygon& poly, const Line& l, int sign) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const Rational vp = l.eval(p) * sign;
    const Rational vq = l.eval(q) * sign;
    if (vp >= 0) out.push_back(p);
    if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
      const Rational t = vp / (vp - vq);
      out.push_back(Point{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

Point centroid(const Polygon& p) {
  Point c{0, 0};
  for (const Point& v : p) {
    c.x += v.x;
    c.y += v.y;
  }
  c.x /= static_cast<long>(p.size());
  c.y /= static_cast<long>(p.size());
  return c;
}

struct Cell {
  Polygon poly;
  bool touches_box;
};

std::vector<Cell> extremal_cells() {
  const Rational box = 10;
  std::vector<Polygon> cells{{{-box, -box}, {box, -box}, {box, box}, {-box, box}}};
  for (const Line& l : extremal()) {
    std::vector<Polygon> next;
    for (const Polygon& p : cells) {
      for (int sign : {1, -1}) {
        Polygon q = clip(p, l, sign);
        if (q.size() >= 3 && area(q) > 0) next.push_back(std::move(q));
      }
    }
    cells = std::move(next);
  }
  std::vector<Cell> out;
  for (Polygon& p : cells) {
    const bool touches = std::any_of(p.begin(), p.end(), [&](const Point& v) {
      return abs(v.x) == box || abs(v.y) == box;
    });
    out.push_back({std::move(p), touches});
  }
  return out;
}

struct Fingerprint {
  char letter;
  Rational area;
  int slabs;
};

// Letters follow decreasing slab count; equal counts are told apart by area.
const std::vector<Fingerprint>& fingerprints() {
  static const std::vector<Fingerprint> table = {
      {'A', {1, 12}, 12}, {'B', {1, 30}, 11}, {'C', {1, 30}, 10}, {'D', {1, 60}, 10}, {'E', {1, 35}, 9},
      {'F', {1, 105}, 9}, {'G', {1, 14}, 8},  {'H', {1, 35}, 8},  {'I', {1, 42}, 8},  {'J', {1, 35}, 7},
      {'K', {8, 105}, 7}, {'L', {1, 15}, 6},  {'M', {1, 15}, 6},  {'N', {4, 15}, 5},  {'O', {1, 10}, 5},
      {'P', {2, 3}, 4},   {'Q', {1, 15}, 4},  {'R', {1, 1}, 3},   {'S', {1, 3}, 3},
  };
  return table;
}

}  // namespace

std::map<SlabSignature, Rational> bounded_signature_areas() {
  std::map<SlabSignature, Rational> areas;
  std::map<SlabSignature, bool> unbounded;
  for (const Cell& c : extremal_cells()) {
    const SlabSignature sig = canonical_signature(slab_membership(centroid(c.poly)));
    areas[sig] += area(c.poly);
    if (c.touches_box) unbounded[sig] = true;
  }
  for (const auto& [sig, flag] : unbounded) areas.erase(sig);
  return areas;
}

std::vector<Region> region_areas() {
  std::vector<Region> regions;
  for (const auto& [sig, a] : bounded_signature_areas()) {
    if (signature_size(sig) >= 3) regions.push_back(Region{sig, a});
  }
  std::vector<bool> used(fingerprints().size(), false);
  // Signatures come out of the map in increasing bit order, which fixes the
  // tie-break between regions sharing a fingerprint.
  for (Region& r : regions) {
    int matches = 0;
    for (std::size_t i = 0; i < fingerprints().size(); ++i) {
      const Fingerprint& f = fingerprints()[i];
      if (f.area != r.area || f.slabs != signature_size(r.signature)) continue;
      ++matches;
      if (r.letter == '?' && !used[i]) {
        r.letter = f.letter;
        used[i] = true;
      }
    }
    r.ambiguous = matches > 1;
  }
  std::sort(regions.begin(), regions.end(), [](const Region& x, const Region& y) {
    return std::make_pair(x.letter, x.signature) < std::make_pair(y.letter, y.signature);
  });
  return regions;
}

// ---- Windows -----------------------------------------------------------------

std::vector<Point> window_polygon(const Window& w) {
  if (w.side <= 0) throw ValidationError("window side must be positive");
  const Rational h = w.side / 2;
  return {{w.center.x - h, w.center.y - h},
          {w.center.x + h, w.center.y - h},
          {w.center.x + h, w.center.y + h},
          {w.center.x - h, w.center.y + h}};
}

Extraction extract_polygon(const std::vector<Line>& lines, const std::vector<Point>& polygon) {
  if (polygon.size() < 3) throw ValidationError("window polygon needs at least three vertices");
  struct Hit {
    std::size_t edge;
    Rational t;
    std::size_t line;
  };
  std::vector<Hit> hits;
  const std::size_t n = polygon.size();
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Line& l = lines[li];
    auto name = [&] { return "line " + std::to_string(li) + " (" + l.describe() + ")"; };
    std::size_t count = 0;
    for (std::size_t e = 0; e < n; ++e) {
      const Rational fp = l.eval(polygon[e]);
      const Rational fq = l.eval(polygon[(e + 1) % n]);
      if (fp == 0) throw DegeneracyError(name() + " passes through window corner " + std::to_string(e));
      if ((fp > 0) == (fq > 0) || fq == 0) continue;
      hits.push_back({e, fp / (fp - fq), li});
      ++count;
    }
    if (count != 0 && count != 2) throw DegeneracyError(name() + " meets the window boundary " +
                                                        std::to_string(count) + " times");
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    return x.edge != y.edge ? x.edge < y.edge : x.t < y.t;
  });
  for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
    if (hits[i].edge == hits[i + 1].edge && hits[i].t == hits[i + 1].t) {
      throw DegeneracyError("lines " + std::to_string(hits[i].line) + " (" + lines[hits[i].line].describe() +
                            ") and " + std::to_string(hits[i + 1].line) + " (" +
                            lines[hits[i + 1].line].describe() + ") meet on the window boundary");
    }
  }
  std::map<std::size_t, std::vector<Label>> ends;
  for (std::size_t i = 0; i < hits.size(); ++i) ends[hits[i].line].push_back(static_cast<Label>(i));
  // Chords in order of their first endpoint.
  std::vector<std::pair<Label, Label>> pairs;
  std::vector<std::size_t> line_of;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& e = ends[hits[i].line];
    if (e[0] != static_cast<Label>(i)) continue;
    pairs.emplace_back(e[0], e[1]);
    line_of.push_back(hits[i].line);
  }
  if (pairs.size() > static_cast<std::size_t>(Matching::kMaxChords)) {
    throw ValidationError("window meets " + std::to_string(pairs.size()) + " lines, more than " +
                          std::to_string(Matching::kMaxChords));
  }
  return Extraction{pairs.empty() ? Matching() : Matching::from_pairs(pairs), std::move(line_of)};
}

Matching extract_polygon_matching(const std::vector<Line>& lines, const std::vector<Point>& polygon) {
  return extract_polygon(lines, polygon).matching;
}

Matching extract_window_matching(const std::vector<Line>& lines, const Window& w) {
  if (!w.shear) return extract_polygon_matching(lines, window_polygon(w));
  std::vector<Line> moved;
  moved.reserve(lines.size());
  for (const Line& l : lines) moved.push_back(transform(l, *w.shear));
  return extract_polygon_matching(moved, window_polygon(w));
}

// ---- Patterns ----------------------------------------------------------------

Pattern Pattern::from_lines(std::vector<Line> lines) {
  Pattern p;
  p.fixed_ = std::move(lines);
  return p;
}

Pattern Pattern::lattice(std::vector<std::optional<Rational>> slopes) {
  if (slopes.empty()) throw ValidationError("lattice pattern needs at least one slope");
  Pattern p;
  p.lattice_ = std::move(slopes);
  p.is_lattice_ = true;
  return p;
}

std::vector<Line> Pattern::lines_near(const Rational& x0, const Rational& y0, const Rational& x1,
                                      const Rational& y1) const {
  if (!is_lattice_) return fixed_;
  std::vector<Line> out;
  const std::array<Point, 4> corners = {Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}};
  for (const auto& s : lattice_) {
    // q*y - p*x = j, or x = j.
    const Rational a = s ? Rational(-s->get_num()) : Rational(1);
    const Rational b = s ? Rational(s->get_den()) : Rational(0);
    Rational lo = a * corners[0].x + b * corners[0].y;
    Rational hi = lo;
    for (const Point& c : corners) {
      const Rational v = a * c.x + b * c.y;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (Rational j = ceil_q(lo); j <= floor_q(hi); j += 1) out.push_back(Line{a, b, j});
  }
  return out;
}

std::vector<Line> parse_pattern(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream row(raw);
    std::string kind;
    if (!(row >> kind)) continue;
    try {
      if (kind == "V") {
        std::string off;
        if (!(row >> off)) throw ParseError(line_no, "expected 'V offset'");
        lines.push_back(Line::vertical(parse_rational(off)));
      } else if (kind == "S") {
        long sn = 0, sd = 0, on = 0, od = 0;
        if (!(row >> sn >> sd >> on >> od)) throw ParseError(line_no, "expected 'S slope_num slope_den offset_num offset_den'");
        if (sd == 0 || od == 0) throw ParseError(line_no, "zero denominator");
        Rational slope(sn, sd), offset(on, od);
        slope.canonicalize();
        offset.canonicalize();
        lines.push_back(Line::sloped(slope, offset));
      } else {
        throw ParseError(line_no, "unknown record kind '" + kind + "'");
      }
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    std::string extra;
    if (row >> extra) throw ParseError(line_no, "trailing text '" + extra + "'");
  }
  return lines;
}

Pattern Pattern::parse(const std::string& spec) {
  if (spec == "matousek") return lattice({Rational(0), std::nullopt, Rational(-1)});
  if (spec.rfind("twelve:", 0) == 0) {
    try {
      return from_lines(bundle_lines(std::stoi(spec.substr(7))));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ValidationError*>(&e)) throw;
      throw ValidationError("bad bundle size in '" + spec + "'");
    }
  }
  if (spec.rfind("lattice:", 0) == 0) {
    std::vector<std::optional<Rational>> slopes;
    std::istringstream in(spec.substr(8));
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item == "inf") {
        slopes.emplace_back(std::nullopt);
      } else {
        slopes.emplace_back(parse_rational(item));
      }
    }
    return lattice(std::move(slopes));
  }
  std::ifstream file(spec);
  if (!file) throw ValidationError("unknown pattern '" + spec + "' (not a builtin and not a readable file)");
  std::ostringstream buf;
  buf << file.rdbuf();
  return from_lines(parse_pattern(buf.str()));
}

Matching extract_from_pattern(const Pattern& p, const Window& w) {
  const auto square = window_polygon(w);
  std::vector<Point> pre = square;
  if (w.shear) {
    const long det = w.shear->det();
    if (det == 0) throw ValidationError("shear matrix is singular");
    const Shear inv{w.shear->d, -w.shear->b, -w.shear->c, w.shear->a};
    for (Point& v : pre) {
      v = transform(v, inv);
      v.x /= det;
      v.y /= det;
    }
  }
  Rational x0 = pre[0].x, x1 = pre[0].x, y0 = pre[0].y, y1 = pre[0].y;
  for (const Point& v : pre) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  return extract_window_matching(p.lines_near(x0, y0, x1, y1), w);
}

}  // namespace chordarr
