#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chordarr/big_count.hpp"
#include "chordarr/matching.hpp"

namespace chordarr {

struct Point {
  Rational x;
  Rational y;
};

// The line a*x + b*y = c, with (a, b) != (0, 0).
struct Line {
  Rational a;
  Rational b;
  Rational c;

  static Line vertical(const Rational& x);
  // y = slope * x + offset
  static Line sloped(const Rational& slope, const Rational& offset);

  bool is_vertical() const { return b == 0; }
  Rational eval(const Point& p) const { return a * p.x + b * p.y - c; }
  std::string describe() const;
};

// 2x2 integer matrix acting on column vectors: (x, y) -> (a x + b y, c x + d y).
struct Shear {
  long a = 1, b = 0, c = 0, d = 1;
  long det() const { return a * d - b * c; }
};

// Image of a line under p -> S p. S must be invertible.
Line transform(const Line& l, const Shear& s);
Point transform(const Point& p, const Shear& s);

// ---- The twelve-slope construction -------------------------------------------

// Slope slots, in the fixed order used by signatures and canonical forms.
inline constexpr int kSlopeCount = 12;
// 0, inf, 1, -1, 2, -2, 3, -3, 1/2, -1/2, 1/3, -1/3
std::string_view slope_name(int slot);
std::optional<Rational> slope_value(int slot);  // nullopt for inf

// Bit i set <=> the slab of slope slot i contains the point.
using SlabSignature = std::uint16_t;

std::string signature_name(SlabSignature sig);  // "{0,inf,1/2}"
int signature_size(SlabSignature sig);

// m odd: the 12 bundles of m unit-spaced lines whose middle lines pass
// through the origin. Lines of slope +-1/2 and +-1/3 are spaced |s| apart
// vertically. Throws ValidationError for even or nonpositive m.
std::vector<Line> bundle_lines(int m);

// The 24 extremal lines with (m - 1)/2 normalized to 1/2. Lines 2i and 2i+1
// bound the slab of slope slot i.
std::vector<Line> normalized_extremal_lines();

// Throws DegeneracyError when p lies on an extremal line.
SlabSignature slab_membership(const Point& p);

// Lexicographic minimum (over sorted slot indices) of the orbit under the
// group generated by s -> -s and s -> 1/s (0 <-> inf).
SlabSignature canonical_signature(SlabSignature sig);

struct Region {
  SlabSignature signature;  // canonical
  Rational area;            // coefficient of m^2
  char letter = '?';        // 'A'..'S'
  bool ambiguous = false;   // letter chosen by tie-break between equal fingerprints
};

// Regions cut out by the normalized extremal lines whose points lie in at
// least three slabs, one entry per canonical signature. Sorted by letter.
std::vector<Region> region_areas();

// Every canonical signature with a bounded cell, including the two-slab
// ones that region_areas() leaves out.
std::map<SlabSignature, Rational> bounded_signature_areas();

// ---- Windows ---------------------------------------------------------------

struct Window {
  Point center;
  Rational side;
  std::optional<Shear> shear;  // applied to the pattern before clipping
};

// Chords are the lines meeting the open window; endpoint labels run
// counter-clockwise from the bottom-left corner. Throws DegeneracyError naming
// the offending lines when a line passes through a corner, runs along a side,
// or two lines meet the boundary at the same point. Windows that meet no line
// give the empty matching.
Matching extract_window_matching(const std::vector<Line>& lines, const Window& w);

// Same for a convex polygon given counter-clockwise; labels start at vertex 0.
Matching extract_polygon_matching(const std::vector<Line>& lines, const std::vector<Point>& polygon);

// Matching plus, for each chord, the index of its line in the input list.
struct Extraction {
  Matching matching;
  std::vector<std::size_t> line_of_chord;
};
Extraction extract_polygon(const std::vector<Line>& lines, const std::vector<Point>& polygon);

std::vector<Point> window_polygon(const Window& w);

// A line pattern that can produce the lines meeting a bounded area.
class Pattern {
 public:
  // "matousek", "twelve:<m>", "lattice:<s1>,<s2>,..." (slopes p/q or inf), or a
  // pattern file path.
  static Pattern parse(const std::string& spec);
  static Pattern from_lines(std::vector<Line> lines);
  // Integer-offset lines q*y - p*x = j for every slope p/q, and x = j for inf.
  static Pattern lattice(std::vector<std::optional<Rational>> slopes);

  // Every line of the pattern that can meet the axis-parallel box.
  std::vector<Line> lines_near(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) const;

 private:
  std::vector<Line> fixed_;
  std::vector<std::optional<Rational>> lattice_;
  bool is_lattice_ = false;
};

// Pattern file: one record per line, "V offset" (x = offset) or
// "S slope_num slope_den offset_num offset_den" (y = slope * x + offset).
// Blank lines and '#' comments are skipped. Throws ParseError.
std::vector<Line> parse_pattern(std::string_view text);

// Lines of the pattern meeting the window, after its shear.
Matching extract_from_pattern(const Pattern& p, const Window& w);

}  // namespace chordarr
