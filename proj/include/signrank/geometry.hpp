#pragma once

// Exact affine line arrangements over the rationals and the enumeration of
// the sign vectors (covectors) of the cells they cut the plane into.
//
// Cell sampling works without any tolerance: vertices are the pairwise
// intersection points; every edge of a line is hit by the midpoints of
// consecutive vertices along it plus one point beyond each extreme; every
// region is hit by offsetting an edge sample to both sides of its line, with
// the offset chosen small enough (half of an exact lower bound on the
// distance to every non-incident line) that no other line's side changes.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

struct Point {
  Rational x, y;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
};

struct Line {
  Rational a, b, c;  // the line a*X + b*Y + c = 0
  int orient = 1;    // +1: positive side is a*x+b*y+c > 0; -1: flipped

  Rational eval(const Point& p) const { return a * p.x + b * p.y + c; }
  Sign side(const Point& p) const {
    Sign s = sign_of(eval(p));
    return orient > 0 ? s : negate(s);
  }
};

class Arrangement {
 public:
  explicit Arrangement(std::vector<Line> lines) : lines_(std::move(lines)) {
    if (lines_.empty()) throw std::invalid_argument("empty arrangement");
    for (const Line& l : lines_) {
      if (l.a == 0 && l.b == 0) throw std::invalid_argument("degenerate line");
      if (l.orient != 1 && l.orient != -1) throw std::invalid_argument("bad orientation");
    }
    for (std::size_t i = 0; i < lines_.size(); ++i)
      for (std::size_t j = i + 1; j < lines_.size(); ++j)
        if (lines_[i].a * lines_[j].b == lines_[j].a * lines_[i].b)
          throw std::invalid_argument("parallel or identical lines");
  }

  std::size_t size() const { return lines_.size(); }
  const Line& line(std::size_t i) const { return lines_.at(i); }
  const std::vector<Line>& lines() const { return lines_; }

  Arrangement with_flipped_orientations(const std::vector<std::size_t>& which) const {
    std::vector<Line> out = lines_;
    for (std::size_t i : which) out.at(i).orient = -out.at(i).orient;
    return Arrangement(std::move(out));
  }

  Point intersection(std::size_t i, std::size_t j) const {
    const Line &li = lines_.at(i), &lj = lines_.at(j);
    Rational det = li.a * lj.b - lj.a * li.b;
    return Point{(li.b * lj.c - lj.b * li.c) / det,
                 (lj.a * li.c - li.a * lj.c) / det};
  }

 private:
  std::vector<Line> lines_;
};

inline SignVector covector_at(const Arrangement& arr, const Point& p) {
  SignVector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr.line(i).side(p);
  return v;
}

inline std::set<Point> arrangement_vertices(const Arrangement& arr) {
  std::set<Point> vs;
  for (std::size_t i = 0; i < arr.size(); ++i)
    for (std::size_t j = i + 1; j < arr.size(); ++j)
      vs.insert(arr.intersection(i, j));
  return vs;
}

inline bool is_uniform(const Arrangement& arr) {
  for (const Point& p : arrangement_vertices(arr)) {
    std::size_t incident = 0;
    for (const Line& l : arr.lines())
      if (l.eval(p) == 0) ++incident;
    if (incident >= 3) return false;
  }
  return true;
}

struct CovectorSet {
  std::set<SignVector> c0, c1, c2;
  std::map<SignVector, Point> representative;

  std::set<SignVector> all() const {
    std::set<SignVector> out(c0.begin(), c0.end());
    out.insert(c1.begin(), c1.end());
    out.insert(c2.begin(), c2.end());
    return out;
  }
  // The oriented-matroid covector set: every realized covector plus the
  // all-zero vector.
  std::set<SignVector> all_with_zero(std::size_t n) const {
    std::set<SignVector> out = all();
    out.insert(SignVector(n, Sign::zero));
    return out;
  }
};

namespace detail {

inline Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

struct LineFrame {
  Point base;
  Rational dx, dy;  // direction (-b, a)
};

inline LineFrame frame_of(const Line& l) {
  LineFrame f;
  if (l.b != 0) f.base = Point{Rational(0), Rational(-l.c / l.b)};
  else f.base = Point{Rational(-l.c / l.a), Rational(0)};
  f.dx = -l.b;
  f.dy = l.a;
  return f;
}

inline Rational param_of(const LineFrame& f, const Point& p) {
  if (f.dx != 0) return (p.x - f.base.x) / f.dx;
  return (p.y - f.base.y) / f.dy;
}

inline Point point_at(const LineFrame& f, const Rational& t) {
  return Point{f.base.x + t * f.dx, f.base.y + t * f.dy};
}

}  // namespace detail

inline CovectorSet enumerate_covectors(const Arrangement& arr) {
  CovectorSet out;
  const std::set<Point> vertices = arrangement_vertices(arr);

  auto record = [&](std::set<SignVector>& bucket, const Point& p) {
    SignVector cv = covector_at(arr, p);
    bucket.insert(cv);
    out.representative.emplace(cv, p);
  };

  for (const Point& v : vertices) record(out.c0, v);

  for (std::size_t li = 0; li < arr.size(); ++li) {
    const Line& l = arr.line(li);
    const detail::LineFrame f = detail::frame_of(l);

    std::set<Rational> params;
    for (const Point& v : vertices)
      if (l.eval(v) == 0) params.insert(detail::param_of(f, v));

    std::vector<Point> edge_samples;
    if (params.empty()) {
      edge_samples.push_back(detail::point_at(f, Rational(0)));
    } else {
      std::vector<Rational> ts(params.begin(), params.end());
      edge_samples.push_back(detail::point_at(f, ts.front() - 1));
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        edge_samples.push_back(detail::point_at(f, (ts[i] + ts[i + 1]) / 2));
      edge_samples.push_back(detail::point_at(f, ts.back() + 1));
    }

    for (const Point& p : edge_samples) {
      record(out.c1, p);

      Rational delta(0);
      bool have = false;
      for (std::size_t lj = 0; lj < arr.size(); ++lj) {
        if (lj == li) continue;
        const Line& o = arr.line(lj);
        Rational bound = detail::abs_q(o.eval(p)) / (detail::abs_q(o.a) + detail::abs_q(o.b));
        if (!have || bound < delta) { delta = bound; have = true; }
      }
      const Rational eps = have ? Rational(delta / 2) : Rational(1);
      const Rational scale =
          eps / std::max(detail::abs_q(l.a), detail::abs_q(l.b));
      const Point plus{p.x + scale * l.a, p.y + scale * l.b};
      const Point minus{p.x - scale * l.a, p.y - scale * l.b};
      record(out.c2, plus);
      record(out.c2, minus);
    }
  }
  return out;
}

// --- arrangement file formats ------------------------------------------
//
// Text: one line per record, "a b c orient" with rationals as p or p/q and
// orient one of + or -. Also accepted: a JSON array of objects with string
// fields a, b, c and orient.

inline Arrangement parse_arrangement(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty arrangement input");

  std::vector<Line> lines;
  if (text[first] == '[') {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("arrangement JSON must be an array");
    for (const auto& rec : j) {
      Line l;
      l.a = parse_rational(rec.at("a").get<std::string>());
      l.b = parse_rational(rec.at("b").get<std::string>());
      l.c = parse_rational(rec.at("c").get<std::string>());
      const std::string o = rec.at("orient").get<std::string>();
      if (o != "+" && o != "-") throw std::invalid_argument("orient must be + or -");
      l.orient = o == "+" ? 1 : -1;
      lines.push_back(l);
    }
    return Arrangement(std::move(lines));
  }

  std::istringstream in(text);
  std::string row;
  while (std::getline(in, row)) {
    std::istringstream ls(row);
    std::string a, b, c, o;
    if (!(ls >> a)) continue;
    if (!(ls >> b >> c >> o)) throw std::invalid_argument("arrangement record needs 4 fields");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("trailing fields in arrangement record");
    Line l;
    l.a = parse_rational(a);
    l.b = parse_rational(b);
    l.c = parse_rational(c);
    if (o != "+" && o != "-") throw std::invalid_argument("orient must be + or -");
    l.orient = o == "+" ? 1 : -1;
    lines.push_back(l);
  }
  return Arrangement(std::move(lines));
}

inline std::string serialize(const Arrangement& arr) {
  std::string out;
  for (const Line& l : arr.lines()) {
    out += to_string(l.a) + ' ' + to_string(l.b) + ' ' + to_string(l.c) + ' ';
    out += l.orient > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

inline std::string serialize_json(const Arrangement& arr) {
  nlohmann::json j = nlohmann::json::array();
  for (const Line& l : arr.lines())
    j.push_back({{"a", to_string(l.a)},
                 {"b", to_string(l.b)},
                 {"c", to_string(l.c)},
                 {"orient", l.orient > 0 ? "+" : "-"}});
  return j.dump();
}

}  // namespace signrank
