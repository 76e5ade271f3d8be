#include "multisect/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "multisect/errors.hpp"
#include "multisect/heisenberg.hpp"

namespace multisect::monodromy {

namespace {

const double kPi = std::acos(-1.0);
const Complex kZeta(-0.5, std::sqrt(3.0) / 2.0);
constexpr double kJoinTol = 1e-12;
constexpr double kTwistTol = 1e-10;
constexpr double kMinClearance = 1e-3;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(Complex z) { return fmt(z.real()) + " " + fmt(z.imag()); }

int nearest_index(const ProjPoint& p, const std::vector<ProjPoint>& pts, double* dist = nullptr) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double d = cubic::fs_distance(p, pts[j]);
    if (d < bd) bd = d, best = static_cast<int>(j);
  }
  if (dist) *dist = bd;
  return best;
}

int mod(long v, int m) { return static_cast<int>(((v % m) + m) % m); }

// a + b zeta as a string "a:b", or throws if z is not an Eisenstein integer.
std::string eisenstein_token(Complex z) {
  const double b = z.imag() / kZeta.imag();
  const double a = z.real() + 0.5 * b;
  const long ai = std::lround(a), bi = std::lround(b);
  if (std::abs(a - ai) > 1e-9 || std::abs(b - bi) > 1e-9)
    throw InputError("twist entry " + fmt(z) + " is not an Eisenstein integer");
  return std::to_string(ai) + ":" + std::to_string(bi);
}

Complex parse_eisenstein(const std::string& tok) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos) throw InputError("bad twist entry '" + tok + "', expected a:b");
  try {
    std::size_t used_a = 0, used_b = 0;
    const long a = std::stol(tok.substr(0, colon), &used_a);
    const long b = std::stol(tok.substr(colon + 1), &used_b);
    if (used_a != colon || used_b != tok.size() - colon - 1) throw std::invalid_argument(tok);
    return static_cast<double>(a) + static_cast<double>(b) * kZeta;
  } catch (const std::logic_error&) {
    throw InputError("bad twist entry '" + tok + "'");
  }
}

}  // namespace

// ---- paths -----------------------------------------------------------------

PathSegment PathSegment::line(Complex a, Complex b) {
  PathSegment s;
  s.kind = Kind::Line;
  s.from = a;
  s.to = b;
  return s;
}

PathSegment PathSegment::arc(Complex center, double radius, double start_angle, double sweep) {
  if (!(radius > 0.0)) throw InputError("arc radius must be positive");
  PathSegment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.start_angle = start_angle;
  s.sweep = sweep;
  return s;
}

double PathSegment::length() const {
  return kind == Kind::Line ? std::abs(to - from) : radius * std::abs(sweep);
}

Complex PathSegment::at(double t) const {
  if (kind == Kind::Line) return from + t * (to - from);
  return center + std::polar(radius, start_angle + t * sweep);
}

PathSegment PathSegment::reversed() const {
  if (kind == Kind::Line) return line(to, from);
  return arc(center, radius, start_angle + sweep, -sweep);
}

CurvePath::CurvePath(Complex lambda, std::optional<Mat3> twist, std::string name)
    : CurvePath(std::vector<PathSegment>{PathSegment::line(lambda, lambda)}, std::move(twist), std::move(name)) {}

CurvePath::CurvePath(std::vector<PathSegment> segments, std::optional<Mat3> twist, std::string name)
    : name_(std::move(name)), segments_(std::move(segments)), twist_(std::move(twist)) {
  if (segments_.empty()) throw InputError("path needs at least one segment");
  start_ = segments_.front().start();
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i)
    if (std::abs(segments_[i].end() - segments_[i + 1].start()) > kJoinTol * std::max(1.0, std::abs(segments_[i].end())))
      throw InputError("path '" + name_ + "' has a gap after segment " + std::to_string(i));
  for (const auto& s : segments_) length_ += s.length();
  if (singular_clearance() < kMinClearance)
    throw InputError("path '" + name_ + "' passes through a singular member of the pencil");
  if (twist_) {
    const double r = curve_at(0.0).compose(*twist_).proportionality_residual(curve_at(1.0));
    if (!(r < kTwistTol))
      throw InputError("twist of path '" + name_ + "' does not map the end curve to the start curve (residual " +
                       fmt(r) + ")");
  }
}

Complex CurvePath::end() const { return segments_.back().end(); }

Complex CurvePath::lambda_at(double s) const {
  if (s <= 0.0) return start_;
  if (s >= 1.0 || length_ == 0.0) return s >= 1.0 ? end() : start_;
  double remaining = s * length_;
  for (const auto& seg : segments_) {
    const double L = seg.length();
    if (remaining <= L && L > 0.0) return seg.at(remaining / L);
    remaining -= L;
  }
  return end();
}

CubicForm CurvePath::curve_at(double s) const { return cubic::hesse_pencil(lambda_at(s)).form; }

bool CurvePath::is_closed() const {
  return twist_.has_value() || std::abs(end() - start_) <= kJoinTol * std::max(1.0, std::abs(start_));
}

double CurvePath::singular_clearance(int samples) const {
  const std::array<Complex, 3> sing{1.0, kZeta, kZeta * kZeta};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments_)
    for (int i = 0; i <= samples; ++i) {
      const Complex l = seg.at(static_cast<double>(i) / samples);
      for (const auto& c : sing) best = std::min(best, std::abs(l - c));
    }
  return best;
}

CurvePath CurvePath::reversed() const {
  if (twist_) throw InputError("cannot reverse twisted path '" + name_ + "'");
  std::vector<PathSegment> r;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) r.push_back(it->reversed());
  return CurvePath(r, std::nullopt, name_.empty() ? "" : name_ + "^-1");
}

CurvePath concat(const CurvePath& a, const CurvePath& b, std::string name) {
  if (a.twist() || b.twist()) throw InputError("concat takes untwisted paths");
  std::vector<PathSegment> s = a.segments();
  s.insert(s.end(), b.segments().begin(), b.segments().end());
  return CurvePath(s, std::nullopt, std::move(name));
}

// ---- point sets ------------------------------------------------------------

std::string PointKind::to_string() const {
  switch (type) {
    case Type::Flexes: return "flexes";
    case Type::Torsion: return "torsion:" + std::to_string(parameter);
    case Type::TypePoints: return "type:" + std::to_string(parameter);
  }
  return "";
}

PointKind PointKind::parse(const std::string& s) {
  if (s == "flexes") return flexes();
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::logic_error&) {
      throw InputError("bad point kind '" + s + "'");
    }
    if (v < 1) throw InputError("point kind parameter must be positive in '" + s + "'");
    if (head == "torsion") return torsion(v);
    if (head == "type") return type_points(v);
  }
  throw InputError("unknown point kind '" + s + "' (expected flexes, torsion:N or type:m)");
}

LabeledPointSet enumerate(const CubicForm& F, const PointKind& kind, const std::optional<ProjPoint>& identity_hint) {
  const auto fl = cubic::flexes(F);
  const int id = identity_hint ? nearest_index(*identity_hint, fl) : 0;
  LabeledPointSet set{F, kind, {}, fl[static_cast<std::size_t>(id)]};
  switch (kind.type) {
    case PointKind::Type::Flexes: set.points = fl; break;
    case PointKind::Type::Torsion: {
      elliptic::TorsionOptions o;
      o.n_max = std::max(o.n_max, kind.parameter);
      set.points = elliptic::torsion_points(elliptic::EllipticContext(F, set.identity), kind.parameter, o);
      break;
    }
    case PointKind::Type::TypePoints: {
      elliptic::TypePointOptions o;
      o.m_max = std::max(o.m_max, kind.parameter);
      o.identity_flex = id;
      set.points = elliptic::type_points(F, kind.parameter, o);
      break;
    }
  }
  return set;
}

// ---- permutations ----------------------------------------------------------

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InputError("composing permutations of different sizes");
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

// ---- tracking --------------------------------------------------------------

std::optional<Matching> match_sets(const std::vector<ProjPoint>& moved, const std::vector<ProjPoint>& target,
                                   double ratio) {
  if (moved.size() != target.size()) return std::nullopt;
  Matching m;
  m.perm.assign(moved.size(), -1);
  std::vector<bool> used(target.size(), false);
  for (std::size_t i = 0; i < moved.size(); ++i) {
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    int best = -1;
    for (std::size_t j = 0; j < target.size(); ++j) {
      const double d = cubic::fs_distance(moved[i], target[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = static_cast<int>(j);
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (best < 0 || used[static_cast<std::size_t>(best)]) return std::nullopt;
    if (std::isfinite(d2)) {
      if (!(d1 < ratio * d2)) return std::nullopt;
      m.min_margin = std::min(m.min_margin, 1.0 - d1 / d2);
    }
    used[static_cast<std::size_t>(best)] = true;
    m.perm[i] = best;
    m.max_distance = std::max(m.max_distance, d1);
  }
  return m;
}

TrackResult track(const LabeledPointSet& set, const CurvePath& path, const TrackerOptions& opts) {
  if (set.kind.type == PointKind::Type::Torsion && set.kind.parameter > opts.n_max)
    throw InputError("torsion order " + std::to_string(set.kind.parameter) + " exceeds n_max");
  if (set.kind.type == PointKind::Type::TypePoints && set.kind.parameter > opts.m_max)
    throw InputError("type parameter " + std::to_string(set.kind.parameter) + " exceeds m_max");
  if (set.curve.proportionality_residual(path.curve_at(0.0)) > kTwistTol)
    throw InputError("point set is not on the start curve of path '" + path.name() + "'");

  TrackResult r{{}, set};
  auto& mono = r.monodromy;
  LabeledPointSet& cur = r.final_set;
  double s = 0.0, h = opts.initial_step;
  if (path.length() > 0.0) {
    while (s < 1.0) {
      const double s_next = std::min(1.0, s + h);
      std::optional<Matching> m;
      LabeledPointSet next = cur;
      try {
        next = enumerate(path.curve_at(s_next), cur.kind, cur.identity);
        m = match_sets(cur.points, next.points, opts.ratio);
      } catch (const NumericalError&) {
        m.reset();
      }
      if (m) {
        std::vector<ProjPoint> labeled;
        labeled.reserve(cur.points.size());
        for (int j : m->perm) labeled.push_back(next.points[static_cast<std::size_t>(j)]);
        next.points = std::move(labeled);
        cur = std::move(next);
        s = s_next;
        ++mono.steps;
        mono.max_residual = std::max(mono.max_residual, m->max_distance);
        mono.min_margin = std::min(mono.min_margin, m->min_margin);
        h = std::min(2.0 * h, opts.initial_step);
      } else {
        ++mono.rejected_steps;
        h *= 0.5;
        if (h < opts.min_step) {
          const Complex l = path.lambda_at(s);
          throw TrackingError("step underflow on path '" + path.name() + "' at s=" + fmt(s) + ", lambda=" +
                              fmt(l) + " (" + set.kind.to_string() + ")");
        }
      }
    }
  }

  Permutation identity(set.points.size());
  std::iota(identity.begin(), identity.end(), 0);
  if (!path.is_closed()) {
    mono.perm = identity;
    return r;
  }
  std::vector<ProjPoint> moved = cur.points;
  ProjPoint moved_identity = cur.identity;
  if (path.twist()) {
    for (auto& p : moved) p = ProjPoint(*path.twist() * p.coords());
    moved_identity = ProjPoint(*path.twist() * cur.identity.coords());
    if (set.kind.type == PointKind::Type::Torsion && cubic::fs_distance(moved_identity, set.identity) > 1e-7)
      throw InputError("twist of path '" + path.name() + "' moves the identity; torsion sets are not preserved");
  }
  const auto m = match_sets(moved, set.points, opts.ratio);
  if (!m)
    throw TrackingError("end of path '" + path.name() + "' does not match the start set (" + set.kind.to_string() +
                        ")");
  mono.perm = m->perm;
  mono.max_residual = std::max(mono.max_residual, m->max_distance);
  mono.min_margin = std::min(mono.min_margin, m->min_margin);
  cur.curve = set.curve;
  cur.points = std::move(moved);
  cur.identity = set.identity;
  return r;
}

std::vector<CurvePath> lambda_generators() {
  const std::array<std::pair<Complex, const char*>, 3> sing{
      {{1.0, "lambda_1"}, {kZeta, "lambda_zeta"}, {kZeta * kZeta, "lambda_zeta2"}}};
  std::vector<CurvePath> loops;
  for (const auto& [c, name] : sing) {
    const Complex near = 0.7 * c;
    loops.emplace_back(std::vector<PathSegment>{PathSegment::line(0.0, near),
                                                PathSegment::arc(c, 0.3, std::arg(c) + kPi, 2.0 * kPi),
                                                PathSegment::line(near, 0.0)},
                       std::nullopt, name);
  }
  return loops;
}

CurvePath lambda_circle_at_infinity(double radius) {
  return CurvePath({PathSegment::line(0.0, -radius), PathSegment::arc(0.0, radius, kPi, 2.0 * kPi),
                    PathSegment::line(-radius, 0.0)},
                   std::nullopt, "lambda_infinity");
}

// ---- homology mod m --------------------------------------------------------

std::vector<std::array<int, 2>> torsion_coordinates(const LabeledPointSet& torsion, int basis_p, int basis_q) {
  if (torsion.kind.type != PointKind::Type::Torsion) throw InputError("torsion coordinates need a torsion set");
  const int m = torsion.kind.parameter;
  const auto n = torsion.points.size();
  if (n != static_cast<std::size_t>(m * m)) throw InputError("torsion set has the wrong size");
  if (basis_p < 0 || basis_q < 0 || static_cast<std::size_t>(basis_p) >= n || static_cast<std::size_t>(basis_q) >= n)
    throw InputError("basis label out of range");
  elliptic::EllipticContext ctx(torsion.curve, torsion.identity);
  const double radius = ctx.tolerances().identity;
  std::vector<ProjPoint> mp{ctx.identity()}, mq{ctx.identity()};
  for (int k = 1; k < m; ++k) {
    mp.push_back(elliptic::ec_add(ctx, mp.back(), torsion.points[static_cast<std::size_t>(basis_p)]));
    mq.push_back(elliptic::ec_add(ctx, mq.back(), torsion.points[static_cast<std::size_t>(basis_q)]));
  }
  std::vector<std::array<int, 2>> coords(n, {-1, -1});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const ProjPoint s = elliptic::ec_add(ctx, mp[static_cast<std::size_t>(a)], mq[static_cast<std::size_t>(b)]);
      double d = 0.0;
      const int j = nearest_index(s, torsion.points, &d);
      if (d > radius || coords[static_cast<std::size_t>(j)][0] >= 0)
        throw InputError("labels " + std::to_string(basis_p) + ", " + std::to_string(basis_q) +
                         " do not form a basis of the " + std::to_string(m) + "-torsion");
      coords[static_cast<std::size_t>(j)] = {a, b};
    }
  return coords;
}

std::array<int, 2> find_basis(const LabeledPointSet& torsion) {
  const int n = static_cast<int>(torsion.points.size());
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      try {
        torsion_coordinates(torsion, p, q);
        return {p, q};
      } catch (const InputError&) {
      }
    }
  throw InputError("no basis found in torsion set");
}

Mat2 homological_image(const LabeledPointSet& torsion, const Permutation& perm, int basis_p, int basis_q) {
  const auto coords = torsion_coordinates(torsion, basis_p, basis_q);
  if (perm.size() != coords.size()) throw InputError("permutation size does not match the torsion set");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == std::array<int, 2>{0, 0} && perm[i] != static_cast<int>(i))
      throw InputError("permutation moves the identity; no linear image");
  const auto& ip = coords[static_cast<std::size_t>(perm[static_cast<std::size_t>(basis_p)])];
  const auto& iq = coords[static_cast<std::size_t>(perm[static_cast<std::size_t>(basis_q)])];
  return Mat2{{{ip[0], iq[0]}, {ip[1], iq[1]}}};
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b, int m) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = mod(static_cast<long>(a[i][0]) * b[0][j] + static_cast<long>(a[i][1]) * b[1][j], m);
  return r;
}

int mat2_det(const Mat2& a, int m) {
  return mod(static_cast<long>(a[0][0]) * a[1][1] - static_cast<long>(a[0][1]) * a[1][0], m);
}

std::vector<Mat2> mat2_closure(const std::vector<Mat2>& gens, int m) {
  std::set<Mat2> seen{Mat2{{{1 % m, 0}, {0, 1 % m}}}};
  std::vector<Mat2> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Mat2 y = mat2_mul(g, x, m);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// ---- Hesse group -----------------------------------------------------------

Permutation induced_permutation(const Mat3& g, const std::vector<ProjPoint>& pts, double tol) {
  Permutation p(pts.size());
  std::vector<bool> hit(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = 0.0;
    const int j = nearest_index(ProjPoint(g * pts[i].coords()), pts, &d);
    if (d > tol || hit[static_cast<std::size_t>(j)])
      throw ConfigurationError("matrix does not permute the points (image of point " + std::to_string(i) + ")");
    hit[static_cast<std::size_t>(j)] = true;
    p[i] = j;
  }
  return p;
}

Mat3 hesse_phase_matrix() {
  Mat3 g = Mat3::Identity();
  g(2, 2) = kZeta;
  return g;
}

Mat3 hesse_fourier_matrix() {
  const Complex z = kZeta, z2 = kZeta * kZeta;
  Mat3 g;
  g << 1.0, 1.0, 1.0, 1.0, z, z2, 1.0, z2, z;
  return g;
}

namespace {

std::vector<Permutation> perm_closure(const std::vector<Permutation>& gens, std::size_t n) {
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Permutation y = compose(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

HesseGroupReport hesse_group_algebraic() {
  const auto fl = cubic::flexes(CubicForm::fermat());
  const Mat3 A = heisenberg::HeisenbergElement::A().to_complex();
  const Mat3 B = heisenberg::HeisenbergElement::B().to_complex();
  HesseGroupReport r;
  for (const Mat3& g : {A, B, hesse_phase_matrix(), hesse_fourier_matrix()})
    r.generators.push_back(induced_permutation(g, fl));
  r.elements = perm_closure(r.generators, fl.size());
  r.order = r.elements.size();
  r.transitive = orbits(r.generators, fl.size()).size() == 1;

  const auto cfg = cubic::hesse_configuration(fl);
  std::set<std::array<int, 3>> lines(cfg.lines.begin(), cfg.lines.end());
  r.preserves_lines = true;
  for (const auto& g : r.elements)
    for (const auto& l : cfg.lines) {
      std::array<int, 3> img{g[static_cast<std::size_t>(l[0])], g[static_cast<std::size_t>(l[1])],
                             g[static_cast<std::size_t>(l[2])]};
      std::sort(img.begin(), img.end());
      r.preserves_lines = r.preserves_lines && lines.count(img);
    }

  const auto H = perm_closure({r.generators[0], r.generators[1]}, fl.size());
  r.heisenberg_image_order = H.size();
  const std::set<Permutation> Hs(H.begin(), H.end());
  r.heisenberg_image_normal = true;
  for (const auto& g : r.generators)
    for (const auto& h : H) r.heisenberg_image_normal = r.heisenberg_image_normal && Hs.count(compose(compose(inverse(g), h), g));
  return r;
}

std::vector<CurvePath> twisted_generators() {
  return {CurvePath(0.0, heisenberg::HeisenbergElement::A().to_complex(), "twist_A"),
          CurvePath(0.0, heisenberg::HeisenbergElement::B().to_complex(), "twist_B"),
          CurvePath(0.0, hesse_phase_matrix(), "twist_phase"),
          CurvePath({PathSegment::line(0.0, -2.0)}, hesse_fourier_matrix(), "twist_fourier")};
}

TwistValidation twisted_loop_validation(const CurvePath& loop, const TrackerOptions& opts) {
  if (!loop.twist()) throw InputError("path '" + loop.name() + "' has no twist");
  const auto start = enumerate(loop.curve_at(0.0), PointKind::flexes());
  TwistValidation v;
  v.tracked = track(start, loop, opts).monodromy.perm;
  // Flexes are the base points of the pencil, so g acts on them directly.
  v.direct = induced_permutation(*loop.twist(), start.points);
  v.match = v.tracked == v.direct;
  if (!v.match)
    throw TrackingError("twisted loop '" + loop.name() + "': tracked " + cycle_notation(v.tracked) + " vs direct " +
                        cycle_notation(v.direct));
  return v;
}

std::vector<std::vector<int>> orbits(const std::vector<Permutation>& gens, std::size_t n) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& g : gens) {
    if (g.size() != n) throw InputError("permutation size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      const int a = find(static_cast<int>(i)), b = find(g[i]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

Connectivity connectivity_check(int m, const std::vector<CurvePath>& loops, const TrackerOptions& opts) {
  if (m < 1 || m > opts.m_max) throw InputError("m out of range for connectivity check");
  const auto set = enumerate(CubicForm::fermat(), PointKind::type_points(m));
  Connectivity c;
  c.points = set.points.size();
  std::vector<Permutation> perms;
  for (const auto& loop : loops) {
    if (std::abs(loop.start()) > kJoinTol || !loop.is_closed())
      throw InputError("loop '" + loop.name() + "' is not a closed loop based at lambda = 0");
    auto t = track(set, loop, opts);
    perms.push_back(t.monodromy.perm);
    c.certificates.push_back(std::move(t.monodromy));
  }
  c.orbits = orbits(perms, c.points);
  c.transitive = c.orbits.size() == 1;
  return c;
}

// ---- loop files ------------------------------------------------------------

std::vector<CurvePath> read_loops(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<CurvePath> loops;
  std::optional<std::string> name;
  std::vector<PathSegment> segs;
  std::optional<Mat3> twist;
  auto fail = [&](const std::string& msg) { throw InputError("loop file line " + std::to_string(lineno) + ": " + msg); };
  auto num = [&](std::istringstream& is) {
    double v;
    if (!(is >> v)) fail("expected a number");
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    std::string key;
    is >> key;
    if (!header) {
      int version = 0;
      if (key != "multisect-loops" || !(is >> version)) fail("missing 'multisect-loops <version>' header");
      if (version != 1) fail("unsupported loop file version " + std::to_string(version));
      header = true;
      continue;
    }
    if (key == "loop") {
      if (name) fail("nested loop");
      std::string n;
      if (!(is >> n)) fail("loop needs a name");
      name = n;
      segs.clear();
      twist.reset();
    } else if (!name) {
      fail("'" + key + "' outside a loop block");
    } else if (key == "line") {
      const double a = num(is), b = num(is), c = num(is), d = num(is);
      segs.push_back(PathSegment::line({a, b}, {c, d}));
    } else if (key == "arc") {
      const double a = num(is), b = num(is), r = num(is), t0 = num(is), sw = num(is);
      segs.push_back(PathSegment::arc({a, b}, r, t0 * kPi / 180.0, sw * kPi / 180.0));
    } else if (key == "twist") {
      Mat3 g;
      for (int i = 0; i < 9; ++i) {
        std::string tok;
        if (!(is >> tok)) fail("twist needs 9 entries");
        g(i / 3, i % 3) = parse_eisenstein(tok);
      }
      twist = g;
    } else if (key == "end") {
      if (segs.empty()) fail("loop '" + *name + "' has no segments");
      loops.emplace_back(segs, twist, *name);
      name.reset();
    } else {
      fail("unknown keyword '" + key + "'");
    }
    std::string extra;
    if (key != "loop" && is >> extra) fail("trailing input '" + extra + "'");
  }
  if (!header) throw InputError("empty loop file");
  if (name) throw InputError("loop '" + *name + "' is missing 'end'");
  return loops;
}

std::vector<CurvePath> load_loops(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open loop file '" + path + "'");
  return read_loops(in);
}

void write_loops(std::ostream& out, const std::vector<CurvePath>& loops) {
  out << "multisect-loops 1\n";
  for (const auto& l : loops) {
    out << "loop " << (l.name().empty() ? "unnamed" : l.name()) << "\n";
    for (const auto& s : l.segments()) {
      if (s.kind == PathSegment::Kind::Line)
        out << "line " << fmt(s.from) << " " << fmt(s.to) << "\n";
      else
        out << "arc " << fmt(s.center) << " " << fmt(s.radius) << " " << fmt(s.start_angle * 180.0 / kPi) << " "
            << fmt(s.sweep * 180.0 / kPi) << "\n";
    }
    if (l.twist()) {
      out << "twist";
      for (int i = 0; i < 9; ++i) out << " " << eisenstein_token((*l.twist())(i / 3, i % 3));
      out << "\n";
    }
    out << "end\n";
  }
}

}  // namespace multisect::monodromy
