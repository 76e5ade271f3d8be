#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "multisect/cubic.hpp"
#include "multisect/elliptic.hpp"

// Monodromy of labeled point sets (flexes, torsion, points of type 3m) along loops
// in the Hesse pencil, optionally closed up by a projective twist.
namespace multisect::monodromy {

using cubic::CubicForm;
using cubic::Mat3;
using cubic::ProjPoint;

struct PathSegment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex from, to;          // Line
  Complex center;            // Arc
  double radius = 0.0;       // Arc
  double start_angle = 0.0;  // Arc, radians
  double sweep = 0.0;        // Arc, radians, positive = counterclockwise

  static PathSegment line(Complex a, Complex b);
  static PathSegment arc(Complex center, double radius, double start_angle, double sweep);

  double length() const;
  Complex at(double t) const;  // t in [0, 1]
  Complex start() const { return at(0.0); }
  Complex end() const { return at(1.0); }
  PathSegment reversed() const;
};

// A lambda-path in the pencil x^3 + y^3 + z^3 - 3 lambda xyz, parametrized by arc
// length. A twisted loop carries g with F_start(g v) proportional to F_end(v), so g
// maps the end curve back onto the start curve.
class CurvePath {
 public:
  // Constant path at lambda, optionally twisted by a symmetry of that curve.
  explicit CurvePath(Complex lambda, std::optional<Mat3> twist = std::nullopt, std::string name = "");
  // Throws InputError for gaps between segments or a twist that does not close the loop.
  CurvePath(std::vector<PathSegment> segments, std::optional<Mat3> twist = std::nullopt,
            std::string name = "");

  const std::string& name() const { return name_; }
  const std::vector<PathSegment>& segments() const { return segments_; }
  const std::optional<Mat3>& twist() const { return twist_; }
  double length() const { return length_; }
  Complex start() const { return start_; }
  Complex end() const;
  Complex lambda_at(double s) const;  // s in [0, 1]
  CubicForm curve_at(double s) const;
  bool is_closed() const;
  // Smallest distance from the path to {1, zeta, zeta^2}, sampled.
  double singular_clearance(int samples = 2000) const;

  // Untwisted paths only.
  CurvePath reversed() const;

 private:
  std::string name_;
  std::vector<PathSegment> segments_;
  std::optional<Mat3> twist_;
  Complex start_;
  double length_ = 0.0;
};

// Concatenation of untwisted paths; b must start where a ends.
CurvePath concat(const CurvePath& a, const CurvePath& b, std::string name = "");

struct PointKind {
  enum class Type { Flexes, Torsion, TypePoints };
  Type type = Type::Flexes;
  int parameter = 0;  // N for torsion, m for type points

  static PointKind flexes() { return {Type::Flexes, 3}; }
  static PointKind torsion(int N) { return {Type::Torsion, N}; }
  static PointKind type_points(int m) { return {Type::TypePoints, m}; }
  std::string to_string() const;  // "flexes", "torsion:N", "type:m"
  static PointKind parse(const std::string& s);
};

struct LabeledPointSet {
  CubicForm curve;
  PointKind kind;
  std::vector<ProjPoint> points;  // label i is points[i]
  ProjPoint identity;             // the flex used as group identity
};

// Fresh enumeration on F; identity is the flex closest to identity_hint, or flex 0.
LabeledPointSet enumerate(const CubicForm& F, const PointKind& kind,
                          const std::optional<ProjPoint>& identity_hint = std::nullopt);

using Permutation = std::vector<int>;
// Apply a first, then b.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
// "(0 3 5)(1 2)"; "()" for the identity.
std::string cycle_notation(const Permutation& p);

struct MonodromyPermutation {
  Permutation perm;  // point i ends on the position of point perm[i]
  double max_residual = 0.0;  // largest nearest-neighbour distance accepted
  double min_margin = 1.0;    // smallest 1 - nearest / second nearest
  int steps = 0;
  int rejected_steps = 0;
};

struct TrackerOptions {
  double initial_step = 1.0 / 64.0;  // fraction of path length
  double min_step = 1e-6;            // fraction of path length
  double ratio = 0.4;                // accept iff nearest < ratio * second nearest
  int n_max = 18;
  int m_max = 6;
};

struct TrackResult {
  MonodromyPermutation monodromy;
  LabeledPointSet final_set;
};

// Nearest-neighbour matching of `moved` onto `target`. Returns nullopt unless every
// point has nearest < ratio * second nearest and the assignment is a bijection.
struct Matching {
  Permutation perm;
  double max_distance = 0.0;
  double min_margin = 1.0;
};
std::optional<Matching> match_sets(const std::vector<ProjPoint>& moved, const std::vector<ProjPoint>& target,
                                   double ratio);

// Re-enumerate-and-match continuation. Throws TrackingError on step underflow or when
// the twisted end set cannot be matched to the start set.
TrackResult track(const LabeledPointSet& set, const CurvePath& path, const TrackerOptions& opts = {});

// Loops around 1, zeta, zeta^2 based at 0: out radially, once counterclockwise at
// radius 0.3, back.
std::vector<CurvePath> lambda_generators();
// Counterclockwise circle of the given radius centered at 0, entered along the
// negative real axis from 0.
CurvePath lambda_circle_at_infinity(double radius = 10.0);

// Z/m coordinates of torsion points against a basis (P, Q): entry i is (a, b) with
// points[i] = a P + b Q. Throws InputError if (P, Q) is not a basis.
std::vector<std::array<int, 2>> torsion_coordinates(const LabeledPointSet& torsion, int basis_p, int basis_q);
// First basis pair in label order.
std::array<int, 2> find_basis(const LabeledPointSet& torsion);

using Mat2 = std::array<std::array<int, 2>, 2>;
// Matrix of the induced automorphism in the basis (columns are images of P and Q), mod m.
Mat2 homological_image(const LabeledPointSet& torsion, const Permutation& perm, int basis_p, int basis_q);
Mat2 mat2_mul(const Mat2& a, const Mat2& b, int m);
int mat2_det(const Mat2& a, int m);
// Closure under multiplication of the given matrices in SL2(Z/m).
std::vector<Mat2> mat2_closure(const std::vector<Mat2>& gens, int m);

// Action of a projective matrix on a point list, as a permutation within tolerance.
// Throws ConfigurationError if some image is not in the list.
Permutation induced_permutation(const Mat3& g, const std::vector<ProjPoint>& pts, double tol = 1e-7);

// Generators of the Hesse group besides the Heisenberg A, B.
Mat3 hesse_phase_matrix();    // diag(1, 1, zeta); F_lambda -> F_{zeta lambda}
Mat3 hesse_fourier_matrix();  // rows (1,1,1), (1,z,z^2), (1,z^2,z); F_0 o g ~ F_{-2}

struct HesseGroupReport {
  std::vector<Permutation> generators;  // on the sorted Fermat flexes
  std::vector<Permutation> elements;    // closure, sorted
  std::size_t order = 0;
  bool transitive = false;
  bool preserves_lines = false;
  std::size_t heisenberg_image_order = 0;
  bool heisenberg_image_normal = false;
};
HesseGroupReport hesse_group_algebraic();

// The documented twisted loops (A, B, phase, Fourier) based at lambda = 0.
std::vector<CurvePath> twisted_generators();

struct TwistValidation {
  bool match = false;
  Permutation tracked;
  Permutation direct;
};
TwistValidation twisted_loop_validation(const CurvePath& loop, const TrackerOptions& opts = {});

struct Connectivity {
  bool transitive = false;
  std::size_t points = 0;
  std::vector<std::vector<int>> orbits;
  std::vector<MonodromyPermutation> certificates;
};
// Orbits of the group generated by the loops' permutations on the type-3m points of
// the Fermat cubic.
Connectivity connectivity_check(int m, const std::vector<CurvePath>& loops, const TrackerOptions& opts = {});
std::vector<std::vector<int>> orbits(const std::vector<Permutation>& gens, std::size_t n);

// Loop files: "multisect-loops 1" header, then blocks
//   loop <name>
//   line <re> <im> <re> <im>
//   arc <center re> <center im> <radius> <start angle deg> <sweep deg>
//   twist <9 entries a:b meaning a + b zeta, row-major>
//   end
// Blank lines and lines starting with '#' are ignored.
std::vector<CurvePath> read_loops(std::istream& in);
std::vector<CurvePath> load_loops(const std::string& path);
void write_loops(std::ostream& out, const std::vector<CurvePath>& loops);

}  // namespace multisect::monodromy
