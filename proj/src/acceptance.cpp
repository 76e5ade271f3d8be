#include "multisect/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "multisect/errors.hpp"
#include "multisect/heisenberg.hpp"
#include "multisect/legendre.hpp"
#include "multisect/modgroup.hpp"
#include "multisect/multisection.hpp"
#include "multisect/verify/oracles.hpp"
#include "multisect/verify/sampling.hpp"

namespace multisect::acceptance {

namespace {

using cubic::CubicForm;
using cubic::ProjPoint;

// Thresholds fixed by the acceptance criteria, independent of the run configuration.
constexpr double kFlexResidual = 1e-8;
constexpr double kCollinearity = 1e-8;
constexpr double kGroupLaw = 1e-8;
constexpr double kTranslation = 1e-9;
constexpr double kPairSymmetry = 1e-12;
constexpr double kMinMargin = 0.4;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " FAILED[" << what << "]";
    }
  }
  template <class T>
  void note(const std::string& key, const T& v) {
    detail << " " << key << "=" << v;
  }
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

verify::Sampler sampler(const RunConfig& c, int id) { return verify::Sampler(c.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

std::vector<CubicForm> hesse_members(verify::Sampler& s, int count) {
  std::vector<CubicForm> out;
  for (int i = 0; i < count; ++i) out.push_back(cubic::hesse_pencil(s.hesse_lambda()).form);
  return out;
}

void time_limit(Check& c, double seconds, double limit) {
  c.note("limit_s", limit);
  c.require(seconds < limit, "runtime");
}

// ---- criteria ----------------------------------------------------------------

void flex_counts(Check& c, const RunConfig& cfg, double& elapsed, const std::function<double()>& clock) {
  auto s = sampler(cfg, 1);
  std::vector<CubicForm> curves{CubicForm::fermat()};
  for (const auto& h : hesse_members(s, 5)) curves.push_back(h);
  for (int i = 0; i < 20; ++i) curves.push_back(s.cubic_form());
  double worst = 0.0;
  int good = 0;
  for (const auto& F : curves) {
    const auto fl = cubic::flexes(F);
    const CubicForm H = cubic::hessian(F);
    for (const auto& p : fl) worst = std::max({worst, cubic::curve_residual(F, p), cubic::curve_residual(H, p)});
    good += fl.size() == 9;
  }
  elapsed = clock();
  c.note("curves", curves.size());
  c.note("with_9_flexes", good);
  c.note("max_residual", sci(worst));
  c.require(good == static_cast<int>(curves.size()), "count");
  c.require(worst < kFlexResidual, "residual");
  time_limit(c, elapsed, 5.0);
}

void type_counts(Check& c, const RunConfig& cfg, double& elapsed, const std::function<double()>& clock) {
  auto s = sampler(cfg, 2);
  std::vector<CubicForm> curves{CubicForm::fermat()};
  for (const auto& h : hesse_members(s, 3)) curves.push_back(h);
  elliptic::TypePointOptions o;
  o.m_max = cfg.m_max;
  o.tol = cfg.tolerances();
  std::ostringstream counts;
  for (int m = 1; m <= 4; ++m) {
    const auto expected = static_cast<std::size_t>(9 * modgroup::jordan_totient(m));
    for (const auto& F : curves) {
      const auto n = elliptic::type_points(F, m, o).size();
      c.require(n == expected, "m=" + std::to_string(m));
    }
    counts << (m > 1 ? "," : "") << expected;
  }
  elapsed = clock();
  c.note("curves", curves.size());
  c.note("counts", counts.str());
  time_limit(c, elapsed, 60.0);
}

void hesse_config(Check& c, const RunConfig& cfg) {
  auto s = sampler(cfg, 3);
  std::vector<CubicForm> curves{CubicForm::fermat(), cubic::hesse_pencil(s.hesse_lambda()).form, s.cubic_form()};
  double worst = 0.0;
  for (const auto& F : curves) {
    const auto h = cubic::hesse_configuration(cubic::flexes(F), cfg.collinearity_tol);
    bool shape = h.lines.size() == 12;
    for (const auto& l : h.lines_through) shape = shape && l.size() == 4;
    c.require(shape, "incidence");
    worst = std::max(worst, h.max_collinearity_residual);
  }
  c.note("curves", curves.size());
  c.note("lines", 12);
  c.note("max_collinearity_residual", sci(worst));
  c.require(worst < kCollinearity, "collinearity");
}

void group_law(Check& c, const RunConfig& cfg) {
  auto s = sampler(cfg, 4);
  std::vector<CubicForm> curves{CubicForm::fermat(), cubic::hesse_pencil(s.hesse_lambda()).form, s.cubic_form()};
  double assoc = 0.0, comm = 0.0;
  bool flex_ok = true;
  for (const auto& F : curves) {
    const auto fl = cubic::flexes(F);
    elliptic::EllipticContext ctx(F, fl[0], cfg.tolerances());
    for (int i = 0; i < 100; ++i) {
      const ProjPoint P = s.curve_point(F), Q = s.curve_point(F), R = s.curve_point(F);
      assoc = std::max(assoc, cubic::fs_distance(elliptic::ec_add(ctx, elliptic::ec_add(ctx, P, Q), R),
                                                 elliptic::ec_add(ctx, P, elliptic::ec_add(ctx, Q, R))));
      comm = std::max(comm, cubic::fs_distance(elliptic::ec_add(ctx, P, Q), elliptic::ec_add(ctx, Q, P)));
    }
    for (const auto& f : fl) flex_ok = flex_ok && ctx.is_identity(elliptic::ec_mul(ctx, 3, f));
  }
  c.note("curves", curves.size());
  c.note("associativity", sci(assoc));
  c.note("commutativity", sci(comm));
  c.note("three_flex_is_identity", flex_ok);
  c.require(assoc < kGroupLaw, "associativity");
  c.require(comm < kGroupLaw, "commutativity");
  c.require(flex_ok, "3*flex");
}

void cohomology(Check& c, double& elapsed, const std::function<double()>& clock) {
  const auto h_sl2 = modgroup::h1_coefficients_Z2(modgroup::modular_group_presentation());
  const auto h_18 = modgroup::h1_coefficients_Z2(modgroup::gamma18_presentation());
  const auto h2 = modgroup::h2_sl2z();
  elapsed = clock();
  c.note("H1(SL2Z;Z^2)", h_sl2.to_string());
  c.note("H1(Gamma18;Z^2)", h_18.to_string());
  c.note("H2(BSL2Z;Z)", h2.to_string());
  c.require(h_sl2.is_trivial(), "H1 SL2Z");
  c.require(h_18.is_trivial(), "H1 Gamma18");
  c.require(h2.free_rank == 0 && h2.torsion == std::vector<exactlinalg::BigInt>{12}, "H2");
  time_limit(c, elapsed, 1.0);
}

void indices(Check& c) {
  std::ostringstream idx;
  for (int m = 2; m <= 12; ++m) {
    const auto n = modgroup::gamma1_cosets(m).size();
    idx << (m > 2 ? "," : "") << n;
    c.require(n == static_cast<std::size_t>(modgroup::jordan_totient(m)), "index m=" + std::to_string(m));
  }
  // Relations S^4 and S^2 U^-3 as columns over the generators S, U.
  const exactlinalg::IntMatrix rel{{4, 2}, {0, -3}};
  const auto ab = exactlinalg::cokernel(rel);
  const auto ab_pres = modgroup::abelianization_of(modgroup::modular_group_presentation());
  c.note("indices", idx.str());
  c.note("abelianization", ab.to_string());
  c.require(ab.to_string() == "Z/12" && ab_pres == ab, "abelianization");
}

void freeness(Check& c) {
  std::ostringstream tf;
  for (int m = 1; m <= 12; ++m) {
    const bool free = modgroup::torsion_free_check_gamma1(m).torsion_free;
    tf << (free ? '1' : '0');
    c.require(free == (m >= 4), "torsion-free m=" + std::to_string(m));
  }
  std::ostringstream ranks;
  for (int m = 4; m <= 7; ++m) {
    const auto ab = modgroup::abelianization_of(modgroup::gamma1_presentation(m));
    const auto expected = static_cast<std::size_t>(1 + modgroup::jordan_totient(m) / 12);
    ranks << (m > 4 ? "," : "") << ab.free_rank;
    c.require(ab.free_rank == expected && ab.torsion.empty(), "rank m=" + std::to_string(m));
  }
  c.note("torsion_free_m1..12", tf.str());
  c.note("ranks_m4..7", ranks.str());
}

void heisenberg_group(Check& c, const RunConfig& cfg) {
  using heisenberg::HeisenbergElement;
  const auto K = heisenberg::generate_group();
  const auto Z = heisenberg::center();
  const auto A = HeisenbergElement::A(), B = HeisenbergElement::B();
  const auto zI = HeisenbergElement::scalar(heisenberg::EisensteinInt::zeta());
  const bool comm = heisenberg::commutator(B, A) == zI && heisenberg::commutator(A, B) == zI * zI;
  c.note("order", K.size());
  c.note("center", Z.size());
  c.note("commutator", comm ? "BAB^-1A^-1=zeta*I" : "unexpected");
  c.require(K.size() == 27, "order");
  c.require(Z.size() == 3, "center");
  c.require(comm, "commutator");

  auto s = sampler(cfg, 8);
  const CubicForm F = CubicForm::fermat();
  elliptic::EllipticContext ctx(F, cubic::flexes(F)[0], cfg.tolerances());
  std::vector<ProjPoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(s.curve_point(F));
  for (const auto& [name, g] : {std::pair<const char*, HeisenbergElement>{"A", A}, {"B", B}}) {
    const auto t = heisenberg::translation_report(ctx, g, pts);
    c.note(std::string("translation_spread_") + name, sci(t.max_deviation));
    c.require(t.max_deviation < kTranslation && t.three_torsion, std::string("translation ") + name);
  }
}

std::vector<monodromy::CurvePath> loops_where(const RunConfig& cfg, bool twisted) {
  std::vector<monodromy::CurvePath> out;
  for (auto& l : monodromy::load_loops(cfg.loops_path()))
    if (l.twist().has_value() == twisted) out.push_back(std::move(l));
  return out;
}

void monodromy_sanity(Check& c, const RunConfig& cfg, double& elapsed, const std::function<double()>& clock) {
  using namespace monodromy;
  const auto loops = loops_where(cfg, false);
  const auto opts = cfg.tracker();
  const CubicForm F = CubicForm::fermat();
  c.require(loops.size() >= 3, "three lambda loops");
  double margin = 1.0;
  bool flexes_fixed = true, mod3_trivial = true;
  const auto fl = enumerate(F, PointKind::flexes());
  const auto t3 = enumerate(F, PointKind::torsion(3));
  const auto t2 = enumerate(F, PointKind::torsion(2));
  const auto b3 = find_basis(t3), b2 = find_basis(t2);
  std::vector<Mat2> mod2;
  for (const auto& l : loops) {
    const auto a = track(fl, l, opts);
    flexes_fixed = flexes_fixed && is_identity(a.monodromy.perm);
    const auto b = track(t3, l, opts);
    mod3_trivial = mod3_trivial && homological_image(t3, b.monodromy.perm, b3[0], b3[1]) == Mat2{{{1, 0}, {0, 1}}};
    const auto d = track(t2, l, opts);
    const Mat2 M = homological_image(t2, d.monodromy.perm, b2[0], b2[1]);
    c.require(mat2_det(M, 2) == 1, "det mod 2");
    mod2.push_back(M);
    margin = std::min({margin, a.monodromy.min_margin, b.monodromy.min_margin, d.monodromy.min_margin});
  }
  const auto closure = mat2_closure(mod2, 2).size();
  elapsed = clock();
  c.note("loops", loops.size());
  c.note("flexes_fixed", flexes_fixed);
  c.note("mod3_trivial", mod3_trivial);
  c.note("mod2_closure", closure);
  c.note("min_margin", margin);
  c.require(flexes_fixed, "flexes fixed");
  c.require(mod3_trivial, "mod 3");
  c.require(closure == 6, "mod 2 closure");
  c.require(margin >= kMinMargin, "margin");
  time_limit(c, elapsed, 120.0);
}

void hesse_group(Check& c, const RunConfig& cfg) {
  const auto h = monodromy::hesse_group_algebraic();
  c.note("order", h.order);
  c.note("transitive", h.transitive);
  c.note("preserves_lines", h.preserves_lines);
  c.require(h.order == 216, "order");
  c.require(h.transitive, "transitive");
  c.require(h.preserves_lines, "lines");
  int matched = 0, nontrivial_path = 0;
  for (const auto& l : loops_where(cfg, true)) {
    const auto v = monodromy::twisted_loop_validation(l, cfg.tracker());
    matched += v.match;
    nontrivial_path += v.match && l.length() > 0.0;
  }
  c.note("twisted_matched", matched);
  c.note("twisted_with_path", nontrivial_path);
  c.require(matched >= 2, "twisted loops");
}

void connectivity(Check& c, const RunConfig& cfg) {
  const auto loops = monodromy::load_loops(cfg.loops_path());
  const auto r = monodromy::connectivity_check(2, loops, cfg.tracker());
  double margin = 1.0;
  for (const auto& cert : r.certificates) margin = std::min(margin, cert.min_margin);
  c.note("points", r.points);
  c.note("orbits", r.orbits.size());
  c.note("min_margin", margin);
  c.require(r.points == 27, "27 points");
  c.require(r.transitive, "transitive");
}

void deformations(Check& c) {
  using namespace multisection;
  const LatticeCurve L(Complex(0.0, 1.0));
  for (const auto& [m, k] : {std::pair<int, int>{1, 2}, {2, 3}}) {
    const auto f = sigma_m_lattice(L, m);
    const double eps = epsilon(f);
    const auto d = deform_k(f, constant_field(Complex(1.0, 0.0)), k, eps);
    const double sep = min_pairwise_distance(d);
    c.note("deform_k(n=" + std::to_string(f.degree) + ",k=" + std::to_string(k) + ")", d.degree);
    c.require(d.degree == static_cast<std::size_t>(k) * f.degree, "degree kn");
    c.require(sep >= eps / (8.0 * k), "separation");
  }
  for (int m : {1, 2}) {
    const auto f = sigma_m_lattice(L, m);
    const double eps = epsilon(f);
    const auto w = constant_field(Complex(1.0, 2.0));
    const auto d = deform_double(f, w, eps);
    double sym = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i)
      sym = std::max(sym, std::abs(L.shortest_representative(d.points[2 * i] + d.points[2 * i + 1] - 2.0 * f.points[i])));
    c.note("deform_double(n=" + std::to_string(f.degree) + ")", d.degree);
    c.require(d.degree == 2 * f.degree, "degree 2n");
    c.require(sym < kPairSymmetry, "pair symmetry");
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      bool distinct = true;
      try {
        make_fiber(L, deform_double_at(f, w, eps, t), "homotopy");
      } catch (const NumericalError&) {
        distinct = false;
      }
      c.require(distinct, "homotopy t>0");
    }
    const auto z = deform_double_at(f, w, eps, 0.0);
    bool collapse = true;
    for (std::size_t i = 0; i < f.points.size(); ++i) collapse = collapse && z[2 * i] == z[2 * i + 1];
    c.require(collapse, "homotopy t=0");
  }
}

void legendre_sections(Check& c, const RunConfig& cfg) {
  auto s = sampler(cfg, 13);
  int good = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Complex t;
    do t = 2.0 * s.complex_normal();
    while (std::abs(t) < 0.05 || std::abs(t - 1.0) < 0.05);
    const auto r = legendre::two_torsion_sections(t);
    worst = std::max(worst, r.max_curve_residual);
    good += r.all_two_torsion && r.exhaustive && r.max_curve_residual < cfg.on_curve_tol;
  }
  c.note("samples", 20);
  c.note("verified", good);
  c.note("max_residual", sci(worst));
  c.require(good == 20, "sections");
}

void oracles(Check& c, const RunConfig& cfg) {
  const auto P = modgroup::gamma18_presentation();
  const auto J = modgroup::cocycle_relation_matrix(P), C = modgroup::coboundary_matrix(P);
  for (std::uint64_t N : {2, 3, 4, 5}) {
    const bool z = verify::count_kernel_mod(J, N) == verify::predicted_kernel_mod(J, N);
    const bool b = verify::count_image_mod(C, N) == verify::predicted_image_mod(C, N);
    c.require(z && b, "mod " + std::to_string(N));
  }
  auto s = sampler(cfg, 14);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + s.below(8), k = 1 + s.below(8);
    exactlinalg::IntMatrix M(r, k);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < k; ++b) M(a, b) = static_cast<long>(s.below(19)) - 9;
    agree += exactlinalg::cokernel(M) == verify::cokernel_by_minors(M);
  }
  c.note("mod_N", "2,3,4,5");
  c.note("snf_agree", agree);
  c.require(agree == 200, "snf oracle");
}

const char* kNames[kCriteria] = {"flex-counts",      "type-3m-counts", "hesse-configuration", "group-law",
                                 "cohomology",       "indices",        "freeness",            "heisenberg",
                                 "monodromy-sanity", "hesse-group",    "connectivity",        "deformations",
                                 "legendre",         "oracles"};

}  // namespace

bool Summary::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  if (id < 1 || id > kCriteria) throw InputError("criterion id must be in 1.." + std::to_string(kCriteria));
  CriterionResult r;
  r.id = id;
  r.name = kNames[id - 1];
  const auto t0 = std::chrono::steady_clock::now();
  const std::function<double()> clock = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  Check c;
  c.detail << std::boolalpha;
  double elapsed = 0.0;
  try {
    switch (id) {
      case 1: flex_counts(c, config, elapsed, clock); break;
      case 2: type_counts(c, config, elapsed, clock); break;
      case 3: hesse_config(c, config); break;
      case 4: group_law(c, config); break;
      case 5: cohomology(c, elapsed, clock); break;
      case 6: indices(c); break;
      case 7: freeness(c); break;
      case 8: heisenberg_group(c, config); break;
      case 9: monodromy_sanity(c, config, elapsed, clock); break;
      case 10: hesse_group(c, config); break;
      case 11: connectivity(c, config); break;
      case 12: deformations(c); break;
      case 13: legendre_sections(c, config); break;
      case 14: oracles(c, config); break;
    }
  } catch (const Error& e) {
    c.ok = false;
    c.detail << " error: " << e.what();
  }
  r.seconds = clock();
  r.pass = c.ok;
  r.detail = c.detail.str();
  if (!r.detail.empty() && r.detail.front() == ' ') r.detail.erase(0, 1);
  return r;
}

Summary run_all(const RunConfig& config, const std::vector<int>& only) {
  config.validate();
  monodromy::load_loops(config.loops_path());
  Summary s;
  s.degraded = config.degraded();
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  for (int id : ids) s.results.push_back(run_criterion(id, config));
  return s;
}

std::string format_line(const CriterionResult& r, bool timings) {
  std::ostringstream os;
  os << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL");
  if (timings) os << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
  os << " " << r.detail;
  return os.str();
}

void write_summary(std::ostream& out, const Summary& s, bool timings) {
  out << "multisect-acceptance 1\n";
  int passed = 0;
  for (const auto& r : s.results) {
    out << format_line(r, timings) << "\n";
    passed += r.pass;
  }
  out << "summary: " << passed << "/" << s.results.size() << " passed";
  if (s.degraded) out << " (degraded: tolerances looser than defaults)";
  out << "\n";
}

}  // namespace multisect::acceptance
