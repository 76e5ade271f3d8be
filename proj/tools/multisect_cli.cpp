// Command line front end. Reports are key:value text; exit codes are
// 0 success, 2 numerical failure, 3 input error, 4 acceptance failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "multisect/acceptance.hpp"
#include "multisect/config.hpp"
#include "multisect/errors.hpp"
#include "multisect/heisenberg.hpp"
#include "multisect/io.hpp"
#include "multisect/legendre.hpp"
#include "multisect/modgroup.hpp"
#include "multisect/monodromy.hpp"
#include "multisect/multisection.hpp"

using namespace multisect;

namespace {

constexpr int kExitNumerical = 2;
constexpr int kExitInput = 3;
constexpr int kExitAcceptance = 4;

struct GlobalFlags {
  std::string config;
  double tolerance = 0.0;
  int m_max = 0, n_max = 0;
  long long seed = -1;
  std::string out, loops;
};

RunConfig resolve_config(const GlobalFlags& g, const CLI::App& app) {
  RunConfig c;
  if (!g.config.empty()) c = load_config(g.config);
  if (app.count("--tolerance")) c.set_tolerance(g.tolerance);
  if (app.count("--m-max")) c.m_max = g.m_max;
  if (app.count("--n-max")) c.n_max = g.n_max;
  if (app.count("--seed")) {
    if (g.seed < 0) throw InputError("--seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(g.seed);
  }
  if (app.count("--out")) c.out = g.out;
  if (app.count("--loops")) c.loops = g.loops;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << text;
}

void add_points(io::Report& r, const std::vector<cubic::ProjPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) r.add_point("point[" + std::to_string(i) + "]", pts[i]);
}

elliptic::TypePointOptions type_options(const RunConfig& c, int identity) {
  elliptic::TypePointOptions o;
  o.m_max = c.m_max;
  o.tol = c.tolerances();
  o.identity_flex = identity;
  return o;
}

void check_flex_index(int k) {
  if (k < 0 || k > 8) throw InputError("--identity must be a flex index in 0..8");
}

std::string cmd_flexes(const RunConfig& c, const std::string& file) {
  const auto F = io::load_curve(file);
  const auto fl = cubic::flexes(F);
  const auto H = cubic::hessian(F);
  double res = 0.0;
  for (const auto& p : fl) res = std::max({res, cubic::curve_residual(F, p), cubic::curve_residual(H, p)});
  io::Report r("flexes");
  r.add("count", fl.size()).add("max_residual", res);
  add_points(r, fl);
  (void)c;
  return r.str();
}

std::string cmd_type_points(const RunConfig& c, const std::string& file, int m, int identity) {
  check_flex_index(identity);
  const auto F = io::load_curve(file);
  const auto pts = elliptic::type_points(F, m, type_options(c, identity));
  io::Report r("type-points");
  r.add("m", m).add("count", pts.size()).add("expected", static_cast<long long>(9 * modgroup::jordan_totient(m)));
  add_points(r, pts);
  return r.str();
}

std::string cmd_torsion(const RunConfig& c, const std::string& file, int N, int identity) {
  check_flex_index(identity);
  const auto F = io::load_curve(file);
  const elliptic::EllipticContext ctx(F, cubic::flexes(F)[static_cast<std::size_t>(identity)], c.tolerances());
  elliptic::TorsionOptions o;
  o.n_max = c.n_max;
  const auto pts = elliptic::torsion_points(ctx, N, o);
  io::Report r("torsion");
  r.add("N", N).add("count", pts.size()).add("expected", static_cast<long long>(N) * N);
  r.add_point("identity", ctx.identity());
  add_points(r, pts);
  return r.str();
}

std::string cmd_hesse_config(const RunConfig& c, const std::string& file) {
  const auto F = io::load_curve(file);
  const auto fl = cubic::flexes(F);
  const auto h = cubic::hesse_configuration(fl, c.collinearity_tol);
  io::Report r("hesse-config");
  r.add("points", fl.size()).add("lines", h.lines.size());
  r.add("max_collinearity_residual", h.max_collinearity_residual);
  r.add("min_noncollinear_residual", h.min_noncollinear_residual);
  add_points(r, fl);
  for (std::size_t i = 0; i < h.lines.size(); ++i)
    r.add("line[" + std::to_string(i) + "]", std::to_string(h.lines[i][0]) + " " + std::to_string(h.lines[i][1]) +
                                                 " " + std::to_string(h.lines[i][2]));
  for (std::size_t i = 0; i < h.lines_through.size(); ++i) r.add("lines_through[" + std::to_string(i) + "]", h.lines_through[i].size());
  return r.str();
}

std::string cmd_sum_check(const RunConfig& c, const std::string& curve, const std::string& points, int identity) {
  check_flex_index(identity);
  const auto F = io::load_curve(curve);
  const auto pts = io::load_points(points);
  if (pts.empty()) throw InputError("points file is empty");
  const elliptic::EllipticContext ctx(F, cubic::flexes(F)[static_cast<std::size_t>(identity)], c.tolerances());
  cubic::ProjPoint sum = ctx.identity();
  for (const auto& p : pts) sum = elliptic::ec_add(ctx, sum, p);
  io::Report r("sum-check");
  r.add("points", pts.size()).add_point("identity", ctx.identity()).add_point("sum", sum);
  r.add("sum_is_identity", elliptic::sum_is_identity(ctx, pts));
  return r.str();
}

std::string cmd_subgroup(const std::string& which, const std::vector<std::string>& reports) {
  const bool g18 = which == "gamma18";
  long long m = 0;
  if (!g18) {
    try {
      std::size_t used = 0;
      m = std::stoll(which, &used);
      if (used != which.size()) throw std::invalid_argument(which);
    } catch (const std::logic_error&) {
      throw InputError("subgroup must be a positive integer m or 'gamma18'");
    }
    if (m < 1 || m > 60) throw InputError("m must be in 1..60");
  }
  const auto P = g18 ? modgroup::gamma18_presentation() : modgroup::gamma1_presentation(m);
  io::Report r("subgroup");
  r.add("group", g18 ? std::string("gamma18") : "gamma1(" + which + ")");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < P.generators.size(); ++i) names.push_back("g" + std::to_string(i));
  for (const auto& rep : reports) {
    if (rep == "index") {
      r.add("index", P.parent_index);
    } else if (rep == "presentation") {
      r.add("generators", P.generators.size()).add("relators", P.relators.size());
      for (std::size_t i = 0; i < P.generators.size(); ++i)
        r.add("generator[" + std::to_string(i) + "]", P.generators[i].matrix.to_string());
      for (std::size_t i = 0; i < P.relators.size(); ++i)
        r.add("relator[" + std::to_string(i) + "]", modgroup::word_to_string(P.relators[i], names));
      r.add("abelianization", modgroup::abelianization_of(P).to_string());
    } else if (rep == "h1") {
      r.add("h1", modgroup::h1_coefficients_Z2(P).to_string());
    } else if (rep == "chi") {
      mpq_class chi = g18 ? mpq_class(-static_cast<long>(P.parent_index), 12) : modgroup::euler_characteristic_gamma1(m);
      chi.canonicalize();
      r.add("chi", chi.get_str());
    } else if (rep == "torsion-free") {
      if (g18) {
        const bool minus_one = modgroup::gamma18_membership(-modgroup::SL2Matrix::identity());
        r.add("torsion_free", !minus_one).add("certificate", std::string(minus_one ? "contains -I" : "no torsion"));
      } else {
        const auto t = modgroup::torsion_free_check_gamma1(m);
        r.add("torsion_free", t.torsion_free).add("certificate", t.certificate);
      }
    } else {
      throw InputError("unknown report '" + rep + "' (index, presentation, h1, chi, torsion-free)");
    }
  }
  return r.str();
}

std::string cmd_monodromy(const RunConfig& c, const std::string& on) {
  const auto kind = monodromy::PointKind::parse(on);
  const auto loops = monodromy::load_loops(c.loops_path());
  if (loops.empty()) throw InputError("loop file has no loops");
  io::Report r("monodromy");
  r.add("on", kind.to_string()).add("loops", loops.size());
  std::vector<monodromy::Permutation> perms;
  std::size_t points = 0;
  for (const auto& l : loops) {
    const auto set = monodromy::enumerate(l.curve_at(0.0), kind);
    points = set.points.size();
    const std::string k = "loop[" + l.name() + "]";
    if (kind.type == monodromy::PointKind::Type::Torsion && l.twist() &&
        cubic::fs_distance(cubic::ProjPoint(*l.twist() * set.identity.coords()), set.identity) > 1e-7) {
      r.add(k + ".skipped", "twist moves the identity");
      continue;
    }
    const auto t = monodromy::track(set, l, c.tracker());
    r.add(k + ".base", l.start());
    r.add(k + ".permutation", monodromy::cycle_notation(t.monodromy.perm));
    r.add(k + ".steps", t.monodromy.steps).add(k + ".rejected_steps", t.monodromy.rejected_steps);
    r.add(k + ".max_residual", t.monodromy.max_residual).add(k + ".min_margin", t.monodromy.min_margin);
    perms.push_back(t.monodromy.perm);
  }
  const auto orb = monodromy::orbits(perms, points);
  r.add("points", points).add("orbits", orb.size()).add("transitive", orb.size() == 1);
  return r.str();
}

std::string cmd_hesse_group() {
  const auto h = monodromy::hesse_group_algebraic();
  io::Report r("hesse-group");
  r.add("order", h.order).add("transitive", h.transitive).add("preserves_lines", h.preserves_lines);
  r.add("heisenberg_image_order", h.heisenberg_image_order).add("heisenberg_image_normal", h.heisenberg_image_normal);
  const char* names[] = {"A", "B", "phase", "fourier"};
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    r.add(std::string("generator[") + names[i] + "]", monodromy::cycle_notation(h.generators[i]));
  return r.str();
}

std::string cmd_deform(const std::vector<double>& tau, int m, int k, bool twice, double angle_deg) {
  const multisection::LatticeCurve L(Complex(tau[0], tau[1]));
  const auto f = multisection::sigma_m_lattice(L, m);
  const double eps = multisection::epsilon(f);
  const auto field = multisection::constant_field(std::polar(1.0, angle_deg * std::acos(-1.0) / 180.0));
  const auto d = twice ? multisection::deform_double(f, field, eps) : multisection::deform_k(f, field, k, eps);
  io::Report r("deform");
  r.add("tau", L.tau()).add("m", m).add("construction", d.construction);
  r.add("input_degree", f.degree).add("degree", d.degree).add("epsilon", eps);
  r.add("min_separation", multisection::min_pairwise_distance(d));
  for (std::size_t i = 0; i < d.points.size(); ++i) r.add("point[" + std::to_string(i) + "]", d.points[i]);
  return r.str();
}

std::string cmd_legendre(const std::vector<double>& t) {
  const auto rep = legendre::two_torsion_sections(Complex(t[0], t[1]));
  io::Report r("legendre-check");
  r.add("t", Complex(t[0], t[1])).add("sections", rep.points.size());
  for (std::size_t i = 0; i < rep.points.size(); ++i) r.add_point("section[" + std::to_string(i) + "]", rep.points[i]);
  r.add("max_curve_residual", rep.max_curve_residual).add("two_torsion", rep.all_two_torsion);
  r.add("factorization_residual", rep.factorization_residual).add("exhaustive", rep.exhaustive);
  return r.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multisect: torsion multisections of plane cubics"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "Config file with key = value lines");
  app.add_option("--tolerance", g.tolerance, "Override the on-curve, matching and collinearity tolerances");
  app.add_option("--m-max", g.m_max, "Largest m for points of type 3m");
  app.add_option("--n-max", g.n_max, "Largest torsion order N");
  app.add_option("--seed", g.seed, "Seed for sampled property checks");
  app.add_option("--out", g.out, "Write the report to this file");
  app.add_option("--loops", g.loops, "Loop file (default: shipped hesse_loops_v1.txt)");

  std::string curve, points, which = "gamma18", on = "flexes";
  int m = 1, N = 2, k = 1, identity = 0;
  bool twice = false, timings = false;
  double angle = 0.0;
  std::vector<double> tau{0.0, 1.0}, t{-1.0, 0.0};
  std::vector<std::string> reports{"index", "presentation", "h1", "chi", "torsion-free"};
  std::vector<int> only;

  auto* flexes = app.add_subcommand("flexes", "The 9 flexes of a curve");
  flexes->add_option("curve", curve, "Curve file")->required();
  auto* typep = app.add_subcommand("type-points", "Points of type 3m");
  typep->add_option("curve", curve, "Curve file")->required();
  typep->add_option("-m,--m", m, "m")->required();
  typep->add_option("--identity", identity, "Index of the identity flex");
  auto* tors = app.add_subcommand("torsion", "N-torsion points with a flex as identity");
  tors->add_option("curve", curve, "Curve file")->required();
  tors->add_option("-N,--N", N, "N")->required();
  tors->add_option("--identity", identity, "Index of the identity flex");
  auto* hcfg = app.add_subcommand("hesse-config", "Hesse configuration of the flexes");
  hcfg->add_option("curve", curve, "Curve file")->required();
  auto* sum = app.add_subcommand("sum-check", "Whether a list of points sums to the identity");
  sum->add_option("curve", curve, "Curve file")->required();
  sum->add_option("points", points, "Points file")->required();
  sum->add_option("--identity", identity, "Index of the identity flex");
  auto* sub = app.add_subcommand("subgroup", "Gamma_1(m) or the index-2 subgroup");
  sub->add_option("group", which, "m or gamma18")->required();
  sub->add_option("--report", reports, "index, presentation, h1, chi, torsion-free")->delimiter(',');
  auto* mono = app.add_subcommand("monodromy", "Track point sets along the loops of a loop file");
  mono->add_option("--on", on, "flexes, torsion:N or type:m");
  auto* hg = app.add_subcommand("hesse-group", "Hesse group acting on the Fermat flexes");
  auto* def = app.add_subcommand("deform", "Deform the type-3m fiber of C/<1,tau>");
  def->add_option("--tau", tau, "Re and Im of tau")->expected(2);
  def->add_option("-m,--m", m, "m");
  def->add_option("-k,--k", k, "Number of copies");
  def->add_flag("--double", twice, "Two-sheeted deformation x +- eps w / 4");
  def->add_option("--field-angle", angle, "Direction of the constant field, degrees");
  auto* leg = app.add_subcommand("legendre-check", "2-torsion sections of y^2 = x(x-1)(x-t)");
  leg->add_option("--t", t, "Re and Im of t")->expected(2);
  auto* ver = app.add_subcommand("verify-all", "Run the acceptance criteria");
  ver->add_option("--only", only, "Criterion ids")->delimiter(',');
  ver->add_flag("--timings", timings, "Include run times (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const RunConfig c = resolve_config(g, app);
    if (*flexes) emit(c, cmd_flexes(c, curve));
    else if (*typep) emit(c, cmd_type_points(c, curve, m, identity));
    else if (*tors) emit(c, cmd_torsion(c, curve, N, identity));
    else if (*hcfg) emit(c, cmd_hesse_config(c, curve));
    else if (*sum) emit(c, cmd_sum_check(c, curve, points, identity));
    else if (*sub) emit(c, cmd_subgroup(which, reports));
    else if (*mono) emit(c, cmd_monodromy(c, on));
    else if (*hg) emit(c, cmd_hesse_group());
    else if (*def) emit(c, cmd_deform(tau, m, k, twice, angle));
    else if (*leg) emit(c, cmd_legendre(t));
    else if (*ver) {
      for (int id : only)
        if (id < 1 || id > acceptance::kCriteria) throw InputError("--only ids must be in 1..14");
      const auto s = acceptance::run_all(c, only);
      std::ostringstream os;
      acceptance::write_summary(os, s, timings);
      emit(c, os.str());
      return s.all_pass() ? 0 : kExitAcceptance;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
