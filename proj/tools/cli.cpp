#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "skewloop/construct.hpp"
#include "skewloop/io.hpp"
#include "skewloop/quadric.hpp"
#include "skewloop/support.hpp"
#include "skewloop/verify.hpp"

namespace {

using namespace skewloop;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Ctx {
  double tol = 1e-9;
  double refute_tol = 1e-10;
  long budget = 1'000'000;
  unsigned seed = 1;
  int workers = 1;
  std::string out;
  std::string format = "csv";
  int exit_code = 0;
};

Json bound_json(const BoundBox& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"certified", b.certified}};
}

void emit_report(const Ctx& ctx, const std::string& command, Json result,
                 double ms) {
  Json rep = {{"command", command},
              {"config",
               {{"tol", ctx.tol},
                {"budget", ctx.budget},
                {"seed", ctx.seed},
                {"workers", ctx.workers}}},
              {"result", std::move(result)},
              {"timings", {{"wall_ms", ms}}}};
  std::cout << rep.dump(2) << "\n";
  if (!ctx.out.empty()) save_json(ctx.out, rep);
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ---- oval analyze ----------------------------------------------------------

void cmd_oval_analyze(Ctx& ctx, const std::string& support_path) {
  Timer timer;
  const TrigPoly h = load_trigpoly(support_path);
  const SupportFunction s(h, ctx.tol);
  const SymmetryAnalysis sym = symmetry_analysis(s);
  const BoundBox inf_v = s.convexity_certificate();
  const BoundBox sup_v = s.v().sup_bound(ctx.tol);
  Json result = {
      {"convexity", bound_json(inf_v)},
      {"curvature_min", 1.0 / sup_v.upper},
      {"curvature_max", 1.0 / inf_v.lower},
      {"symmetric", sym.symmetric},
      {"asymmetry", sym.asymmetry},
  };
  emit_report(ctx, "oval analyze", std::move(result), timer.ms());
}

// ---- skew construct --------------------------------------------------------

void cmd_skew_construct(Ctx& ctx, const std::string& support_path,
                        const std::string& loop_out,
                        const std::string& margin_out) {
  Timer timer;
  const TrigPoly h = load_trigpoly(support_path);
  const SupportFunction s(h, ctx.tol);
  ConstructOptions copts;
  copts.bound_tol = ctx.tol;
  const HeightFunction z = construct_height(s.v(), copts);
  const SpaceCurve loop = build_cylinder_loop(s, z);
  save_json(loop_out, to_json(loop));
  Json result = {{"loop", loop_out},
                 {"tau", z.tau},
                 {"projection_degree", z.projection_degree},
                 {"margin", bound_json(z.margin)},
                 {"height", to_json(z.z)}};
  if (!margin_out.empty()) save_json(margin_out, result);
  emit_report(ctx, "skew construct", std::move(result), timer.ms());
}

// ---- skew verify -----------------------------------------------------------

void cmd_skew_verify(Ctx& ctx, const std::string& loop_path,
                     const std::string& report_path) {
  Timer timer;
  const SpaceCurve loop = load_curve(loop_path);
  VerifyOptions vopts;
  vopts.refute_tol = ctx.refute_tol;
  vopts.box_budget = ctx.budget;
  vopts.workers = ctx.workers;
  vopts.bound_tol = ctx.tol;
  const SkewCertificate cert = verify_skew(loop, vopts);
  if (!report_path.empty()) save_json(report_path, to_json(cert));
  if (cert.status == SkewStatus::Inconclusive) ctx.exit_code = 1;
  emit_report(ctx, "skew verify", to_json(cert), timer.ms());
}

// ---- quadric demo ----------------------------------------------------------

/// Surface selector parsed from --surface {sphere|sigma|ellipsoid a b c}.
struct Surface {
  std::string name;
  double a = 1, b = 1, c = 1;
};

Surface parse_surface(const std::vector<std::string>& words) {
  if (words.empty()) throw ParseError("--surface requires a value");
  Surface s;
  s.name = words[0];
  if (s.name == "ellipsoid") {
    if (words.size() != 4)
      throw ParseError("--surface ellipsoid needs three semi-axes");
    s.a = std::stod(words[1]);
    s.b = std::stod(words[2]);
    s.c = std::stod(words[3]);
    if (s.a <= 0 || s.b <= 0 || s.c <= 0)
      throw ParseError("ellipsoid semi-axes must be positive");
  } else if (s.name != "sphere" && s.name != "sigma") {
    throw ParseError("unknown surface \"" + s.name + "\"");
  } else if (words.size() != 1) {
    throw ParseError("surface " + s.name + " takes no parameters");
  }
  return s;
}

/// Surface-loop convention: for the sphere the curve3 components are a free
/// analytic map g normalized onto S^2; for sigma the x component is the
/// angular wobble u(t) - t and the y component is the height profile v(t)
/// of X(u(t), v(t)).
JetCurve surface_loop(const Surface& surf, const SpaceCurve& raw) {
  const AnalyticCurve& a = raw.analytic();
  if (surf.name == "sigma") return sigma_loop(a.x, a.y);
  return sphere_loop(a.x, a.y, a.z);
}

void cmd_quadric_demo(Ctx& ctx, const Surface& surf,
                      const std::string& loop_path, const std::string& check) {
  Timer timer;
  const SpaceCurve raw = load_curve(loop_path);
  Json result = {{"surface", surf.name}, {"check", check}};

  if (check == "noperiod") {
    if (surf.name != "sigma")
      throw ParseError("--check noperiod applies to --surface sigma");
    const NoPeriodReport rep = noperiod_report(surface_loop(surf, raw));
    result["residual"] = rep.residual;
    result["annulus_valid"] = rep.annulus_valid;
    result["annulus_area"] = rep.annulus_area;
    result["note"] = rep.note;
  } else if (check == "bisection") {
    if (surf.name != "sphere")
      throw ParseError("--check bisection applies to --surface sphere");
    result["defect"] = bisection_defect(surface_loop(surf, raw));
  } else if (check == "witness") {
    SpaceCurve probe = surf.name == "sphere" || surf.name == "ellipsoid"
                           ? to_sampled(sphere_loop(raw.analytic().x,
                                                    raw.analytic().y,
                                                    raw.analytic().z),
                                        4096)
                           : to_sampled(surface_loop(surf, raw), 4096);
    if (surf.name == "ellipsoid") {
      Matrix3d A = Vector3d(surf.a, surf.b, surf.c).asDiagonal();
      probe = apply_affine(probe, A, Vector3d::Zero());
    }
    const auto witnesses = find_parallel_pair(probe);
    Json ws = Json::array();
    for (const auto& w : witnesses)
      ws.push_back({{"t", w.t}, {"s", w.s}, {"defect", w.defect}});
    result["witnesses"] = ws;
    result["found"] = !witnesses.empty();
  } else if (check == "homotopy") {
    if (surf.name != "sphere")
      throw ParseError("--check homotopy applies to --surface sphere");
    const JetCurve unit = arclength_reparametrize(surface_loop(surf, raw));
    double min_speed = std::numeric_limits<double>::infinity();
    const int n = 128;
    for (int j = 0; j < n; ++j) {
      const JetCurve st = tantrix_homotopy(unit, kTwoPi / 2.0 * j / n);
      for (int i = 0; i < n; ++i) {
        const Vec3Jet g = st(unit.period * i / n);
        min_speed = std::min(min_speed,
                             std::hypot(g[0].d1(), g[1].d1(), g[2].d1()));
      }
    }
    result["min_speed"] = min_speed;
  } else {
    throw ParseError("unknown check \"" + check + "\"");
  }
  emit_report(ctx, "quadric demo", std::move(result), timer.ms());
}

// ---- quadric section -------------------------------------------------------

void cmd_quadric_section(Ctx& ctx, const Surface& surf,
                         const std::vector<double>& plane) {
  Timer timer;
  QuadricModel model = surf.name == "sigma"
                           ? QuadricModel::hyperboloid_two_sheets()
                           : QuadricModel::ellipsoid(surf.a, surf.b, surf.c);
  Plane p;
  p.n = Vector3d(plane[0], plane[1], plane[2]);
  if (p.n.norm() == 0) throw ParseError("plane normal must be nonzero");
  p.n.normalize();
  p.d = plane[3];
  const PlanarSection sec = planar_section(model, p);
  Json result = {{"surface", surf.name}, {"empty", sec.empty}};
  if (!sec.empty) {
    result["center"] = {sec.center[0], sec.center[1]};
    result["semi_major"] = sec.semi_major;
    result["semi_minor"] = sec.semi_minor;
    result["asymmetry"] = sec.asymmetry;
  }
  emit_report(ctx, "quadric section", std::move(result), timer.ms());
}

// ---- export ----------------------------------------------------------------

std::string svg_path(const std::vector<Vector2d>& pts, double x0, double y0,
                     double scale, const char* style) {
  std::ostringstream os;
  os << "<path style=\"" << style << "\" d=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    os << (i == 0 ? 'M' : 'L') << x0 + scale * pts[i][0] << ' '
       << y0 - scale * pts[i][1] << ' ';
  }
  os << "Z\"/>\n";
  return os.str();
}

void cmd_export(Ctx& ctx, const std::string& input, int samples) {
  Timer timer;
  const Json j = load_json(input);
  const std::string kind =
      j.is_object() && j.contains("kind") && j["kind"].is_string()
          ? j["kind"].get<std::string>()
          : "";
  // A bare support function exports as its oval; curves export directly.
  SpaceCurve curve = [&] {
    if (kind == "trigpoly") {
      const SupportFunction s(trigpoly_from_json(j));
      const PlanarOval oval = support_parametrization(s);
      return SpaceCurve(oval.x, oval.y, TrigPoly(0.0));
    }
    return curve_from_json(j);
  }();
  const double T = curve.period();
  if (ctx.out.empty()) throw ParseError("export requires --out");

  if (ctx.format == "csv") {
    std::ofstream os(ctx.out);
    if (!os) throw ParseError("cannot write " + ctx.out);
    os.precision(17);
    os << "t,x,y,z,vx,vy,vz\n";
    for (int i = 0; i < samples; ++i) {
      const double t = T * i / samples;
      const Vector3d p = curve.position(t), v = curve.velocity(t);
      os << t << ',' << p[0] << ',' << p[1] << ',' << p[2] << ',' << v[0]
         << ',' << v[1] << ',' << v[2] << "\n";
    }
  } else if (ctx.format == "svg") {
    // Three panels: xy projection, height profile z(t), and the
    // stereographic tantrix with its antipodal image overlaid.
    std::vector<Vector2d> xy, zt, st, st_anti;
    double r = 1e-12, zmax = 1e-12;
    for (int i = 0; i < samples; ++i) {
      const double t = T * i / samples;
      const Vector3d p = curve.position(t);
      const Vector3d tau = curve.tantrix(t);
      xy.emplace_back(p[0], p[1]);
      zt.emplace_back(t / T * 2.0 - 1.0, p[2]);
      r = std::max({r, std::abs(p[0]), std::abs(p[1])});
      zmax = std::max(zmax, std::abs(p[2]));
      // stereographic projection from the pole opposite each point's sign
      auto stereo = [](const Vector3d& u) {
        return Vector2d(u[0] / (1.0 + std::min(0.999, u[2])),
                        u[1] / (1.0 + std::min(0.999, u[2])));
      };
      st.push_back(stereo(tau));
      st_anti.push_back(stereo(-tau));
    }
    for (auto& q : zt) q[1] /= zmax;
    std::ofstream os(ctx.out);
    if (!os) throw ParseError("cannot write " + ctx.out);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" "
          "height=\"300\" viewBox=\"0 0 900 300\">\n";
    os << svg_path(xy, 150, 150, 120.0 / r,
                   "fill:none;stroke:#1f77b4;stroke-width:1.5");
    os << svg_path(zt, 450, 150, 120.0,
                   "fill:none;stroke:#2ca02c;stroke-width:1.5");
    double sr = 1e-12;
    for (const auto& q : st) sr = std::max({sr, std::abs(q[0]), std::abs(q[1])});
    for (const auto& q : st_anti)
      sr = std::max({sr, std::abs(q[0]), std::abs(q[1])});
    os << svg_path(st, 750, 150, 120.0 / sr,
                   "fill:none;stroke:#d62728;stroke-width:1.5");
    os << svg_path(st_anti, 750, 150, 120.0 / sr,
                   "fill:none;stroke:#d62728;stroke-width:1;stroke-dasharray:4 3");
    os << "</svg>\n";
  } else {
    throw ParseError("unknown format \"" + ctx.format + "\"");
  }
  const std::string written = ctx.out;
  ctx.out.clear();  // --out already holds the artifact; no JSON copy on top
  emit_report(ctx, "export", {{"written", written}, {"format", ctx.format}},
              timer.ms());
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  Ctx ctx;
  CLI::App app{"Skew-loop construction, certification, and quadric probes"};
  app.require_subcommand(1);
  app.add_option("--tol", ctx.tol, "certified-bound tolerance")
      ->envname("SKEWLOOP_TOL");
  app.add_option("--budget", ctx.budget, "branch-and-bound box budget")
      ->envname("SKEWLOOP_BUDGET");
  app.add_option("--seed", ctx.seed, "random seed for randomized runs")
      ->envname("SKEWLOOP_SEED");
  app.add_option("--workers", ctx.workers, "verification worker threads")
      ->envname("SKEWLOOP_WORKERS");
  app.add_option("--out", ctx.out, "report/output path")
      ->envname("SKEWLOOP_OUT");
  app.add_option("--format", ctx.format, "export format: csv | svg")
      ->envname("SKEWLOOP_FORMAT");

  std::string support_path, loop_path, input_path, margin_out, report_path,
      check;
  std::vector<std::string> surface_words{"sphere"};
  std::vector<double> plane;
  int samples = 512;

  CLI::App* oval = app.add_subcommand("oval", "planar oval analysis")->fallthrough();
  CLI::App* oval_analyze =
      oval->add_subcommand("analyze", "convexity, curvature, symmetry")->fallthrough();
  oval_analyze->add_option("--support", support_path, "support function JSON")
      ->required();

  CLI::App* skew = app.add_subcommand("skew", "skew-loop construction/verification")->fallthrough();
  CLI::App* skew_construct =
      skew->add_subcommand("construct", "build a certified skew loop on a cylinder")->fallthrough();
  skew_construct->add_option("--support", support_path)->required();
  std::string loop_out;
  skew_construct->add_option("--out", loop_out, "output loop JSON")->required();
  skew_construct->add_option("--margin-report", margin_out);
  CLI::App* skew_verify =
      skew->add_subcommand("verify", "certify or refute skewness")->fallthrough();
  skew_verify->add_option("loop", loop_path, "loop JSON")->required();
  skew_verify->add_option("--refute-tol", ctx.refute_tol);
  skew_verify->add_option("--budget", ctx.budget);
  skew_verify->add_option("--report", report_path);

  CLI::App* quadric = app.add_subcommand("quadric", "quadric-side checks")->fallthrough();
  CLI::App* demo = quadric->add_subcommand("demo", "loop invariants on a quadric")->fallthrough();
  demo->add_option("--surface", surface_words)->expected(1, 4);
  demo->add_option("--loop", loop_path)->required();
  demo->add_option("--check", check, "noperiod | bisection | witness | homotopy")
      ->required();
  CLI::App* section = quadric->add_subcommand("section", "planar cross-section")->fallthrough();
  section->add_option("--surface", surface_words)->expected(1, 4);
  section->add_option("--plane", plane, "nx ny nz d")->expected(4)->required();

  CLI::App* exp = app.add_subcommand("export", "CSV table or SVG plot")->fallthrough();
  exp->add_option("input", input_path, "curve or support JSON")->required();
  exp->add_option("--samples", samples);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*oval_analyze) cmd_oval_analyze(ctx, support_path);
    if (*skew_construct)
      cmd_skew_construct(ctx, support_path, loop_out, margin_out);
    if (*skew_verify) cmd_skew_verify(ctx, loop_path, report_path);
    if (*demo)
      cmd_quadric_demo(ctx, parse_surface(surface_words), loop_path, check);
    if (*section) cmd_quadric_section(ctx, parse_surface(surface_words), plane);
    if (*exp) cmd_export(ctx, input_path, samples);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}
