#include "cuspgeom_cli/commands.hpp"

#include <gmp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "cuspgeom/cusplie/normalize.hpp"
#include "cuspgeom/cuspvol/cusp.hpp"
#include "cuspgeom/domains/export.hpp"
#include "cuspgeom/fig8/holonomy.hpp"
#include "cuspgeom/hilbert/volume.hpp"
#include "cuspgeom/io/plot.hpp"

#ifndef CUSPGEOM_VERSION
#define CUSPGEOM_VERSION "unknown"
#endif

namespace cuspgeom::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
  std::string out_dir;
  std::vector<std::string> args;
  std::vector<std::string> outputs;
  json seed = nullptr;
  json parameters = json::object();

  fs::path path(const std::string& name) const { return fs::path(out_dir) / name; }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    std::ofstream f(path(name), std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + path(name).string());
    f << content;
    outputs.push_back(name);
  }

  void write_manifest(const std::string& command) {
    json m;
    m["tool"] = "cuspgeom";
    m["version"] = CUSPGEOM_VERSION;
    m["command"] = command;
    m["arguments"] = args;
    m["parameters"] = parameters;
    m["seed"] = seed;
    m["outputs"] = outputs;
    m["libraries"] = {{"gmp", gmp_version}, {"cli11", CLI11_VERSION}, {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    fs::create_directories(out_dir);
    std::ofstream f(path("manifest.json"), std::ios::binary);
    f << m.dump(2) << '\n';
  }
};

std::string csv(double x) { return io::csv_field(x); }

int fig8_verify(Context& ctx, const std::string& t_text, std::ostream& out) {
  const Rational t = parse_rational(t_text);
  ctx.parameters["t"] = cuspgeom::to_string(t);
  const json rep = fig8::verify_report(t);
  const std::string text = rep.dump(2) + "\n";
  ctx.write("fig8_verify.json", text);
  out << text;
  bool ok = rep["relation_exact"].get<bool>() && rep["meridian_unipotent"].get<bool>() && rep["longitude_commutes"].get<bool>();
  if (rep.contains("normalized_params") && !rep["normalized_params"]["degenerate"].get<bool>())
    ok = ok && rep["normalized_params"]["sign"].get<int>() == 1;
  return ok ? kOk : kVerificationFailure;
}

int fig8_sweep(Context& ctx, const std::string& lo_text, const std::string& hi_text, int steps, std::ostream& out) {
  const Rational lo = parse_rational(lo_text), hi = parse_rational(hi_text);
  if (steps < 2 || !(lo < hi) || sgn(lo) <= 0) throw Error(ErrorKind::InvalidParameter, "sweep needs 0 < t-min < t-max and steps >= 2");
  ctx.parameters = {{"t_min", cuspgeom::to_string(lo)}, {"t_max", cuspgeom::to_string(hi)}, {"steps", steps}};
  std::ostringstream s;
  s << "t,s,triple_eigenvalue,single_eigenvalue,relation_exact,obstruction,meridian_param,limit_error,cusp_shape_re,cusp_shape_im\n";
  const fig8::PeripheralPair lim = fig8::limit_pair();
  bool ok = true;
  for (int i = 0; i < steps; ++i) {
    const Rational t = lo + (hi - lo) * i / (steps - 1);
    const double td = t.get_d(), sd = fig8::s_of_t(td);
    double triple = 0.0, single = 0.0;
    for (const auto& e : fig8::longitude_spectrum(t)) {
      if (e.multiplicity >= 3) triple = e.value.get_d();
      if (e.multiplicity == 1) single = e.value.get_d();
      if (e.multiplicity == 4) single = triple;
    }
    const bool rel = fig8::relation_residual(t).exact_zero();
    ok = ok && rel;
    const double mu = fig8::meridian_parameter(sd);
    const double err = sd == 0.0 ? 0.0 : (fig8::normalized_peripheral(sd).meridian - lim.meridian).max_abs();
    const auto shape = cusplie::cusp_shape({0.0, mu}, {1.0, 0.0});
    s << cuspgeom::to_string(t) << ',' << csv(sd) << ',' << csv(triple) << ',' << csv(single) << ',' << (rel ? "true" : "false") << ','
      << (fig8::strict_convexity_obstruction_exact(t) ? "true" : "false") << ',' << csv(mu) << ',' << csv(err) << ','
      << csv(shape.raw.real()) << ',' << csv(shape.raw.imag()) << '\n';
  }
  ctx.write("fig8_sweep.csv", s.str());
  out << s.str();
  return ok ? kOk : kVerificationFailure;
}

hilbert::QuadratureSpec quadrature(const std::string& method, std::int64_t samples, std::uint64_t seed) {
  hilbert::QuadratureSpec q;
  if (method == "grid") q.method = hilbert::VolumeMethod::ProductGrid;
  else if (method == "mc") q.method = hilbert::VolumeMethod::MonteCarlo;
  else throw Error(ErrorKind::InvalidParameter, "method must be 'grid' or 'mc'");
  q.mc_samples = samples;
  q.seed = seed;
  q.validate();
  return q;
}

int cusp_volume(Context& ctx, double s, double k, const std::vector<double>& cutoffs, const hilbert::QuadratureSpec& q, std::ostream& out) {
  ctx.parameters = {{"s", s}, {"k", k}, {"cutoffs", cutoffs}, {"method", hilbert::to_string(q.method)}, {"mc_samples", q.mc_samples}};
  ctx.seed = q.seed;
  const auto fd = cuspvol::CuspFundamentalDomain::fig8(s, k);
  const auto table = cuspvol::cusp_volume_table(fd, cutoffs, q);
  std::ostringstream c, g;
  cuspvol::write_volume_table_csv(c, table);
  cuspvol::write_volume_table_svg(g, table);
  ctx.write("volume_table.csv", c.str());
  ctx.write("volume_table.svg", g.str());
  out << c.str();
  return table.monotone() ? kOk : kVerificationFailure;
}

int cusp_displacement(Context& ctx, double s, const std::vector<double>& levels, double kappa, std::ostream& out) {
  ctx.parameters = {{"s", s}, {"levels", levels}, {"kappa_prime", kappa}};
  const auto fd = cuspvol::CuspFundamentalDomain::fig8(s, 1.0);
  const auto p = cuspvol::displacement_profile(s, fd.b_t, levels, kappa);
  std::ostringstream c, g;
  cuspvol::write_displacement_csv(c, p);
  cuspvol::write_displacement_svg(g, p);
  ctx.write("displacement.csv", c.str());
  ctx.write("displacement.svg", g.str());
  out << c.str();
  return p.strictly_decreasing() ? kOk : kVerificationFailure;
}

int lattice_normalize(Context& ctx, const std::string& in, std::ostream& out) {
  ctx.parameters = {{"in", in}};
  std::ifstream f(in);
  if (!f) throw Error(ErrorKind::Parse, "cannot read " + in);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  const auto lat = cusplie::lattice_from_json(j);
  const auto n = cusplie::normalize_lattice(lat);
  const std::string text = n.to_json().dump(2) + "\n";
  ctx.write("normalization.json", text);
  out << text;
  return n.residual <= 1e-9 ? kOk : kVerificationFailure;
}

int domain_export(Context& ctx, const std::string& family, double t, double kappa, double x3, const std::string& obj, const std::string& svg,
                  std::ostream& out) {
  ctx.parameters = {{"family", family}, {"t", t}, {"kappa", kappa}, {"x3", x3}};
  domains::ConvexDomain dom = domains::ConvexDomain::d0();
  domains::BaseGrid grid{{-2.0, 2.0}, {-2.0, 2.0}};
  if (family == "D0") {
  } else if (family == "DPrime") {
    dom = domains::ConvexDomain::d_prime();
    grid.x2_range = {0.05, 4.0};
  } else if (family == "Dt") {
    dom = domains::ConvexDomain::d_t(t);
    grid.x2_range = t > 0 ? std::array<double, 2>{std::max(-2.0, -0.95 / t), 4.0} : std::array<double, 2>{-4.0, std::min(2.0, -0.95 / t)};
  } else {
    throw Error(ErrorKind::InvalidParameter, "family must be D0, DPrime or Dt");
  }
  if (obj.empty() && svg.empty()) throw Error(ErrorKind::InvalidParameter, "domain export needs --obj and/or --svg");
  if (!obj.empty()) {
    std::ostringstream o;
    domains::write_graph_obj(o, dom, kappa, grid);
    ctx.write(obj, o.str());
  }
  if (!svg.empty()) {
    std::ostringstream o;
    domains::write_slice_svg(o, dom, kappa, x3, grid.x2_range);
    ctx.write(svg, o.str());
  }
  for (const auto& o : ctx.outputs) out << (ctx.path(o)).string() << '\n';
  return kOk;
}

}  // namespace

int selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string why;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "[ok]   " : "[FAIL] ") << name << why << '\n';
    failures += !ok;
  };
  using cusplie::LieAlgElem;
  using projlin::Mat4;

  check("relation M W = W N is exact for t in {1/3, 1/2, 7/5}", [] {
    for (auto t : {Rational(1, 3), Rational(1, 2), Rational(7, 5)})
      if (!fig8::relation_residual(t).exact_zero()) return false;
    return true;
  });
  check("longitude spectrum {1/2 x3, 8} at t = 1/4", [] {
    auto sp = fig8::longitude_spectrum(Rational(1, 4));
    return sp.size() == 2 && sp[0].value == Rational(1, 2) && sp[0].multiplicity == 3 && sp[1].value == 8;
  });
  check("longitude projectively unipotent only at t = 1/2", [] {
    return fig8::longitude_projectively_unipotent(Rational(1, 2)) && !fig8::longitude_projectively_unipotent(Rational(2, 5));
  });
  check("group_exp matches mat_exp in every family", [] {
    for (auto e : {LieAlgElem<double>::l0(0.3, -1.2), LieAlgElem<double>::lt(0.7, 1.1, -0.4), LieAlgElem<double>::lprime(0.8, 0.5),
                   LieAlgElem<double>::lprime_minus(-0.6, 1.3)})
      if ((cusplie::group_exp_matrix(e) - projlin::mat_exp(cusplie::alg_matrix(e))).max_abs() > 1e-12) return false;
    return true;
  });
  check("exact normalization recovers the sign of a conjugated pair", [] {
    const Mat4<Rational> g{{1, 2, 0, 1}, {0, 1, 3, 0}, {1, 0, 1, 1}, {2, 1, 0, 3}};
    const Mat4<Rational> gi = projlin::inverse(g);
    for (int sign : {1, -1}) {
      auto mk = [&](int a, int b) {
        return sign > 0 ? LieAlgElem<Rational>::lprime(a, b) : LieAlgElem<Rational>::lprime_minus(a, b);
      };
      auto r = cusplie::normalize_algebra_pair<Rational>(g * cusplie::alg_matrix(mk(1, 0)) * gi, g * cusplie::alg_matrix(mk(0, 1)) * gi);
      if (r.sign != sign || r.residual != 0.0) return false;
    }
    return true;
  });
  check("figure-eight pipeline at t = 1/4 lands in L' with f = log 16", [] {
    auto c = fig8::normalization_consistency(Rational(1, 4));
    return c.sign == 1 && c.f_error < 1e-10 && c.meridian_class == cusplie::ElementClass::PureTranslation;
  });
  check("limit cusp shape is -2 sqrt(3) i", [] {
    auto lim = fig8::limit_pair();
    auto c = cusplie::cusp_shape(lim.meridian, lim.longitude);
    return std::abs(c.raw - std::complex<double>(0.0, -2.0 * std::sqrt(3.0))) < 1e-12;
  });
  check("unit-ball distance is 2 artanh(r)", [] {
    const auto ball = domains::ConvexDomain::euclidean_ball();
    for (double r = 0.1; r < 0.95; r += 0.1)
      if (std::fabs(hilbert::hilbert_distance(ball, {0, 0, 0}, {r, 0, 0}) - 2.0 * std::atanh(r)) > 1e-9) return false;
    return true;
  });
  check("Busemann density at the ball centre is 1", [] {
    return std::fabs(hilbert::busemann_density(domains::ConvexDomain::euclidean_ball(), {0, 0, 0}) - 1.0) < 1e-3;
  });
  check("closed-form norms match the Finsler engine at (2,1,0)", [] {
    const domains::Point3 x{2, 1, 0};
    const auto n = cuspvol::direction_norms(x);
    const auto d = domains::ConvexDomain::d_prime();
    return std::fabs(n.e1 - hilbert::finsler_norm(d, x, {1, 0, 0})) < 1e-9 && std::fabs(n.e2 - hilbert::finsler_norm(d, x, {0, 1, 0})) < 1e-9 &&
           std::fabs(n.e3 - hilbert::finsler_norm(d, x, {0, 0, 1})) < 1e-9;
  });
  check("linear convergence paths give the L0 limit generators", [] {
    auto r = cusplie::convergence_conjugate([](double t) { return std::array<double, 2>{t, 0}; },
                                            [](double t) { return std::array<double, 2>{0, t}; }, 0.25);
    return r.limit_params[0] == std::array<double, 2>{1, 0} && r.limit_params[1] == std::array<double, 2>{0, 1} && r.structure_residual < 1e-12;
  });
  check("lower bound holds at x1 = 100", [] { return cuspvol::lower_bound_check({100, 1, 0}, 1.0).holds(); });
  out << (failures ? "selftest: " + std::to_string(failures) + " failure(s)" : std::string("selftest: all checks passed")) << '\n';
  return failures;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cusp geometry verification tools", "cuspgeom"};
  app.require_subcommand(1);
  std::string out_dir;
  if (const char* env = std::getenv(kOutputDirEnv)) out_dir = env;
  if (out_dir.empty()) out_dir = ".";
  app.add_option("--out", out_dir, "output directory (default: $" + std::string(kOutputDirEnv) + " or .)");
  app.set_version_flag("--version", CUSPGEOM_VERSION);

  auto* fig8_cmd = app.add_subcommand("fig8", "figure-eight holonomy family");
  fig8_cmd->require_subcommand(1);
  std::string t_text;
  auto* verify = fig8_cmd->add_subcommand("verify", "relation, spectra, obstruction and normalization report");
  verify->add_option("--t", t_text, "rational parameter p/q")->required();
  std::string t_min = "1/5", t_max = "4/5";
  int steps = 13;
  auto* sweep = fig8_cmd->add_subcommand("sweep", "CSV of spectra and cusp-shape convergence over t");
  sweep->add_option("--t-min", t_min);
  sweep->add_option("--t-max", t_max);
  sweep->add_option("--steps", steps);

  auto* cusp_cmd = app.add_subcommand("cusp", "cusp volume and displacement");
  cusp_cmd->require_subcommand(1);
  double s = std::log(16.0), k = 1.0, kappa = 0.5;
  std::vector<double> cutoffs{10, 20, 40, 80}, levels{1, 2, 4, 8, 16};
  std::string method = "grid";
  std::int64_t samples = 200000;
  std::uint64_t seed = hilbert::QuadratureSpec{}.seed;
  auto* volume = cusp_cmd->add_subcommand("volume", "truncated Busemann volume table");
  volume->add_option("--s", s);
  volume->add_option("--k", k);
  volume->add_option("--cutoffs", cutoffs)->delimiter(',');
  volume->add_option("--method", method, "grid or mc");
  volume->add_option("--samples", samples);
  volume->add_option("--seed", seed);
  auto* disp = cusp_cmd->add_subcommand("displacement", "meridian displacement by horosphere level");
  disp->add_option("--s", s);
  disp->add_option("--levels", levels)->delimiter(',');
  disp->add_option("--kappa", kappa, "level of the ambient horoball");

  auto* lattice_cmd = app.add_subcommand("lattice", "cusp lattices");
  lattice_cmd->require_subcommand(1);
  std::string in_path;
  auto* normalize = lattice_cmd->add_subcommand("normalize", "conjugate a commuting pair into L' or L'-");
  normalize->add_option("--in", in_path, "JSON {\"A\": matrix, \"B\": matrix}")->required();

  auto* domain_cmd = app.add_subcommand("domain", "model domains");
  domain_cmd->require_subcommand(1);
  std::string family = "DPrime", obj, svg;
  double t_dom = 1.0, level = 0.0, x3 = 0.0;
  auto* exp = domain_cmd->add_subcommand("export", "boundary or horosphere mesh and slice");
  exp->add_option("--family", family, "D0, DPrime or Dt");
  exp->add_option("--t", t_dom);
  exp->add_option("--level", level, "horosphere level above the boundary");
  exp->add_option("--x3", x3, "slice plane for the SVG");
  exp->add_option("--obj", obj);
  exp->add_option("--svg", svg);

  auto* self = app.add_subcommand("selftest", "quick invariant suite");

  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << CUSPGEOM_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  Context ctx;
  ctx.out_dir = out_dir;
  ctx.args.assign(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::string command;
  try {
    int code = kOk;
    if (verify->parsed()) {
      command = "fig8 verify";
      code = fig8_verify(ctx, t_text, out);
    } else if (sweep->parsed()) {
      command = "fig8 sweep";
      code = fig8_sweep(ctx, t_min, t_max, steps, out);
    } else if (volume->parsed()) {
      command = "cusp volume";
      code = cusp_volume(ctx, s, k, cutoffs, quadrature(method, samples, seed), out);
    } else if (disp->parsed()) {
      command = "cusp displacement";
      code = cusp_displacement(ctx, s, levels, kappa, out);
    } else if (normalize->parsed()) {
      command = "lattice normalize";
      code = lattice_normalize(ctx, in_path, out);
    } else if (exp->parsed()) {
      command = "domain export";
      code = domain_export(ctx, family, t_dom, level, x3, obj, svg, out);
    } else if (self->parsed()) {
      command = "selftest";
      std::ostringstream log;
      code = selftest(log) == 0 ? kOk : kVerificationFailure;
      ctx.write("selftest.txt", log.str());
      out << log.str();
    }
    ctx.write_manifest(command);
    return code;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated (" << to_string(e.reason()) << "): " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace cuspgeom::cli
