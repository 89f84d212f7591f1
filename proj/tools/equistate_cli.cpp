#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "equistate/error.hpp"
#include "equistate/io/json.hpp"
#include "equistate/measure/transport.hpp"
#include "equistate/sphere/enumeration.hpp"
#include "equistate/thermo/ruelle.hpp"
#include "equistate/verify/dynamics.hpp"
#include "equistate/verify/verify.hpp"

using namespace equistate;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kUsage = 1, kFail = 2, kPrecondition = 3, kPrecision = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return kUsage;
    case ErrorKind::PrecisionExhausted:
      return kPrecision;
    default:
      return kPrecondition;
  }
}

struct Common {
  std::string out;
  std::string format = "json";
};

struct Flags {
  std::string map, rule, potential = "const:0", anchor, point, poly, measure, mu, nu, witnesses, jac;
  std::string phi = "const:0", h = "const:0", mode = "certified", alpha = "1", tol, p_lower;
  std::optional<std::string> c0, R;
  int depth = -1, level = -1, steps = 1, points = 25, centers = 16;
  std::int64_t n = 8, l = 48, prec = 64, cost_prec = 40, max_leaves = 1 << 16;
  std::uint64_t seed = 1;
};

Rational rational_flag(const std::string& s, const char* name) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw UsageError(std::string("--") + name + ": not a rational: " + s);
  }
}

std::unique_ptr<Dynamics> make_dynamics(const Flags& f) {
  if (!f.map.empty() && !f.rule.empty()) throw UsageError("give either --map or --rule, not both");
  if (!f.map.empty()) return std::make_unique<RationalDynamics>(RationalMap::parse(f.map));
  if (!f.rule.empty()) return std::make_unique<TileDynamics>(parse_rule(f.rule));
  throw UsageError("one of --map or --rule is required");
}

RationalMap require_map(const Flags& f) {
  if (f.map.empty()) throw UsageError("--map is required");
  return RationalMap::parse(f.map);
}

/// Upper bound for 2^(1 - alpha), the factor turning a chordal Lipschitz
/// constant into an alpha-Holder one on a space of diameter 2.
Rational holder_factor(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw UsageError("--alpha must lie in (0, 1]");
  if (alpha == 1) return 1;
  double x = std::pow(2.0, 1.0 - alpha.get_d());
  return Rational(BigInt(static_cast<long>(std::ceil(x * (1 << 30)))) + 1, BigInt(1) << 30);
}

PressureOptions pressure_options(const Flags& f, const Potential& phi, json& params) {
  PressureOptions opt;
  opt.max_leaves = f.max_leaves;
  if (f.mode == "empirical") {
    opt.empirical = true;
  } else if (f.mode == "certified") {
    if (!f.c0) throw UsageError("certified mode needs --c0 (or use --mode empirical)");
    opt.c0 = rational_flag(*f.c0, "c0");
    Rational factor = holder_factor(rational_flag(f.alpha, "alpha"));
    opt.R = f.R ? rational_flag(*f.R, "R") : Rational(holder_bound(phi) * factor);
    params["R_source"] = f.R ? "flag" : "holder_bound";
  } else {
    throw UsageError("--mode must be certified or empirical");
  }
  return opt;
}

json ball_json(const BallReal& b) {
  json j;
  j["value"] = b.mid.to_double();
  j["radius"] = b.rad.to_double();
  j["mid"] = io::to_json(b.mid);
  j["rad"] = io::to_json(b.rad);
  return j;
}

json row(const std::string& patch, const std::string& test, const BallReal& v, const Rational& slack) {
  json j;
  j["patch"] = patch;
  j["test"] = test;
  j["value"] = v.mid.to_double();
  j["radius"] = v.rad.to_double();
  j["slack"] = io::to_json(slack);
  return j;
}

json report(const std::string& check, json inputs, json residuals, bool pass, json tolerances) {
  json j;
  j["check"] = check;
  j["inputs"] = std::move(inputs);
  j["residuals"] = std::move(residuals);
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["tolerances"] = std::move(tolerances);
  return j;
}

/// Result of one command: the primary artifact and whether a check failed.
struct Output {
  std::string text;
  bool failed = false;
};

Output as_json(const json& j, bool failed = false) { return {io::dump(j), failed}; }

Output cmd_pressure(const Flags& f, json& params) {
  RationalMap map = require_map(f);
  Potential phi = io::parse_potential(f.potential);
  PressureOptions opt = pressure_options(f, phi, params);
  json j = io::to_json(pressure(map, phi, f.n, opt));
  j["map"] = map.to_string();
  j["potential"] = io::to_json(phi);
  j["n"] = f.n;
  return as_json(j);
}

Output cmd_mme(const Flags& f, const Common& c, json& params) {
  FiniteMeasure mu;
  if (!f.rule.empty()) {
    if (f.level < 0) throw UsageError("--level is required with --rule");
    mu = mme_tile_measure(parse_rule(f.rule), f.level);
  } else {
    RationalMap map = require_map(f);
    if (f.depth < 0) throw UsageError("--depth is required with --map");
    Potential phi = io::parse_potential(f.potential);
    SpherePoint anchor;
    if (!f.anchor.empty()) {
      anchor = io::parse_sphere_point(f.anchor);
    } else {
      // first ideal point whose backward orbit is defined
      for (long k = 1;; ++k) {
        anchor = ideal_enumerate(BigInt(k));
        try {
          check_not_excluded(map, anchor, f.depth);
          break;
        } catch (const Error&) {
        }
      }
    }
    params["anchor_used"] = anchor.to_string();
    mu = backward_orbit_measure(map, phi, anchor, f.depth, f.l);
  }
  if (c.format == "csv") return {io::measure_csv(mu), false};
  return as_json(io::to_json(mu));
}

FiniteMeasure load_measure(const std::string& path) {
  if (path.empty()) throw UsageError("--measure is required");
  return io::measure_from_json(io::read_json_file(path));
}

JacobianSpec jacobian_spec(const Flags& f, const Dynamics& T, json& params) {
  if (f.jac.empty()) return JacobianSpec::constant(T.degree());
  if (f.jac.rfind("const:", 0) == 0) return JacobianSpec::constant(rational_flag(f.jac.substr(6), "J"));
  if (f.jac == "form") {
    RationalMap map = require_map(f);
    Potential phi = io::parse_potential(f.phi);
    PressureResult p = pressure(map, phi, f.n, pressure_options(f, phi, params));
    params["pressure"] = ball_json(p.value);
    return JacobianSpec::potential_form(p.value, phi, io::parse_potential(f.h));
  }
  throw UsageError("--J must be const:q or form");
}

MeasurePoint random_point(Space space, std::mt19937_64& rng) {
  if (space == Space::RiemannSphere) {
    std::uniform_int_distribution<long> d(-64, 64);
    return SpherePoint(Rational(d(rng), 16), Rational(d(rng), 16));
  }
  std::uniform_int_distribution<long> d(1, 95);
  long a = d(rng), b = std::uniform_int_distribution<long>(1, 96 - a)(rng);
  Face face = rng() % 2 ? Face::Front : Face::Back;
  return TilePoint(face, {Rational(a, 97), Rational(b, 97), Rational(97 - a - b, 97)});
}

Output cmd_verify_jacobian(const Flags& f, json& params) {
  auto T = make_dynamics(f);
  JacobianSpec J = jacobian_spec(f, *T, params);
  Rational tol = f.tol.empty() ? Rational(1, 1 << 20) : rational_flag(f.tol, "tol");
  std::mt19937_64 rng(f.seed);
  json rows = json::array();
  bool pass = true;
  int skipped = 0;
  for (int k = 0; k < f.points;) {
    MeasurePoint x = random_point(T->space(), rng);
    BallReal r;
    try {
      r = jacobian_unitarity(*T, J, x, {}, f.prec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExcludedPoint) throw;
      if (++skipped > 10 * f.points) throw;
      continue;
    }
    pass = pass && r.upper().to_rational() <= tol;
    rows.push_back(row(to_string(x), "unitarity", r, 0));
    ++k;
  }
  json inputs;
  inputs["dynamics"] = T->name();
  inputs["J"] = J.to_string();
  inputs["points"] = f.points;
  inputs["seed"] = f.seed;
  inputs["skipped_points"] = skipped;
  json tols;
  tols["tol"] = io::to_json(tol);
  tols["prec"] = f.prec;
  return as_json(report("jacobian", inputs, rows, pass, tols), !pass);
}

Output cmd_verify_membership(const Flags& f, json& params) {
  auto T = make_dynamics(f);
  FiniteMeasure mu = load_measure(f.measure);
  JacobianSpec J = jacobian_spec(f, *T, params);
  MembershipOptions opt;
  if (!f.tol.empty()) opt.tol = rational_flag(f.tol, "tol");
  opt.prec = f.prec;
  Rational mesh = atom_mesh(mu).upper().to_rational();
  auto tests = default_tests(*T, mesh, f.centers);
  PatchSystem patches;
  if (T->space() == Space::TriSphere) patches = tile_patches(static_cast<const TileDynamics&>(*T).map());
  MembershipReport rep = membership_residual(mu, *T, patches, J, tests, opt);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(row(rep.patches[r.patch].to_string(), tests[r.test].to_string(), r.value, r.slack));
  json inputs;
  inputs["dynamics"] = T->name();
  inputs["measure"] = f.measure;
  inputs["atoms"] = mu.size();
  inputs["J"] = J.to_string();
  inputs["tests"] = tests.size();
  json tols;
  tols["tol"] = io::to_json(rep.tol);
  tols["mesh"] = io::to_json(rep.mesh);
  tols["prec"] = f.prec;
  json out = report("membership", inputs, rows, rep.pass, tols);
  if (rep.witness) out["witness"] = *rep.witness;
  return as_json(out, !rep.pass);
}

/// Enclosure of P(T, psi): the pressure routine for maps, log deg + c for
/// constants under a subdivision rule.
BallReal pressure_of(const Dynamics& T, const Flags& f, const Potential& psi, json& params) {
  if (auto* rd = dynamic_cast<const RationalDynamics*>(&T))
    return pressure(rd->map(), psi, f.n, pressure_options(f, psi, params)).value;
  auto c = psi.constant_value();
  if (!c) throw Error(ErrorKind::InvalidArgument, "pressure under a subdivision rule is available for constants only");
  std::int64_t wp = f.n + 16;
  return ball_add(ball_log(BallReal(Dyadic(T.degree())), wp), BallReal::from_rational(*c, wp), wp);
}

Output cmd_verify_tangent(const Flags& f, json& params) {
  FiniteMeasure nu = load_measure(f.measure);
  Potential phi = io::parse_potential(f.phi);
  if (f.witnesses.empty()) throw UsageError("--witnesses is required");
  json wj = io::read_json_file(f.witnesses);
  const json& list = wj.is_object() && wj.contains("witnesses") ? wj.at("witnesses") : wj;
  if (!list.is_array()) throw Error(ErrorKind::Parse, "witness file must hold an array of potentials");
  std::unique_ptr<Dynamics> T;
  if (!f.map.empty() || !f.rule.empty()) T = make_dynamics(f);
  auto need_T = [&]() -> const Dynamics& {
    if (!T) throw UsageError("pressure bounds are missing; give them in the files or pass --map/--rule");
    return *T;
  };
  std::vector<TangentWitness> ws;
  for (const auto& w : list) {
    bool explicit_upper = w.is_object() && w.contains("upper");
    Potential psi = io::potential_from_json(w.is_object() && w.contains("psi") ? w.at("psi") : w);
    Rational up = explicit_upper ? io::rational_from_json(w.at("upper"))
                                 : pressure_of(need_T(), f, psi, params).upper().to_rational();
    ws.push_back({psi, DirectedReal(Direction::Upper, {up})});
  }
  Rational lower = f.p_lower.empty() ? pressure_of(need_T(), f, phi, params).lower().to_rational()
                                     : rational_flag(f.p_lower, "p-lower");
  Rational tol = f.tol.empty() ? Rational(1, 1024) : rational_flag(f.tol, "tol");
  TangentResult res = tangent_certificate(nu, phi, ws, DirectedReal(Direction::Lower, {lower}), tol, f.prec);
  json rows = json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) rows.push_back(row("-", ws[i].psi.to_string(), res.gaps[i], 0));
  json inputs;
  inputs["measure"] = f.measure;
  inputs["phi"] = phi.to_string();
  inputs["p_lower"] = io::to_json(lower);
  inputs["witnesses"] = ws.size();
  json tols;
  tols["tol"] = io::to_json(tol);
  tols["prec"] = f.prec;
  json out = report("tangent", inputs, rows, res.pass, tols);
  if (res.witness) out["witness"] = *res.witness;
  return as_json(out, !res.pass);
}

Output cmd_verify_rokhlin(const Flags& f, json& params) {
  auto T = make_dynamics(f);
  FiniteMeasure mu = load_measure(f.measure);
  Rational tol = f.tol.empty() ? Rational(1, 1024) : rational_flag(f.tol, "tol");
  json inputs;
  inputs["dynamics"] = T->name();
  inputs["measure"] = f.measure;
  BallReal v;
  if (f.jac == "atomic") {
    PatchSystem patches;
    if (T->space() == Space::TriSphere) patches = tile_patches(static_cast<const TileDynamics&>(*T).map());
    v = rokhlin_lower_bound(mu, atomic_jacobian(mu, *T, patches), f.prec);
    inputs["J"] = "atomic";
  } else {
    JacobianSpec J = jacobian_spec(f, *T, params);
    v = rokhlin_lower_bound(mu, *T, J, f.prec);
    inputs["J"] = J.to_string();
  }
  // J >= 1 almost everywhere forces a nonnegative integral of log J
  bool pass = v.lower().to_rational() >= -tol;
  json rows = json::array({row("-", "integral of log J", v, 0)});
  json tols;
  tols["tol"] = io::to_json(tol);
  tols["prec"] = f.prec;
  return as_json(report("rokhlin", inputs, rows, pass, tols), !pass);
}

Output cmd_verify_invariance(const Flags& f, json&) {
  auto T = make_dynamics(f);
  FiniteMeasure mu = load_measure(f.measure);
  Rational tol = f.tol.empty() ? Rational(1, 1024) : rational_flag(f.tol, "tol");
  BallReal w = invariance_residual(mu, *T, std::min<std::int64_t>(f.prec, 40));
  bool pass = w.upper().to_rational() <= tol;
  json inputs;
  inputs["dynamics"] = T->name();
  inputs["measure"] = f.measure;
  json rows = json::array({row("-", "W(mu, T_* mu)", w, 0)});
  json tols;
  tols["tol"] = io::to_json(tol);
  return as_json(report("invariance", inputs, rows, pass, tols), !pass);
}

json clusters_json(const std::vector<RootCluster>& cs) {
  json arr = json::array();
  for (const auto& c : cs) {
    json e;
    e["center"] = io::to_json(c.disc.center);
    e["radius"] = io::to_json(c.disc.rad);
    e["multiplicity"] = c.multiplicity;
    arr.push_back(e);
  }
  return arr;
}

Output cmd_roots(const Flags& f, json&) {
  if (f.poly.empty()) throw UsageError("--poly is required");
  RationalMap p = RationalMap::parse(f.poly);
  if (p.den().degree() != 0) throw UsageError("--poly must be a polynomial");
  json j;
  j["poly"] = p.to_string();
  j["l"] = f.l;
  j["roots"] = clusters_json(certified_roots(p.num(), f.l));
  return as_json(j);
}

Output cmd_preimages(const Flags& f, json&) {
  auto T = make_dynamics(f);
  if (f.point.empty()) throw UsageError("--point is required");
  MeasurePoint x = io::parse_point(f.point, T->space());
  json arr = json::array();
  for (const auto& y : T->preimages(x, f.l)) {
    json e;
    e["point"] = io::to_json(y.point);
    e["radius"] = io::to_json(y.rad);
    e["multiplicity"] = y.multiplicity;
    arr.push_back(e);
  }
  json j;
  j["dynamics"] = T->name();
  j["point"] = io::to_json(x);
  j["l"] = f.l;
  j["preimages"] = arr;
  return as_json(j);
}

Output cmd_wasserstein(const Flags& f, json&) {
  if (f.mu.empty() || f.nu.empty()) throw UsageError("--mu and --nu are required");
  FiniteMeasure mu = load_measure(f.mu), nu = load_measure(f.nu);
  WassersteinResult w = wasserstein_full(mu, nu, f.cost_prec);
  json j = ball_json(w.value);
  j["pinned_value"] = io::to_json(w.pinned_value);
  j["cost_shift"] = w.cost_shift;
  j["cost_error"] = io::to_json(w.cost_error);
  j["certified"] = w.certified;
  json plan = json::array();
  for (const auto& e : w.plan) plan.push_back(json::array({e.i, e.j, io::to_json(e.mass)}));
  j["plan"] = plan;
  return as_json(j);
}

Output cmd_tiles(const Flags& f, json&) {
  if (f.rule.empty() || f.level < 0) throw UsageError("--rule and --level are required");
  return as_json(io::to_json(tile_complex(parse_rule(f.rule), f.level)));
}

Output cmd_birkhoff(const Flags& f, json&) {
  RationalMap map = require_map(f);
  if (f.point.empty()) throw UsageError("--point is required");
  Potential phi = io::parse_potential(f.potential);
  SpherePoint x = io::parse_sphere_point(f.point);
  json j = ball_json(birkhoff_sum(map, phi, x, f.steps, f.n));
  j["map"] = map.to_string();
  j["potential"] = phi.to_string();
  j["point"] = io::to_json(x);
  j["steps"] = f.steps;
  return as_json(j);
}

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  const char* dir = std::getenv("EQUISTATE_OUT_DIR");
  if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p;
}

int run(std::vector<std::string> args);

int replay(const std::string& manifest) {
  json m = io::read_json_file(manifest);
  if (!m.contains("argv") || !m.at("argv").is_array()) throw Error(ErrorKind::Parse, "manifest lacks argv");
  return run(m.at("argv").get<std::vector<std::string>>());
}

int run(std::vector<std::string> args) {
  CLI::App app{"Certified thermodynamic formalism for rational maps and subdivision rules", "equistate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Flags f;
  Common c;
  std::string manifest;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "output file (stdout when absent)");
    s->add_option("--format", c.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  };
  auto target = [&](CLI::App* s) {
    s->add_option("--map", f.map, "rational map, e.g. z^2-2");
    s->add_option("--rule", f.rule, "subdivision rule g1 or g2");
  };
  auto pressure_flags = [&](CLI::App* s) {
    s->add_option("--n", f.n, "precision: radius <= 2^-n")->capture_default_str();
    s->add_option("--c0", f.c0, "constant of the truncation bound");
    s->add_option("--R", f.R, "Holder constant; defaults to holder_bound");
    s->add_option("--alpha", f.alpha, "Holder exponent in (0, 1]")->capture_default_str();
    s->add_option("--mode", f.mode, "certified or empirical")->capture_default_str();
    s->add_option("--max-leaves", f.max_leaves, "largest preimage tree")->capture_default_str();
  };

  auto* pr = app.add_subcommand("pressure", "topological pressure P(f, phi)");
  target(pr);
  pr->add_option("--potential", f.potential, "potential")->capture_default_str();
  pressure_flags(pr);
  common(pr);

  auto* mme = app.add_subcommand("mme", "backward-orbit or tile measure");
  target(mme);
  mme->add_option("--potential", f.potential, "potential weighting the orbit")->capture_default_str();
  mme->add_option("--depth", f.depth, "backward-orbit depth");
  mme->add_option("--level", f.level, "tile level");
  mme->add_option("--anchor", f.anchor, "root of the backward orbit");
  mme->add_option("--l", f.l, "preimage radius 2^-l")->capture_default_str();
  common(mme);

  auto* ver = app.add_subcommand("verify", "equilibrium-state checks");
  ver->require_subcommand(1);
  std::vector<CLI::App*> checks;
  for (const char* name : {"jacobian", "membership", "tangent", "rokhlin", "invariance"}) {
    auto* s = ver->add_subcommand(name);
    target(s);
    s->add_option("--measure", f.measure, "measure JSON");
    s->add_option("--J", f.jac, "Jacobian: const:q (default deg T), form (exp(P - phi + h o T - h)) or atomic");
    s->add_option("--phi", f.phi, "potential")->capture_default_str();
    s->add_option("--coboundary", f.h, "coboundary term of the Jacobian form")->capture_default_str();
    s->add_option("--witnesses", f.witnesses, "witness potentials JSON");
    s->add_option("--p-lower", f.p_lower, "lower bound for P(T, phi)");
    s->add_option("--points", f.points, "random test points")->capture_default_str();
    s->add_option("--seed", f.seed, "seed for the test points")->capture_default_str();
    s->add_option("--centers", f.centers, "test-function centers")->capture_default_str();
    s->add_option("--tol", f.tol, "tolerance");
    s->add_option("--prec", f.prec, "working precision")->capture_default_str();
    pressure_flags(s);
    common(s);
    checks.push_back(s);
  }

  auto* roots = app.add_subcommand("roots", "certified polynomial roots");
  roots->add_option("--poly", f.poly, "polynomial in z");
  roots->add_option("--l", f.l, "cluster radius 2^-l")->capture_default_str();
  common(roots);

  auto* pre = app.add_subcommand("preimages", "certified preimages of a point");
  target(pre);
  pre->add_option("--point", f.point, "point: p+q*i, inf, or F(a,b,c)");
  pre->add_option("--l", f.l, "radius 2^-l")->capture_default_str();
  common(pre);

  auto* ws = app.add_subcommand("wasserstein", "transport distance of two measures");
  ws->add_option("--mu", f.mu, "measure JSON");
  ws->add_option("--nu", f.nu, "measure JSON");
  ws->add_option("--prec", f.cost_prec, "cost precision bits")->capture_default_str();
  common(ws);

  auto* tiles = app.add_subcommand("tiles", "n-tiles of a subdivision rule");
  tiles->add_option("--rule", f.rule, "g1 or g2");
  tiles->add_option("--level", f.level, "level n");
  common(tiles);

  auto* bk = app.add_subcommand("birkhoff", "Birkhoff sum S_n phi(x)");
  bk->add_option("--map", f.map, "rational map");
  bk->add_option("--potential", f.potential, "potential")->capture_default_str();
  bk->add_option("--point", f.point, "start point");
  bk->add_option("--steps", f.steps, "number of terms")->capture_default_str();
  bk->add_option("--n", f.n, "precision bits")->capture_default_str();
  common(bk);

  auto* rp = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  rp->add_option("manifest", manifest, "manifest JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  json params;
  CLI::App* leaf = nullptr;
  for (auto* s : app.get_subcommands()) leaf = s;
  if (leaf == ver) leaf = ver->get_subcommands().front();
  if (leaf == rp) return replay(manifest);

  if (c.format == "csv" && leaf != mme) {
    std::cerr << "error: --format csv is only available for mme\n";
    return kUsage;
  }

  auto start = std::chrono::steady_clock::now();
  Output out;
  try {
    if (leaf == pr) out = cmd_pressure(f, params);
    else if (leaf == mme) out = cmd_mme(f, c, params);
    else if (leaf == checks[0]) out = cmd_verify_jacobian(f, params);
    else if (leaf == checks[1]) out = cmd_verify_membership(f, params);
    else if (leaf == checks[2]) out = cmd_verify_tangent(f, params);
    else if (leaf == checks[3]) out = cmd_verify_rokhlin(f, params);
    else if (leaf == checks[4]) out = cmd_verify_invariance(f, params);
    else if (leaf == roots) out = cmd_roots(f, params);
    else if (leaf == pre) out = cmd_preimages(f, params);
    else if (leaf == ws) out = cmd_wasserstein(f, params);
    else if (leaf == tiles) out = cmd_tiles(f, params);
    else out = cmd_birkhoff(f, params);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (c.out.empty()) {
    std::cout << out.text;
  } else {
    std::filesystem::path path = resolve_out(c.out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    io::write_text_file(path.string(), out.text);
    std::string name = leaf->get_name();
    if (leaf->get_parent() == ver) name = "verify " + name;
    json m;
    m["command"] = name;
    m["argv"] = args;
    m["parameters"] = leaf->config_to_str(true, false);
    m["derived"] = params;
    m["version"] = kVersion;
    m["seeds"] = json::array();
    if (leaf->get_parent() == ver) m["seeds"].push_back(f.seed);
    m["output"] = path.filename().string();
    m["timing_seconds"] = seconds;
    io::write_text_file(path.string() + ".manifest.json", io::dump(m));
  }
  return out.failed ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}
