#include "focklab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "focklab/approx.hpp"
#include "focklab/frames.hpp"
#include "focklab/io.hpp"
#include "focklab/localization.hpp"
#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"
#include "focklab/translations.hpp"

namespace focklab {

namespace {

Weight build_weight(const Config& cfg) {
  const std::string kind = cfg.get_or("model", "weight", "classical");
  const double alpha = cfg.get_double_or("model", "alpha", 1.0);
  if (kind == "classical") return Weight::classical(alpha);
  if (kind == "fock-sobolev")
    return Weight::fock_sobolev(alpha, cfg.get_double_or("model", "m", 1.0),
                                cfg.get_double("model", "shift"));
  throw InvalidParameter("unknown weight kind '" + kind +
                         "' (expected classical or fock-sobolev)");
}

ModelPtr build_model(const Config& cfg) {
  cfg.require_known_keys("model", {"weight", "alpha", "m", "shift", "dim"});
  return make_model(build_weight(cfg), cfg.get_int_or("model", "dim", 60));
}

struct OperatorSpec {
  OpMatrix op;
  Symbol symbol;          // valid when has_symbol
  DiscreteMeasure mu;     // valid when has_measure
  bool has_symbol = false;
  bool has_measure = false;
};

DiscreteMeasure parse_measure(const std::string& text) {
  DiscreteMeasure mu;
  std::istringstream is(text);
  std::string atom;
  while (std::getline(is, atom, ';')) {
    std::istringstream as(atom);
    std::string field;
    std::vector<double> v;
    while (std::getline(as, field, ',')) v.push_back(std::stod(field));
    if (v.size() != 4)
      throw InvalidParameter("measure atoms need four fields: x,y,mass_re,mass_im");
    mu.atoms.push_back({Complex(v[0], v[1]), Complex(v[2], v[3])});
  }
  if (mu.atoms.empty()) throw InvalidParameter("measure has no atoms");
  return mu;
}

OperatorSpec build_operator(const ModelPtr& model, const std::string& text) {
  if (text.rfind("preset:", 0) == 0) {
    return {preset_operator(model, text.substr(7)), {}, {}, false, false};
  }
  if (text.rfind("symbol:", 0) == 0) {
    Symbol s = parse_symbol(text.substr(7));
    return {toeplitz_function(model, s), s, {}, true, false};
  }
  if (text.rfind("measure:", 0) == 0) {
    DiscreteMeasure mu = parse_measure(text.substr(8));
    return {toeplitz_measure(model, mu), {}, mu, false, true};
  }
  throw InvalidParameter(
      "operator spec must start with preset:, symbol: or measure:");
}

std::vector<Complex> carleson_centers(const FockModel& model) {
  const int k = static_cast<int>(std::floor(0.9 * model.trust_radius()));
  std::vector<Complex> out;
  for (int iy = -k; iy <= k; ++iy)
    for (int ix = -k; ix <= k; ++ix) out.push_back(Complex(ix, iy));
  return out;
}

nlohmann::json model_info(const FockModel& model) {
  nlohmann::json j;
  j["weight"] = model.weight().label();
  j["alpha"] = model.alpha();
  j["dim"] = model.dim();
  j["trust_radius"] = model.trust_radius();
  j["r_cut"] = model.r_cut();
  return j;
}

struct Builder {
  const Config& cfg;
  std::string kind;
  ModelPtr model;
  std::vector<std::pair<std::string, std::string>> artifacts;
  std::vector<std::string> notes;
  nlohmann::json tolerances;

  void add(const std::string& name, const std::string& contents) {
    artifacts.emplace_back(name, contents);
  }

  RunResult finish() {
    nlohmann::json manifest;
    manifest["kind"] = kind;
    manifest["config"] = cfg.canonical_string();
    manifest["model"] = model_info(*model);
    manifest["tolerances"] = tolerances;
    std::sort(notes.begin(), notes.end());
    manifest["notes"] = notes;
    nlohmann::json hashes;
    for (const auto& [name, contents] : artifacts) hashes[name] = io::fnv1a_hex(contents);
    manifest["artifacts"] = hashes;

    RunResult out;
    out.kind = kind;
    out.artifacts = std::move(artifacts);
    out.manifest_json = manifest.dump(2);
    out.manifest_hash = io::fnv1a_hex(out.manifest_json);
    return out;
  }
};

void add_phi_condition_note(Builder& b) {
  const double r_hi = std::max(8.0, b.model->trust_radius());
  std::vector<double> grid;
  for (double r = 0.05; r <= r_hi; r += 0.05) grid.push_back(r);
  const PhiConditionEstimate est = check_phi_condition(b.model->weight(), grid);
  if (!est.satisfied)
    b.notes.push_back("curvature check failed: weight lacks two-sided laplacian bounds");
}

void run_phi_check(Builder& b) {
  b.cfg.require_known_keys("phi-check", {"r_max", "samples"});
  const double r_max = b.cfg.get_double_or("phi-check", "r_max", 8.0);
  const int samples = b.cfg.get_int_or("phi-check", "samples", 160);
  if (!(r_max > 0.0) || samples < 8)
    throw InvalidParameter("phi-check needs r_max > 0 and at least 8 samples");

  std::vector<double> grid;
  std::ostringstream os;
  os << "r,phi,laplacian\n";
  for (int i = 1; i <= samples; ++i) {
    const double r = r_max * i / samples;
    grid.push_back(r);
    os << io::format_double(r) << ',' << io::format_double(b.model->weight().phi(r))
       << ',' << io::format_double(b.model->weight().laplacian_fd(r)) << '\n';
  }
  b.add("phi_profile.csv", os.str());
  b.add("moments.csv", io::moment_table_csv(b.model->moments()));

  const PhiConditionEstimate est = check_phi_condition(b.model->weight(), grid);
  nlohmann::json j;
  j["c_est"] = est.c_est;
  j["C_est"] = est.C_est;
  j["argmin_r"] = est.argmin_r;
  j["argmax_r"] = est.argmax_r;
  j["satisfied"] = est.satisfied;
  b.add("phi_condition.json", j.dump(2));
  b.tolerances["flag_rule"] = "fail when c_est <= 0 or c_est < 1e-3 C_est";
}

void run_berezin_scan(Builder& b) {
  b.cfg.require_known_keys("berezin-scan", {"operator", "half", "step"});
  const OperatorSpec spec =
      build_operator(b.model, b.cfg.get("berezin-scan", "operator"));
  const double half =
      b.cfg.get_double_or("berezin-scan", "half", b.model->trust_radius());
  const double step = b.cfg.get_double_or("berezin-scan", "step", 0.25);
  if (!(step > 0.0) || !(half > 0.0))
    throw InvalidParameter("berezin-scan needs positive half and step");

  std::vector<io::ScanRow> rows;
  int untrusted = 0;
  const int k = static_cast<int>(std::floor(half / step));
  for (int iy = -k; iy <= k; ++iy)
    for (int ix = -k; ix <= k; ++ix) {
      const Complex z(ix * step, iy * step);
      const bool ok = b.model->trusted(z);
      if (!ok) ++untrusted;
      rows.push_back({z, berezin(spec.op, z), ok});
    }
  b.add("berezin_scan.csv", io::scan_csv(rows));
  if (untrusted > 0)
    b.notes.push_back("berezin scan includes " + std::to_string(untrusted) +
                      " points beyond the trust radius");
}

void run_decay_scan(Builder& b) {
  b.cfg.require_known_keys(
      "decay-scan", {"operator", "radii", "seed", "base_points", "directions",
                     "cap_radius", "shell_radii"});
  const OperatorSpec spec = build_operator(b.model, b.cfg.get("decay-scan", "operator"));
  std::vector<double> radii = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  if (b.cfg.has("decay-scan", "radii")) radii = b.cfg.get_list("decay-scan", "radii");
  const unsigned seed =
      static_cast<unsigned>(b.cfg.get_int_or("decay-scan", "seed", 20240901));
  const DecayCurve curve =
      decay_profile(spec.op, radii, seed, b.cfg.get_int_or("decay-scan", "base_points", 8),
                    b.cfg.get_int_or("decay-scan", "directions", 32));
  b.add("decay_curve.csv", io::decay_curve_csv(curve));

  const double cap = b.cfg.get_double_or("decay-scan", "cap_radius", 1.0);
  std::vector<double> shells = radii;
  if (b.cfg.has("decay-scan", "shell_radii"))
    shells = b.cfg.get_list("decay-scan", "shell_radii");
  b.add("compactness_curve.csv",
        io::decay_curve_csv(compactness_indicator(spec.op, cap, shells)));
  for (std::size_t i = 0; i < curve.radii.size(); ++i)
    if (!curve.trusted[i]) {
      b.notes.push_back("decay curve has untrusted rows beyond the trust radius");
      break;
    }
}

void run_essnorm(Builder& b) {
  b.cfg.require_known_keys("essnorm", {"operator", "radii"});
  const std::string op_text = b.cfg.get("essnorm", "operator");
  const OperatorSpec spec = build_operator(b.model, op_text);
  std::vector<double> radii = {1.0, 2.0, 3.0, 4.0, 5.0};
  if (b.cfg.has("essnorm", "radii")) radii = b.cfg.get_list("essnorm", "radii");

  double scale = 1.0;
  if (spec.has_symbol)
    scale = carleson_norm(spec.symbol, carleson_centers(*b.model));
  else if (spec.has_measure)
    scale = carleson_norm(spec.mu, carleson_centers(*b.model));
  if (scale <= 0.0) {
    b.notes.push_back("carleson scale vanished; reporting unscaled curves");
    scale = 1.0;
  }

  const EssNormReport rep = toeplitz_essnorm_check(spec.op, scale, radii);
  std::ostringstream os;
  os << "radius,tail_norm,far_field,trusted\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    os << io::format_double(rep.radii[i]) << ',' << io::format_double(rep.tail_values[i])
       << ',' << io::format_double(rep.far_field_values[i]) << ','
       << (rep.trusted[i] ? 1 : 0) << '\n';
  b.add("essnorm_curve.csv", os.str());
  b.tolerances["carleson_scale"] = rep.scale;
}

std::vector<Complex> parse_points(const std::string& text) {
  std::vector<Complex> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    std::istringstream ps(item);
    std::string field;
    std::vector<double> v;
    while (std::getline(ps, field, ',')) v.push_back(std::stod(field));
    if (v.size() != 2) throw InvalidParameter("points need two fields: x,y");
    out.push_back(Complex(v[0], v[1]));
  }
  if (out.empty()) throw InvalidParameter("empty point list");
  return out;
}

void run_frame_check(Builder& b) {
  b.cfg.require_known_keys("frame-check",
                           {"window", "bases", "cell", "radius", "blocks"});
  const int window = b.cfg.get_int_or("frame-check", "window", 2);
  std::vector<Complex> bases = {Complex(0.0, 0.0), Complex(0.25, 0.25),
                                Complex(0.5, 0.0), Complex(-0.3, 0.4)};
  if (b.cfg.has("frame-check", "bases"))
    bases = parse_points(b.cfg.get("frame-check", "bases"));

  const FrameScan scan = frame_norm_scan(b.model, window, bases);
  std::ostringstream os;
  os << "base_re,base_im,norm\n";
  for (std::size_t i = 0; i < bases.size(); ++i)
    os << io::format_double(bases[i].real()) << ',' << io::format_double(bases[i].imag())
       << ',' << io::format_double(scan.norms[i]) << '\n';
  b.add("frame_scan.csv", os.str());
  b.tolerances["norm_spread"] = scan.spread();

  const double cell = b.cfg.get_double_or("frame-check", "cell", 0.2);
  const double radius =
      b.cfg.get_double_or("frame-check", "radius", 0.8 * b.model->trust_radius());
  const CMatrix q = identity_quadrature(b.model, cell, radius);
  std::vector<double> blocks = {5, 10};
  if (b.cfg.has("frame-check", "blocks")) blocks = b.cfg.get_list("frame-check", "blocks");
  std::ostringstream os2;
  os2 << "block,deviation\n";
  for (double blk : blocks)
    os2 << static_cast<int>(blk) << ','
        << io::format_double(leading_block_deviation(q, static_cast<int>(blk))) << '\n';
  b.add("identity_deviation.csv", os2.str());
}

void run_resolution_check(Builder& b) {
  b.cfg.require_known_keys("resolution-check",
                           {"operator", "separations", "window", "eta", "xi",
                            "base", "shift", "frame_window"});
  const OperatorSpec spec =
      build_operator(b.model, b.cfg.get_or("resolution-check", "operator", "preset:identity"));
  std::vector<double> seps = {1.5, 2.0, 2.5, 3.0};
  if (b.cfg.has("resolution-check", "separations"))
    seps = b.cfg.get_list("resolution-check", "separations");
  const int window = b.cfg.get_int_or("resolution-check", "window", 3);
  const Complex eta = b.cfg.get_complex_or("resolution-check", "eta", Complex(0.0, 0.0));
  const Complex xi = b.cfg.get_complex_or("resolution-check", "xi", Complex(0.5, 0.5));

  std::ostringstream os;
  os << "separation,offdiag_norm\n";
  for (double s : seps)
    os << io::format_double(s) << ','
       << io::format_double(offdiag_block_norm(spec.op, s, window, eta, xi)) << '\n';
  b.add("offdiag_curve.csv", os.str());

  const Complex base = b.cfg.get_complex_or("resolution-check", "base", Complex(0.0, 0.0));
  const Complex shift = b.cfg.get_complex_or("resolution-check", "shift", Complex(2.0, 0.0));
  const int fw = b.cfg.get_int_or("resolution-check", "frame_window", 2);
  std::ostringstream os2;
  os2 << "base_re,base_im,shift_re,shift_im,block_norm\n";
  os2 << io::format_double(base.real()) << ',' << io::format_double(base.imag()) << ','
      << io::format_double(shift.real()) << ',' << io::format_double(shift.imag()) << ','
      << io::format_double(block_lower_bound(spec.op, base, shift, fw)) << '\n';
  b.add("block_bound.csv", os2.str());
}

void run_heat(Builder& b) {
  b.cfg.require_known_keys("heat", {"symbol", "times", "half", "cell", "point_mass_eps",
                                    "point_mass_at"});
  const Symbol f = parse_symbol(b.cfg.get_or("heat", "symbol", "indicator(0,0,1)"));
  std::vector<double> times = {0.2, 0.1, 0.05, 0.02, 0.01};
  if (b.cfg.has("heat", "times")) times = b.cfg.get_list("heat", "times");
  const double half = b.cfg.get_double_or("heat", "half", 4.0);
  const double cell = b.cfg.get_double_or("heat", "cell", 0.05);

  const HeatCurve curve = heat_convergence_curve(b.model, f, times, half, cell);
  std::ostringstream os;
  os << "t,deviation\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    os << io::format_double(curve.times[i]) << ','
       << io::format_double(curve.deviations[i]) << '\n';
  b.add("heat_curve.csv", os.str());
  b.tolerances["kernel_cut"] = "9 sqrt(t)";

  if (b.cfg.has("heat", "point_mass_eps")) {
    const Complex w = b.cfg.get_complex_or("heat", "point_mass_at", Complex(0.0, 0.0));
    const PointMassCurve pm =
        point_mass_limit_curve(b.model, w, b.cfg.get_list("heat", "point_mass_eps"));
    std::ostringstream os2;
    os2 << "eps,deviation\n";
    for (std::size_t i = 0; i < pm.eps.size(); ++i)
      os2 << io::format_double(pm.eps[i]) << ',' << io::format_double(pm.deviations[i])
          << '\n';
    b.add("point_mass_curve.csv", os2.str());
  }
}

void run_sharp(Builder& b) {
  b.cfg.require_known_keys("sharp", {"a", "b"});
  const int a = b.cfg.get_int_or("sharp", "a", 2);
  const int bb = b.cfg.get_int_or("sharp", "b", 2);
  if (a < 0 || bb < 0) throw InvalidParameter("sharp powers must be nonnegative");
  const SharpCheck check = verify_sharp(b.model, SymbolPoly::monomial(a, 0),
                                        SymbolPoly::monomial(0, bb));
  b.add("sharp_poly.json", io::poly_json(check.sharp));
  std::ostringstream os;
  os << "a,b,residual\n"
     << a << ',' << bb << ',' << io::format_double(check.residual) << '\n';
  b.add("sharp_residual.csv", os.str());
  b.tolerances["interior_drop"] = 5;
}

void run_translation(Builder& b) {
  b.cfg.require_known_keys("translation",
                           {"shift", "theta_points", "operator", "shift_radius",
                            "shift_count", "probe_count", "probe_seed"});
  const Complex shift = b.cfg.get_complex_or("translation", "shift", Complex(1.0, 0.5));
  const TranslationOp u = weighted_translation(b.model, shift);

  std::ostringstream os;
  os << "column,deficit,trusted\n";
  for (std::size_t j = 0; j < u.column_deficit.size(); ++j)
    os << j << ',' << io::format_double(u.column_deficit[j]) << ','
       << (static_cast<int>(j) < u.trusted_cols ? 1 : 0) << '\n';
  b.add("translation_columns.csv", os.str());
  b.tolerances["column_deficit"] = TranslationOp::kDeficitTol;

  std::vector<Complex> ws = {Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(0.0, -0.5),
                             Complex(0.5, 0.5)};
  if (b.cfg.has("translation", "theta_points"))
    ws = parse_points(b.cfg.get("translation", "theta_points"));
  std::vector<io::ScanRow> rows;
  for (const Complex& w : ws) {
    const ThetaValue tv = theta_pairing(b.model, shift, w);
    rows.push_back({w, tv.value, b.model->trusted(w) && b.model->trusted(shift - w)});
  }
  b.add("theta_scan.csv", io::scan_csv(rows));

  if (b.cfg.has("translation", "operator")) {
    const OperatorSpec spec =
        build_operator(b.model, b.cfg.get("translation", "operator"));
    const auto probes = default_probes(
        b.model, b.cfg.get_int_or("translation", "probe_count", 8),
        static_cast<unsigned>(b.cfg.get_int_or("translation", "probe_seed", 73001)));
    const TranslationEssNorm ess = translation_essnorm(
        spec.op, b.cfg.get_double_or("translation", "shift_radius", 3.0),
        b.cfg.get_int_or("translation", "shift_count", 8), probes);
    std::ostringstream os2;
    os2 << "shift_re,shift_im,max_over_probes\n";
    for (std::size_t i = 0; i < ess.shifts.size(); ++i)
      os2 << io::format_double(ess.shifts[i].real()) << ','
          << io::format_double(ess.shifts[i].imag()) << ','
          << io::format_double(ess.per_shift[i]) << '\n';
    b.add("translation_essnorm.csv", os2.str());
    b.tolerances["essnorm_value"] = ess.value;
  }
}

}  // namespace

RunResult run_experiment(const Config& config) {
  config.require_known_keys("experiment", {"kind"});
  const std::string kind = config.get("experiment", "kind");

  const std::vector<std::string> known = {
      "phi-check", "berezin-scan", "decay-scan",       "essnorm",    "frame-check",
      "resolution-check", "heat",  "sharp", "translation"};
  if (std::find(known.begin(), known.end(), kind) == known.end())
    throw InvalidParameter("unknown experiment kind '" + kind + "'");
  for (const std::string& s : config.sections())
    if (s != "model" && s != "experiment" && s != kind)
      throw InvalidParameter("config section [" + s + "] does not belong to kind '" +
                             kind + "'");

  Builder b{config, kind, build_model(config), {}, {}, nlohmann::json::object()};
  add_phi_condition_note(b);

  if (kind == "phi-check") run_phi_check(b);
  else if (kind == "berezin-scan") run_berezin_scan(b);
  else if (kind == "decay-scan") run_decay_scan(b);
  else if (kind == "essnorm") run_essnorm(b);
  else if (kind == "frame-check") run_frame_check(b);
  else if (kind == "resolution-check") run_resolution_check(b);
  else if (kind == "heat") run_heat(b);
  else if (kind == "sharp") run_sharp(b);
  else run_translation(b);

  return b.finish();
}

void write_run(const RunResult& result, const std::string& out_dir) {
  for (const auto& [name, contents] : result.artifacts)
    io::write_file(out_dir + "/" + name, contents);
  io::write_file(out_dir + "/manifest.json", result.manifest_json);
}

}  // namespace focklab
