#include "focklab/checks.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "focklab/approx.hpp"
#include "focklab/config.hpp"
#include "focklab/frames.hpp"
#include "focklab/io.hpp"
#include "focklab/localization.hpp"
#include "focklab/operators.hpp"
#include "focklab/runner.hpp"
#include "focklab/symbols.hpp"
#include "focklab/translations.hpp"
#include "focklab/weight.hpp"

namespace focklab {

namespace {

std::string fmt(double v) { return io::format_double(v); }

struct Battery {
  bool verbose = false;
  std::vector<CheckResult> results;

  void record(int id, const std::string& title, bool pass, const std::string& detail) {
    results.push_back({id, title, pass, detail});
    if (verbose) {
      std::printf("check %2d %s  %-24s %s\n", id, pass ? "PASS" : "FAIL", title.c_str(),
                  detail.c_str());
      std::fflush(stdout);
    }
  }
};

// 1. Quadrature moments against the factorial closed form (Gaussian weight)
// and the shifted-factorial closed form (one logarithmic perturbation).
void check_moments(Battery& b) {
  double worst_classical = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const MomentTable t(Weight::classical(alpha), 30);
    for (int k = 0; k <= 30; ++k) worst_classical = std::max(worst_classical, t.rel_err(k));
  }

  // phi(r) = r^2/2 - ln(3 + r^2)/2 has moments pi k! (k + 4) at alpha = 1.
  const MomentTable s(Weight::fock_sobolev(1.0, 1.0, 3.0), 30);
  double worst_shifted = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double log_exact = std::log(kPi) + std::lgamma(k + 1.0) + std::log(k + 4.0);
    worst_shifted = std::max(worst_shifted, std::abs(std::expm1(s.log_moment(k) - log_exact)));
  }

  const bool pass = worst_classical <= 1e-10 && worst_shifted <= 1e-8;
  b.record(1, "moment-oracles", pass,
           "classical rel err " + fmt(worst_classical) + " (tol 1e-10), log-shift rel err " +
               fmt(worst_shifted) + " (tol 1e-8)");
}

// 2. Weighted kernel magnitude equals the Gaussian law of the separation.
void check_kernel_identity(Battery& b, const ModelPtr& m80) {
  std::vector<Complex> pts = {Complex(0.0, 0.0)};
  for (int ir = 1; ir <= 3; ++ir)
    for (int ia = 0; ia < 8; ++ia)
      pts.push_back(std::polar(static_cast<double>(ir), 2.0 * kPi * ia / 8.0));

  const double alpha = m80->alpha();
  double worst = 0.0;
  for (const Complex& z : pts)
    for (const Complex& w : pts) {
      const double lhs = std::exp(-m80->weight().phi_at(z) - m80->weight().phi_at(w)) *
                         std::abs(m80->kernel(z, w));
      const double rhs = (alpha / kPi) * std::exp(-0.5 * alpha * std::norm(z - w));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  b.record(2, "kernel-identity", worst <= 1e-6,
           "max abs gap " + fmt(worst) + " over 625 pairs, |z|,|w| <= 3 (tol 1e-6)");
}

// 3. Quadrature inner product against the truncated kernel reproduces values.
void check_reproducing(Battery& b, const ModelPtr& m80) {
  std::mt19937 rng(431001u);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = m80->dim();
  const PolarGrid& grid = m80->grid();

  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CVector coeffs = CVector::Zero(n);
    for (int k = 0; k < n / 2; ++k) coeffs(k) = Complex(nd(rng), nd(rng));
    coeffs.normalize();
    const Complex w = std::polar(3.0 * std::sqrt(unif(rng)), 2.0 * kPi * unif(rng));

    const CVector bw = m80->basis_at(w);
    Complex integral = 0.0;
    const std::size_t chunk = 4096;
    std::vector<Complex> part;
    for (std::size_t lo = 0; lo < grid.size(); lo += chunk) {
      const std::size_t hi = std::min(grid.size(), lo + chunk);
      part.clear();
      for (std::size_t i = lo; i < hi; ++i) part.push_back(m80->grid_node(i));
      const CMatrix blk = m80->basis_block(part);
      const CVector fv = blk * coeffs;
      const CVector kv = blk * bw.conjugate();  // K_N(u_i, w)
      for (std::size_t i = lo; i < hi; ++i) {
        const Complex u = part[i - lo];
        integral += m80->grid_area_weight(i) *
                    std::exp(-2.0 * m80->weight().phi_at(u)) * fv(i - lo) *
                    std::conj(kv(i - lo));
      }
    }
    worst = std::max(worst, std::abs(integral - m80->eval(coeffs, w)));
  }
  b.record(3, "reproducing-property", worst <= 1e-8,
           "max abs gap " + fmt(worst) + " over 20 unit-norm polynomials (tol 1e-8)");
}

// 4. Composition of monomial compressions equals the compression of the
// deformed product, including the closed rank-correction case.
void check_sharp(Battery& b) {
  double worst = 0.0;
  double worst_closed = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const ModelPtr m = make_model(Weight::classical(alpha), 40);
    for (int a = 0; a <= 3; ++a)
      for (int bb = 0; bb <= 3; ++bb) {
        const SharpCheck c =
            verify_sharp(m, SymbolPoly::monomial(a, 0), SymbolPoly::monomial(0, bb));
        worst = std::max(worst, c.residual);
      }
    const OpMatrix tz = toeplitz_poly(m, SymbolPoly::monomial(1, 0));
    const OpMatrix tzbar = toeplitz_poly(m, SymbolPoly::monomial(0, 1));
    const OpMatrix tabs = toeplitz_poly(m, SymbolPoly::monomial(1, 1));
    const CMatrix closed =
        tz.mat() * tzbar.mat() - (tabs.mat() - (1.0 / alpha) * CMatrix::Identity(40, 40));
    worst_closed = std::max(worst_closed, op_norm(closed));
  }
  const bool pass = worst <= 1e-8 && worst_closed <= 1e-10;
  b.record(4, "sharp-product-law", pass,
           "max interior residual " + fmt(worst) + " (tol 1e-8), closed case gap " +
               fmt(worst_closed) + " (tol 1e-10)");
}

// 5. Coherent-state expectation of the unit-disk compression at the origin.
void check_berezin_value(Battery& b, const ModelPtr& m40) {
  const OpMatrix t = preset_operator(m40, "unit-ball");
  const double value = berezin(t, 0.0).real();
  const double target = 1.0 - std::exp(-m40->alpha());
  const double gap = std::abs(value - target);
  b.record(5, "berezin-value", gap <= 1e-4,
           "B(0) = " + fmt(value) + ", closed form " + fmt(target) + ", gap " + fmt(gap) +
               " (tol 1e-4)");
}

// 6. The four localization estimators co-decay for the unit-disk compression
// and stay near one for the identity.
void check_codecay(Battery& b, const ModelPtr& m40, const ModelPtr& m60) {
  const OpMatrix tchi40 = preset_operator(m40, "unit-ball");
  const OpMatrix tchi60 = preset_operator(m60, "unit-ball");
  const OpMatrix id60 = identity_op(m60);

  const double rho_chi = compactness_indicator(tchi40, 1.0, {4.0}).values[0];
  const double tail_chi = tail_norm(tchi40, 6.0);
  const double local_chi = local_norm(tchi40, Complex(5.0, 0.0), 1.0);

  const double rho_id = compactness_indicator(id60, 1.0, {4.0}).values[0];
  const double tail_id = tail_norm(id60, 6.0);
  double local_id = 0.0;
  for (double d : {1.0, 1.5, 2.0, 2.5})
    local_id = std::max(local_id, local_norm(id60, Complex(5.0, 0.0), d));

  // shared translation shell so each shift is quadratured once
  const std::vector<CVector> probes = default_probes(m60);
  double trans_chi = 0.0, trans_id = 0.0;
  for (double radius : {3.0, 4.0})
    for (int i = 0; i < 8; ++i) {
      const TranslationOp u =
          weighted_translation(m60, std::polar(radius, 2.0 * kPi * i / 8.0));
      for (const CVector& f : probes) {
        const CVector uf = u.op.mat() * f;
        trans_id = std::max(trans_id, uf.norm());
        trans_chi = std::max(trans_chi, (tchi60.mat() * uf).norm());
      }
    }

  const bool chi_pass =
      rho_chi < 1e-3 && tail_chi < 0.05 && local_chi < 1e-2 && trans_chi < 0.05;
  auto near_one = [](double v) { return v >= 0.9 && v <= 1.0 + 1e-6; };
  const bool id_pass =
      near_one(rho_id) && near_one(tail_id) && near_one(local_id) && near_one(trans_id);

  b.record(6, "compactness-codecay", chi_pass && id_pass,
           "disk: rho(4)=" + fmt(rho_chi) + " (<1e-3), tail(6)=" + fmt(tail_chi) +
               " (<0.05), local(5,1)=" + fmt(local_chi) + " (<1e-2), shell=" +
               fmt(trans_chi) + " (<0.05); identity: " + fmt(rho_id) + ", " + fmt(tail_id) +
               ", " + fmt(local_id) + ", " + fmt(trans_id) + " (each in [0.9, 1+1e-6])");
}

// 7. Cover combinatorics, Gram decay, scan spread, and the cell-halving
// shrink of the identity quadrature error.
void check_frames(Battery& b, const ModelPtr& m80) {
  const LatticeCover cover = make_cover(0.5, 4.0);
  std::mt19937 rng(555001u);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  bool cover_ok = true;
  for (int i = 0; i < 10000; ++i) {
    const Complex z(unif(rng), unif(rng));
    if (cover.cell_count(z) != 1) cover_ok = false;
    if (cover.dilate_count(z) != 4) cover_ok = false;
  }
  cover_ok = cover_ok && std::abs(cover.dilate_diameter() - 2.0 * std::sqrt(2.0)) < 1e-12;

  const double alpha = m80->alpha();
  double gram_gap = 0.0;
  std::vector<CVector> tilde;
  std::vector<Complex> lattice;
  for (int iy = -1; iy <= 1; ++iy)
    for (int ix = -1; ix <= 1; ++ix) {
      lattice.push_back(Complex(ix, iy));
      tilde.push_back(m80->tilde_kernel_vec(Complex(ix, iy)));
    }
  for (std::size_t a = 0; a < tilde.size(); ++a)
    for (std::size_t c = 0; c < tilde.size(); ++c) {
      const double got = std::abs(tilde[c].dot(tilde[a]));
      const double want =
          (alpha / kPi) * std::exp(-0.5 * alpha * std::norm(lattice[a] - lattice[c]));
      gram_gap = std::max(gram_gap, std::abs(got - want));
    }

  std::uniform_real_distribution<double> cell01(0.0, 1.0);
  std::vector<Complex> bases;
  for (int i = 0; i < 50; ++i) bases.push_back(Complex(cell01(rng), cell01(rng)));
  const FrameScan scan = frame_norm_scan(m80, 3, bases);

  // Midpoint sums of Gaussian-type fields are spectrally accurate, so the
  // halving law is observed at cells where aliasing is still above rounding;
  // at cell 0.1 the deviation has already collapsed below the tolerance.
  const ModelPtr m20 = make_model(Weight::classical(1.0), 20);
  const double dev_fine = leading_block_deviation(identity_quadrature(m20, 0.1, 8.0), 10);
  const double dev_a = leading_block_deviation(identity_quadrature(m20, 0.6, 8.0), 10);
  const double dev_b = leading_block_deviation(identity_quadrature(m20, 0.3, 8.0), 10);

  const bool pass = cover_ok && gram_gap <= 1e-6 && scan.spread() < 0.10 &&
                    dev_fine < 1e-3 && dev_a > 1e-9 && dev_b <= 0.5 * dev_a;
  b.record(7, "frame-suite", pass,
           std::string("cover ") + (cover_ok ? "exact" : "BROKEN") + ", gram gap " +
               fmt(gram_gap) + " (tol 1e-6), scan spread " + fmt(scan.spread()) +
               " (<0.1), identity dev " + fmt(dev_fine) + " at cell 0.1 (<1e-3), halving " +
               fmt(dev_a) + " -> " + fmt(dev_b) + " (<= 0.5x)");
}

// 8. Heat smoothing converges at operator level, matches the Gaussian closed
// form pointwise, mollified point masses converge, and the rank-one
// factorization of kernel outer products is exact.
void check_approximation(Battery& b, const ModelPtr& m40) {
  const Symbol chi = Symbol::indicator_ball(0.0, 1.0);
  const HeatCurve curve =
      heat_convergence_curve(m40, chi, {0.2, 0.1, 0.05, 0.02, 0.01}, 4.0, 0.05);
  bool monotone = true;
  for (std::size_t i = 1; i < curve.deviations.size(); ++i)
    if (!(curve.deviations[i] < curve.deviations[i - 1])) monotone = false;
  const double terminal = curve.deviations.back();

  const Symbol gauss = parse_symbol("exp(-abs2(z))");
  const GridSymbol g0 = sample_grid(gauss, 4.0, 0.05);
  const double t = 0.05;
  const GridSymbol gt = heat_transform(g0, t);
  double heat_gap = 0.0;
  for (Eigen::Index iy = 0; iy < gt.values.rows(); ++iy)
    for (Eigen::Index ix = 0; ix < gt.values.cols(); ++ix) {
      const Complex z = gt.node(static_cast<int>(ix), static_cast<int>(iy));
      const double want = std::exp(-std::norm(z) / (1.0 + 4.0 * t)) / (1.0 + 4.0 * t);
      heat_gap = std::max(heat_gap, std::abs(gt.values(iy, ix) - Complex(want)));
    }

  const PointMassCurve pm =
      point_mass_limit_curve(m40, Complex(0.5, 0.25), {0.5, 0.25, 0.1});
  const bool pm_decreasing =
      pm.deviations[1] < pm.deviations[0] && pm.deviations[2] < pm.deviations[1];

  std::mt19937 rng(88111u);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double rank_one_worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::polar(2.5 * std::sqrt(unif(rng)), 2.0 * kPi * unif(rng));
    const Complex w = std::polar(2.5 * std::sqrt(unif(rng)), 2.0 * kPi * unif(rng));
    rank_one_worst = std::max(rank_one_worst, rank_one_from_pointmasses(m40, z, w).residual);
  }

  const bool pass = monotone && terminal < 0.05 && heat_gap <= 1e-6 && pm_decreasing &&
                    rank_one_worst < 1e-8;
  b.record(8, "approximation-suite", pass,
           std::string("heat curve ") + (monotone ? "monotone" : "NOT MONOTONE") +
               ", terminal " + fmt(terminal) + " (<0.05), gaussian closed-form gap " +
               fmt(heat_gap) + " (tol 1e-6), point-mass curve " +
               (pm_decreasing ? "decreasing" : "NOT DECREASING") + ", rank-one residual " +
               fmt(rank_one_worst) + " (tol 1e-8)");
}

// 9. Duality pairing: weighted integral of the symbol against the kernel
// diagonal equals the trace of the compression, and both equal alpha.
void check_trace(Battery& b) {
  const ModelPtr m50 = make_model(Weight::classical(1.0), 50);
  const TracePairing tp =
      trace_pairing(m50, Symbol::indicator_ball(0.0, 1.0), identity_op(m50));
  const double gap = tp.abs_gap;
  const double alpha_gap = std::abs(tp.operator_side.real() - m50->alpha());
  b.record(9, "trace-formula", gap <= 1e-4 && alpha_gap <= 2e-3,
           "two-sided gap " + fmt(gap) + " (tol 1e-4), trace vs alpha gap " +
               fmt(alpha_gap) + " (tol 2e-3)");
}

// 10. Unimodular pairing phase and the self-inverse law on the trusted block.
void check_translations(Battery& b, const ModelPtr& m60) {
  const double alpha = m60->alpha();
  const std::vector<std::pair<Complex, Complex>> pairs = {
      {Complex(1.0, 0.5), Complex(0.5, 0.0)},
      {Complex(2.0, 0.0), Complex(1.0, 1.0)},
      {Complex(0.0, 1.5), Complex(-0.5, 0.5)},
  };
  double mod_gap = 0.0, phase_gap = 0.0;
  for (const auto& [z, w] : pairs) {
    const ThetaValue tv = theta_pairing(m60, z, w);
    mod_gap = std::max(mod_gap, tv.modulus_gap);
    const Complex want = std::polar(1.0, alpha * std::imag(z * std::conj(w)));
    phase_gap = std::max(phase_gap, std::abs(tv.value - want));
  }

  const TranslationOp u = weighted_translation(m60, Complex(1.0, 0.5));
  const CMatrix dd =
      u.op.mat() * u.op.mat() - CMatrix::Identity(m60->dim(), m60->dim());
  double invol = 0.0;
  for (int j = 0; j < u.trusted_cols; ++j) invol = std::max(invol, dd.col(j).norm());

  const bool pass =
      mod_gap <= 1e-5 && phase_gap <= 1e-5 && u.trusted_cols >= 8 && invol <= 1e-4;
  b.record(10, "translation-suite", pass,
           "modulus gap " + fmt(mod_gap) + " (tol 1e-5), phase gap " + fmt(phase_gap) +
               " (tol 1e-5), self-inverse on " + std::to_string(u.trusted_cols) +
               " certified columns: " + fmt(invol) + " (tol 1e-4)");
}

// 11. Repeating a full experiment yields byte-identical artifacts and hash.
void check_determinism(Battery& b) {
  const std::string cfg_text =
      "[model]\n"
      "dim = 24\n"
      "[experiment]\n"
      "kind = decay-scan\n"
      "[decay-scan]\n"
      "operator = preset:unit-ball\n"
      "radii = 0.5,1.0\n"
      "shell_radii = 1.0,2.0\n";
  const Config cfg = Config::parse(cfg_text);
  const RunResult r1 = run_experiment(cfg);
  const RunResult r2 = run_experiment(cfg);
  bool same = r1.manifest_hash == r2.manifest_hash && r1.artifacts == r2.artifacts;

  const std::string sharp_text =
      "[model]\n"
      "dim = 24\n"
      "[experiment]\n"
      "kind = sharp\n"
      "[sharp]\n"
      "a = 2\n"
      "b = 1\n";
  const Config sharp_cfg = Config::parse(sharp_text);
  same = same && run_experiment(sharp_cfg).manifest_hash ==
                     run_experiment(sharp_cfg).manifest_hash;

  b.record(11, "repeat-run-determinism", same,
           same ? "manifest hash " + r1.manifest_hash + " reproduced exactly"
                : "repeated runs differ");
}

}  // namespace

BatteryResult run_battery(bool verbose) {
  Battery b;
  b.verbose = verbose;

  const ModelPtr m40 = make_model(Weight::classical(1.0), 40);
  const ModelPtr m60 = make_model(Weight::classical(1.0), 60);
  const ModelPtr m80 = make_model(Weight::classical(1.0), 80);

  check_moments(b);
  check_kernel_identity(b, m80);
  check_reproducing(b, m80);
  check_sharp(b);
  check_berezin_value(b, m40);
  check_codecay(b, m40, m60);
  check_frames(b, m80);
  check_approximation(b, m40);
  check_trace(b);
  check_translations(b, m60);
  check_determinism(b);

  BatteryResult out;
  out.checks = b.results;
  out.all_pass = true;
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : b.results) {
    out.all_pass = out.all_pass && c.pass;
    nlohmann::json j;
    j["id"] = c.id;
    j["title"] = c.title;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    checks.push_back(j);
  }
  nlohmann::json manifest;
  manifest["battery"] = checks;
  manifest["all_pass"] = out.all_pass;
  out.manifest_json = manifest.dump(2);
  out.manifest_hash = io::fnv1a_hex(out.manifest_json);
  return out;
}

}  // namespace focklab
