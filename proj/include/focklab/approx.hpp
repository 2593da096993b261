#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "focklab/operators.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Polynomial in z and conj(z) with complex coefficients, sparse by monomial.
class SymbolPoly {
 public:
  using Key = std::pair<int, int>;  // (power of z, power of conj z)

  SymbolPoly() = default;
  static SymbolPoly monomial(int a, int b, Complex c = 1.0);

  void set(int a, int b, Complex c);
  Complex coeff(int a, int b) const;
  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_z_power() const;
  int max_conj_power() const;

  SymbolPoly plus(const SymbolPoly& rhs) const;
  SymbolPoly minus(const SymbolPoly& rhs) const;
  SymbolPoly times(const SymbolPoly& rhs) const;
  SymbolPoly scaled(Complex factor) const;
  SymbolPoly dz() const;       // holomorphic derivative
  SymbolPoly dzbar() const;    // antiholomorphic derivative

  Complex eval(Complex z) const;
  Symbol to_symbol(const std::string& name = "poly") const;

 private:
  std::map<Key, Complex> terms_;  // zero coefficients are never stored
};

/// Deformed product whose compression law matches composition of Toeplitz
/// matrices for holomorphic-times-antiholomorphic factors. Finite sum of
/// derivative pairings weighted by powers of -1/alpha.
SymbolPoly sharp_product(const SymbolPoly& f, const SymbolPoly& g, double alpha);

/// Exact compression of a polynomial symbol from the moment table alone.
OpMatrix toeplitz_poly(const ModelPtr& model, const SymbolPoly& p);

struct SharpCheck {
  SymbolPoly sharp;
  double residual;  // norm of the interior block of T_f T_g - T_{f sharp g}
};

/// Verifies T_{z^a} T_{conj z^b} = T_{z^a sharp conj z^b} on the interior
/// block. Only meaningful for the Gaussian weight; throws otherwise.
SharpCheck verify_sharp(const ModelPtr& model, const SymbolPoly& f,
                        const SymbolPoly& g);

/// Symbol sampled at the midpoints of a uniform grid of square cells.
struct GridSymbol {
  double x0 = 0.0;   // first midpoint
  double y0 = 0.0;
  double h = 0.1;    // cell side
  CMatrix values;    // (iy, ix) -> value at (x0 + ix h, y0 + iy h)

  Complex node(int ix, int iy) const { return {x0 + ix * h, y0 + iy * h}; }
};

/// Centered square grid of half-width about `half` (rounded to whole cells).
GridSymbol sample_grid(const Symbol& symbol, double half, double h);

/// Gaussian smoothing at time t by discrete convolution with a renormalized
/// heat kernel, truncated where it is negligible. Requires 4 t >= h^2 so the
/// kernel is resolved; values outside the grid are treated as zero.
GridSymbol heat_transform(const GridSymbol& g, double t);

/// Exact smoothing of an atomic measure, sampled on a grid.
GridSymbol heat_transform(const DiscreteMeasure& mu, double t, double half, double h);

/// Midpoint Riemann compression of a grid symbol.
OpMatrix toeplitz_grid(const ModelPtr& model, const GridSymbol& g);

struct HeatCurve {
  std::vector<double> times;
  std::vector<double> deviations;  // || T_{f_t} - T_f || on the same grid
};

/// Operator-level convergence of smoothed compressions as t -> 0, with both
/// sides discretized on the same grid so only the smoothing varies.
HeatCurve heat_convergence_curve(const ModelPtr& model, const Symbol& f,
                                 const std::vector<double>& times, double half,
                                 double h);

struct PointMassCurve {
  std::vector<double> eps;
  std::vector<double> deviations;  // || T_{mollifier} - T_{point mass} ||
};

PointMassCurve point_mass_limit_curve(const ModelPtr& model, Complex w,
                                      const std::vector<double>& eps_list);

struct RankOneCheck {
  CMatrix target;     // kernel outer product K(. , z) tensor K(. , w)
  CMatrix built;      // scaled product of two point-mass compressions
  double residual;    // spectral norm of the difference
};

/// Reconstructs a rank-one kernel outer product from two point-mass
/// compressions; exact at fixed truncation when the truncated kernel value
/// K_N(w, z) is used in the scaling. Throws when that value degenerates.
RankOneCheck rank_one_from_pointmasses(const ModelPtr& model, Complex z, Complex w);

}  // namespace focklab
