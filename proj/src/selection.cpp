#include "grr/selection.hpp"

#include <cmath>

#include "grr/diagnostics.hpp"

namespace grr {

void GridSpec::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !std::isfinite(step))
    throw invalid_input("selection: grid bounds must be finite");
  if (lower < 0.0) throw invalid_input("selection: grid lower bound < 0");
  if (step <= 0.0) throw invalid_input("selection: grid step must be > 0");
  if (upper <= lower)
    throw invalid_input("selection: grid upper bound must exceed lower");
  if ((upper - lower) / step > 1e8)
    throw invalid_input("selection: grid has more than 1e8 points");
}

Index GridSpec::size() const {
  validate();
  // nudge before flooring so an exactly divisible range keeps its endpoint
  double ratio = (upper - lower) / step;
  return static_cast<Index>(std::floor(ratio * (1.0 + 1e-12))) + 1;
}

double GridSpec::value(Index i) const {
  return lower + static_cast<double>(i) * step;
}

PenaltyMatrix PenaltySweep::at(Index m, double k) const {
  return kind == Kind::uniform ? PenaltyMatrix::uniform(m, k)
                               : PenaltyMatrix::single(m, index, k);
}

double k_hkb(Index m, double sigma2, const Vector& beta) {
  if (!std::isfinite(sigma2) || sigma2 < 0.0)
    throw invalid_input("selection: variance plug-in must be finite and >= 0");
  double ss = beta.squaredNorm();
  if (!(ss > 0.0))
    throw numerical_error("selection: zero coefficient vector in hkb rule");
  return static_cast<double>(m) * sigma2 / ss;
}

double k_hk(double sigma2, const Vector& xi) {
  if (!std::isfinite(sigma2) || sigma2 < 0.0)
    throw invalid_input("selection: variance plug-in must be finite and >= 0");
  double top = xi.cwiseAbs().maxCoeff();
  if (!(top > 0.0))
    throw numerical_error("selection: zero eigen-basis coefficients in hk rule");
  return sigma2 / (top * top);
}

namespace {

// Deterministic ternary shrink of [a, b] around the minimum of f.
template <typename F>
double refine_minimum(F&& f, double a, double b) {
  for (int it = 0; it < 240 && b - a > 1e-16 * std::max(1.0, b); ++it) {
    double third = (b - a) / 3.0;
    double m1 = a + third;
    double m2 = b - third;
    if (f(m1) <= f(m2))
      b = m2;
    else
      a = m1;
  }
  return (a + b) / 2.0;
}

}  // namespace

SelectionResult k_min_single(const SpectralDecomposition& spec,
                             const Plugins& plugins, Index l,
                             const GridSpec& grid) {
  grid.validate();
  if (l < 0 || l >= spec.m())
    throw invalid_input("selection: direction index out of range");
  auto mse_at = [&](double k) {
    return scalar_mse(spec, PenaltyMatrix::single(spec.m(), l, k), plugins);
  };
  Index best = 0;
  double best_mse = mse_at(grid.value(0));
  const Index count = grid.size();
  for (Index i = 1; i < count; ++i) {
    double m = mse_at(grid.value(i));
    if (m < best_mse) {
      best_mse = m;
      best = i;
    }
  }
  double k = grid.value(best);
  if (count > 1) {
    double a = grid.value(best > 0 ? best - 1 : 0);
    double b = grid.value(best + 1 < count ? best + 1 : best);
    k = refine_minimum(mse_at, a, b);
  }

  SelectionResult result;
  result.rule = "min-single";
  result.k = PenaltyMatrix::single(spec.m(), l, k);
  result.objective = mse_at(k);
  return result;
}

SelectionResult k_min_uniform(const SpectralDecomposition& spec,
                              const Plugins& plugins, const GridSpec& grid) {
  grid.validate();
  auto mse_at = [&](double k) {
    return scalar_mse(spec, PenaltyMatrix::uniform(spec.m(), k), plugins);
  };
  Index best = 0;
  double best_mse = mse_at(grid.value(0));
  for (Index i = 1; i < grid.size(); ++i) {
    double m = mse_at(grid.value(i));
    if (m < best_mse) {
      best_mse = m;
      best = i;
    }
  }
  SelectionResult result;
  result.rule = "min-uniform";
  result.k = PenaltyMatrix::uniform(spec.m(), grid.value(best));
  result.objective = best_mse;
  return result;
}

SelectionResult cn_threshold_search(const SpectralDecomposition& spec,
                                    const PenaltySweep& sweep,
                                    double threshold, const GridSpec& grid) {
  grid.validate();
  if (!(threshold >= 1.0))
    throw invalid_input("selection: condition-number threshold must be >= 1");
  double best_cn = 0.0, best_k = 0.0;
  bool first = true;
  for (Index i = 0; i < grid.size(); ++i) {
    double k = grid.value(i);
    double cn = condition_number(spec, sweep.at(spec.m(), k));
    if (cn < threshold) {
      SelectionResult result;
      result.rule = "cn-threshold";
      result.k = sweep.at(spec.m(), k);
      result.objective = cn;
      return result;
    }
    if (first || cn < best_cn) {
      best_cn = cn;
      best_k = k;
      first = false;
    }
  }
  SelectionResult result;
  result.rule = "cn-threshold";
  result.found = false;
  result.k = sweep.at(spec.m(), best_k);
  result.objective = best_cn;
  return result;
}

SelectionResult mse_crossing_search(const SpectralDecomposition& spec,
                                    const Plugins& plugins,
                                    const PenaltySweep& sweep,
                                    const GridSpec& grid) {
  grid.validate();
  auto mse_at = [&](double k) {
    return scalar_mse(spec, sweep.at(spec.m(), k), plugins);
  };
  double reference = scalar_mse(
      spec, PenaltyMatrix::zero(spec.m()), plugins);
  for (Index i = 1; i < grid.size(); ++i) {
    if (mse_at(grid.value(i)) > reference) {
      double k = grid.value(i - 1);
      SelectionResult result;
      result.rule = "mse-crossing";
      result.k = sweep.at(spec.m(), k);
      result.objective = mse_at(k);
      return result;
    }
  }
  SelectionResult result;
  result.rule = "mse-crossing";
  result.found = false;
  result.k = sweep.at(spec.m(), grid.value(grid.size() - 1));
  result.objective = mse_at(grid.value(grid.size() - 1));
  return result;
}

SelectionResult min_cn_plateau(const SpectralDecomposition& spec) {
  if (spec.m() < 2)
    throw invalid_input("selection: plateau rule needs at least two directions");
  Index l = spec.ascending[0];
  double lambda_min = spec.lambda(l);
  double lambda_second = spec.lambda(spec.ascending[1]);
  double lambda_max = spec.lambda_max();

  Plateau plateau;
  plateau.lower = lambda_second - lambda_min;
  plateau.upper = lambda_max - lambda_min;
  plateau.cn = std::sqrt(lambda_max / lambda_second);
  plateau.index = l;

  SelectionResult result;
  result.rule = "plateau";
  result.k = PenaltyMatrix::single(spec.m(), l,
                                  (plateau.lower + plateau.upper) / 2.0);
  result.objective = plateau.cn;
  result.plateau = plateau;
  return result;
}

}  // namespace grr
