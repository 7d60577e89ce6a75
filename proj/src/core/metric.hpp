#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "algebra.hpp"
#include "forman.hpp"

namespace fdf {

enum class CurvatureMode { Trivial, Curvature };

struct HodgeDegreeReport {
  int degree = 0;
  int harmonic_dim = 0;
  int betti = 0;
  double decomposition_residual = 0.0; // relative reconstruction error
  double orthogonality_residual = 0.0; // max |<Pi x, Pj x>| / |x|^2, i != j
};

struct HodgeReport {
  std::vector<HodgeDegreeReport> degrees;
  bool kernel_matches_betti() const {
    for (const auto& r : degrees)
      if (r.harmonic_dim != r.betti) return false;
    return true;
  }
};

/// Node curvatures, volume cochain and the diagonal inner-product weights
/// W_p[c] = <c^p, c^p> on the Forman subdivision K.
///
/// W_p[c] = 1/(2^(p+d) mu(c)^2) * sum_{b0 <= c} kappa(b0) sum_{a_d >= b0} mu(a_d)
class MetricContext {
public:
  static std::shared_ptr<const MetricContext> build(
      std::shared_ptr<const FormanComplex> fc, CurvatureMode mode);

  const FormanComplex& forman() const { return *fc_; }
  std::shared_ptr<const FormanComplex> forman_ptr() const { return fc_; }
  const OrientedComplex& K() const { return fc_->K(); }
  int dim() const { return fc_->dim(); }
  CurvatureMode mode() const { return mode_; }

  const Eigen::VectorXd& kappa() const { return kappa_; }
  const Cochain& volume_cochain() const { return vol_; }
  const Eigen::VectorXd& weights(int p) const { return weights_[p]; }

  double inner_product(const Cochain& a, const Cochain& b) const;

  /// Riemann integral of a 0-cochain: (f cup vol)[K].
  double riemann_integral(const Cochain& f) const;

  /// delta*_p : C^p -> C^(p-1), the adjoint of the coboundary.
  Cochain adjoint_coboundary(const Cochain& tau) const;

  /// Full Hodge Laplacian of degree p as a sparse operator matrix.
  Eigen::SparseMatrix<double> laplacian(int p) const;

  /// Laplacian applied to a 0-cochain.
  Cochain laplacian_0(const Cochain& c) const;

  /// Hodge star via the closed form star(c^p) =
  /// sum_a ((a^(d-p) cup c^p)[K] / <a,a>) a^(d-p).
  Cochain hodge_star(const CupTable& table, const Cochain& sigma) const;

  /// Verifies the orthogonal decomposition
  /// C^p = Im d^(p-1) + Ker Delta_p + Im d*_(p+1) and harmonic dimensions.
  HodgeReport hodge_report(std::uint64_t probe_seed = 7) const;

private:
  MetricContext() = default;

  std::shared_ptr<const FormanComplex> fc_;
  CurvatureMode mode_ = CurvatureMode::Curvature;
  Eigen::VectorXd kappa_;
  Cochain vol_;
  std::array<Eigen::VectorXd, kMaxDim + 1> weights_;
};

} // namespace fdf
