#pragma once

#include <memory>
#include <vector>

#include "forman.hpp"

namespace fdf {

/// Table of all nonzero quasi-cubical cup products of basis cochains on K.
/// a^p cup b^q = coef * c^(p+q), coef = sign / 2^(p+q), where c is the unique
/// common superface of a and b and the cells meet in a single point.
/// Intersection and affine-dimension tests are combinatorial (shared
/// K-vertices and common superfaces); geometry enters only through the
/// orientation sign determinant.
class CupTable {
public:
  explicit CupTable(std::shared_ptr<const FormanComplex> fc);

  struct Entry {
    int a = 0, b = 0, c = 0;
    double coef = 0.0;
  };

  const std::vector<Entry>& entries(int p, int q) const {
    return entries_[p][q];
  }

  const FormanComplex& forman() const { return *fc_; }
  int dim() const { return fc_->K().dim(); }

  /// Bilinear extension to whole cochains.
  Cochain cup(const Cochain& sigma, const Cochain& tau) const;

  /// (sigma cup tau)[K]: cup product evaluated on the fundamental class.
  double cup_on_fundamental(const Cochain& sigma, const Cochain& tau) const;

private:
  std::shared_ptr<const FormanComplex> fc_;
  std::array<std::array<std::vector<Entry>, kMaxDim + 1>, kMaxDim + 1> entries_;
};

/// Wedge product of forms on M, transported through the Forman isomorphism.
Form wedge(const FormanComplex& fc, const CupTable& table, const Form& omega,
           const Form& eta);

/// Pairing of a p-cochain with a p-chain.
double evaluate(const Cochain& sigma, const Chain& rho);

} // namespace fdf
