#pragma once

#include <random>
#include <utility>

#include "spdmeans/pinch.hpp"
#include "spdmeans/spd.hpp"

namespace spdmeans {

// The PRNG named in reports. Reseeding with a logged seed replays any
// randomized suite exactly (on the same platform / standard library).
using Prng = std::mt19937_64;
inline constexpr const char* kPrngName = "mt19937_64";

/// Haar-ish random orthogonal matrix from a QR factorization with sign fix.
Eigen::MatrixXd random_orthogonal(int m, Prng& rng);

/// Random SPD matrix with eigenvalues log-uniform in [eig_lo, eig_hi];
/// desk-scale conditioning by default.
SPDMatrix random_spd(int m, Prng& rng, double eig_lo = 0.25,
                     double eig_hi = 4.0);

/// Random SPD matrix normalized to determinant one.
SPDMatrix random_unit_det_spd(int m, Prng& rng);

/// Pair diagonalized in a common basis.
std::pair<SPDMatrix, SPDMatrix> random_commuting_pair(int m, Prng& rng);

/// Pair redrawn until the commutator is clearly nonzero.
std::pair<SPDMatrix, SPDMatrix> random_noncommuting_pair(int m, Prng& rng);

/// Pair with sigma(A^{-1} B) = {a, b}, a of multiplicity mult_a.
std::pair<SPDMatrix, SPDMatrix> make_sigma_pair(int m, double a, double b,
                                                int mult_a, Prng& rng);

/// Pair with sigma(A B) = {a, b}, i.e. A^{-1} sigma B.
std::pair<SPDMatrix, SPDMatrix> make_inverse_sigma_pair(int m, double a,
                                                        double b, int mult_a,
                                                        Prng& rng);

/// Pair with A^{-1} ~ B: sigma(AB) = {a, b} at equal multiplicities, which
/// forces sqrt(ab) = det(AB)^{1/m}. m must be even.
std::pair<SPDMatrix, SPDMatrix> make_inverse_tilde_pair(int m, double a,
                                                        double b, Prng& rng);

/// A^{-1} ~ B with det A = det B = 1; the two cluster values are a and 1/a.
std::pair<SPDMatrix, SPDMatrix> make_unit_det_inverse_tilde_pair(int m,
                                                                 double a,
                                                                 Prng& rng);

/// Tuple with entries log-uniform in [lo, hi].
PositiveTuple random_tuple(int m, Prng& rng, double lo = 0.2, double hi = 5.0);

/// Applies `count` random multiplicative pinches; the result is log-majorized
/// by the input by construction.
PositiveTuple apply_random_multiplicative_pinches(const PositiveTuple& alpha,
                                                  int count, Prng& rng);

}  // namespace spdmeans
