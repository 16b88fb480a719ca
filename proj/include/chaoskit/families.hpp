#pragma once

#include <string>
#include <vector>

#include "chaoskit/pwl.hpp"

namespace chaoskit {

/// Sawtooth of slope +-p on [0,1] with p monotone laps, each onto [0,1].
PwlMap tent(unsigned p);

/// The type-p topologically mixing map on [0, p-1] (p odd >= 3), linear
/// between 0, n-1, n, 2n-1, 2n for p = 2n+1.
PwlMap stefan_map(unsigned p);

/// Square root construction on [0, 2b+delta]: g = f + (b+delta) on [0,b],
/// g = x - (b+delta) on the top block, a steep linear bridge in between;
/// g^2 = f on [0,b] and the type doubles. delta must be positive: with
/// delta = 0 the two blocks meet with a jump of f(b)+b at x = b, so no
/// continuous realization exists.
PwlMap square_root(const PwlMap& f, const Rat& delta);

/// A map of type n = 2^d * q: the d-fold square root (delta = b at each
/// level) of the constant-zero map (q = 1) or of stefan_map(q).
PwlMap type_map(unsigned n);

/// Transitive but not mixing map on [-1,1], entropy (log 2)/2, type 6.
PwlMap s_map();

/// Type-2^infinity staircase: rescaled type-2^n blocks on
/// [1-3^-n, 1-2*3^-(n+1)] for n = 0..depth, bridges in between, closed
/// linearly to the fixed point at 1.
PwlMap type2inf(unsigned depth);

/// Delahaye's type-2^infinity map with an infinite omega-limit set,
/// truncated after level `depth` and closed linearly to f(1) = 0.
PwlMap delahaye(unsigned depth);

/// Mizera's densely-but-not-generically chaotic map (slope +-4), truncated
/// after level `depth` and closed linearly to the fixed point at 1.
PwlMap mizera(unsigned depth);

/// min(T_2, lambda): the truncated tent family.
PwlMap truncated_tent(const Rat& lambda);

/// Resolves a catalog identifier: tent:p, stefan:p, sqrt:<inner>, type:n,
/// type2inf:depth, delahaye:depth, mizera:depth, smap, ttent:p/q.
PwlMap catalog(const std::string& name);

std::vector<std::string> catalog_names();

} // namespace chaoskit
