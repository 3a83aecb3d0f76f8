#pragma once

#include "kelvin/types.hpp"

namespace kelvin::detail {

/// Closed form for dK_nu/dnu (real nu, 2nu not an integer) carried in
/// __float128. Its four parts are ~e^{sqrt2 |z|} times larger than the
/// result (1e12 at |z| = 10), beyond what long double can absorb.
EvalResult dk_closed_f128(double nu, Complex z, const SeriesConfig& cfg);

}  // namespace kelvin::detail
