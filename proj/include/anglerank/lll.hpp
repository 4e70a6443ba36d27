#pragma once

#include <gmpxx.h>

#include <vector>

namespace anglerank {

// LLL reduction with exact integer arithmetic (integral Gram-Schmidt data),
// delta = 99/100, on a basis given as rows.  Rows must be linearly
// independent.  Reduces in place.
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

} // namespace anglerank
