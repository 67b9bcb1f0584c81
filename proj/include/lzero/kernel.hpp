#pragma once

/// \file kernel.hpp
/// \brief Multiprecision arithmetic and the special functions built on it.

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/bernoulli.hpp>
#include <lzero/kernel/hurwitz_zeta.hpp>
#include <lzero/kernel/incomplete_gamma.hpp>
#include <lzero/kernel/lambert_w.hpp>
#include <lzero/kernel/log_gamma.hpp>
#include <lzero/precision.hpp>
#include <lzero/real.hpp>
