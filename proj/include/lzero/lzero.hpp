#pragma once

/// \file lzero.hpp
/// \brief Everything: kernel, characters, Dirichlet, modular and descriptor L-functions,
/// the zero solver and the text formats.

#include <lzero/characters.hpp>
#include <lzero/dirichlet_l.hpp>
#include <lzero/generic_l.hpp>
#include <lzero/io.hpp>
#include <lzero/kernel.hpp>
#include <lzero/modular_l.hpp>
#include <lzero/solver.hpp>
