#pragma once

// Phase-space (Wigner function) toolkit for dissipative oscillators with a
// quadratic non-Hermitian generator: closed-form eigenbasis and spectra,
// direct PDE evolution, and Breit-Wigner lineshapes.

#include "nhwigner/params.hpp"
#include "nhwigner/laguerre.hpp"
#include "nhwigner/grid.hpp"
#include "nhwigner/quadrature.hpp"
#include "nhwigner/spectrum.hpp"
#include "nhwigner/basis.hpp"
#include "nhwigner/projection.hpp"
#include "nhwigner/evolve.hpp"
#include "nhwigner/lineshape.hpp"
#include "nhwigner/io.hpp"
