#pragma once

#include "gaborwf/common.hpp"
#include "gaborwf/grid.hpp"
#include "gaborwf/synthesis.hpp"
#include "gaborwf/stft.hpp"
#include "gaborwf/wigner.hpp"
#include "gaborwf/metaplectic.hpp"
#include "gaborwf/cg.hpp"
#include "gaborwf/gabor.hpp"
#include "gaborwf/sectors.hpp"
#include "gaborwf/wavefront.hpp"
#include "gaborwf/symbol.hpp"
#include "gaborwf/symbols.hpp"
#include "gaborwf/operators.hpp"
#include "gaborwf/phase_kernel.hpp"
#include "gaborwf/microlocal.hpp"
