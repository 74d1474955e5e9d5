#pragma once

#include "onestep/analysis.hpp"
#include "onestep/error.hpp"
#include "onestep/fokkerplanck.hpp"
#include "onestep/master.hpp"
#include "onestep/meanfield.hpp"
#include "onestep/ouapprox.hpp"
#include "onestep/quadrature.hpp"
#include "onestep/rates.hpp"
