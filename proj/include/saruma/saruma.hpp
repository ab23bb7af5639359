#pragma once

// Umbrella header: partial-autocorrelation parameterisation of unit-root
// seasonal ARMA filters, plus simulation, filtering and estimation on top.

#include "saruma/errors.hpp"
#include "saruma/fit.hpp"
#include "saruma/model.hpp"
#include "saruma/nelder_mead.hpp"
#include "saruma/pacf.hpp"
#include "saruma/poly.hpp"
#include "saruma/rootloc.hpp"
#include "saruma/serde.hpp"
#include "saruma/series.hpp"
