#pragma once

#include "fracspec/errors.hpp"
#include "fracspec/double_double.hpp"
#include "fracspec/gamma.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/frac_series.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/context.hpp"
#include "fracspec/spectra.hpp"
#include "fracspec/angular.hpp"
#include "fracspec/charmfit.hpp"
#include "fracspec/su3fact.hpp"
#include "fracspec/report.hpp"
