#pragma once

#include <mulseries/arithmetic.hpp>
#include <mulseries/complete_ideals.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/io.hpp>
#include <mulseries/jumping_analysis.hpp>
#include <mulseries/poincare_series.hpp>
#include <mulseries/valuation_model.hpp>
#include <mulseries/verification.hpp>
