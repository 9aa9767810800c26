#pragma once

#include "conecalc/error.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/form.hpp"
#include "conecalc/parse.hpp"
#include "conecalc/univariate.hpp"
#include "conecalc/sphere.hpp"
#include "conecalc/harmonic.hpp"
#include "conecalc/power_operator.hpp"
#include "conecalc/cone.hpp"
#include "conecalc/random.hpp"
#include "conecalc/suite.hpp"
