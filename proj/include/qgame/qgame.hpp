#pragma once

#include "qgame/operators.hpp"
#include "qgame/payoff.hpp"
#include "qgame/equilibria.hpp"
#include "qgame/oracle.hpp"
#include "qgame/analysis.hpp"
