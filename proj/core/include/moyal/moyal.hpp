#pragma once

#include "moyal/algebra.hpp"
#include "moyal/causality.hpp"
#include "moyal/diagnostics.hpp"
#include "moyal/error.hpp"
#include "moyal/gridspace.hpp"
#include "moyal/lp.hpp"
#include "moyal/metric.hpp"
#include "moyal/serialize.hpp"
#include "moyal/special.hpp"
#include "moyal/states.hpp"
