#pragma once

/// Umbrella header: the whole engine in one include.

#include "capsim/anchors.hpp"
#include "capsim/calibrate.hpp"
#include "capsim/cli.hpp"
#include "capsim/compare.hpp"
#include "capsim/config.hpp"
#include "capsim/converters.hpp"
#include "capsim/csv.hpp"
#include "capsim/ensemble.hpp"
#include "capsim/errors.hpp"
#include "capsim/format.hpp"
#include "capsim/integrate.hpp"
#include "capsim/lhs.hpp"
#include "capsim/model.hpp"
#include "capsim/parameters.hpp"
#include "capsim/scenario.hpp"
#include "capsim/sweep.hpp"
#include "capsim/table_function.hpp"
