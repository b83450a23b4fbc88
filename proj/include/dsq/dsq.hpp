#pragma once

#include "dsq/core.hpp"
#include "dsq/domain.hpp"
#include "dsq/minkowski.hpp"
#include "dsq/metrics.hpp"
#include "dsq/holomap.hpp"
#include "dsq/squeezing.hpp"
#include "dsq/fridman.hpp"
#include "dsq/serialize.hpp"
#include "dsq/lab.hpp"
