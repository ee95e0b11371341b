#pragma once

#include "pcf/error.hpp"
#include "pcf/instance.hpp"
#include "pcf/io.hpp"
#include "pcf/metric.hpp"
#include "pcf/moat.hpp"
#include "pcf/num.hpp"
#include "pcf/oracle.hpp"
#include "pcf/prune.hpp"
#include "pcf/random.hpp"
#include "pcf/rooted.hpp"
#include "pcf/sweep.hpp"
#include "pcf/union_find.hpp"
