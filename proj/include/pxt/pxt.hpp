#pragma once

#include "pxt/baselines.hpp"
#include "pxt/cdijkstra.hpp"
#include "pxt/errors.hpp"
#include "pxt/experiment.hpp"
#include "pxt/failsim.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"
#include "pxt/plan_io.hpp"
#include "pxt/router.hpp"
#include "pxt/topologies.hpp"
#include "pxt/traffic.hpp"
