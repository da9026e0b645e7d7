#pragma once

#include "sfest/bench.hpp"
#include "sfest/certify.hpp"
#include "sfest/common.hpp"
#include "sfest/exact_opt.hpp"
#include "sfest/generators.hpp"
#include "sfest/good_permutation.hpp"
#include "sfest/graph.hpp"
#include "sfest/io.hpp"
#include "sfest/metric.hpp"
#include "sfest/mis_estimate.hpp"
#include "sfest/oracle.hpp"
#include "sfest/permutation.hpp"
#include "sfest/rgmis.hpp"
#include "sfest/steiner.hpp"
