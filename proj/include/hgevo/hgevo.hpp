#pragma once

#include "hgevo/coarsening.hpp"
#include "hgevo/definitions.hpp"
#include "hgevo/evaluation.hpp"
#include "hgevo/fm_refiner.hpp"
#include "hgevo/generator.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/initial_pool.hpp"
#include "hgevo/io.hpp"
#include "hgevo/landscape.hpp"
#include "hgevo/memetic_ea.hpp"
#include "hgevo/multilevel.hpp"
#include "hgevo/partition.hpp"
#include "hgevo/repair.hpp"
#include "hgevo/statistics.hpp"
#include "hgevo/sweep.hpp"
