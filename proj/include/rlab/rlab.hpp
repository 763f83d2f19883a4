#pragma once

#include "rlab/errors.hpp"
#include "rlab/graph.hpp"
#include "rlab/graph6.hpp"
#include "rlab/pattern.hpp"
#include "rlab/families.hpp"
#include "rlab/subgraph.hpp"
#include "rlab/rational.hpp"
#include "rlab/densities.hpp"
#include "rlab/random.hpp"
#include "rlab/parallel.hpp"
#include "rlab/coloring.hpp"
#include "rlab/threshold.hpp"
#include "rlab/constructions.hpp"
#include "rlab/perturbation.hpp"
#include "rlab/facts.hpp"
#include "rlab/experiment.hpp"
