#ifndef BNCHECK_BNCHECK_HPP
#define BNCHECK_BNCHECK_HPP

#include "clique.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "symmetric_eigen.hpp"
#include "theory_bounds.hpp"

#endif
