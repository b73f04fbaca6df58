#pragma once

#include "robustht/baselines.hpp"
#include "robustht/csv.hpp"
#include "robustht/graphical.hpp"
#include "robustht/losses.hpp"
#include "robustht/parallel.hpp"
#include "robustht/rng.hpp"
#include "robustht/robust_mean.hpp"
#include "robustht/solver.hpp"
#include "robustht/synthgen.hpp"
#include "robustht/thresholding.hpp"
#include "robustht/types.hpp"
