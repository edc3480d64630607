#pragma once

#include "liebi/bialgebra.hpp"
#include "liebi/catalog.hpp"
#include "liebi/error.hpp"
#include "liebi/group_flow.hpp"
#include "liebi/io.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/lie_poisson.hpp"
#include "liebi/loop_fourier.hpp"
#include "liebi/report.hpp"
#include "liebi/torus_weight.hpp"
