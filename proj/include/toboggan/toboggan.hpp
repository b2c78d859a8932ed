#pragma once

#include "toboggan/contour.hpp"
#include "toboggan/errors.hpp"
#include "toboggan/integrator.hpp"
#include "toboggan/parallel.hpp"
#include "toboggan/perturbation.hpp"
#include "toboggan/potential.hpp"
#include "toboggan/rootfind.hpp"
#include "toboggan/shooting.hpp"
#include "toboggan/spectrum.hpp"
