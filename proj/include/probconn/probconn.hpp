#pragma once

#include "probconn/bounds.hpp"
#include "probconn/exact.hpp"
#include "probconn/graph.hpp"
#include "probconn/io.hpp"
#include "probconn/matrix.hpp"
#include "probconn/monte_carlo.hpp"
#include "probconn/sensitivity.hpp"
#include "probconn/spectral.hpp"
#include "probconn/walk.hpp"
