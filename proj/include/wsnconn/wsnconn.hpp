#pragma once

#include "wsnconn/asymptotics.hpp"
#include "wsnconn/combinatorics.hpp"
#include "wsnconn/errors.hpp"
#include "wsnconn/geometry.hpp"
#include "wsnconn/graph_analysis.hpp"
#include "wsnconn/graph_models.hpp"
#include "wsnconn/harness.hpp"
#include "wsnconn/quadrature.hpp"
#include "wsnconn/random.hpp"
