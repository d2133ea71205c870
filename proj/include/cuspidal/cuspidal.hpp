#pragma once

#include "errors.hpp"
#include "scalar.hpp"
#include "jet1.hpp"
#include "jet2.hpp"
#include "vec3.hpp"
#include "radical.hpp"
#include "order_tools.hpp"
#include "plane_curves.hpp"
#include "edge_model.hpp"
#include "edge_invariants.hpp"
#include "curve_on_edge.hpp"
#include "germ_spec.hpp"
