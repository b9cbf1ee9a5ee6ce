#pragma once

// Centre-of-mass radial distribution functions from DL_POLY trajectories.

#include "comrdf/analysis.hpp"
#include "comrdf/directives.hpp"
#include "comrdf/error.hpp"
#include "comrdf/field.hpp"
#include "comrdf/geometry.hpp"
#include "comrdf/history.hpp"
#include "comrdf/output.hpp"
#include "comrdf/rdf.hpp"
#include "comrdf/synthetic.hpp"
#include "comrdf/unfold.hpp"
