#pragma once

#include "cswitch/errors.hpp"
#include "cswitch/rational.hpp"
#include "cswitch/field.hpp"
#include "cswitch/matrix.hpp"
#include "cswitch/labeled_graph.hpp"
#include "cswitch/path.hpp"
#include "cswitch/graph.hpp"
#include "cswitch/system.hpp"
#include "cswitch/linalg/echelon.hpp"
#include "cswitch/linalg/subspace.hpp"
#include "cswitch/linalg/matrix_space.hpp"
#include "cswitch/linalg/path_spans.hpp"
#include "cswitch/linalg/spectral.hpp"
#include "cswitch/deadbeat.hpp"
#include "cswitch/irreducibility.hpp"
#include "cswitch/boundedness.hpp"
#include "cswitch/lift.hpp"
#include "cswitch/generators.hpp"
#include "cswitch/io.hpp"
#include "cswitch/report.hpp"
