#pragma once

#include "mnc/rational.hpp"
#include "mnc/sparse_matrix.hpp"
#include "mnc/elimination.hpp"
#include "mnc/complex.hpp"
#include "mnc/manifold.hpp"
#include "mnc/constructions.hpp"
#include "mnc/builtin.hpp"
#include "mnc/local_system.hpp"
#include "mnc/twisted.hpp"
#include "mnc/cohomology.hpp"
#include "mnc/oracles.hpp"
#include "mnc/random.hpp"
#include "mnc/spaces.hpp"
#include "mnc/verify.hpp"
#include "mnc/io.hpp"
#include "mnc/acceptance.hpp"
