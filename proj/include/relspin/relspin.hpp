#pragma once

#include "relspin/bell.hpp"
#include "relspin/error.hpp"
#include "relspin/kinematics.hpp"
#include "relspin/linalg.hpp"
#include "relspin/scan.hpp"
#include "relspin/spin_operators.hpp"
#include "relspin/states.hpp"
#include "relspin/tolerance.hpp"
