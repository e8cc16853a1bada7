#pragma once

#include "agt/mealy.hpp"
#include "agt/word.hpp"
#include "agt/report.hpp"
#include "agt/transform.hpp"
#include "agt/dual.hpp"
#include "agt/families.hpp"
#include "agt/orbits.hpp"
#include "agt/freeness.hpp"
