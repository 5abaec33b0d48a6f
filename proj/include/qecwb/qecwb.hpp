#pragma once

#include "qecwb/dense.hpp"
#include "qecwb/channels.hpp"
#include "qecwb/codes.hpp"
#include "qecwb/conditions.hpp"
#include "qecwb/recovery.hpp"
#include "qecwb/fidelity.hpp"
#include "qecwb/fletcher.hpp"
#include "qecwb/grid.hpp"
