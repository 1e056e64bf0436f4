#pragma once

#include "ilm/codes.hpp"
#include "ilm/continuation.hpp"
#include "ilm/dynamics.hpp"
#include "ilm/errors.hpp"
#include "ilm/model.hpp"
#include "ilm/profile.hpp"
#include "ilm/scan.hpp"
#include "ilm/solver.hpp"
#include "ilm/spectrum.hpp"
#include "ilm/tridiag.hpp"
