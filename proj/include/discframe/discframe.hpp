#pragma once

#include "discframe/disc.hpp"
#include "discframe/errors.hpp"
#include "discframe/frame.hpp"
#include "discframe/interpolate.hpp"
#include "discframe/report.hpp"
#include "discframe/rng.hpp"
#include "discframe/sequences.hpp"
#include "discframe/solve.hpp"
#include "discframe/tensor.hpp"
#include "discframe/types.hpp"
#include "discframe/version.hpp"
