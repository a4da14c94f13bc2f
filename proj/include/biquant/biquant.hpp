#pragma once

#include "biquant/errors.hpp"
#include "biquant/density.hpp"
#include "biquant/thresholds.hpp"
#include "biquant/likelihood.hpp"
#include "biquant/channel.hpp"
#include "biquant/solver.hpp"
#include "biquant/oracle.hpp"
